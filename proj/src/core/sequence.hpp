#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "core/common.hpp"

namespace oscillab {

enum class SequenceKind : std::uint8_t {
  divisor = 0,             // d(n)
  squarefree_divisors = 1, // 2^omega(n)
  twisted = 2,             // |sum_{d|n} d^{i theta}|^2
  von_mangoldt = 3,        // log p on prime powers
  abelian = 4,             // abelian groups of order n
};

const char* kind_name(SequenceKind k);
SequenceKind kind_from_name(const std::string& name);

// Values of one arithmetic function on 1..n_max. values[0] is unused.
struct ArithmeticSequence {
  SequenceKind kind = SequenceKind::divisor;
  double theta = 0.0;  // meaningful for twisted only
  std::uint64_t n_max = 0;
  std::vector<double> values;

  double at(std::uint64_t n) const { return values[n]; }
};

// Cumulative sums with a half-weight boundary convention at integers:
// star(x) = sum_{n<x} a_n + a_x/2 for integer x, plain sum_{n<=x} otherwise.
struct PrefixTable {
  SequenceKind kind = SequenceKind::divisor;
  double theta = 0.0;
  std::uint64_t n_max = 0;
  std::vector<double> prefix;  // prefix[n] = sum_{k<=n} a_k, prefix[0] = 0

  double star(double x) const;
};

ArithmeticSequence sieve(SequenceKind kind, double theta, std::uint64_t n_max, int threads = 0);
PrefixTable build_prefix(const ArithmeticSequence& seq);

// Binary cache, little-endian: "OSC1", u16 version, u8 kind, f64 theta,
// u64 n_max, then n_max f64 values.
void cache_store(const ArithmeticSequence& seq, const std::filesystem::path& path);
ArithmeticSequence cache_load(const std::filesystem::path& path);
ArithmeticSequence cache_load_typed(const std::filesystem::path& path, SequenceKind kind,
                                    double theta);

// Partition numbers p(0..max_exponent), Euler's pentagonal recurrence.
std::vector<double> partition_numbers(int max_exponent);

}  // namespace oscillab
