#include "core/sequence.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <memory>

#include "core/parallel.hpp"

namespace oscillab {

const char* kind_name(SequenceKind k) {
  switch (k) {
    case SequenceKind::divisor: return "divisor";
    case SequenceKind::squarefree_divisors: return "squarefree";
    case SequenceKind::twisted: return "twisted";
    case SequenceKind::von_mangoldt: return "vonmangoldt";
    case SequenceKind::abelian: return "abelian";
  }
  return "?";
}

SequenceKind kind_from_name(const std::string& name) {
  if (name == "divisor") return SequenceKind::divisor;
  if (name == "squarefree") return SequenceKind::squarefree_divisors;
  if (name == "twisted") return SequenceKind::twisted;
  if (name == "vonmangoldt") return SequenceKind::von_mangoldt;
  if (name == "abelian") return SequenceKind::abelian;
  fail(errc::argument, "unknown application '" + name + "'");
}

std::vector<double> partition_numbers(int max_exponent) {
  std::vector<double> p(static_cast<std::size_t>(max_exponent) + 1, 0.0);
  p[0] = 1.0;
  for (int n = 1; n <= max_exponent; ++n) {
    double acc = 0.0;
    for (int k = 1;; ++k) {
      long g1 = static_cast<long>(k) * (3L * k - 1) / 2;
      long g2 = static_cast<long>(k) * (3L * k + 1) / 2;
      if (g1 > n && g2 > n) break;
      double sign = (k % 2 == 1) ? 1.0 : -1.0;
      if (g1 <= n) acc += sign * p[n - g1];
      if (g2 <= n) acc += sign * p[n - g2];
    }
    p[n] = acc;
  }
  return p;
}

namespace {

// Smallest-prime-factor table for 2..n, built once per sieve run and shared
// read-only by every worker block.
std::vector<std::uint32_t> build_spf(std::uint64_t n) {
  std::vector<std::uint32_t> spf(n + 1, 0);
  for (std::uint64_t i = 2; i <= n; ++i) {
    if (spf[i] == 0) {
      for (std::uint64_t j = i; j <= n; j += i)
        if (spf[j] == 0) spf[j] = static_cast<std::uint32_t>(i);
    }
  }
  return spf;
}

struct PrimePower {
  std::uint32_t p;
  int e;
};

// Factors n via the spf table; returns the number of distinct primes.
int factorize(std::uint64_t n, const std::vector<std::uint32_t>& spf, PrimePower out[64]) {
  int cnt = 0;
  while (n > 1) {
    std::uint32_t p = spf[n];
    int e = 0;
    while (n % p == 0) {
      n /= p;
      ++e;
    }
    out[cnt++] = {p, e};
  }
  return cnt;
}

// |tau(p^e, theta)|^2 = (sin((e+1)u) / sin(u))^2 with u = theta*log(p)/2,
// extended by the limit (e+1)^2 where sin(u) vanishes. Closed form instead
// of summing p^{ij theta}, which cancels badly for large e.
double twisted_prime_power(double theta, double logp, int e) {
  double u = 0.5 * theta * logp;
  double su = std::sin(u);
  double sv = std::sin(static_cast<double>(e + 1) * u);
  if (std::fabs(su) < 1e-12) {
    double r = static_cast<double>(e + 1);
    return r * r;
  }
  double r = sv / su;
  return r * r;
}

}  // namespace

ArithmeticSequence sieve(SequenceKind kind, double theta, std::uint64_t n_max, int threads) {
  require(n_max >= 1, errc::argument, "sieve: n_max must be at least 1");
  if (kind == SequenceKind::twisted)
    require(theta != 0.0, errc::argument, "sieve: twisted requires theta != 0");
  if (kind != SequenceKind::twisted) theta = 0.0;

  ArithmeticSequence seq;
  seq.kind = kind;
  seq.theta = theta;
  seq.n_max = n_max;
  seq.values.assign(n_max + 1, 0.0);

  auto spf = build_spf(n_max);
  auto partitions = partition_numbers(64);

  std::vector<double> logp(n_max + 1, 0.0);
  for (std::uint64_t p = 2; p <= n_max; ++p)
    if (spf[p] == p) logp[p] = std::log(static_cast<double>(p));

  if (n_max >= 1) seq.values[1] = (kind == SequenceKind::von_mangoldt) ? 0.0 : 1.0;

  constexpr std::uint64_t kBlock = 1 << 16;
  std::uint64_t n_blocks = (n_max - 1 + kBlock) / kBlock;  // covers 2..n_max
  for_each_block(n_blocks, threads, [&](std::size_t b) {
    std::uint64_t lo = 2 + static_cast<std::uint64_t>(b) * kBlock;
    std::uint64_t hi = std::min(n_max, lo + kBlock - 1);
    PrimePower f[64];
    for (std::uint64_t n = lo; n <= hi; ++n) {
      switch (kind) {
        case SequenceKind::divisor: {
          int cnt = factorize(n, spf, f);
          double v = 1.0;
          for (int i = 0; i < cnt; ++i) v *= static_cast<double>(f[i].e + 1);
          seq.values[n] = v;
          break;
        }
        case SequenceKind::squarefree_divisors: {
          int cnt = factorize(n, spf, f);
          seq.values[n] = std::ldexp(1.0, cnt);  // 2^omega(n)
          break;
        }
        case SequenceKind::twisted: {
          int cnt = factorize(n, spf, f);
          double v = 1.0;
          for (int i = 0; i < cnt; ++i) v *= twisted_prime_power(theta, logp[f[i].p], f[i].e);
          seq.values[n] = v;
          break;
        }
        case SequenceKind::von_mangoldt: {
          std::uint32_t p = spf[n];
          std::uint64_t m = n;
          while (m % p == 0) m /= p;
          seq.values[n] = (m == 1) ? logp[p] : 0.0;
          break;
        }
        case SequenceKind::abelian: {
          int cnt = factorize(n, spf, f);
          double v = 1.0;
          for (int i = 0; i < cnt; ++i) v *= partitions[f[i].e];
          seq.values[n] = v;
          break;
        }
      }
    }
  });
  return seq;
}

PrefixTable build_prefix(const ArithmeticSequence& seq) {
  PrefixTable t;
  t.kind = seq.kind;
  t.theta = seq.theta;
  t.n_max = seq.n_max;
  t.prefix.assign(seq.n_max + 1, 0.0);
  kahan_sum acc;
  for (std::uint64_t n = 1; n <= seq.n_max; ++n) {
    acc.add(seq.values[n]);
    t.prefix[n] = acc.value();
  }
  return t;
}

double PrefixTable::star(double x) const {
  require(x >= 1.0 && x <= static_cast<double>(n_max), errc::range,
          "prefix_star: x outside [1, n_max]");
  double fl = std::floor(x);
  auto n = static_cast<std::uint64_t>(fl);
  if (x == fl) {
    double a_x = prefix[n] - prefix[n - 1];
    return prefix[n] - 0.5 * a_x;
  }
  return prefix[n];
}

namespace {

void put_u16(std::string& s, std::uint16_t v) {
  s.push_back(static_cast<char>(v & 0xff));
  s.push_back(static_cast<char>(v >> 8));
}

void put_u64(std::string& s, std::uint64_t v) {
  for (int i = 0; i < 8; ++i) s.push_back(static_cast<char>((v >> (8 * i)) & 0xff));
}

std::uint64_t get_u64(const unsigned char* p) {
  std::uint64_t v = 0;
  for (int i = 7; i >= 0; --i) v = (v << 8) | p[i];
  return v;
}

constexpr char kMagic[4] = {'O', 'S', 'C', '1'};
constexpr std::uint16_t kVersion = 1;
constexpr std::size_t kHeaderSize = 4 + 2 + 1 + 8 + 8;

struct FileCloser {
  void operator()(std::FILE* f) const {
    if (f) std::fclose(f);
  }
};
using File = std::unique_ptr<std::FILE, FileCloser>;

}  // namespace

void cache_store(const ArithmeticSequence& seq, const std::filesystem::path& path) {
  File f(std::fopen(path.string().c_str(), "wb"));
  require(f != nullptr, errc::io, "cache_store: cannot open " + path.string());

  std::string header;
  header.append(kMagic, 4);
  put_u16(header, kVersion);
  header.push_back(static_cast<char>(seq.kind));
  std::uint64_t theta_bits;
  std::memcpy(&theta_bits, &seq.theta, 8);
  put_u64(header, theta_bits);
  put_u64(header, seq.n_max);

  require(std::fwrite(header.data(), 1, header.size(), f.get()) == header.size(), errc::io,
          "cache_store: short write");
  // Doubles are written as raw IEEE-754; the build targets little-endian hosts.
  static_assert(std::endian::native == std::endian::little, "cache format is little-endian");
  std::size_t count = static_cast<std::size_t>(seq.n_max);
  require(std::fwrite(seq.values.data() + 1, 8, count, f.get()) == count, errc::io,
          "cache_store: short write");
}

ArithmeticSequence cache_load(const std::filesystem::path& path) {
  File f(std::fopen(path.string().c_str(), "rb"));
  require(f != nullptr, errc::io, "cache_load: cannot open " + path.string());

  unsigned char header[kHeaderSize];
  require(std::fread(header, 1, kHeaderSize, f.get()) == kHeaderSize, errc::truncated,
          "cache_load: file shorter than header");
  require(std::memcmp(header, kMagic, 4) == 0, errc::bad_magic, "cache_load: bad magic");
  std::uint16_t version = static_cast<std::uint16_t>(header[4] | (header[5] << 8));
  require(version == kVersion, errc::bad_version,
          "cache_load: unsupported version " + std::to_string(version));
  auto kind_tag = header[6];
  require(kind_tag <= 4, errc::bad_version, "cache_load: unknown kind tag");

  ArithmeticSequence seq;
  seq.kind = static_cast<SequenceKind>(kind_tag);
  std::uint64_t theta_bits = get_u64(header + 7);
  std::memcpy(&seq.theta, &theta_bits, 8);
  seq.n_max = get_u64(header + 15);
  require(seq.n_max >= 1, errc::truncated, "cache_load: empty sequence");

  seq.values.assign(seq.n_max + 1, 0.0);
  std::size_t count = static_cast<std::size_t>(seq.n_max);
  require(std::fread(seq.values.data() + 1, 8, count, f.get()) == count, errc::truncated,
          "cache_load: payload shorter than header claims");
  return seq;
}

ArithmeticSequence cache_load_typed(const std::filesystem::path& path, SequenceKind kind,
                                    double theta) {
  ArithmeticSequence seq = cache_load(path);
  require(seq.kind == kind, errc::mismatch, "cache_load: kind differs from requested");
  if (kind != SequenceKind::twisted) theta = 0.0;
  require(std::memcmp(&seq.theta, &theta, 8) == 0, errc::mismatch,
          "cache_load: theta differs from requested");
  return seq;
}

}  // namespace oscillab
