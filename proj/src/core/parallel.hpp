#pragma once

#include <atomic>
#include <cstddef>
#include <thread>
#include <vector>

namespace oscillab {

inline int resolve_threads(int requested) {
  if (requested > 0) return requested;
  unsigned hw = std::thread::hardware_concurrency();
  return hw ? static_cast<int>(hw) : 1;
}

// Runs fn(block_index) for block_index in [0, n_blocks). Blocks are claimed
// through an atomic counter, so the assignment of blocks to threads is
// nondeterministic, but each block writes only its own slot; callers reduce
// the slots in index order afterwards. That keeps every result bit-identical
// for any thread count.
template <typename Fn>
void for_each_block(std::size_t n_blocks, int threads, Fn&& fn) {
  int nt = resolve_threads(threads);
  if (nt <= 1 || n_blocks <= 1) {
    for (std::size_t i = 0; i < n_blocks; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (;;) {
      std::size_t i = next.fetch_add(1, std::memory_order_relaxed);
      if (i >= n_blocks) return;
      fn(i);
    }
  };
  std::vector<std::thread> pool;
  std::size_t nw = std::min<std::size_t>(static_cast<std::size_t>(nt), n_blocks);
  pool.reserve(nw);
  for (std::size_t i = 0; i < nw; ++i) pool.emplace_back(worker);
  for (auto& t : pool) t.join();
}

// Compensated (Kahan) accumulator; used wherever a fixed summation order is
// part of the determinism contract.
struct kahan_sum {
  double sum = 0.0;
  double carry = 0.0;

  void add(double v) {
    double y = v - carry;
    double t = sum + y;
    carry = (t - sum) - y;
    sum = t;
  }
  double value() const { return sum; }
};

}  // namespace oscillab
