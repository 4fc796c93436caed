#pragma once

#include <algorithm>
#include <atomic>
#include <complex>
#include <cstdint>
#include <thread>
#include <vector>

namespace fqcorr {

// Global worker count for data-parallel loops. Results never depend on it:
// work is split into fixed-size blocks and partial results are combined in
// block order.
int thread_count();
void set_thread_count(int n);

inline constexpr std::uint64_t kBlockSize = 1 << 14;

// Runs body(block_id, begin, end) over [0, n) in fixed blocks, in parallel.
// Each block writes only to its own slot; the caller combines slots in order.
template <class Body>
void parallel_blocks(std::uint64_t n, Body body) {
  std::uint64_t nblocks = (n + kBlockSize - 1) / kBlockSize;
  int workers = thread_count();
  if (workers <= 1 || nblocks <= 1) {
    for (std::uint64_t b = 0; b < nblocks; ++b)
      body(b, b * kBlockSize, std::min(n, (b + 1) * kBlockSize));
    return;
  }
  std::vector<std::thread> pool;
  std::atomic<std::uint64_t> next{0};
  for (int t = 0; t < workers; ++t)
    pool.emplace_back([&] {
      for (std::uint64_t b; (b = next.fetch_add(1)) < nblocks;)
        body(b, b * kBlockSize, std::min(n, (b + 1) * kBlockSize));
    });
  for (auto& th : pool) th.join();
}

// Deterministic blocked sum of per-index complex terms.
template <class Term>
std::complex<double> blocked_sum(std::uint64_t n, Term term) {
  std::uint64_t nblocks = (n + kBlockSize - 1) / kBlockSize;
  std::vector<std::complex<double>> partial(nblocks, 0.0);
  parallel_blocks(n, [&](std::uint64_t b, std::uint64_t lo, std::uint64_t hi) {
    std::complex<double> s = 0.0;
    for (std::uint64_t i = lo; i < hi; ++i) s += term(i);
    partial[b] = s;
  });
  std::complex<double> total = 0.0;
  for (auto& s : partial) total += s;
  return total;
}

}  // namespace fqcorr
