#include "fqcorr/parallel.hpp"

#include <atomic>
#include <complex>

namespace fqcorr {

namespace {
std::atomic<int> g_threads{0};  // 0 = use hardware concurrency
}

int thread_count() {
  int n = g_threads.load();
  if (n > 0) return n;
  unsigned hw = std::thread::hardware_concurrency();
  return hw ? (int)hw : 1;
}

void set_thread_count(int n) { g_threads.store(n); }

}  // namespace fqcorr
