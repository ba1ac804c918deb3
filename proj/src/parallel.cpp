#include "toricmot/parallel.hpp"

#include <atomic>
#include <exception>
#include <mutex>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace toricmot {

namespace {
std::atomic<bool> g_parallel{true};
}

void set_parallel_enabled(bool on) { g_parallel.store(on); }
bool parallel_enabled() { return g_parallel.load(); }

void parallel_for(std::size_t n, void (*body)(std::size_t, void*), void* ctx) {
#ifdef _OPENMP
  if (g_parallel.load() && n > 1) {
    std::exception_ptr err;
    std::mutex err_mutex;
#pragma omp parallel for schedule(dynamic)
    for (long i = 0; i < long(n); ++i) {
      try {
        body(std::size_t(i), ctx);
      } catch (...) {
        std::lock_guard<std::mutex> lock(err_mutex);
        if (!err) err = std::current_exception();
      }
    }
    if (err) std::rethrow_exception(err);
    return;
  }
#endif
  for (std::size_t i = 0; i < n; ++i) body(i, ctx);
}

}  // namespace toricmot
