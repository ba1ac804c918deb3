#pragma once
#include <cstddef>

namespace toricmot {

// Runtime switch between the OpenMP kernels and the serial reference path.
// Results are written by index, so both paths produce identical output.
void set_parallel_enabled(bool on);
bool parallel_enabled();

void parallel_for(std::size_t n, void (*body)(std::size_t, void*), void* ctx);

template <typename F>
void parallel_for_each(std::size_t n, F&& f) {
  struct Ctx {
    F* fn;
  } ctx{&f};
  parallel_for(
      n, [](std::size_t i, void* c) { (*static_cast<Ctx*>(c)->fn)(i); }, &ctx);
}

}  // namespace toricmot
