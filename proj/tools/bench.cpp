// Times the parallel kernels against the serial reference path on the heavy
// fixtures and checks that both produce the same series.
#include <chrono>
#include <iostream>

#include "toricmot/motser.hpp"
#include "toricmot/parallel.hpp"

using namespace toricmot;
using clock_t_ = std::chrono::steady_clock;

namespace {

double run_ms(bool parallel, const SemigroupData& s, MotivicRational& out) {
  set_parallel_enabled(parallel);
  auto t0 = clock_t_::now();
  out = local_series(s);
  auto t1 = clock_t_::now();
  return std::chrono::duration<double, std::milli>(t1 - t0).count();
}

double run_oracle_ms(bool parallel, const SemigroupData& s, int order, SeriesExpansion& out) {
  set_parallel_enabled(parallel);
  auto t0 = clock_t_::now();
  out = oracle_series(s, order);
  auto t1 = clock_t_::now();
  return std::chrono::duration<double, std::milli>(t1 - t0).count();
}

}  // namespace

int main() {
  struct Fixture {
    const char* name;
    SemigroupData sg;
  };
  std::vector<Fixture> fixtures;
  fixtures.push_back({"curve 8,18,20,21",
                      build_semigroup(1, {{Int(8)}, {Int(18)}, {Int(20)}, {Int(21)}})});
  fixtures.push_back(
      {"surface 5,0 0,2 0,3 6,2",
       build_semigroup(2, {{Int(5), Int(0)}, {Int(0), Int(2)}, {Int(0), Int(3)}, {Int(6), Int(2)}})});

  std::cout << "kernel benchmark: serial reference vs OpenMP\n";
  for (auto& fx : fixtures) {
    MotivicRational serial_out, parallel_out;
    double ts = run_ms(false, fx.sg, serial_out);
    double tp = run_ms(true, fx.sg, parallel_out);
    bool same = mr_equal(serial_out, parallel_out);
    std::cout << "  local series  " << fx.name << ": serial " << ts << " ms, parallel " << tp
              << " ms, speedup " << (tp > 0 ? ts / tp : 0) << (same ? "" : "  MISMATCH")
              << "\n";
    if (!same) return 1;

    SeriesExpansion os_, op_;
    double os_ms = run_oracle_ms(false, fx.sg, 25, os_);
    double op_ms = run_oracle_ms(true, fx.sg, 25, op_);
    bool osame = os_ == op_;
    std::cout << "  oracle to 25  " << fx.name << ": serial " << os_ms << " ms, parallel "
              << op_ms << " ms, speedup " << (op_ms > 0 ? os_ms / op_ms : 0)
              << (osame ? "" : "  MISMATCH") << "\n";
    if (!osame) return 1;
  }
  set_parallel_enabled(true);
  return 0;
}
