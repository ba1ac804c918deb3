#include <CLI11.hpp>
#include <fstream>
#include <iostream>

#include "toricmot/parallel.hpp"
#include "toricmot/report.hpp"

using namespace toricmot;

namespace {

struct Options {
  std::string input;
  std::string series;
  std::string mode;
  bool normal = false;
  int expand = -2;  // sentinel: not given on the command line
  int guard = -1;
  std::string json_out;
  bool serial = false;
};

InputSpec load(const Options& opt) {
  InputSpec in = parse_input_file(opt.input);
  if (!opt.series.empty()) in.series = series_choice_from_string(opt.series);
  if (!opt.mode.empty()) in.mode = mode_choice_from_string(opt.mode);
  if (opt.normal) in.normal = true;
  if (opt.expand != -2) in.expand_order = opt.expand;
  if (opt.guard >= 0) in.guard = opt.guard;
  if (in.guard < 1) throw std::invalid_argument("guard must be at least 1");
  if (in.mode == ModeChoice::global && !in.normal)
    throw std::invalid_argument("global mode requires --normal");
  if (in.mode == ModeChoice::global && in.series != SeriesChoice::arithmetic &&
      in.series != SeriesChoice::both)
    throw std::invalid_argument("global mode computes the arithmetic series only");
  return in;
}

void emit(const std::string& report, const Options& opt) {
  if (!opt.json_out.empty()) {
    std::ofstream f(opt.json_out);
    if (!f) throw validation_error("cannot write " + opt.json_out);
    f << report << "\n";
  }
  std::cout << render_text(report);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"exact motivic Poincare series of affine toric varieties"};
  app.require_subcommand(1);

  Options opt;
  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--input", opt.input, "JSON input file")->required();
    sub->add_option("--series", opt.series, "arithmetic|geometric|both|difference");
    sub->add_option("--mode", opt.mode, "local|global");
    sub->add_flag("--normal", opt.normal, "assert the semigroup is saturated");
    sub->add_option("--expand", opt.expand, "expansion order for the coefficient table");
    sub->add_option("--guard", opt.guard, "guard region width for reconstruction");
    sub->add_option("--json", opt.json_out, "write the JSON report to this file");
    sub->add_flag("--serial", opt.serial, "disable the parallel kernels");
  };

  CLI::App* compute = app.add_subcommand("compute", "rational form of the series");
  CLI::App* strata = app.add_subcommand("strata", "stratum table only");
  CLI::App* oracle = app.add_subcommand("oracle", "brute-force expansion");
  CLI::App* nicaise = app.add_subcommand("check-nicaise", "equality criterion");
  for (auto* sub : {compute, strata, oracle, nicaise}) add_common(sub);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 4;
  }

  try {
    set_parallel_enabled(!opt.serial);
    InputSpec in = load(opt);
    std::string report;
    if (compute->parsed())
      report = report_compute(in);
    else if (strata->parsed())
      report = report_strata(in);
    else if (oracle->parsed())
      report = report_oracle(in);
    else
      report = report_nicaise(in);
    emit(report, opt);
    return 0;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 4;
  } catch (const validation_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const unsupported_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const certification_error& e) {
    std::cerr << "internal check failed: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 3;
  }
}
