#pragma once
#include <string>

#include "toricmot/motser.hpp"

namespace toricmot {

enum class SeriesChoice { arithmetic, geometric, both, difference };
enum class ModeChoice { local, global };

struct InputSpec {
  int lattice_rank = 0;
  std::vector<IVec> generators;
  bool normal = false;
  ModeChoice mode = ModeChoice::local;
  SeriesChoice series = SeriesChoice::both;
  int expand_order = -1;  // negative: no expansion table
  int guard = 10;
};

InputSpec parse_input_json(const std::string& text);
InputSpec parse_input_file(const std::string& path);

SeriesChoice series_choice_from_string(const std::string& s);
ModeChoice mode_choice_from_string(const std::string& s);

// All reports are canonical JSON documents carrying a content hash; identical
// inputs serialize byte-identically.
std::string report_compute(const InputSpec& in);
std::string report_strata(const InputSpec& in);
std::string report_oracle(const InputSpec& in);
std::string report_nicaise(const InputSpec& in);

// Human-readable rendering of a report document.
std::string render_text(const std::string& report_json);

}  // namespace toricmot
