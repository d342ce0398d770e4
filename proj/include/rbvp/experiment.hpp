#pragma once

#include <ostream>
#include <string>
#include <vector>

#include "rbvp/config.hpp"

namespace rbvp {

struct SummaryLine {
  std::string label;
  /// Module invariant the line instantiates.
  std::string invariant;
  double measured = 0.0;
  double bound = 0.0;
  bool upper = true;
  bool pass() const;
};

struct ExperimentResult {
  std::vector<SummaryLine> lines;
  std::vector<std::string> artifacts;
  std::vector<std::string> notes;
  bool passed() const;
  std::string summary() const;
};

/// Runs the configured pipeline, writes artifacts into the output directory in
/// a fixed order and returns the summary. Component errors propagate.
ExperimentResult run_experiment(const config::ExperimentConfig& cfg);

}  // namespace rbvp
