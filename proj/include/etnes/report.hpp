#pragma once

#include <optional>
#include <string>
#include <vector>

#include "etnes/analysis.hpp"
#include "etnes/sim.hpp"

namespace etnes {

/// Verification extras attached to a Newton run.
struct NewtonAnalysis {
  double alpha_min = 0.0;
  double lyapunov_residual_p1 = 0.0;
  double lyapunov_residual_p2 = 0.0;
  EnvelopeCheck envelopes;
  std::optional<AveragingGap> gap;
  std::size_t averaged_update_count = 0;
};

struct ReportEntry {
  RunResult run;
  std::optional<NewtonAnalysis> analysis;
  std::string analysis_note;  // why analysis is absent or partial
};

struct Report {
  std::vector<ReportEntry> entries;

  bool all_completed() const;
};

/// Runs one scenario and, for a completed Newton run, attaches certificates,
/// envelope checks and the averaging gap.
ReportEntry analyze(const Scenario& scenario);

/// Runs every scenario concurrently and merges the entries in input order.
/// Diverged runs are kept as entries with their diagnostic. Throws
/// std::invalid_argument for an empty list.
Report run_comparison(const std::vector<Scenario>& scenarios);

}  // namespace etnes
