#pragma once

#include <filesystem>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <vector>

#include "etnes/report.hpp"
#include "etnes/sim.hpp"

namespace etnes {

/// A scenario file failed to parse or validate. The message is
/// "source:line:column: field: rule".
class ScenarioError : public std::runtime_error {
 public:
  ScenarioError(std::string source, int line, int column, std::string field, std::string rule);

  const std::string& source() const noexcept { return source_; }
  int line() const noexcept { return line_; }
  int column() const noexcept { return column_; }
  const std::string& field() const noexcept { return field_; }
  const std::string& rule() const noexcept { return rule_; }

 private:
  std::string source_;
  int line_;
  int column_;
  std::string field_;
  std::string rule_;
};

Scenario parse_scenario_text(const std::string& text, const std::string& source = "<string>");
Scenario parse_scenario(const std::filesystem::path& path);

/// Inverse of parse_scenario_text: doubles use 17 significant digits and
/// multipliers stay "p/q" strings, so parsing the result reproduces the
/// scenario exactly.
std::string emit_scenario(const Scenario& scenario);

/// Shortest-unique formatting would differ between libraries; this always
/// prints 17 significant digits.
std::string format_number(double value);

/// Column names: t, theta_1..n, y, theta_hat_1..n, Ghat_1..n, u_1..n,
/// Gamma_11..nn, margin.
std::vector<std::string> trajectory_columns(Eigen::Index n);

void write_trajectory_csv(std::ostream& os, const Trajectory& trajectory, Eigen::Index n);

/// scenario, index, t, margin, interval.
void write_events_csv(std::ostream& os, const Report& report);

/// scenario, scheme, status, updates, min_interval, mean_interval, tau_star,
/// convergence_time, final_theta_error, final_output_error, envelopes_pass,
/// averaging_gap.
void write_comparison_csv(std::ostream& os, const Report& report);

void write_report_text(std::ostream& os, const Report& report, const std::vector<Scenario>& scenarios);
std::string report_json(const Report& report, const std::vector<Scenario>& scenarios);

/// matplotlib script reading the emitted CSVs: theta(t), u(t), y(t), the update
/// staircase for every scenario, and Gamma(t).
std::string emit_plot_script(const Report& report, const std::vector<std::string>& trajectory_files,
                             const std::string& events_file);

}  // namespace etnes
