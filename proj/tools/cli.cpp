#include "cli.hpp"

#include <cmath>
#include <fstream>
#include <future>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "etnes/errors.hpp"
#include "etnes/io.hpp"
#include "etnes/report.hpp"

#ifndef ETNES_SCENARIO_DIR
#define ETNES_SCENARIO_DIR "scenarios"
#endif

namespace etnes::cli {
namespace fs = std::filesystem;

fs::path resolve_scenario(const std::string& name_or_path) {
  const fs::path p(name_or_path);
  if (fs::exists(p)) return p;
  const fs::path bundled = fs::path(ETNES_SCENARIO_DIR) / (name_or_path + ".yaml");
  if (fs::exists(bundled)) return bundled;
  throw std::runtime_error("scenario not found: '" + name_or_path + "' (neither a file nor a bundled name in " +
                           std::string(ETNES_SCENARIO_DIR) + ")");
}

namespace {

struct Common {
  std::vector<std::string> positional;
  std::vector<std::string> scenario_paths;
  std::string out_dir = ".";
  double step = 0.0;
  double horizon = -1.0;
  bool refine = false;
  bool plot = false;
};

void add_common(CLI::App* cmd, Common& c, bool outputs) {
  cmd->add_option("scenarios", c.positional, "Bundled scenario names or YAML paths");
  cmd->add_option("--scenario", c.scenario_paths, "Scenario YAML path (repeatable)");
  if (!outputs) return;
  cmd->add_option("--out", c.out_dir, "Output directory");
  cmd->add_option("--step", c.step, "Override the integration step h")->check(CLI::PositiveNumber);
  cmd->add_option("--horizon", c.horizon, "Override the horizon T_end")->check(CLI::NonNegativeNumber);
  cmd->add_flag("--refine-events", c.refine, "Locate trigger crossings by bisection");
  cmd->add_flag("--plot", c.plot, "Also write plot.py");
}

std::vector<Scenario> load(const Common& c) {
  std::vector<std::string> names = c.positional;
  names.insert(names.end(), c.scenario_paths.begin(), c.scenario_paths.end());
  if (names.empty()) throw std::runtime_error("no scenario given");
  std::vector<Scenario> out;
  for (const auto& n : names) {
    Scenario sc = parse_scenario(resolve_scenario(n));
    if (c.step > 0.0) sc.step = c.step;
    if (c.horizon >= 0.0) sc.t_end = c.horizon;
    if (c.refine) sc.refine_events = true;
    validate(sc);
    out.push_back(std::move(sc));
  }
  return out;
}

void write_file(const fs::path& path, const std::string& content) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot write " + path.string());
  f << content;
}

std::string safe_name(const std::string& s) {
  std::string out;
  for (char ch : s) out += (std::isalnum(static_cast<unsigned char>(ch)) || ch == '-' || ch == '_') ? ch : '_';
  return out.empty() ? "scenario" : out;
}

int emit(const Report& report, const std::vector<Scenario>& scenarios, const Common& c, bool comparison,
         std::ostream& out, std::ostream& err) {
  const fs::path dir(c.out_dir);
  fs::create_directories(dir);
  std::vector<std::string> traj_files;
  for (const auto& e : report.entries) {
    const std::string file =
        report.entries.size() == 1 ? "trajectory.csv" : "trajectory_" + safe_name(e.run.name) + ".csv";
    std::ostringstream os;
    write_trajectory_csv(os, e.run.trajectory, static_cast<Eigen::Index>(e.run.final_state.theta_hat.size()));
    write_file(dir / file, os.str());
    traj_files.push_back(file);
  }
  // The first trajectory also goes to trajectory.csv so every command has it.
  if (report.entries.size() > 1) {
    fs::copy_file(dir / traj_files.front(), dir / "trajectory.csv", fs::copy_options::overwrite_existing);
  }
  std::ostringstream events, text, table;
  write_events_csv(events, report);
  write_file(dir / "events.csv", events.str());
  write_report_text(text, report, scenarios);
  write_file(dir / "report.txt", text.str());
  write_file(dir / "report.json", report_json(report, scenarios));
  if (comparison) {
    write_comparison_csv(table, report);
    write_file(dir / "comparison.csv", table.str());
  }
  if (c.plot) write_file(dir / "plot.py", emit_plot_script(report, traj_files, "events.csv"));

  for (const auto& e : report.entries) {
    out << e.run.name << ": " << to_string(e.run.summary.status) << ", " << e.run.summary.update_count
        << " control updates\n";
    if (e.run.summary.status != RunStatus::Completed) err << e.run.name << ": " << e.run.summary.diagnostic << "\n";
  }
  out << "wrote " << dir.string() << "\n";
  return report.all_completed() ? 0 : 3;
}

struct SweepArgs {
  std::string param;
  double from = 0.0;
  double to = 0.0;
  int count = 2;
  bool geometric = false;
};

Scenario with_value(const Scenario& base, const std::string& param, double v) {
  Scenario sc = base;
  const Eigen::Index n = sc.map.size();
  if (param == "omega") {
    sc.design = sc.design.with_omega(v);
  } else if (param == "sigma") {
    sc.trigger = TriggerConfig::create(v, sc.trigger.alpha);
  } else if (param == "alpha") {
    sc.trigger = TriggerConfig::create(sc.trigger.sigma, v);
  } else if (param == "omega_r") {
    sc.omega_r = v;
  } else if (param == "gamma0") {
    sc.gamma0 = v * Matrix::Identity(n, n);
  } else if (param == "K") {
    sc.gains = ControllerGains::create(Vector::Constant(n, v), sc.scheme());
  } else if (param == "amplitude") {
    sc.design = sc.design.with_amplitudes(Vector::Constant(n, v));
  } else if (param == "h") {
    sc.step = v;
  } else if (param == "T_end") {
    sc.t_end = v;
  } else {
    throw ValidationError("sweep.param", "unknown parameter '" + param +
                                             "' (omega, sigma, alpha, omega_r, gamma0, K, amplitude, h, T_end)");
  }
  sc.name = base.name + "@" + param + "=" + format_number(v);
  validate(sc);
  return sc;
}

int run_sweep(const Common& c, const SweepArgs& s, std::ostream& out, std::ostream& err) {
  const std::vector<Scenario> base = load(c);
  if (base.size() != 1) throw std::runtime_error("sweep takes exactly one scenario");
  if (s.count < 1) throw std::runtime_error("--count must be at least 1");
  if (s.geometric && (s.from <= 0.0 || s.to <= 0.0)) throw std::runtime_error("--geometric needs positive bounds");
  std::vector<double> values;
  for (int i = 0; i < s.count; ++i) {
    const double f = s.count == 1 ? 0.0 : static_cast<double>(i) / (s.count - 1);
    values.push_back(s.geometric ? s.from * std::pow(s.to / s.from, f) : s.from + f * (s.to - s.from));
  }
  std::vector<Scenario> points;
  for (double v : values) points.push_back(with_value(base.front(), s.param, v));
  const Report report = run_comparison(points);

  const fs::path dir(c.out_dir);
  fs::create_directories(dir);
  std::ostringstream csv;
  csv << s.param << ",status,updates,min_interval,final_theta_error,final_output_error,averaging_gap\n";
  for (std::size_t i = 0; i < values.size(); ++i) {
    const ReportEntry& e = report.entries[i];
    const RunSummary& r = e.run.summary;
    const double gap = e.analysis && e.analysis->gap ? e.analysis->gap->theta_hat : std::nan("");
    csv << format_number(values[i]) << "," << to_string(r.status) << "," << r.update_count << ","
        << format_number(r.min_interval) << "," << format_number(r.final_theta_error) << ","
        << format_number(r.final_output_error) << "," << format_number(gap) << "\n";
  }
  write_file(dir / "sweep.csv", csv.str());
  std::ostringstream text;
  write_report_text(text, report, points);
  write_file(dir / "report.txt", text.str());
  write_file(dir / "report.json", report_json(report, points));
  out << "wrote " << (dir / "sweep.csv").string() << "\n";
  for (const auto& e : report.entries) {
    if (e.run.summary.status != RunStatus::Completed) err << e.run.name << ": " << e.run.summary.diagnostic << "\n";
  }
  return report.all_completed() ? 0 : 3;
}

}  // namespace

int main(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Event-triggered Newton extremum seeking simulator", "etnes"};
  app.require_subcommand(1);
  Common run_c, cmp_c, sweep_c, val_c;
  SweepArgs sweep;
  CLI::App* run_cmd = app.add_subcommand("run", "Simulate one scenario");
  add_common(run_cmd, run_c, true);
  CLI::App* cmp_cmd = app.add_subcommand("compare", "Simulate several scenarios side by side");
  add_common(cmp_cmd, cmp_c, true);
  CLI::App* sweep_cmd = app.add_subcommand("sweep", "Vary one parameter of a scenario");
  add_common(sweep_cmd, sweep_c, true);
  sweep_cmd->add_option("--param", sweep.param, "Parameter name")->required();
  sweep_cmd->add_option("--from", sweep.from, "First value")->required();
  sweep_cmd->add_option("--to", sweep.to, "Last value")->required();
  sweep_cmd->add_option("--count", sweep.count, "Number of points");
  sweep_cmd->add_flag("--geometric", sweep.geometric, "Space the points geometrically");
  CLI::App* val_cmd = app.add_subcommand("validate", "Parse and validate scenario files");
  add_common(val_cmd, val_c, false);

  std::vector<std::string> argv_rev(args.rbegin(), args.rend());
  try {
    app.parse(argv_rev);
  } catch (const CLI::ParseError& e) {
    std::ostringstream o, e2;
    const int code = app.exit(e, o, e2);
    out << o.str();
    err << e2.str();
    return code;
  }

  try {
    if (*run_cmd) {
      const auto scenarios = load(run_c);
      if (scenarios.size() != 1) throw std::runtime_error("run takes exactly one scenario; use compare");
      Report report;
      report.entries.push_back(analyze(scenarios.front()));
      return emit(report, scenarios, run_c, false, out, err);
    }
    if (*cmp_cmd) {
      const auto scenarios = load(cmp_c);
      return emit(run_comparison(scenarios), scenarios, cmp_c, true, out, err);
    }
    if (*sweep_cmd) return run_sweep(sweep_c, sweep, out, err);
    if (*val_cmd) {
      const auto scenarios = load(val_c);
      for (const auto& sc : scenarios) {
        out << sc.name << ": ok (scheme " << to_string(sc.scheme()) << ", h = " << format_number(sc.effective_step())
            << ", T = " << format_number(sc.design.period()) << ")\n";
      }
      return 0;
    }
  } catch (const ScenarioError& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  } catch (const ValidationError& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }
  return 1;
}

}  // namespace etnes::cli
