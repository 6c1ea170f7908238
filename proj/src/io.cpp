#include "etnes/io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iomanip>
#include <map>
#include <set>
#include <sstream>

#include "json.hpp"
#include <yaml-cpp/yaml.h>

#include "etnes/errors.hpp"

namespace etnes {

ScenarioError::ScenarioError(std::string source, int line, int column, std::string field,
                             std::string rule)
    : std::runtime_error(source + ":" + std::to_string(line) + ":" + std::to_string(column) + ": " +
                         field + ": " + rule),
      source_(std::move(source)),
      line_(line),
      column_(column),
      field_(std::move(field)),
      rule_(std::move(rule)) {}

namespace {

class Reader {
 public:
  explicit Reader(std::string source) : source_(std::move(source)) {}

  [[noreturn]] void fail(const YAML::Node& node, const std::string& field, const std::string& rule) const {
    const YAML::Mark m = node.Mark();
    const int line = m.is_null() ? 0 : m.line + 1;
    const int col = m.is_null() ? 0 : m.column + 1;
    throw ScenarioError(source_, line, col, field, rule);
  }

  YAML::Node section(const YAML::Node& root, const char* key, bool required = true) const {
    const YAML::Node n = root[key];
    if (!n) {
      if (required) fail(root, key, "missing section");
      return n;
    }
    if (!n.IsMap()) fail(n, key, "must be a mapping");
    return n;
  }

  void only_keys(const YAML::Node& node, const std::string& where,
                 std::initializer_list<const char*> keys) const {
    std::set<std::string> allowed(keys.begin(), keys.end());
    for (const auto& kv : node) {
      const auto k = kv.first.as<std::string>();
      if (!allowed.count(k)) fail(kv.first, where.empty() ? k : where + "." + k, "unknown key");
    }
  }

  double number(const YAML::Node& node, const std::string& field) const {
    if (!node || !node.IsScalar()) fail(node, field, "expected a number");
    try {
      return node.as<double>();
    } catch (const YAML::Exception&) {
      fail(node, field, "expected a number, got '" + node.Scalar() + "'");
    }
  }

  int integer(const YAML::Node& node, const std::string& field) const {
    if (!node || !node.IsScalar()) fail(node, field, "expected an integer");
    try {
      return node.as<int>();
    } catch (const YAML::Exception&) {
      fail(node, field, "expected an integer, got '" + node.Scalar() + "'");
    }
  }

  Vector vector(const YAML::Node& node, const std::string& field) const {
    if (!node || !node.IsSequence()) fail(node, field, "expected a list of numbers");
    Vector v(static_cast<Eigen::Index>(node.size()));
    for (std::size_t i = 0; i < node.size(); ++i) {
      v[static_cast<Eigen::Index>(i)] = number(node[i], field + "[" + std::to_string(i) + "]");
    }
    return v;
  }

  Matrix matrix(const YAML::Node& node, const std::string& field) const {
    if (!node || !node.IsSequence() || node.size() == 0) fail(node, field, "expected a list of rows");
    const auto rows = static_cast<Eigen::Index>(node.size());
    Matrix m;
    for (std::size_t i = 0; i < node.size(); ++i) {
      const Vector row = vector(node[i], field + "[" + std::to_string(i) + "]");
      if (i == 0) m.resize(rows, row.size());
      if (row.size() != m.cols()) fail(node[i], field, "rows must have equal length");
      m.row(static_cast<Eigen::Index>(i)) = row.transpose();
    }
    return m;
  }

  std::vector<Rational> rationals(const YAML::Node& node, const std::string& field) const {
    if (!node || !node.IsSequence()) fail(node, field, "expected a list of \"p/q\" strings");
    std::vector<Rational> out;
    for (std::size_t i = 0; i < node.size(); ++i) {
      const YAML::Node item = node[i];
      if (!item.IsScalar()) fail(item, field, "expected a \"p/q\" string");
      try {
        out.push_back(Rational::parse(item.Scalar()));
      } catch (const std::exception& e) {
        fail(item, field + "[" + std::to_string(i) + "]", e.what());
      }
    }
    return out;
  }

 private:
  std::string source_;
};

}  // namespace

Scenario parse_scenario_text(const std::string& text, const std::string& source) {
  Reader rd(source);
  YAML::Node root;
  try {
    root = YAML::Load(text);
  } catch (const YAML::ParserException& e) {
    throw ScenarioError(source, e.mark.line + 1, e.mark.column + 1, "<syntax>", e.msg);
  }
  if (!root || !root.IsMap()) throw ScenarioError(source, 1, 1, "<root>", "expected a mapping");
  rd.only_keys(root, "", {"name", "map", "dither", "controller", "trigger", "init", "sim"});

  const YAML::Node map_n = rd.section(root, "map");
  const YAML::Node dither_n = rd.section(root, "dither");
  const YAML::Node ctrl_n = rd.section(root, "controller");
  const YAML::Node trig_n = rd.section(root, "trigger");
  const YAML::Node init_n = rd.section(root, "init");
  const YAML::Node sim_n = rd.section(root, "sim", false);
  rd.only_keys(map_n, "map", {"Qstar", "Hstar", "thetastar"});
  rd.only_keys(dither_n, "dither", {"amplitudes", "multipliers", "omega"});
  rd.only_keys(ctrl_n, "controller", {"scheme", "K", "omega_r"});
  rd.only_keys(trig_n, "trigger", {"sigma", "alpha"});
  rd.only_keys(init_n, "init", {"theta_hat0", "gamma0"});
  if (sim_n) rd.only_keys(sim_n, "sim", {"h", "T_end", "stride", "refine_events", "riccati_ceiling"});

  // Each library precondition is re-anchored at the node that supplied it.
  std::map<std::string, YAML::Node> anchors = {
      {"map", map_n},           {"map.Qstar", map_n["Qstar"]},
      {"map.Hstar", map_n["Hstar"]}, {"map.thetastar", map_n["thetastar"]},
      {"dither", dither_n},     {"dither.amplitudes", dither_n["amplitudes"]},
      {"dither.multipliers", dither_n["multipliers"]}, {"dither.omega", dither_n["omega"]},
      {"controller", ctrl_n},   {"controller.scheme", ctrl_n["scheme"]},
      {"controller.K", ctrl_n["K"]}, {"controller.omega_r", ctrl_n["omega_r"]},
      {"trigger.sigma", trig_n["sigma"]}, {"trigger.alpha", trig_n["alpha"]},
      {"init.theta_hat0", init_n["theta_hat0"]}, {"init.gamma0", init_n["gamma0"]},
  };
  if (sim_n) {
    anchors.emplace("sim.h", sim_n["h"]);
    anchors.emplace("sim.T_end", sim_n["T_end"]);
    anchors.emplace("sim.stride", sim_n["stride"]);
    anchors.emplace("sim.riccati_ceiling", sim_n["riccati_ceiling"]);
  }
  auto anchor_of = [&](const std::string& field) {
    auto it = anchors.find(field);
    return (it != anchors.end() && it->second) ? it->second : root;
  };

  std::string name = "scenario";
  if (root["name"]) {
    if (!root["name"].IsScalar()) rd.fail(root["name"], "name", "expected a string");
    name = root["name"].Scalar();
  }

  try {
    QuadraticMap map = QuadraticMap::create(rd.number(map_n["Qstar"], "map.Qstar"),
                                            rd.matrix(map_n["Hstar"], "map.Hstar"),
                                            rd.vector(map_n["thetastar"], "map.thetastar"));
    DitherDesign design = DitherDesign::create(rd.vector(dither_n["amplitudes"], "dither.amplitudes"),
                                               rd.rationals(dither_n["multipliers"], "dither.multipliers"),
                                               rd.number(dither_n["omega"], "dither.omega"));
    const YAML::Node scheme_n = ctrl_n["scheme"];
    if (!scheme_n || !scheme_n.IsScalar()) rd.fail(ctrl_n, "controller.scheme", "missing scheme");
    const Scheme scheme = parse_scheme(scheme_n.Scalar());
    ControllerGains gains = ControllerGains::create(rd.vector(ctrl_n["K"], "controller.K"), scheme);
    const double omega_r =
        ctrl_n["omega_r"] ? rd.number(ctrl_n["omega_r"], "controller.omega_r") : kDefaultOmegaR;
    TriggerConfig trig = TriggerConfig::create(rd.number(trig_n["sigma"], "trigger.sigma"),
                                               rd.number(trig_n["alpha"], "trigger.alpha"));
    Vector theta_hat0 = rd.vector(init_n["theta_hat0"], "init.theta_hat0");
    Matrix gamma0 = init_n["gamma0"] ? rd.matrix(init_n["gamma0"], "init.gamma0") : Matrix();

    std::optional<double> h;
    double t_end = kDefaultHorizon;
    int stride = kDefaultStride;
    bool refine = false;
    double ceiling = kDefaultRiccatiCeiling;
    if (sim_n) {
      if (sim_n["riccati_ceiling"]) ceiling = rd.number(sim_n["riccati_ceiling"], "sim.riccati_ceiling");
      if (sim_n["h"]) h = rd.number(sim_n["h"], "sim.h");
      if (sim_n["T_end"]) t_end = rd.number(sim_n["T_end"], "sim.T_end");
      if (sim_n["stride"]) stride = rd.integer(sim_n["stride"], "sim.stride");
      if (sim_n["refine_events"]) {
        try {
          refine = sim_n["refine_events"].as<bool>();
        } catch (const YAML::Exception&) {
          rd.fail(sim_n["refine_events"], "sim.refine_events", "expected true or false");
        }
      }
    }
    Scenario sc = make_scenario(std::move(name), std::move(map), std::move(design), std::move(gains),
                                trig, std::move(theta_hat0), std::move(gamma0), omega_r, h, t_end,
                                stride);
    sc.refine_events = refine;
    sc.riccati_ceiling = ceiling;
    validate(sc);
    return sc;
  } catch (const ValidationError& e) {
    rd.fail(anchor_of(e.field()), e.field(), e.rule());
  }
}

Scenario parse_scenario(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ScenarioError(path.string(), 0, 0, "<file>", "cannot open scenario file");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_scenario_text(buf.str(), path.string());
}

std::string format_number(double value) {
  if (std::isnan(value)) return "nan";
  if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", value);
  return buf;
}

namespace {

std::string yaml_vector(const Vector& v) {
  std::string s = "[";
  for (Eigen::Index i = 0; i < v.size(); ++i) s += (i ? ", " : "") + format_number(v[i]);
  return s + "]";
}

std::string yaml_matrix(const Matrix& m) {
  std::string s = "[";
  for (Eigen::Index i = 0; i < m.rows(); ++i) s += (i ? ", " : "") + yaml_vector(m.row(i).transpose());
  return s + "]";
}

std::string quoted(const std::string& s) {
  std::string out = "\"";
  for (char c : s) {
    if (c == '"' || c == '\\') out += '\\';
    out += c;
  }
  return out + "\"";
}

}  // namespace

std::string emit_scenario(const Scenario& sc) {
  std::ostringstream os;
  os << "name: " << quoted(sc.name) << "\n";
  os << "map:\n"
     << "  Qstar: " << format_number(sc.map.q_star()) << "\n"
     << "  Hstar: " << yaml_matrix(sc.map.h_star()) << "\n"
     << "  thetastar: " << yaml_vector(sc.map.theta_star()) << "\n";
  os << "dither:\n"
     << "  amplitudes: " << yaml_vector(sc.design.amplitudes()) << "\n"
     << "  multipliers: [";
  for (std::size_t i = 0; i < sc.design.multipliers().size(); ++i) {
    os << (i ? ", " : "") << quoted(sc.design.multipliers()[i].to_string());
  }
  os << "]\n"
     << "  omega: " << format_number(sc.design.omega()) << "\n";
  os << "controller:\n"
     << "  scheme: " << to_string(sc.scheme()) << "\n"
     << "  K: " << yaml_vector(sc.gains.diagonal()) << "\n"
     << "  omega_r: " << format_number(sc.omega_r) << "\n";
  os << "trigger:\n"
     << "  sigma: " << format_number(sc.trigger.sigma) << "\n"
     << "  alpha: " << format_number(sc.trigger.alpha) << "\n";
  os << "init:\n"
     << "  theta_hat0: " << yaml_vector(sc.theta_hat0) << "\n"
     << "  gamma0: " << yaml_matrix(sc.gamma0) << "\n";
  os << "sim:\n";
  if (sc.step) os << "  h: " << format_number(*sc.step) << "\n";
  os << "  T_end: " << format_number(sc.t_end) << "\n"
     << "  stride: " << sc.stride << "\n"
     << "  refine_events: " << (sc.refine_events ? "true" : "false") << "\n"
     << "  riccati_ceiling: " << format_number(sc.riccati_ceiling) << "\n";
  return os.str();
}

std::vector<std::string> trajectory_columns(Eigen::Index n) {
  std::vector<std::string> cols{"t"};
  for (Eigen::Index i = 1; i <= n; ++i) cols.push_back("theta_" + std::to_string(i));
  cols.push_back("y");
  for (Eigen::Index i = 1; i <= n; ++i) cols.push_back("theta_hat_" + std::to_string(i));
  for (Eigen::Index i = 1; i <= n; ++i) cols.push_back("Ghat_" + std::to_string(i));
  for (Eigen::Index i = 1; i <= n; ++i) cols.push_back("u_" + std::to_string(i));
  for (Eigen::Index i = 1; i <= n; ++i) {
    for (Eigen::Index j = 1; j <= n; ++j) cols.push_back("Gamma_" + std::to_string(i) + std::to_string(j));
  }
  cols.push_back("margin");
  return cols;
}

void write_trajectory_csv(std::ostream& os, const Trajectory& traj, Eigen::Index n) {
  const auto cols = trajectory_columns(n);
  for (std::size_t i = 0; i < cols.size(); ++i) os << (i ? "," : "") << cols[i];
  os << "\n";
  for (const auto& r : traj) {
    std::string line = format_number(r.t);
    auto put = [&line](double v) { line += ","; line += format_number(v); };
    for (Eigen::Index i = 0; i < n; ++i) put(r.theta[i]);
    put(r.y);
    for (Eigen::Index i = 0; i < n; ++i) put(r.theta_hat[i]);
    for (Eigen::Index i = 0; i < n; ++i) put(r.g_hat[i]);
    for (Eigen::Index i = 0; i < n; ++i) put(r.u[i]);
    for (Eigen::Index i = 0; i < n; ++i) {
      for (Eigen::Index j = 0; j < n; ++j) put(r.gamma(i, j));
    }
    put(r.margin);
    os << line << "\n";
  }
}

void write_events_csv(std::ostream& os, const Report& report) {
  os << "scenario,index,t,margin,interval\n";
  for (const auto& e : report.entries) {
    const auto& recs = e.run.event_records;
    for (std::size_t k = 0; k < recs.size(); ++k) {
      const double interval = k == 0 ? std::nan("") : recs[k].t - recs[k - 1].t;
      os << e.run.name << "," << k << "," << format_number(recs[k].t) << ","
         << format_number(recs[k].margin) << "," << format_number(interval) << "\n";
    }
  }
}

namespace {

double gap_value(const ReportEntry& e) {
  return e.analysis && e.analysis->gap ? e.analysis->gap->theta_hat : std::nan("");
}

std::string envelope_flag(const ReportEntry& e) {
  if (!e.analysis) return "n/a";
  return e.analysis->envelopes.all_pass() ? "pass" : "fail";
}

}  // namespace

void write_comparison_csv(std::ostream& os, const Report& report) {
  os << "scenario,scheme,status,updates,min_interval,mean_interval,tau_star,convergence_time,"
        "final_theta_error,final_output_error,envelopes,averaging_gap\n";
  for (const auto& e : report.entries) {
    const RunSummary& s = e.run.summary;
    os << e.run.name << "," << to_string(e.run.scheme) << "," << to_string(s.status) << ","
       << s.update_count << "," << format_number(s.min_interval) << ","
       << format_number(s.mean_interval) << "," << format_number(s.tau_star) << ","
       << format_number(s.convergence_time) << "," << format_number(s.final_theta_error) << ","
       << format_number(s.final_output_error) << "," << envelope_flag(e) << ","
       << format_number(gap_value(e)) << "\n";
  }
}

void write_report_text(std::ostream& os, const Report& report, const std::vector<Scenario>& scenarios) {
  for (std::size_t i = 0; i < report.entries.size(); ++i) {
    const ReportEntry& e = report.entries[i];
    const RunSummary& s = e.run.summary;
    os << "== " << e.run.name << " (" << to_string(e.run.scheme) << ")\n";
    os << "status:                " << to_string(s.status);
    if (!s.diagnostic.empty()) os << " -- " << s.diagnostic;
    os << "\n";
    os << "step h:                " << format_number(s.step) << "  steps: " << s.steps << "\n";
    os << "control updates:       " << s.update_count << "\n";
    os << "min / mean interval:   " << format_number(s.min_interval) << " / "
       << format_number(s.mean_interval) << "\n";
    os << "tau* (omega -> inf):   " << format_number(s.tau_star) << "\n";
    os << "convergence time:      " << format_number(s.convergence_time) << "\n";
    os << "final |theta - theta*|: " << format_number(s.final_theta_error) << "\n";
    os << "final |y - Q*|:        " << format_number(s.final_output_error) << "\n";
    os << "min non-event margin:  " << format_number(s.min_non_event_margin) << "\n";
    if (e.analysis) {
      const NewtonAnalysis& a = *e.analysis;
      os << "alpha_min (Q = I):     " << format_number(a.alpha_min) << "\n";
      os << "Lyapunov residuals:    " << format_number(a.lyapunov_residual_p1) << ", "
         << format_number(a.lyapunov_residual_p2) << "\n";
      const EnvelopeCheck& env = a.envelopes;
      os << "envelopes:             theta " << (env.theta.pass ? "pass" : "fail") << ", y "
         << (env.output.pass ? "pass" : "fail") << ", Ghat " << (env.g_hat.pass ? "pass" : "fail")
         << ", Gamma " << (env.gamma.pass ? "pass" : "fail") << "\n";
      if (a.gap) os << "averaging gap (theta_hat): " << format_number(a.gap->theta_hat) << "\n";
      os << "averaged-loop updates: " << a.averaged_update_count << "\n";
    }
    if (!e.analysis_note.empty()) os << "note:                  " << e.analysis_note << "\n";
    if (i < scenarios.size()) os << "-- scenario as run --\n" << emit_scenario(scenarios[i]);
    os << "\n";
  }
  if (report.entries.size() > 1) {
    os << "== comparison\n";
    os << std::left << std::setw(28) << "scenario" << std::setw(22) << "scheme" << std::setw(10)
       << "status" << "updates\n";
    for (const auto& e : report.entries) {
      os << std::left << std::setw(28) << e.run.name << std::setw(22) << to_string(e.run.scheme)
         << std::setw(10) << to_string(e.run.summary.status) << e.run.summary.update_count << "\n";
    }
  }
}

namespace {

nlohmann::json num(double v) {
  if (!std::isfinite(v)) return nullptr;
  return v;
}

nlohmann::json vec(const Vector& v) {
  nlohmann::json a = nlohmann::json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) a.push_back(num(v[i]));
  return a;
}

nlohmann::json quantity(const EnvelopeQuantity& q) {
  return {{"pass", q.pass}, {"worst_ratio", num(q.worst_ratio)}, {"first_violation", num(q.first_violation)}};
}

}  // namespace

std::string report_json(const Report& report, const std::vector<Scenario>& scenarios) {
  nlohmann::json root;
  root["scenarios"] = nlohmann::json::array();
  for (std::size_t i = 0; i < report.entries.size(); ++i) {
    const ReportEntry& e = report.entries[i];
    const RunSummary& s = e.run.summary;
    nlohmann::json j;
    j["name"] = e.run.name;
    j["scheme"] = std::string(to_string(e.run.scheme));
    j["status"] = to_string(s.status);
    j["diagnostic"] = s.diagnostic;
    j["step"] = num(s.step);
    j["steps"] = s.steps;
    j["update_count"] = s.update_count;
    nlohmann::json times = nlohmann::json::array();
    for (double t : e.run.events.times()) times.push_back(num(t));
    j["event_times"] = times;
    j["min_interval"] = num(s.min_interval);
    j["mean_interval"] = num(s.mean_interval);
    j["tau_star"] = num(s.tau_star);
    j["convergence_time"] = num(s.convergence_time);
    j["final_time"] = num(s.final_time);
    j["final_theta_error"] = num(s.final_theta_error);
    j["final_theta_hat_error"] = num(s.final_theta_hat_error);
    j["final_output_error"] = num(s.final_output_error);
    j["final_theta_hat"] = vec(s.final_theta_hat);
    j["min_non_event_margin"] = num(s.min_non_event_margin);
    j["max_error_after_fire"] = num(s.max_error_after_fire);
    if (e.analysis) {
      const NewtonAnalysis& a = *e.analysis;
      nlohmann::json an;
      an["alpha_min"] = num(a.alpha_min);
      an["lyapunov_residual_p1"] = num(a.lyapunov_residual_p1);
      an["lyapunov_residual_p2"] = num(a.lyapunov_residual_p2);
      an["averaged_update_count"] = a.averaged_update_count;
      const EnvelopeCheck& env = a.envelopes;
      an["envelopes"] = {{"pass", env.all_pass()},
                         {"theta", quantity(env.theta)},
                         {"output", quantity(env.output)},
                         {"g_hat", quantity(env.g_hat)},
                         {"gamma", quantity(env.gamma)},
                         {"constants",
                          {{"theta", num(env.constants.theta)},
                           {"output", num(env.constants.output)},
                           {"g_hat", num(env.constants.g_hat)},
                           {"gamma", num(env.constants.gamma)}}}};
      if (a.gap) {
        an["averaging_gap"] = {{"theta_hat", num(a.gap->theta_hat)},
                               {"g_hat", num(a.gap->g_hat)},
                               {"gamma", num(a.gap->gamma)}};
      } else {
        an["averaging_gap"] = nullptr;
      }
      j["analysis"] = an;
    } else {
      j["analysis"] = nullptr;
    }
    j["note"] = e.analysis_note;
    if (i < scenarios.size()) j["scenario_yaml"] = emit_scenario(scenarios[i]);
    root["scenarios"].push_back(j);
  }
  return root.dump(2) + "\n";
}

std::string emit_plot_script(const Report& report, const std::vector<std::string>& trajectory_files,
                             const std::string& events_file) {
  bool empty = true;
  for (const auto& e : report.entries) {
    if (e.run.trajectory.size() > 1) empty = false;
  }
  std::ostringstream os;
  os << "#!/usr/bin/env python3\n";
  os << "# Renders theta(t), u(t), y(t), the update staircase and Gamma(t) from the CSV outputs.\n";
  if (empty) os << "# warning: the trajectories hold no samples beyond t = 0; panels will be empty.\n";
  os << "import csv\nimport os\nimport sys\n\n"
        "import matplotlib\nmatplotlib.use(\"Agg\")\nimport matplotlib.pyplot as plt\n\n"
        "HERE = os.path.dirname(os.path.abspath(__file__))\n";
  os << "TRAJECTORIES = [";
  for (std::size_t i = 0; i < trajectory_files.size(); ++i) {
    const std::string name = i < report.entries.size() ? report.entries[i].run.name : "run";
    os << (i ? ", " : "") << "(\"" << name << "\", \"" << trajectory_files[i] << "\")";
  }
  os << "]\n";
  os << "EVENTS = \"" << events_file << "\"\n\n";
  os << R"PY(

def read(path):
    with open(os.path.join(HERE, path), newline="") as f:
        rows = list(csv.DictReader(f))
    cols = {}
    for row in rows:
        for k, v in row.items():
            cols.setdefault(k, []).append(float(v))
    return cols


def series(cols, prefix):
    return sorted(k for k in cols if k.startswith(prefix) and k[len(prefix):].isdigit())


def main():
    fig, axes = plt.subplots(5, 1, figsize=(9, 14), sharex=True)
    ax_theta, ax_u, ax_y, ax_ev, ax_gamma = axes
    for name, path in TRAJECTORIES:
        cols = read(path)
        t = cols.get("t", [])
        for k in series(cols, "theta_"):
            ax_theta.plot(t, cols[k], label=f"{name} {k}")
        for k in series(cols, "u_"):
            ax_u.step(t, cols[k], where="post", label=f"{name} {k}")
        if "y" in cols:
            ax_y.plot(t, cols["y"], label=name)
        for k in series(cols, "Gamma_"):
            ax_gamma.plot(t, cols[k], label=f"{name} {k}")
    by_scenario = {}
    with open(os.path.join(HERE, EVENTS), newline="") as f:
        for row in csv.DictReader(f):
            by_scenario.setdefault(row["scenario"], []).append(float(row["t"]))
    for name, times in by_scenario.items():
        ax_ev.step(times, range(1, len(times) + 1), where="post", label=name)
    ax_theta.set_ylabel("theta")
    ax_u.set_ylabel("u")
    ax_y.set_ylabel("y")
    ax_ev.set_ylabel("updates")
    ax_gamma.set_ylabel("Gamma")
    ax_gamma.set_xlabel("t [s]")
    for ax in axes:
        if ax.get_legend_handles_labels()[0]:
            ax.legend(fontsize="small")
        ax.grid(True, alpha=0.3)
    fig.tight_layout()
    out = sys.argv[1] if len(sys.argv) > 1 else os.path.join(HERE, "plots.png")
    fig.savefig(out, dpi=120)
    print(out)


if __name__ == "__main__":
    main()
)PY";
  return os.str();
}

}  // namespace etnes
