#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

#include "etnes/analysis.hpp"
#include "etnes/errors.hpp"
#include "etnes/io.hpp"
#include "etnes/report.hpp"
#include "etnes/signals.hpp"
#include "etnes/trigger.hpp"

namespace py = pybind11;
using namespace etnes;

namespace {

py::dict summary_dict(const RunResult& r) {
  const RunSummary& s = r.summary;
  py::dict d;
  d["name"] = r.name;
  d["scheme"] = std::string(to_string(r.scheme));
  d["status"] = std::string(to_string(s.status));
  d["diagnostic"] = s.diagnostic;
  d["step"] = s.step;
  d["steps"] = s.steps;
  d["update_count"] = s.update_count;
  d["event_times"] = r.events.times();
  d["min_interval"] = s.min_interval;
  d["mean_interval"] = s.mean_interval;
  d["tau_star"] = s.tau_star;
  d["convergence_time"] = s.convergence_time;
  d["final_theta_error"] = s.final_theta_error;
  d["final_theta_hat_error"] = s.final_theta_hat_error;
  d["final_output_error"] = s.final_output_error;
  d["final_theta_hat"] = s.final_theta_hat;
  d["min_non_event_margin"] = s.min_non_event_margin;
  return d;
}

py::dict trajectory_dict(const Trajectory& traj) {
  const auto rows = static_cast<Eigen::Index>(traj.size());
  const Eigen::Index n = traj.empty() ? 0 : traj.front().theta_hat.size();
  Vector t(rows), y(rows), margin(rows);
  Matrix theta(rows, n), theta_hat(rows, n), g_hat(rows, n), u(rows, n), gamma(rows, n * n);
  for (Eigen::Index i = 0; i < rows; ++i) {
    const TrajectoryRecord& r = traj[static_cast<std::size_t>(i)];
    t[i] = r.t;
    y[i] = r.y;
    margin[i] = r.margin;
    theta.row(i) = r.theta.transpose();
    theta_hat.row(i) = r.theta_hat.transpose();
    g_hat.row(i) = r.g_hat.transpose();
    u.row(i) = r.u.transpose();
    for (Eigen::Index a = 0; a < n; ++a) {
      for (Eigen::Index b = 0; b < n; ++b) gamma(i, a * n + b) = r.gamma(a, b);
    }
  }
  py::dict d;
  d["t"] = t;
  d["theta"] = theta;
  d["y"] = y;
  d["theta_hat"] = theta_hat;
  d["g_hat"] = g_hat;
  d["u"] = u;
  d["gamma"] = gamma;
  d["margin"] = margin;
  return d;
}

std::vector<Rational> parse_rationals(const std::vector<std::string>& items) {
  std::vector<Rational> out;
  for (const auto& s : items) out.push_back(Rational::parse(s));
  return out;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Event-triggered Newton extremum seeking: simulation and analysis core";

  py::register_exception<ValidationError>(m, "ValidationError", PyExc_ValueError);
  py::register_exception<ScenarioError>(m, "ScenarioError", PyExc_ValueError);
  py::register_exception<SimulationError>(m, "SimulationError", PyExc_RuntimeError);

  py::class_<Scenario>(m, "Scenario")
      .def_readonly("name", &Scenario::name)
      .def_property_readonly("scheme", [](const Scenario& s) { return std::string(to_string(s.scheme())); })
      .def_property_readonly("step", &Scenario::effective_step)
      .def_readwrite("t_end", &Scenario::t_end)
      .def_readwrite("stride", &Scenario::stride)
      .def_readwrite("refine_events", &Scenario::refine_events)
      .def_property_readonly("period", [](const Scenario& s) { return s.design.period(); })
      .def("with_step", [](const Scenario& s, double h) { Scenario c = s; c.step = h; validate(c); return c; })
      .def("with_omega", [](const Scenario& s, double w) {
        Scenario c = s;
        c.design = c.design.with_omega(w);
        validate(c);
        return c;
      })
      .def("to_yaml", &emit_scenario)
      .def("__repr__", [](const Scenario& s) {
        return "<Scenario " + s.name + " (" + std::string(to_string(s.scheme())) + ")>";
      });

  m.def("parse_scenario", &parse_scenario, py::arg("path"));
  m.def("parse_scenario_text", &parse_scenario_text, py::arg("text"), py::arg("source") = "<string>");

  m.def(
      "run",
      [](const Scenario& sc) {
        RunResult r;
        {
          py::gil_scoped_release release;
          r = simulate(sc);
        }
        py::dict d = summary_dict(r);
        d["trajectory"] = trajectory_dict(r.trajectory);
        return d;
      },
      py::arg("scenario"), "Simulate one scenario; divergence is reported in the 'status' field.");

  m.def(
      "compare",
      [](const std::vector<Scenario>& scenarios) {
        Report rep;
        {
          py::gil_scoped_release release;
          rep = run_comparison(scenarios);
        }
        return report_json(rep, scenarios);
      },
      py::arg("scenarios"), "Run scenarios side by side and return the JSON report text.");

  m.def(
      "check_probing_frequencies",
      [](const std::vector<std::string>& multipliers) {
        const auto rs = parse_rationals(multipliers);
        const FrequencyReport rep = check_probing_frequencies(rs);
        std::vector<std::string> issues;
        for (const auto& v : rep.violations) issues.push_back(v.describe(rs));
        return py::make_tuple(rep.ok, issues);
      },
      py::arg("multipliers"));

  m.def(
      "common_period",
      [](const std::vector<std::string>& multipliers, double omega) {
        const auto rs = parse_rationals(multipliers);
        return 2.0 * 3.14159265358979323846 * period_factor(rs).to_double() / omega;
      },
      py::arg("multipliers"), py::arg("omega"));

  m.def(
      "solve_lyapunov",
      [](const Matrix& a, const Matrix& q) {
        const LyapunovCertificate c = solve_lyapunov(a, q);
        return py::make_tuple(c.p, c.residual);
      },
      py::arg("a"), py::arg("q"));

  m.def(
      "zeno_lower_bound",
      [](double k_norm, double sigma, double alpha) {
        return zeno_lower_bound(k_norm, TriggerConfig::create(sigma, alpha));
      },
      py::arg("k_norm"), py::arg("sigma"), py::arg("alpha"));
}
