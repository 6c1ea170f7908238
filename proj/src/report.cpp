#include "etnes/report.hpp"

#include <future>
#include <stdexcept>

namespace etnes {

bool Report::all_completed() const {
  for (const auto& e : entries) {
    if (e.run.summary.status != RunStatus::Completed) return false;
  }
  return true;
}

ReportEntry analyze(const Scenario& sc) {
  ReportEntry entry;
  entry.run = simulate(sc);
  if (!is_newton(sc.scheme())) {
    entry.analysis_note = "averaged-system analysis applies to Newton schemes only";
    return entry;
  }
  if (entry.run.summary.status != RunStatus::Completed) {
    entry.analysis_note = "run diverged; analysis skipped";
    return entry;
  }
  const Eigen::Index n = sc.map.size();
  const Matrix q = Matrix::Identity(n, n);
  const Matrix k = sc.gains.matrix();
  NewtonAnalysis a;
  const CertificatePair certs = certify(k, sc.map.h_star(), q);
  a.alpha_min = alpha_lower_bound(certs.p1, k, sc.map.h_star());
  a.lyapunov_residual_p1 = certs.p1.residual;
  a.lyapunov_residual_p2 = certs.p2.residual;
  a.envelopes = check_envelopes(sc, entry.run.trajectory);
  if (is_event_triggered(sc.scheme())) {
    const AveragedRun avg = run_averaged(sc);
    a.averaged_update_count = avg.events.count();
    if (avg.status == RunStatus::Completed) {
      a.gap = averaging_gap(entry.run.trajectory, avg.trajectory);
    } else {
      entry.analysis_note = "averaged run diverged: " + avg.diagnostic;
    }
  }
  entry.analysis = std::move(a);
  return entry;
}

Report run_comparison(const std::vector<Scenario>& scenarios) {
  if (scenarios.empty()) throw std::invalid_argument("run_comparison: no scenarios");
  std::vector<std::future<ReportEntry>> jobs;
  jobs.reserve(scenarios.size());
  for (const auto& sc : scenarios) {
    jobs.push_back(std::async(std::launch::async, [&sc] { return analyze(sc); }));
  }
  Report report;
  for (auto& job : jobs) report.entries.push_back(job.get());
  return report;
}

}  // namespace etnes
