#include "aniso/io.hpp"

#include "aniso/config.hpp"

#include <chrono>
#include <cstdlib>
#include <ctime>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace aniso {

std::string timestamp_comment(const std::string& label) {
  const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm utc{};
  gmtime_r(&now, &utc);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &utc);
  return "# " + label + " created " + buf;
}

void write_diagnostics_csv(std::ostream& out, const Trajectory& traj, const std::string& comment) {
  if (!comment.empty()) out << comment << "\n";
  out << kDiagnosticsHeader << "\n";
  for (const auto& r : traj.rows) {
    out << format_number(r.t) << ',' << format_number(r.mean) << ',' << format_number(r.l1_to_mean)
        << ',' << format_number(r.l2_energy) << ',' << format_number(r.linf) << ','
        << format_number(r.dissipation_resolved) << ',' << format_number(r.dissipation_budget)
        << "\n";
  }
}

Trajectory read_diagnostics_csv(std::istream& in) {
  Trajectory traj;
  std::string line;
  bool header_seen = false;
  while (std::getline(in, line)) {
    if (line.empty() || line.front() == '#') continue;
    if (!header_seen) {
      if (line != kDiagnosticsHeader) throw std::runtime_error("unexpected diagnostics header");
      header_seen = true;
      continue;
    }
    std::stringstream ss(line);
    std::string cell;
    std::vector<double> v;
    while (std::getline(ss, cell, ',')) {
      char* end = nullptr;
      const double x = std::strtod(cell.c_str(), &end);
      if (end == cell.c_str() || *end != '\0') throw std::runtime_error("bad number '" + cell + "'");
      v.push_back(x);
    }
    if (v.size() != 7) throw std::runtime_error("diagnostics row needs 7 columns");
    traj.rows.push_back({v[0], v[1], v[2], v[3], v[4], v[5], v[6]});
  }
  return traj;
}

void write_snapshot_csv(std::ostream& out, const CellField& field, const PeriodicGrid& grid) {
  out << "# t=" << format_number(field.time) << "\n";
  if (grid.dimension() == 1) {
    out << "x,u\n";
    for (int i = 0; i < grid.cells(0); ++i) {
      out << format_number(grid.center(0, i)) << ',' << format_number(field.values[grid.index(i)])
          << "\n";
    }
    return;
  }
  out << "x,y,u\n";
  for (int i = 0; i < grid.cells(0); ++i) {
    for (int j = 0; j < grid.cells(1); ++j) {
      out << format_number(grid.center(0, i)) << ',' << format_number(grid.center(1, j)) << ','
          << format_number(field.values[grid.index(i, j)]) << "\n";
    }
  }
}

void write_condition_csv(std::ostream& out, const ConditionReport& report, int dimension,
                         const std::string& comment) {
  if (!comment.empty()) out << comment << "\n";
  out << "lambda,omega,tau_witness";
  for (int i = 0; i < dimension; ++i) out << ",kappa_witness_" << i + 1;
  out << "\n";
  for (std::size_t n = 0; n < report.lambdas.size(); ++n) {
    out << format_number(report.lambdas[n]) << ',' << format_number(report.omegas[n]) << ','
        << format_number(report.witnesses[n].tau);
    for (int i = 0; i < dimension; ++i) out << ',' << format_number(report.witnesses[n].kappa(i));
    out << "\n";
  }
}

namespace {

nlohmann::json optional_number(const std::optional<double>& v) {
  return v ? nlohmann::json(*v) : nlohmann::json(nullptr);
}

nlohmann::json check_json(const CheckResult& c) {
  return {{"passed", c.passed},
          {"worst_residual", c.worst_residual},
          {"tolerance", c.tolerance},
          {"worst_at", c.worst_at}};
}

}  // namespace

nlohmann::json to_json(const AuditReport& r) {
  return {{"record", "audit"},
          {"passed", r.passed()},
          {"max_principle_violation", r.max_principle_violation},
          {"energy_monotonicity_violation", r.energy_monotonicity_violation},
          {"contraction_violation", r.contraction_violation},
          {"mean_drift", r.mean_drift},
          {"budget_violations", r.budget_violations},
          {"budget_tolerance", r.budget_tolerance},
          {"budget_telescoping_error", r.budget_telescoping_error},
          {"total_budget", r.total_budget},
          {"global_budget_bound", r.global_budget_bound},
          {"decay_achieved", r.decay_achieved},
          {"decay_threshold", r.decay_threshold},
          {"decay_time", optional_number(r.decay_time)}};
}

nlohmann::json to_json(const ModelValidationReport& r) {
  nlohmann::json j = {{"record", "model_validation"},
                      {"passed", r.passed()},
                      {"samples", r.samples},
                      {"symmetry", check_json(r.symmetry)},
                      {"psd", check_json(r.psd)},
                      {"factorization", check_json(r.factorization)},
                      {"primitives", check_json(r.primitives)},
                      {"chain_rule", check_json(r.chain_rule)}};
  if (!r.error.empty()) j["error"] = r.error;
  return j;
}

nlohmann::json to_json(const ConditionReport& r) {
  return {{"record", "condition"},
          {"verdict", to_string(r.verdict)},
          {"delta", r.delta},
          {"state_bound", r.state_bound},
          {"pass_threshold", r.pass_threshold},
          {"trend_ratio", r.trend_ratio},
          {"monotone", r.monotone},
          {"lambdas", r.lambdas},
          {"omegas", r.omegas}};
}

std::vector<nlohmann::json> to_json_lines(const DecaySummary& s) {
  std::vector<nlohmann::json> lines;
  for (std::size_t i = 0; i < s.thresholds.size(); ++i) {
    lines.push_back({{"record", "decay_threshold"},
                     {"theta", s.thresholds[i]},
                     {"target", s.thresholds[i] * s.initial_l1},
                     {"time", optional_number(s.times[i])}});
  }
  lines.push_back({{"record", "decay_tail"},
                   {"initial_l1", s.initial_l1},
                   {"tail_slope", optional_number(s.tail_slope)},
                   {"tail_points", s.tail_points}});
  return lines;
}

std::string to_text(const AuditReport& r) {
  std::ostringstream out;
  auto line = [&](const char* name, double value, double tol) {
    out << "  " << name << ": " << format_number(value) << " (tolerance " << format_number(tol)
        << ")" << (value <= tol ? "" : "  VIOLATED") << "\n";
  };
  out << "audit: " << (r.passed() ? "pass" : "FAIL") << "\n";
  line("max principle violation", r.max_principle_violation, r.tolerances.max_principle);
  line("energy monotonicity violation", r.energy_monotonicity_violation, r.tolerances.energy);
  line("L1 contraction violation", r.contraction_violation, r.tolerances.contraction);
  line("mean drift", r.mean_drift, r.tolerances.mean_drift);
  line("budget telescoping error", r.budget_telescoping_error, r.tolerances.telescoping);
  out << "  windows with resolved dissipation above budget: " << r.budget_violations
      << " (slack " << format_number(r.budget_tolerance) << ")\n";
  out << "  total budget " << format_number(r.total_budget) << " <= bound "
      << format_number(r.global_budget_bound) << "\n";
  out << "  decay to " << format_number(r.decay_threshold) << ": ";
  if (r.decay_time) out << "reached at t = " << format_number(*r.decay_time) << "\n";
  else out << "not reached\n";
  return out.str();
}

std::string to_text(const DecaySummary& s) {
  std::ostringstream out;
  out << "decay of ||u - mean||_L1 from " << format_number(s.initial_l1) << ":\n";
  for (std::size_t i = 0; i < s.thresholds.size(); ++i) {
    out << "  theta = " << format_number(s.thresholds[i]) << ": ";
    if (s.times[i]) out << "t = " << format_number(*s.times[i]) << "\n";
    else out << "not reached\n";
  }
  out << "  tail log-log slope: ";
  if (s.tail_slope) out << format_number(*s.tail_slope) << " (" << s.tail_points << " points)\n";
  else out << "n/a\n";
  return out.str();
}

std::string to_text(const ModelValidationReport& r) {
  std::ostringstream out;
  auto line = [&](const char* name, const CheckResult& c) {
    out << "  " << name << ": " << (c.passed ? "ok" : "FAILED") << ", worst residual "
        << format_number(c.worst_residual) << " at u = " << format_number(c.worst_at)
        << " (tolerance " << format_number(c.tolerance) << ")\n";
  };
  out << "model validation: " << (r.passed() ? "pass" : "FAIL") << " (" << r.samples
      << " samples)\n";
  line("symmetry", r.symmetry);
  line("positive semidefinite", r.psd);
  line("factorization", r.factorization);
  line("primitives", r.primitives);
  line("chain rule", r.chain_rule);
  if (!r.error.empty()) out << "  evaluation error: " << r.error << "\n";
  return out.str();
}

}  // namespace aniso
