#include "aniso/experiment.hpp"

#include "aniso/io.hpp"
#include "aniso/parallel.hpp"

#include <cmath>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <numbers>
#include <sstream>

namespace aniso {

namespace fs = std::filesystem;

ModelSpec build_model(const ModelConfig& config) {
  if (config.inline_model) {
    PolynomialModel poly = *config.inline_model;
    poly.state_bound = config.state_bound;
    return make_polynomial_model(poly);
  }
  return make_preset(config.name, config.state_bound);
}

PeriodicGrid build_grid(const GridConfig& config) {
  std::vector<double> periods = config.periods;
  if (periods.empty()) periods.assign(config.cells.size(), 1.0);
  return PeriodicGrid(periods, config.cells);
}

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

double sign_of(double v) { return (v > 0.0) - (v < 0.0); }

}  // namespace

Profile build_profile(const ProfileConfig& config, const PeriodicGrid& grid) {
  const double amp = config.amplitude;
  const double offset = config.offset;
  const double px = grid.period(0);
  const bool two_d = grid.dimension() == 2;
  const double py = two_d ? grid.period(1) : 1.0;
  const int modes = config.modes;

  switch (config.kind) {
    case ProfileKind::sine:
      return [=](double x, double y) {
        const double sx = std::sin(kTwoPi * x / px);
        return offset + amp * (two_d ? sx * std::sin(kTwoPi * y / py) : sx);
      };
    case ProfileKind::square_wave:
      return [=](double x, double y) {
        const double sx = sign_of(std::sin(kTwoPi * x / px));
        return offset + amp * (two_d ? sx * sign_of(std::sin(kTwoPi * y / py)) : sx);
      };
    case ProfileKind::multi_sine: {
      double norm = 0.0;
      for (int k = 1; k <= modes; ++k) norm += 1.0 / k;
      auto series = [=](double s, double period) {
        double acc = 0.0;
        for (int k = 1; k <= modes; ++k) acc += std::sin(kTwoPi * k * s / period) / k;
        return acc / norm;
      };
      return [=](double x, double y) {
        const double sx = series(x, px);
        return offset + amp * (two_d ? sx * series(y, py) : sx);
      };
    }
    case ProfileKind::random: {
      Lcg rng(config.seed);
      std::vector<double> coeff, phase, wave_y;
      double norm = 0.0;
      for (int k = 1; k <= modes; ++k) {
        coeff.push_back(2.0 * rng.uniform() - 1.0);
        phase.push_back(kTwoPi * rng.uniform());
        if (two_d) {
          wave_y.push_back(std::floor(rng.uniform() * (2 * modes + 1)) - modes);
        } else {
          wave_y.push_back(0.0);
        }
        norm += std::abs(coeff.back()) / k;
      }
      if (norm == 0.0) norm = 1.0;
      return [=](double x, double y) {
        double acc = 0.0;
        for (int k = 1; k <= modes; ++k) {
          const double arg = kTwoPi * (k * x / px + wave_y[k - 1] * y / py) + phase[k - 1];
          acc += coeff[k - 1] * std::sin(arg) / k;
        }
        return offset + amp * acc / norm;
      };
    }
  }
  throw std::logic_error("unhandled profile kind");
}

CellField build_initial_field(const ExperimentConfig& config, const PeriodicGrid& grid) {
  CellField field = init_field(grid, build_profile(config.initial, grid));
  if (config.initial.zero_mean) {
    const double m = mean(field, grid);
    for (double& v : field.values) v -= m;
  }
  return field;
}

SamplingPlan build_sampling_plan(const ConditionConfig& config, const GridConfig& grid) {
  SamplingPlan plan;
  plan.r_max = config.r_max;
  plan.n_dir = config.n_dir;
  plan.n_resonant = config.n_resonant;
  plan.lattice = config.lattice;
  plan.lattice_extent = config.lattice_extent;
  plan.periods = grid.periods;
  if (plan.periods.empty()) plan.periods.assign(grid.cells.size(), 1.0);
  return plan;
}

std::vector<double> lambda_ladder(double floor) {
  if (!(floor > 0.0) || floor >= 1.0) throw std::invalid_argument("lambda floor must be in (0, 1)");
  std::vector<double> ladder;
  for (int k = 1;; ++k) {
    const double lambda = std::pow(10.0, -k);
    if (lambda < floor * (1.0 + 1e-12)) break;
    ladder.push_back(lambda);
  }
  if (ladder.empty() || std::abs(ladder.back() - floor) > 1e-12 * floor) ladder.push_back(floor);
  return ladder;
}

namespace {

std::ostream& out_of(const CommandOptions& o) { return o.out ? *o.out : std::cout; }
std::ostream& err_of(const CommandOptions& o) { return o.err ? *o.err : std::cerr; }

std::ofstream open_artifact(const fs::path& path) {
  std::ofstream f(path);
  if (!f) throw std::runtime_error("cannot write " + path.string());
  return f;
}

void write_run_artifacts(const ExperimentConfig& config, const PeriodicGrid& grid,
                         const RunOutcome& outcome) {
  const fs::path dir(config.output_dir);
  fs::create_directories(dir);
  {
    auto f = open_artifact(dir / "diagnostics.csv");
    write_diagnostics_csv(f, outcome.trajectory, timestamp_comment("aniso run " + config.model.name));
  }
  if (!outcome.trajectory.snapshots.empty()) {
    fs::create_directories(dir / "snapshots");
    for (std::size_t i = 0; i < outcome.trajectory.snapshots.size(); ++i) {
      std::ostringstream name;
      name << "snapshot_" << std::setw(4) << std::setfill('0') << i << ".csv";
      auto f = open_artifact(dir / "snapshots" / name.str());
      write_snapshot_csv(f, outcome.trajectory.snapshots[i], grid);
    }
  }
  {
    auto f = open_artifact(dir / "audit.jsonl");
    f << to_json(outcome.audit).dump() << "\n";
  }
  {
    auto f = open_artifact(dir / "audit.txt");
    f << to_text(outcome.audit);
  }
  {
    auto f = open_artifact(dir / "decay.jsonl");
    for (const auto& line : to_json_lines(outcome.decay)) f << line.dump() << "\n";
  }
  {
    auto f = open_artifact(dir / "decay.txt");
    f << to_text(outcome.decay);
  }
  {
    auto f = open_artifact(dir / "config.ini");
    f << serialize_config(config);
  }
}

}  // namespace

RunOutcome execute_run(const ExperimentConfig& config) {
  const ModelSpec model = build_model(config.model);
  const PeriodicGrid grid = build_grid(config.grid);
  RunOptions options;
  options.contraction_constants = config.contraction_constants;
  RunOutcome outcome;
  outcome.trajectory = run(model, grid, build_initial_field(config, grid), config.scheme, options);
  outcome.audit = audit(outcome.trajectory);
  outcome.decay = decay_summary(outcome.trajectory);
  return outcome;
}

int cmd_run(const ExperimentConfig& config, const CommandOptions& options) {
  std::ostream& out = out_of(options);
  std::ostream& err = err_of(options);
  try {
    const PeriodicGrid grid = build_grid(config.grid);
    RunOutcome outcome;
    try {
      outcome = execute_run(config);
    } catch (const BlowUpError& e) {
      err << "error: " << e.what() << "\n";
      if (e.partial) {
        fs::create_directories(config.output_dir);
        auto f = open_artifact(fs::path(config.output_dir) / "diagnostics.csv");
        write_diagnostics_csv(f, *e.partial,
                              timestamp_comment("aniso run " + config.model.name + " (partial)"));
      }
      return kExitRuntimeError;
    }
    write_run_artifacts(config, grid, outcome);
    if (!options.quiet) {
      out << to_text(outcome.audit) << to_text(outcome.decay);
      out << "artifacts written to " << config.output_dir << "\n";
    }
    return outcome.audit.passed() ? kExitOk : kExitAuditFail;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitRuntimeError;
  }
}

namespace {

int exit_code(Verdict v) {
  switch (v) {
    case Verdict::pass: return kExitOk;
    case Verdict::fail: return kExitConditionFail;
    case Verdict::inconclusive: return kExitInconclusive;
  }
  return kExitRuntimeError;
}

std::string verdict_line(const ConditionReport& r, std::size_t n_points) {
  std::ostringstream line;
  line << "verdict: " << to_string(r.verdict) << " (omega at lambda=" << format_number(r.lambdas.back())
       << " is " << format_number(r.omegas.back()) << ", threshold "
       << format_number(r.pass_threshold) << ", trend ratio " << format_number(r.trend_ratio)
       << (r.monotone ? "" : ", non-monotone") << "; sampled lower bound over " << n_points
       << " frequencies)";
  return line.str();
}

struct ConditionOutcome {
  ConditionReport report;
  std::size_t points = 0;
};

ConditionOutcome evaluate_condition(const ExperimentConfig& config) {
  const ModelSpec model = build_model(config.model);
  const SamplingPlan plan = build_sampling_plan(config.condition, config.grid);
  ConditionOutcome outcome;
  outcome.points = sampling_points(model, config.condition.delta, plan).size();
  outcome.report = check_condition(model, config.condition.delta, config.condition.lambdas, plan);
  return outcome;
}

void write_condition_artifacts(const ExperimentConfig& config, const ConditionOutcome& outcome,
                               int dimension) {
  const fs::path dir(config.output_dir);
  fs::create_directories(dir);
  {
    auto f = open_artifact(dir / "condition.csv");
    write_condition_csv(f, outcome.report, dimension,
                        timestamp_comment("aniso check-condition " + config.model.name));
  }
  {
    auto f = open_artifact(dir / "condition.jsonl");
    f << to_json(outcome.report).dump() << "\n";
  }
}

}  // namespace

int cmd_check_condition(const ExperimentConfig& config, const CommandOptions& options) {
  std::ostream& out = out_of(options);
  std::ostream& err = err_of(options);
  try {
    const ConditionOutcome outcome = evaluate_condition(config);
    write_condition_artifacts(config, outcome, build_model(config.model).dimension);
    out << verdict_line(outcome.report, outcome.points) << "\n";
    return exit_code(outcome.report.verdict);
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitRuntimeError;
  }
}

int cmd_validate_model(const ExperimentConfig& config, const CommandOptions& options) {
  std::ostream& out = out_of(options);
  std::ostream& err = err_of(options);
  try {
    const ModelSpec model = build_model(config.model);
    const ModelValidationReport report = validate_model(model, 101);
    fs::create_directories(config.output_dir);
    auto f = open_artifact(fs::path(config.output_dir) / "validation.jsonl");
    f << to_json(report).dump() << "\n";
    if (!options.quiet || !report.passed()) out << to_text(report);
    return report.passed() ? kExitOk : kExitAuditFail;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitRuntimeError;
  }
}

const std::vector<std::string>& sweep_axes() {
  static const std::vector<std::string> axes = {"cells", "cfl", "amplitude", "lambda_floor"};
  return axes;
}

namespace {

struct SweepRow {
  int exit = kExitRuntimeError;
  double l1_initial = std::nan("");
  double l1_final = std::nan("");
  bool audit_pass = false;
  std::optional<double> decay_time;
  double omega_smallest = std::nan("");
  Verdict verdict = Verdict::inconclusive;
  std::string error;
};

std::string csv_number(double v) { return std::isnan(v) ? "" : format_number(v); }

}  // namespace

int cmd_sweep(const ExperimentConfig& config, const std::string& axis,
              const std::vector<double>& values, const CommandOptions& options) {
  std::ostream& out = out_of(options);
  std::ostream& err = err_of(options);
  const auto& axes = sweep_axes();
  if (std::find(axes.begin(), axes.end(), axis) == axes.end()) {
    err << "error: '" << axis << "' is not sweepable (cells, cfl, amplitude, lambda_floor)\n";
    return kExitRuntimeError;
  }
  if (values.empty()) {
    err << "error: sweep needs at least one value\n";
    return kExitRuntimeError;
  }

  std::vector<ExperimentConfig> configs;
  for (std::size_t i = 0; i < values.size(); ++i) {
    ExperimentConfig c = config;
    const double v = values[i];
    c.output_dir = (fs::path(config.output_dir) / ("sweep_" + axis + "_" + std::to_string(i))).string();
    if (axis == "cells") {
      if (v != std::floor(v) || v < 4) {
        err << "error: cells values must be integers >= 4\n";
        return kExitRuntimeError;
      }
      for (int& n : c.grid.cells) n = static_cast<int>(v);
    } else if (axis == "cfl") {
      c.scheme.cfl = v;
    } else if (axis == "amplitude") {
      c.initial.amplitude = v;
    } else {
      try {
        c.condition.lambdas = lambda_ladder(v);
      } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return kExitRuntimeError;
      }
    }
    configs.push_back(std::move(c));
  }

  const bool condition_axis = axis == "lambda_floor";
  std::vector<SweepRow> rows(configs.size());
  parallel_for(configs.size(), [&](std::size_t i) {
    SweepRow& row = rows[i];
    try {
      if (condition_axis) {
        const ConditionOutcome outcome = evaluate_condition(configs[i]);
        write_condition_artifacts(configs[i], outcome, build_model(configs[i].model).dimension);
        row.omega_smallest = outcome.report.omegas.back();
        row.verdict = outcome.report.verdict;
        row.exit = exit_code(row.verdict);
      } else {
        const RunOutcome outcome = execute_run(configs[i]);
        write_run_artifacts(configs[i], build_grid(configs[i].grid), outcome);
        row.l1_initial = outcome.trajectory.rows.front().l1_to_mean;
        row.l1_final = outcome.trajectory.rows.back().l1_to_mean;
        row.audit_pass = outcome.audit.passed();
        row.decay_time = outcome.audit.decay_time;
        row.exit = row.audit_pass ? kExitOk : kExitAuditFail;
      }
    } catch (const std::exception& e) {
      row.error = e.what();
      row.exit = kExitRuntimeError;
    }
  });

  int worst = kExitOk;
  try {
    fs::create_directories(config.output_dir);
    auto f = open_artifact(fs::path(config.output_dir) / ("sweep_" + axis + ".csv"));
    f << timestamp_comment("aniso sweep " + axis + " " + config.model.name) << "\n";
    if (condition_axis) {
      f << "value,exit_code,omega_smallest,verdict\n";
    } else {
      f << "value,exit_code,l1_initial,l1_final,decay_ratio,audit_pass,decay_time\n";
    }
    for (std::size_t i = 0; i < rows.size(); ++i) {
      const SweepRow& r = rows[i];
      f << format_number(values[i]) << ',' << r.exit << ',';
      if (condition_axis) {
        f << csv_number(r.omega_smallest) << ',' << (r.exit == kExitRuntimeError ? "" : to_string(r.verdict));
      } else {
        const double ratio = r.l1_initial > 0.0 ? r.l1_final / r.l1_initial : std::nan("");
        f << csv_number(r.l1_initial) << ',' << csv_number(r.l1_final) << ',' << csv_number(ratio)
          << ',' << (r.audit_pass ? "true" : "false") << ','
          << (r.decay_time ? format_number(*r.decay_time) : "");
      }
      f << "\n";
      if (!r.error.empty()) err << "error: sweep value " << format_number(values[i]) << ": " << r.error << "\n";
      if (r.exit == kExitRuntimeError) worst = kExitRuntimeError;
      else if (!condition_axis && r.exit != kExitOk && worst == kExitOk) worst = r.exit;
    }

    if (axis == "cells" && values.size() >= 2 && worst != kExitRuntimeError) {
      std::vector<double> finals;
      for (const auto& r : rows) finals.push_back(r.l1_final);
      const double ratio = values.back() / values[values.size() - 2];
      auto g = open_artifact(fs::path(config.output_dir) / "refinement.csv");
      g << timestamp_comment("aniso refinement " + config.model.name) << "\n";
      g << "cells,l1_initial,l1_at_t_end\n";
      for (std::size_t i = 0; i < rows.size(); ++i) {
        g << format_number(values[i]) << ',' << csv_number(rows[i].l1_initial) << ','
          << csv_number(rows[i].l1_final) << "\n";
      }
      if (ratio > 1.0) {
        const auto [order, extrapolated] = richardson(finals, ratio);
        g << "extrapolated," << csv_number(rows.front().l1_initial) << ',' << format_number(extrapolated)
          << "\n";
        g << "# observed order " << format_number(order) << "\n";
      }
    }
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitRuntimeError;
  }

  if (!options.quiet) {
    out << "sweep over " << axis << ": " << values.size() << " runs, table in "
        << (fs::path(config.output_dir) / ("sweep_" + axis + ".csv")).string() << "\n";
  }
  return worst;
}

}  // namespace aniso
