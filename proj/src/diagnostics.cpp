#include "aniso/diagnostics.hpp"

#include "aniso/parallel.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace aniso {

double pairwise_sum(const double* data, std::size_t n) {
  if (n <= 16) {
    double acc = 0.0;
    for (std::size_t i = 0; i < n; ++i) acc += data[i];
    return acc;
  }
  const std::size_t half = n / 2;
  return pairwise_sum(data, half) + pairwise_sum(data + half, n - half);
}

namespace {

template <typename F>
double cell_sum(const CellField& field, F&& f) {
  std::vector<double> terms(field.values.size());
  std::transform(field.values.begin(), field.values.end(), terms.begin(), f);
  return pairwise_sum(terms.data(), terms.size());
}

}  // namespace

double mean(const CellField& field, const PeriodicGrid& grid) {
  return pairwise_sum(field.values.data(), field.values.size()) / static_cast<double>(grid.size());
}

double l1_to_constant(const CellField& field, const PeriodicGrid& grid, double v) {
  return cell_sum(field, [v](double u) { return std::abs(u - v); }) * grid.cell_volume();
}

double l2_energy(const CellField& field, const PeriodicGrid& grid) {
  return cell_sum(field, [](double u) { return u * u; }) * grid.cell_volume();
}

double linf(const CellField& field) {
  double worst = 0.0;
  for (double u : field.values) worst = std::max(worst, std::abs(u));
  return worst;
}

double parabolic_dissipation(const ModelSpec& model, const CellField& field,
                             const PeriodicGrid& grid) {
  const std::size_t n = grid.size();
  const int d = grid.dimension();
  std::vector<Mat> beta(n);
  for (std::size_t c = 0; c < n; ++c) beta[c] = beta_matrix(model, field.values[c]);

  std::vector<double> terms(n, 0.0);
  const int n0 = grid.cells(0);
  const int n1 = d == 2 ? grid.cells(1) : 1;
  for (int i = 0; i < n0; ++i) {
    for (int j = 0; j < n1; ++j) {
      const std::size_t c = grid.index(i, j);
      double acc = 0.0;
      for (int k = 0; k < d; ++k) {
        double grad = (beta[grid.index(i + 1, j)](0, k) - beta[grid.index(i - 1, j)](0, k)) /
                      (2.0 * grid.spacing(0));
        if (d == 2) {
          grad += (beta[grid.index(i, j + 1)](1, k) - beta[grid.index(i, j - 1)](1, k)) /
                  (2.0 * grid.spacing(1));
        }
        acc += grad * grad;
      }
      terms[c] = acc;
    }
  }
  return pairwise_sum(terms.data(), n) * grid.cell_volume();
}

bool AuditReport::passed() const {
  return max_principle_violation <= tolerances.max_principle &&
         energy_monotonicity_violation <= tolerances.energy &&
         contraction_violation <= tolerances.contraction &&
         mean_drift <= tolerances.mean_drift && budget_violations == 0 &&
         budget_telescoping_error <= tolerances.telescoping &&
         total_budget <= global_budget_bound + tolerances.global_budget;
}

AuditReport audit(const Trajectory& trajectory, const AuditTolerances& tolerances) {
  const auto& rows = trajectory.rows;
  if (rows.size() < 2) throw std::invalid_argument("audit needs at least two diagnostics rows");
  AuditReport report;
  report.tolerances = tolerances;

  const DiagnosticsRow& first = rows.front();
  const double linf0 = first.linf;
  for (std::size_t n = 1; n < rows.size(); ++n) {
    report.max_principle_violation =
        std::max(report.max_principle_violation, rows[n].linf - linf0);
    report.energy_monotonicity_violation =
        std::max(report.energy_monotonicity_violation, rows[n].l2_energy - rows[n - 1].l2_energy);
    report.mean_drift = std::max(report.mean_drift, std::abs(rows[n].mean - first.mean));
  }

  const StepStats& st = trajectory.steps;
  if (st.count > 0) {
    report.max_principle_violation =
        std::max({report.max_principle_violation, st.max_value - st.initial_max,
                  st.initial_min - st.min_value});
    report.energy_monotonicity_violation =
        std::max(report.energy_monotonicity_violation, st.max_energy_increase);
    report.mean_drift = std::max(report.mean_drift, st.max_mean_drift);
  }

  if (!trajectory.l1_to_constants.empty()) {
    const auto& dist = trajectory.l1_to_constants;
    for (std::size_t n = 1; n < dist.size(); ++n)
      for (std::size_t v = 0; v < dist[n].size(); ++v)
        report.contraction_violation =
            std::max(report.contraction_violation, dist[n][v] - dist[n - 1][v]);
  } else {
    for (std::size_t n = 1; n < rows.size(); ++n)
      report.contraction_violation =
          std::max(report.contraction_violation, rows[n].l1_to_mean - rows[n - 1].l1_to_mean);
  }

  report.budget_tolerance =
      tolerances.budget.value_or(1e-8 * trajectory.torus_volume * linf0 * linf0);
  std::vector<double> budgets;
  for (std::size_t n = 1; n < rows.size(); ++n) {
    if (rows[n].dissipation_resolved > rows[n].dissipation_budget + report.budget_tolerance) {
      ++report.budget_violations;
    }
    budgets.push_back(rows[n].dissipation_budget);
  }
  report.total_budget = pairwise_sum(budgets.data(), budgets.size());
  report.budget_telescoping_error =
      std::abs(report.total_budget - 0.5 * (first.l2_energy - rows.back().l2_energy));
  report.global_budget_bound = 0.5 * trajectory.torus_volume * linf0 * linf0;

  report.decay_threshold = tolerances.decay_fraction * first.l1_to_mean;
  for (const auto& row : rows) {
    if (row.l1_to_mean <= report.decay_threshold) {
      report.decay_achieved = true;
      report.decay_time = row.t;
      break;
    }
  }
  return report;
}

DecaySummary decay_summary(const Trajectory& trajectory, const std::vector<double>& thresholds) {
  DecaySummary summary;
  const auto& rows = trajectory.rows;
  summary.thresholds = thresholds;
  if (rows.empty()) {
    summary.times.assign(thresholds.size(), std::nullopt);
    return summary;
  }
  summary.initial_l1 = rows.front().l1_to_mean;
  for (double theta : thresholds) {
    std::optional<double> hit;
    for (const auto& row : rows) {
      if (row.l1_to_mean <= theta * summary.initial_l1) {
        hit = row.t;
        break;
      }
    }
    summary.times.push_back(hit);
  }

  std::vector<double> xs;
  std::vector<double> ys;
  for (std::size_t n = rows.size() / 2; n < rows.size(); ++n) {
    if (rows[n].t > 0.0 && rows[n].l1_to_mean > 0.0) {
      xs.push_back(std::log(rows[n].t));
      ys.push_back(std::log(rows[n].l1_to_mean));
    }
  }
  summary.tail_points = static_cast<int>(xs.size());
  if (xs.size() >= 2) {
    const double k = static_cast<double>(xs.size());
    double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
      sx += xs[i];
      sy += ys[i];
      sxx += xs[i] * xs[i];
      sxy += xs[i] * ys[i];
    }
    const double denom = k * sxx - sx * sx;
    if (denom > 0.0) summary.tail_slope = (k * sxy - sx * sy) / denom;
  }
  return summary;
}

std::pair<double, double> richardson(const std::vector<double>& values, double ratio) {
  const std::size_t n = values.size();
  if (n < 2) throw std::invalid_argument("richardson needs at least two values");
  if (!(ratio > 1.0)) throw std::invalid_argument("refinement ratio must exceed 1");
  double order = 1.0;
  if (n >= 3) {
    const double coarse_gap = values[n - 3] - values[n - 2];
    const double fine_gap = values[n - 2] - values[n - 1];
    if (coarse_gap * fine_gap > 0.0 && std::abs(fine_gap) < std::abs(coarse_gap)) {
      order = std::clamp(std::log(coarse_gap / fine_gap) / std::log(ratio), 0.5, 4.0);
    }
  }
  const double extrapolated =
      values[n - 1] + (values[n - 1] - values[n - 2]) / (std::pow(ratio, order) - 1.0);
  return {order, extrapolated};
}

RefinementTable refinement_study(const ModelSpec& model, const Profile& profile,
                                 const SchemeConfig& scheme, const std::vector<PeriodicGrid>& grids,
                                 const std::vector<double>& checkpoints) {
  if (grids.size() < 2) throw std::invalid_argument("refinement study needs at least two grids");
  RefinementTable table;
  table.checkpoints = checkpoints;
  std::sort(table.checkpoints.begin(), table.checkpoints.end());
  for (const auto& g : grids) table.cells.push_back(g.cell_counts());

  RunOptions options;
  options.checkpoints = table.checkpoints;
  SchemeConfig sch = scheme;
  sch.snapshot_every.reset();
  if (!table.checkpoints.empty()) sch.t_end = std::max(sch.t_end, table.checkpoints.back());

  std::vector<Trajectory> runs(grids.size());
  parallel_for(grids.size(), [&](std::size_t g) {
    runs[g] = run(model, grids[g], profile, sch, options);
  });

  for (const auto& traj : runs) {
    table.initial_l1.push_back(traj.rows.front().l1_to_mean);
    std::vector<double> at;
    for (double t : table.checkpoints) {
      auto it = std::find_if(traj.rows.begin(), traj.rows.end(), [t](const DiagnosticsRow& r) {
        return std::abs(r.t - t) <= 1e-12 * std::max(1.0, t);
      });
      if (it == traj.rows.end()) throw std::logic_error("checkpoint missing from trajectory");
      at.push_back(it->l1_to_mean);
    }
    table.l1_to_mean.push_back(std::move(at));
  }

  const double ratio = static_cast<double>(grids.back().cells(0)) / grids[grids.size() - 2].cells(0);
  for (std::size_t c = 0; c < table.checkpoints.size(); ++c) {
    std::vector<double> series;
    for (const auto& per_grid : table.l1_to_mean) series.push_back(per_grid[c]);
    const auto [order, value] = richardson(series, ratio);
    table.observed_order.push_back(order);
    table.extrapolated.push_back(value);
  }
  return table;
}

}  // namespace aniso
