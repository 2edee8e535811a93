#pragma once

#include "aniso/grid.hpp"
#include "aniso/model.hpp"
#include "aniso/solver.hpp"
#include "aniso/trajectory.hpp"

#include <optional>
#include <vector>

namespace aniso {

double mean(const CellField& field, const PeriodicGrid& grid);
double l1_to_constant(const CellField& field, const PeriodicGrid& grid, double v);
/// I = int u^2 dx.
double l2_energy(const CellField& field, const PeriodicGrid& grid);
double linf(const CellField& field);

/// Discrete parabolic defect: sum_cells sum_k (sum_i D_i beta_ik(u))^2 * cell volume,
/// D_i the centred difference along axis i.
double parabolic_dissipation(const ModelSpec& model, const CellField& field,
                             const PeriodicGrid& grid);

/// Fixed-order pairwise sum.
double pairwise_sum(const double* data, std::size_t n);

struct AuditTolerances {
  double max_principle = 1e-10;
  double energy = 1e-12;
  double contraction = 1e-12;
  double mean_drift = 1e-12;
  double telescoping = 1e-12;
  double global_budget = 1e-12;
  /// Resolved-vs-budget slack per window; defaults to 1e-8 |T_P| ||u0||_inf^2.
  std::optional<double> budget;
  double decay_fraction = 0.05;
};

struct AuditReport {
  double max_principle_violation = 0.0;
  double energy_monotonicity_violation = 0.0;
  double contraction_violation = 0.0;
  double mean_drift = 0.0;
  int budget_violations = 0;
  double budget_tolerance = 0.0;
  double budget_telescoping_error = 0.0;
  double total_budget = 0.0;
  double global_budget_bound = 0.0;
  bool decay_achieved = false;
  double decay_threshold = 0.0;
  std::optional<double> decay_time;
  AuditTolerances tolerances;

  bool passed() const;
};

/// Audits maximum principle, energy monotonicity, L1 contraction to constants,
/// conservation and the dissipation budget. Needs at least two rows.
AuditReport audit(const Trajectory& trajectory, const AuditTolerances& tolerances = {});

struct DecaySummary {
  double initial_l1 = 0.0;
  std::vector<double> thresholds;
  std::vector<std::optional<double>> times;  // first t with l1 <= theta * initial
  std::optional<double> tail_slope;          // d log l1 / d log t over the last half
  int tail_points = 0;
};

inline const std::vector<double> kDefaultDecayThresholds = {0.5, 0.1, 0.05, 0.01};

DecaySummary decay_summary(const Trajectory& trajectory,
                           const std::vector<double>& thresholds = kDefaultDecayThresholds);

struct RefinementTable {
  std::vector<std::vector<int>> cells;
  std::vector<double> checkpoints;
  std::vector<double> initial_l1;               // per grid
  std::vector<std::vector<double>> l1_to_mean;  // [grid][checkpoint]
  std::vector<double> observed_order;           // per checkpoint
  std::vector<double> extrapolated;             // per checkpoint, h -> 0
};

/// Runs every grid (concurrently) and Richardson-extrapolates l1_to_mean at
/// each checkpoint. Grids must be ordered coarse to fine.
RefinementTable refinement_study(const ModelSpec& model, const Profile& profile,
                                 const SchemeConfig& scheme, const std::vector<PeriodicGrid>& grids,
                                 const std::vector<double>& checkpoints);

/// Richardson extrapolation of the finest two of values (coarse to fine) with
/// ratio h_coarse/h_fine; order is observed from the finest three when they
/// converge monotonically, otherwise 1. Returns {order, extrapolated}.
std::pair<double, double> richardson(const std::vector<double>& values, double ratio);

}  // namespace aniso
