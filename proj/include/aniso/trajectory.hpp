#pragma once

#include "aniso/grid.hpp"

#include <limits>
#include <vector>

namespace aniso {

struct DiagnosticsRow {
  double t = 0.0;
  double mean = 0.0;
  double l1_to_mean = 0.0;
  double l2_energy = 0.0;
  double linf = 0.0;
  double dissipation_resolved = 0.0;  // time integral of the parabolic defect over the window
  double dissipation_budget = 0.0;    // (I(t_prev) - I(t)) / 2
};

/// Per-step statistics gathered while integrating; empty for trajectories
/// read back from CSV.
struct StepStats {
  long count = 0;
  double max_energy_increase = -std::numeric_limits<double>::infinity();
  double max_mean_drift = 0.0;
  double initial_min = 0.0;
  double initial_max = 0.0;
  double min_value = 0.0;
  double max_value = 0.0;
};

struct Trajectory {
  std::vector<DiagnosticsRow> rows;
  std::vector<CellField> snapshots;
  /// Constants v for which ||u - v||_L1 is tracked at every row.
  std::vector<double> contraction_constants;
  std::vector<std::vector<double>> l1_to_constants;
  double torus_volume = 1.0;
  StepStats steps;
};

}  // namespace aniso
