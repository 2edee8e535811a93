#pragma once

#include "aniso/grid.hpp"
#include "aniso/model.hpp"
#include "aniso/trajectory.hpp"

#include <functional>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace aniso {

class ConfigError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

class BlowUpError : public std::runtime_error {
public:
  BlowUpError(const std::string& what, double time, double max_abs)
      : std::runtime_error(what), time_(time), max_abs_(max_abs) {}
  double time() const noexcept { return time_; }
  double max_abs() const noexcept { return max_abs_; }
  /// Trajectory up to the last good state; set by run().
  std::shared_ptr<const Trajectory> partial;

private:
  double time_;
  double max_abs_;
};

enum class Integrator { euler, ssp_rk2 };

const char* to_string(Integrator i);
Integrator parse_integrator(const std::string& name);

/// Explicit scheme settings. Stability of the monotone scheme is only
/// guaranteed for cfl <= 1; larger values are accepted and will usually blow up.
struct SchemeConfig {
  double cfl = 0.4;
  Integrator integrator = Integrator::ssp_rk2;
  double t_end = 1.0;
  double output_every = 0.1;
  std::optional<double> snapshot_every;

  bool operator==(const SchemeConfig&) const = default;
};

struct RunOptions {
  /// Extra times at which a diagnostics row is forced.
  std::vector<double> checkpoints;
  /// Constants v for the L1 contraction audit; the initial mean is always added.
  std::vector<double> contraction_constants;
  /// Called after every accepted step with (before, after, dt).
  std::function<void(const CellField&, const CellField&, double)> on_step;
};

/// Cell averages by 3-point Gauss quadrature per direction.
CellField init_field(const PeriodicGrid& grid, const Profile& profile);

/// Local Lax-Friedrichs flux along one axis.
double numerical_flux_llf(const ModelSpec& model, double u_left, double u_right, int axis,
                          double alpha);

/// max |a_axis| over [lo, hi] (sampled, endpoints included).
double max_speed(const ModelSpec& model, double lo, double hi, int axis);
/// max |A_ij| over [lo, hi] (sampled, endpoints included).
double max_diffusion(const ModelSpec& model, double lo, double hi, int i, int j);

/// Per cell sum over axes of (F_{j+1/2} - F_{j-1/2}) / h.
std::vector<double> hyperbolic_div(const ModelSpec& model, const CellField& field,
                                   const PeriodicGrid& grid);

/// Per cell sum_ij d_i d_j B_ij(u), symmetric 4-point cross stencil off the diagonal.
std::vector<double> diffusion_div(const ModelSpec& model, const CellField& field,
                                  const PeriodicGrid& grid);

/// cfl / (sum_i alpha_i / h_i + 2 sum_ij Lambda_ij / (h_i h_j)); returns
/// zero_dynamics_dt when both sums vanish.
double stable_dt(const ModelSpec& model, const CellField& field, const PeriodicGrid& grid,
                 double cfl, double zero_dynamics_dt);

/// One step of size dt with the given integrator.
CellField advance(const CellField& state, const ModelSpec& model, const PeriodicGrid& grid,
                  Integrator integrator, double dt);

/// One step with dt from stable_dt.
CellField step(const CellField& state, const ModelSpec& model, const PeriodicGrid& grid,
               const SchemeConfig& config);

/// Integrates to t_end, recording diagnostics at every output_every multiple,
/// at checkpoints and at t_end.
Trajectory run(const ModelSpec& model, const PeriodicGrid& grid, const Profile& profile,
               const SchemeConfig& scheme, const RunOptions& options = {});

/// Same, from an already discretised initial field.
Trajectory run(const ModelSpec& model, const PeriodicGrid& grid, CellField initial,
               const SchemeConfig& scheme, const RunOptions& options = {});

}  // namespace aniso
