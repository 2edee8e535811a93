#include "aniso/solver.hpp"

#include "aniso/diagnostics.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <sstream>

namespace aniso {

const char* to_string(Integrator i) {
  return i == Integrator::euler ? "euler" : "ssp-rk2";
}

Integrator parse_integrator(const std::string& name) {
  if (name == "euler") return Integrator::euler;
  if (name == "ssp-rk2") return Integrator::ssp_rk2;
  throw std::invalid_argument("unknown integrator '" + name + "'");
}

CellField init_field(const PeriodicGrid& grid, const Profile& profile) {
  static constexpr std::array<double, 3> nodes = {-0.774596669241483377035853079956480, 0.0,
                                                  0.774596669241483377035853079956480};
  static constexpr std::array<double, 3> weights = {5.0 / 18.0, 8.0 / 18.0, 5.0 / 18.0};
  CellField field;
  field.values.resize(grid.size());
  const int n0 = grid.cells(0);
  const double h0 = grid.spacing(0);
  const bool two_d = grid.dimension() == 2;
  const int n1 = two_d ? grid.cells(1) : 1;
  const double h1 = two_d ? grid.spacing(1) : 0.0;
  for (int i = 0; i < n0; ++i) {
    for (int j = 0; j < n1; ++j) {
      double acc = 0.0;
      for (int a = 0; a < 3; ++a) {
        const double x = grid.center(0, i) + 0.5 * h0 * nodes[a];
        if (!two_d) {
          acc += weights[a] * profile(x, 0.0);
          continue;
        }
        for (int b = 0; b < 3; ++b) {
          const double y = grid.center(1, j) + 0.5 * h1 * nodes[b];
          acc += weights[a] * weights[b] * profile(x, y);
        }
      }
      if (!std::isfinite(acc)) {
        std::ostringstream msg;
        msg << "initial profile is not finite in cell (" << i << ", " << j << ")";
        throw ConfigError(msg.str());
      }
      field.values[grid.index(i, j)] = acc;
    }
  }
  return field;
}

double numerical_flux_llf(const ModelSpec& model, double u_left, double u_right, int axis,
                          double alpha) {
  return 0.5 * (model.flux(u_left)(axis) + model.flux(u_right)(axis)) -
         0.5 * alpha * (u_right - u_left);
}

namespace {

constexpr int kRangeSamples = 33;

template <typename F>
double max_over_range(double lo, double hi, F&& f) {
  double worst = std::max(f(lo), f(hi));
  for (int s = 1; s < kRangeSamples - 1; ++s) {
    const double t = static_cast<double>(s) / (kRangeSamples - 1);
    worst = std::max(worst, f(lo * (1.0 - t) + hi * t));
  }
  return worst;
}

std::string format_time(double t) {
  std::ostringstream out;
  out << t;
  return out.str();
}

std::pair<double, double> field_range(const CellField& field) {
  const auto [lo, hi] = std::minmax_element(field.values.begin(), field.values.end());
  return {*lo, *hi};
}

}  // namespace

double max_speed(const ModelSpec& model, double lo, double hi, int axis) {
  return max_over_range(lo, hi, [&](double u) { return std::abs(speed_eval(model, u)(axis)); });
}

double max_diffusion(const ModelSpec& model, double lo, double hi, int i, int j) {
  return max_over_range(lo, hi, [&](double u) { return std::abs(model.diffusion(u)(i, j)); });
}

std::vector<double> hyperbolic_div(const ModelSpec& model, const CellField& field,
                                   const PeriodicGrid& grid) {
  const std::size_t n = grid.size();
  const int d = grid.dimension();
  const auto [lo, hi] = field_range(field);
  std::vector<double> out(n, 0.0);
  std::vector<double> f(n);
  for (int axis = 0; axis < d; ++axis) {
    const double alpha = max_speed(model, lo, hi, axis);
    const double h = grid.spacing(axis);
    for (std::size_t c = 0; c < n; ++c) f[c] = model.flux(field.values[c])(axis);
    const int n0 = grid.cells(0);
    const int n1 = d == 2 ? grid.cells(1) : 1;
    for (int i = 0; i < n0; ++i) {
      for (int j = 0; j < n1; ++j) {
        const std::size_t c = grid.index(i, j);
        const std::size_t r = axis == 0 ? grid.index(i + 1, j) : grid.index(i, j + 1);
        // face c+1/2 contributes to c (outflow) and r (inflow)
        const double face =
            0.5 * (f[c] + f[r]) - 0.5 * alpha * (field.values[r] - field.values[c]);
        out[c] += face / h;
        out[r] -= face / h;
      }
    }
  }
  return out;
}

std::vector<double> diffusion_div(const ModelSpec& model, const CellField& field,
                                  const PeriodicGrid& grid) {
  const std::size_t n = grid.size();
  const int d = grid.dimension();
  std::vector<double> out(n, 0.0);
  std::vector<Mat> prim(n);
  for (std::size_t c = 0; c < n; ++c) prim[c] = bprimitive_matrix(model, field.values[c]);

  const int n0 = grid.cells(0);
  const int n1 = d == 2 ? grid.cells(1) : 1;
  const double h0 = grid.spacing(0);
  if (d == 1) {
    for (int i = 0; i < n0; ++i) {
      out[i] = (prim[grid.index(i + 1)](0, 0) - 2.0 * prim[grid.index(i)](0, 0) +
                prim[grid.index(i - 1)](0, 0)) /
               (h0 * h0);
    }
    return out;
  }
  const double h1 = grid.spacing(1);
  for (int i = 0; i < n0; ++i) {
    for (int j = 0; j < n1; ++j) {
      const std::size_t c = grid.index(i, j);
      const double xx = (prim[grid.index(i + 1, j)](0, 0) - 2.0 * prim[c](0, 0) +
                         prim[grid.index(i - 1, j)](0, 0)) /
                        (h0 * h0);
      const double yy = (prim[grid.index(i, j + 1)](1, 1) - 2.0 * prim[c](1, 1) +
                         prim[grid.index(i, j - 1)](1, 1)) /
                        (h1 * h1);
      const double xy = (prim[grid.index(i + 1, j + 1)](0, 1) - prim[grid.index(i + 1, j - 1)](0, 1) -
                         prim[grid.index(i - 1, j + 1)](0, 1) + prim[grid.index(i - 1, j - 1)](0, 1)) /
                        (4.0 * h0 * h1);
      out[c] = xx + yy + 2.0 * xy;
    }
  }
  return out;
}

double stable_dt(const ModelSpec& model, const CellField& field, const PeriodicGrid& grid,
                 double cfl, double zero_dynamics_dt) {
  const auto [lo, hi] = field_range(field);
  const int d = grid.dimension();
  double hyperbolic = 0.0;
  double parabolic = 0.0;
  for (int i = 0; i < d; ++i) {
    hyperbolic += max_speed(model, lo, hi, i) / grid.spacing(i);
    for (int j = 0; j < d; ++j) {
      parabolic += max_diffusion(model, lo, hi, i, j) / (grid.spacing(i) * grid.spacing(j));
    }
  }
  const double rate = hyperbolic + 2.0 * parabolic;
  if (rate == 0.0) return zero_dynamics_dt;
  const double dt = cfl / rate;
  if (!(dt > 0.0) || !std::isfinite(dt)) {
    std::ostringstream msg;
    msg << "stable time step is not positive (dt = " << dt << ")";
    throw ConfigError(msg.str());
  }
  return dt;
}

namespace {

CellField euler_stage(const CellField& state, const ModelSpec& model, const PeriodicGrid& grid,
                      double dt) {
  const auto hyp = hyperbolic_div(model, state, grid);
  const auto dif = diffusion_div(model, state, grid);
  CellField next;
  next.values.resize(state.values.size());
  for (std::size_t c = 0; c < state.values.size(); ++c) {
    next.values[c] = state.values[c] + dt * (dif[c] - hyp[c]);
  }
  next.time = state.time + dt;
  return next;
}

double max_abs(const CellField& field) {
  double worst = 0.0;
  for (double v : field.values) {
    if (!std::isfinite(v)) return std::abs(v);
    worst = std::max(worst, std::abs(v));
  }
  return worst;
}

}  // namespace

CellField advance(const CellField& state, const ModelSpec& model, const PeriodicGrid& grid,
                  Integrator integrator, double dt) {
  auto check = [&](const CellField& f) {
    for (double v : f.values) {
      if (!std::isfinite(v)) {
        std::ostringstream msg;
        msg << "solution blew up at t = " << state.time + dt << " (max |u| = " << max_abs(state)
            << " before the step)";
        throw BlowUpError(msg.str(), state.time + dt, max_abs(state));
      }
    }
  };
  CellField next = euler_stage(state, model, grid, dt);
  check(next);
  if (integrator == Integrator::ssp_rk2) {
    const CellField second = euler_stage(next, model, grid, dt);
    for (std::size_t c = 0; c < next.values.size(); ++c) {
      next.values[c] = 0.5 * (state.values[c] + second.values[c]);
    }
    next.time = state.time + dt;
    check(next);
  }
  return next;
}

CellField step(const CellField& state, const ModelSpec& model, const PeriodicGrid& grid,
               const SchemeConfig& config) {
  const double dt = stable_dt(model, state, grid, config.cfl, config.output_every);
  return advance(state, model, grid, config.integrator, dt);
}

namespace {

struct Schedule {
  double next_output(double t, double every, double t_end) const {
    if (!(every > 0.0)) return t_end;
    const double k = std::floor(t / every + 1e-9) + 1.0;
    return std::min(k * every, t_end);
  }
};

bool reached(double t, double target) {
  return std::abs(t - target) <= 1e-12 * std::max(1.0, std::abs(target));
}

void validate_scheme(const SchemeConfig& scheme) {
  if (!(scheme.cfl > 0.0)) throw ConfigError("cfl must be positive");
  if (!(scheme.t_end >= 0.0)) throw ConfigError("t_end must be non-negative");
  if (!(scheme.output_every > 0.0)) throw ConfigError("output_every must be positive");
  if (scheme.snapshot_every && !(*scheme.snapshot_every > 0.0)) {
    throw ConfigError("snapshot_every must be positive");
  }
}

}  // namespace

Trajectory run(const ModelSpec& model, const PeriodicGrid& grid, const Profile& profile,
               const SchemeConfig& scheme, const RunOptions& options) {
  return run(model, grid, init_field(grid, profile), scheme, options);
}

Trajectory run(const ModelSpec& model, const PeriodicGrid& grid, CellField field,
               const SchemeConfig& scheme, const RunOptions& options) {
  validate_scheme(scheme);
  if (model.dimension != grid.dimension()) {
    throw ConfigError("model and grid dimensions differ");
  }
  if (field.values.size() != grid.size()) throw ConfigError("field does not match the grid");
  field.time = 0.0;

  Trajectory traj;
  traj.torus_volume = grid.volume();
  const double initial_mean = mean(field, grid);
  traj.contraction_constants.push_back(initial_mean);
  for (double v : options.contraction_constants) traj.contraction_constants.push_back(v);

  std::vector<double> checkpoints = options.checkpoints;
  std::sort(checkpoints.begin(), checkpoints.end());

  const auto [lo0, hi0] = field_range(field);
  traj.steps.initial_min = traj.steps.min_value = lo0;
  traj.steps.initial_max = traj.steps.max_value = hi0;

  const double linf0 = std::max(std::abs(lo0), std::abs(hi0));
  double energy = l2_energy(field, grid);
  double window_energy = energy;
  double window_resolved = 0.0;

  auto emit = [&](const CellField& f) {
    DiagnosticsRow row;
    row.t = f.time;
    row.mean = mean(f, grid);
    row.l1_to_mean = l1_to_constant(f, grid, initial_mean);
    row.l2_energy = energy;
    row.linf = linf(f);
    row.dissipation_resolved = window_resolved;
    row.dissipation_budget = traj.rows.empty() ? 0.0 : 0.5 * (window_energy - energy);
    traj.rows.push_back(row);
    std::vector<double> dists;
    for (double v : traj.contraction_constants) dists.push_back(l1_to_constant(f, grid, v));
    traj.l1_to_constants.push_back(std::move(dists));
    window_energy = energy;
    window_resolved = 0.0;
  };

  emit(field);
  if (scheme.snapshot_every) traj.snapshots.push_back(field);

  const Schedule schedule;
  std::size_t next_checkpoint = 0;
  while (next_checkpoint < checkpoints.size() && checkpoints[next_checkpoint] <= 0.0) {
    ++next_checkpoint;
  }

  while (field.time < scheme.t_end && !reached(field.time, scheme.t_end)) {
    const double t = field.time;
    double target = schedule.next_output(t, scheme.output_every, scheme.t_end);
    if (scheme.snapshot_every) {
      target = std::min(target, schedule.next_output(t, *scheme.snapshot_every, scheme.t_end));
    }
    if (next_checkpoint < checkpoints.size()) target = std::min(target, checkpoints[next_checkpoint]);

    double dt = 0.0;
    try {
      dt = stable_dt(model, field, grid, scheme.cfl, scheme.output_every);
    } catch (const std::exception& e) {
      // outside the initial range the scheme has already gone unstable
      const auto [lo, hi] = field_range(field);
      const double slack = 1e-6 * std::max(1.0, linf0);
      if (lo >= lo0 - slack && hi <= hi0 + slack) throw;
      BlowUpError err(std::string("solution blew up at t = ") + format_time(t) + ": " + e.what(), t,
                      std::max(std::abs(lo), std::abs(hi)));
      err.partial = std::make_shared<const Trajectory>(std::move(traj));
      throw err;
    }
    bool landed = false;
    if (t + dt >= target || reached(t + dt, target)) {
      dt = target - t;
      landed = true;
    }

    const double resolved = parabolic_dissipation(model, field, grid) * dt;
    CellField next;
    try {
      next = advance(field, model, grid, scheme.integrator, dt);
    } catch (BlowUpError& e) {
      BlowUpError err(e.what(), e.time(), e.max_abs());
      err.partial = std::make_shared<const Trajectory>(std::move(traj));
      throw err;
    }
    if (landed) next.time = target;

    const double next_energy = l2_energy(next, grid);
    auto& st = traj.steps;
    ++st.count;
    st.max_energy_increase = std::max(st.max_energy_increase, next_energy - energy);
    st.max_mean_drift = std::max(st.max_mean_drift, std::abs(mean(next, grid) - initial_mean));
    const auto [lo, hi] = field_range(next);
    st.min_value = std::min(st.min_value, lo);
    st.max_value = std::max(st.max_value, hi);
    if (options.on_step) options.on_step(field, next, dt);

    field = std::move(next);
    energy = next_energy;
    window_resolved += resolved;

    const double now = field.time;
    bool checkpoint_hit = false;
    while (next_checkpoint < checkpoints.size() && reached(now, checkpoints[next_checkpoint])) {
      checkpoint_hit = true;
      ++next_checkpoint;
    }
    const bool output_hit =
        reached(now, scheme.t_end) ||
        reached(now, std::round(now / scheme.output_every) * scheme.output_every);
    if (output_hit || checkpoint_hit) emit(field);
    if (scheme.snapshot_every &&
        (reached(now, std::round(now / *scheme.snapshot_every) * *scheme.snapshot_every) ||
         reached(now, scheme.t_end))) {
      traj.snapshots.push_back(field);
    }
  }
  return traj;
}

}  // namespace aniso
