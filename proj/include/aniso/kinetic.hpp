#pragma once

#include "aniso/model.hpp"

#include <functional>
#include <vector>

namespace aniso {

/// Kinetic function: +1 on (0, u), -1 on (u, 0), 0 elsewhere.
int chi(double xi, double u);

/// S(u) - S(0) = int S'(xi) chi(xi; u) dxi over [-M, M].
double entropy_from_kinetic(const std::function<double(double)>& s_prime, double u, double bound);

/// q^S(u) = int S'(xi) a(xi) chi(xi; u) dxi, componentwise.
Vec entropy_flux_from_kinetic(const std::function<double(double)>& s_prime, double u,
                              const ModelSpec& model);

struct FrequencyPoint {
  double tau = 0.0;
  Vec kappa;

  double l1_size() const { return std::abs(tau) + kappa.norm(); }
};

/// How the supremum over |tau| + |kappa| >= delta is sampled.
struct SamplingPlan {
  double r_max = 1e3;       // radii delta, 2 delta, 4 delta, ... up to r_max
  int n_dir = 0;            // directions per radius; 0 picks 64 (d = 1) or 256 (d = 2)
  int n_resonant = 33;      // xi* samples generating resonant rays (-a(xi*).e, e)
  bool lattice = false;     // restrict kappa to (2 pi / P) Z^d
  std::vector<double> periods;  // torus periods, required when lattice is set
  int lattice_extent = 0;   // |n_i| bound of lattice indices; 0 picks 32 (d = 1) or 8 (d = 2)
};

/// lambda + |tau + a(xi).kappa|^2 + (kappa^T A(xi) kappa)^2.
double symbol_denominator(const ModelSpec& model, const FrequencyPoint& fp, double xi, double lambda);

inline constexpr double kOmegaQuadTol = 1e-9;
inline constexpr int kOmegaQuadDepth = 50;

/// int_{|xi| <= M} lambda / symbol_denominator dxi.
double omega_at(const ModelSpec& model, const FrequencyPoint& fp, double lambda);

/// Frequency points of the plan, in the fixed order used for tie-breaking.
std::vector<FrequencyPoint> sampling_points(const ModelSpec& model, double delta,
                                            const SamplingPlan& plan);

struct OmegaEstimate {
  double omega = 0.0;
  FrequencyPoint witness;
};

/// Sampled lower bound of omega_delta(lambda); first maximiser wins ties.
OmegaEstimate omega_delta(const ModelSpec& model, double delta, double lambda,
                          const SamplingPlan& plan);
OmegaEstimate omega_delta(const ModelSpec& model, const std::vector<FrequencyPoint>& points,
                          double lambda);

/// Measure estimate of {xi in [-M, M] : |tau + a.kappa| <= tol, kappa^T A kappa <= tol}
/// with (tau, kappa) normalised to the unit sphere, by midpoint sampling.
double degeneracy_set_measure(const ModelSpec& model, const FrequencyPoint& fp, double tol,
                              int n_samples);

enum class Verdict { pass, fail, inconclusive };

const char* to_string(Verdict v);

struct ConditionReport {
  double delta = 0.0;
  double state_bound = 0.0;
  std::vector<double> lambdas;
  std::vector<double> omegas;
  std::vector<FrequencyPoint> witnesses;
  Verdict verdict = Verdict::inconclusive;
  double trend_ratio = 0.0;     // omega(smallest lambda) / omega(largest lambda)
  double pass_threshold = 0.0;  // 0.05 * 2M
  bool monotone = false;
};

inline constexpr double kPassFraction = 0.05;
inline constexpr double kTrendNoise = 0.10;

ConditionReport check_condition(const ModelSpec& model, double delta,
                                const std::vector<double>& lambdas, const SamplingPlan& plan);

}  // namespace aniso
