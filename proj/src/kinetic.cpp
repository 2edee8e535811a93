#include "aniso/kinetic.hpp"

#include "aniso/parallel.hpp"
#include "aniso/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace aniso {

int chi(double xi, double u) {
  if (0.0 < xi && xi < u) return 1;
  if (u < xi && xi < 0.0) return -1;
  return 0;
}

namespace {

// Integrates g(xi) chi(xi; u) over [-M, M], split at the jumps of chi.
double kinetic_integral(const std::function<double(double)>& g, double u, double bound) {
  QuadratureOptions opts;
  opts.abs_tol = 1e-11;
  opts.max_depth = 50;
  opts.detect_edge_jumps = true;  // S' may be discontinuous (Kruzhkov entropies)
  const double lo = std::clamp(std::min(0.0, u), -bound, bound);
  const double hi = std::clamp(std::max(0.0, u), -bound, bound);
  auto weighted = [&](double xi) {
    const int c = chi(xi, u);
    return c == 0 ? 0.0 : c * g(xi);
  };
  double total = 0.0;
  if (-bound < lo) total += integrate_value(weighted, -bound, lo, opts);
  if (lo < hi) total += integrate_value(weighted, lo, hi, opts);
  if (hi < bound) total += integrate_value(weighted, hi, bound, opts);
  return total;
}

}  // namespace

double entropy_from_kinetic(const std::function<double(double)>& s_prime, double u, double bound) {
  return kinetic_integral(s_prime, u, bound);
}

Vec entropy_flux_from_kinetic(const std::function<double(double)>& s_prime, double u,
                              const ModelSpec& model) {
  Vec q(model.dimension);
  for (int i = 0; i < model.dimension; ++i) {
    q(i) = kinetic_integral([&](double xi) { return s_prime(xi) * speed_eval(model, xi)(i); }, u,
                            model.state_bound);
  }
  return q;
}

double symbol_denominator(const ModelSpec& model, const FrequencyPoint& fp, double xi,
                          double lambda) {
  const double transport = fp.tau + speed_eval(model, xi).dot(fp.kappa);
  const double diffusive = fp.kappa.dot(model.diffusion(xi) * fp.kappa);
  return lambda + transport * transport + diffusive * diffusive;
}

double omega_at(const ModelSpec& model, const FrequencyPoint& fp, double lambda) {
  if (!(lambda > 0.0)) throw std::invalid_argument("omega_at requires lambda > 0");
  QuadratureOptions opts;
  opts.abs_tol = kOmegaQuadTol;
  opts.max_depth = kOmegaQuadDepth;
  const double bound = model.state_bound;
  return integrate_value(
      [&](double xi) { return lambda / symbol_denominator(model, fp, xi, lambda); }, -bound, bound,
      opts);
}

namespace {

FrequencyPoint scaled(double tau, const Vec& kappa, double radius) {
  const double size = std::abs(tau) + kappa.norm();
  return {tau * radius / size, kappa * (radius / size)};
}

std::vector<FrequencyPoint> continuum_points(const ModelSpec& model, double delta,
                                             const SamplingPlan& plan) {
  const int d = model.dimension;
  const int n_dir = plan.n_dir > 0 ? plan.n_dir : (d == 1 ? 64 : 256);

  std::vector<std::pair<double, Vec>> directions;
  {
    Vec zero = Vec::Zero(d);
    directions.emplace_back(1.0, zero);
  }
  if (d == 1) {
    for (int j = 0; j < n_dir; ++j) {
      const double theta = 2.0 * std::numbers::pi * j / n_dir;
      Vec k(1);
      k(0) = std::sin(theta);
      directions.emplace_back(std::cos(theta), k);
    }
  } else {
    const double golden = std::numbers::pi * (3.0 - std::sqrt(5.0));
    for (int j = 0; j < n_dir; ++j) {
      const double z = 1.0 - 2.0 * (j + 0.5) / n_dir;
      const double rho = std::sqrt(std::max(0.0, 1.0 - z * z));
      Vec k(2);
      k << rho * std::cos(golden * j), rho * std::sin(golden * j);
      directions.emplace_back(z, k);
    }
  }
  const double bound = model.state_bound;
  const int n_res = std::max(plan.n_resonant, 0);
  for (int m = 0; m < n_res; ++m) {
    const double xi = n_res == 1 ? 0.0 : -bound + 2.0 * bound * m / (n_res - 1);
    const Vec a = speed_eval(model, xi);
    for (int i = 0; i < d; ++i) {
      Vec e = Vec::Zero(d);
      e(i) = 1.0;
      directions.emplace_back(-a(i), e);
    }
  }

  std::vector<FrequencyPoint> points;
  for (double r = delta;; r *= 2.0) {
    for (const auto& [tau, kappa] : directions) {
      if (std::abs(tau) + kappa.norm() == 0.0) continue;
      points.push_back(scaled(tau, kappa, r));
    }
    if (r * 2.0 > plan.r_max) break;
  }
  return points;
}

std::vector<FrequencyPoint> lattice_points(const ModelSpec& model, double delta,
                                           const SamplingPlan& plan) {
  const int d = model.dimension;
  if (static_cast<int>(plan.periods.size()) != d) {
    throw std::invalid_argument("lattice sampling needs one period per dimension");
  }
  const int extent = plan.lattice_extent > 0 ? plan.lattice_extent : (d == 1 ? 32 : 8);
  const double bound = model.state_bound;
  const int n_res = std::max(plan.n_resonant, 0);
  std::vector<Vec> speeds;
  for (int m = 0; m < n_res; ++m) {
    const double xi = n_res == 1 ? 0.0 : -bound + 2.0 * bound * m / (n_res - 1);
    speeds.push_back(speed_eval(model, xi));
  }
  std::vector<double> ladder;
  for (double r = delta; r <= plan.r_max; r *= 2.0) {
    ladder.push_back(r);
    ladder.push_back(-r);
  }
  if (ladder.empty()) ladder = {delta, -delta};

  std::vector<FrequencyPoint> points;
  auto add = [&](double tau, const Vec& kappa) {
    FrequencyPoint fp{tau, kappa};
    if (fp.l1_size() >= delta) points.push_back(fp);
  };
  const int n2_range = d == 2 ? extent : 0;
  for (int n1 = -extent; n1 <= extent; ++n1) {
    for (int n2 = -n2_range; n2 <= n2_range; ++n2) {
      Vec kappa(d);
      kappa(0) = 2.0 * std::numbers::pi * n1 / plan.periods[0];
      if (d == 2) kappa(1) = 2.0 * std::numbers::pi * n2 / plan.periods[1];
      if (kappa.norm() > plan.r_max) continue;
      for (double tau : ladder) add(tau, kappa);
      if (kappa.norm() == 0.0) continue;
      add(0.0, kappa);
      for (const Vec& a : speeds) add(-a.dot(kappa), kappa);
    }
  }
  return points;
}

}  // namespace

std::vector<FrequencyPoint> sampling_points(const ModelSpec& model, double delta,
                                            const SamplingPlan& plan) {
  if (!(delta > 0.0)) throw std::invalid_argument("delta must be positive");
  return plan.lattice ? lattice_points(model, delta, plan) : continuum_points(model, delta, plan);
}

OmegaEstimate omega_delta(const ModelSpec& model, const std::vector<FrequencyPoint>& points,
                          double lambda) {
  if (points.empty()) throw std::invalid_argument("empty sampling plan");
  std::vector<double> values(points.size());
  parallel_for(points.size(), [&](std::size_t i) { values[i] = omega_at(model, points[i], lambda); });
  std::size_t best = 0;
  for (std::size_t i = 1; i < values.size(); ++i)
    if (values[i] > values[best]) best = i;
  return {values[best], points[best]};
}

OmegaEstimate omega_delta(const ModelSpec& model, double delta, double lambda,
                          const SamplingPlan& plan) {
  return omega_delta(model, sampling_points(model, delta, plan), lambda);
}

double degeneracy_set_measure(const ModelSpec& model, const FrequencyPoint& fp, double tol,
                              int n_samples) {
  if (!(tol > 0.0)) throw std::invalid_argument("tolerance must be positive");
  if (n_samples < 1) throw std::invalid_argument("need at least one sample");
  const double norm = std::sqrt(fp.tau * fp.tau + fp.kappa.squaredNorm());
  if (norm == 0.0) throw std::invalid_argument("frequency point must be non-zero");
  const double tau = fp.tau / norm;
  const Vec kappa = fp.kappa / norm;
  const double bound = model.state_bound;
  long hits = 0;
  for (int s = 0; s < n_samples; ++s) {
    const double xi = -bound + 2.0 * bound * (s + 0.5) / n_samples;
    const double transport = std::abs(tau + speed_eval(model, xi).dot(kappa));
    const double diffusive = kappa.dot(model.diffusion(xi) * kappa);
    if (transport <= tol && diffusive <= tol) ++hits;
  }
  return 2.0 * bound * static_cast<double>(hits) / n_samples;
}

const char* to_string(Verdict v) {
  switch (v) {
    case Verdict::pass: return "pass";
    case Verdict::fail: return "fail";
    case Verdict::inconclusive: return "inconclusive";
  }
  return "unknown";
}

ConditionReport check_condition(const ModelSpec& model, double delta,
                                const std::vector<double>& lambdas, const SamplingPlan& plan) {
  if (lambdas.empty()) throw std::invalid_argument("lambda ladder is empty");
  for (std::size_t i = 0; i < lambdas.size(); ++i) {
    if (!(lambdas[i] > 0.0)) throw std::invalid_argument("lambdas must be positive");
    if (i > 0 && !(lambdas[i] < lambdas[i - 1])) {
      throw std::invalid_argument("lambdas must be strictly decreasing");
    }
  }
  ConditionReport report;
  report.delta = delta;
  report.state_bound = model.state_bound;
  report.lambdas = lambdas;
  report.pass_threshold = kPassFraction * 2.0 * model.state_bound;

  const auto points = sampling_points(model, delta, plan);
  for (double lambda : lambdas) {
    const OmegaEstimate est = omega_delta(model, points, lambda);
    report.omegas.push_back(est.omega);
    report.witnesses.push_back(est.witness);
  }

  report.monotone = true;
  for (std::size_t i = 1; i < report.omegas.size(); ++i) {
    if (report.omegas[i] > (1.0 + kTrendNoise) * report.omegas[i - 1]) report.monotone = false;
  }
  const double first = report.omegas.front();
  const double last = report.omegas.back();
  report.trend_ratio = first > 0.0 ? last / first : 0.0;
  if (!report.monotone) {
    report.verdict = Verdict::inconclusive;
  } else {
    report.verdict = last < report.pass_threshold ? Verdict::pass : Verdict::fail;
  }
  return report;
}

}  // namespace aniso
