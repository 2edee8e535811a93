#include "aniso/kinetic.hpp"
#include "aniso/presets.hpp"

#include "oracles.hpp"

#include <doctest.h>

#include <cmath>
#include <random>

using namespace aniso;

namespace {

FrequencyPoint fp1(double tau, double kappa) {
  FrequencyPoint p;
  p.tau = tau;
  p.kappa = Vec::Constant(1, kappa);
  return p;
}

FrequencyPoint fp2(double tau, double k0, double k1) {
  FrequencyPoint p;
  p.tau = tau;
  p.kappa = Vec(2);
  p.kappa << k0, k1;
  return p;
}

ModelSpec linear_model(double c, double bound = 1.0) {
  PolynomialModel poly;
  poly.flux = {Polynomial{{0.0, c}}};
  poly.diffusion = {Polynomial{{0.0}}};
  poly.state_bound = bound;
  return make_polynomial_model(poly);
}

const std::vector<double> kLadder{1e-1, 1e-2, 1e-3, 1e-4, 1e-5, 1e-6};

}  // namespace

TEST_CASE("chi examples") {
  CHECK(chi(0.5, 1.0) == 1);
  CHECK(chi(-0.3, -1.0) == -1);
  CHECK(chi(2.0, 1.0) == 0);
  CHECK(chi(0.0, 1.0) == 0);
  CHECK(chi(1.0, 1.0) == 0);
  for (double xi : {-2.0, -0.1, 0.0, 0.7}) CHECK(chi(xi, 0.0) == 0);
}

TEST_CASE("chi is odd in the pair") {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> dist(-2.0, 2.0);
  for (int i = 0; i < 1000; ++i) {
    const double xi = dist(rng), u = dist(rng);
    CHECK(chi(xi, u) == -chi(-xi, -u));
  }
}

TEST_CASE("entropy_from_kinetic") {
  CHECK(std::abs(entropy_from_kinetic([](double x) { return 2 * x; }, 2.0, 3.0) - 4.0) < 1e-10);
  CHECK(entropy_from_kinetic([](double x) { return std::exp(x); }, 0.0, 1.0) == 0.0);
  auto kruzhkov = [](double x) { return x > 0.5 ? 1.0 : (x < 0.5 ? -1.0 : 0.0); };
  CHECK(std::abs(entropy_from_kinetic(kruzhkov, 1.0, 2.0)) < 1e-10);

  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> dist(-1.0, 1.0);
  for (int i = 0; i < 50; ++i) {
    const double u = dist(rng);
    CHECK(std::abs(entropy_from_kinetic([](double) { return 1.0; }, u, 1.0) - u) < 1e-10);
  }
}

TEST_CASE("Kruzhkov entropies with the jump anywhere") {
  std::mt19937_64 rng(17);
  std::uniform_real_distribution<double> dist(-1.0, 1.0);
  for (int i = 0; i < 500; ++i) {
    const double u = dist(rng), v = dist(rng);
    auto s = [v](double x) { return x > v ? 1.0 : (x < v ? -1.0 : 0.0); };
    CHECK(std::abs(entropy_from_kinetic(s, u, 1.0) - (std::abs(u - v) - std::abs(v))) < 1e-9);
  }
}

TEST_CASE("entropy_flux_from_kinetic") {
  const ModelSpec burgers = make_preset("burgers");
  const Vec q = entropy_flux_from_kinetic([](double x) { return 2 * x; }, 1.0, burgers);
  CHECK(std::abs(q(0) - 2.0 / 3.0) < 1e-10);
  CHECK(entropy_flux_from_kinetic([](double x) { return 2 * x; }, 0.0, burgers).isZero());

  const ModelSpec lin = linear_model(1.5, 2.0);
  CHECK(std::abs(entropy_flux_from_kinetic([](double) { return 1.0; }, 2.0, lin)(0) - 3.0) < 1e-10);

  // q'(u) = S'(u) a(u) componentwise in 2D: S = u^2, a = (u, u^2) -> q = (2u^3/3, u^4/2)
  const ModelSpec aniso2 = make_preset("anisotropic-2d");
  const Vec q2 = entropy_flux_from_kinetic([](double x) { return 2 * x; }, -0.6, aniso2);
  CHECK(std::abs(q2(0) - 2.0 * std::pow(-0.6, 3) / 3.0) < 1e-10);
  CHECK(std::abs(q2(1) - std::pow(0.6, 4) / 2.0) < 1e-10);
}

TEST_CASE("symbol_denominator") {
  const ModelSpec burgers = make_preset("burgers");
  CHECK(symbol_denominator(burgers, fp1(-1.0, 1.0), 1.0, 0.01) == doctest::Approx(0.01).epsilon(1e-15));
  CHECK(symbol_denominator(burgers, fp1(2.0, 0.0), 0.3, 1.0) == 5.0);

  // A = diag(u^2, 0) at xi = 2 gives diag(4, 0); a(2) = (2, 4), s = a.kappa = 2
  const ModelSpec aniso2 = make_preset("anisotropic-2d", 2.0);
  CHECK(symbol_denominator(aniso2, fp2(0.0, 1.0, 0.0), 2.0, 0.5) == doctest::Approx(0.5 + 4.0 + 16.0));
}

TEST_CASE("omega_at examples") {
  const ModelSpec lin = linear_model(1.0);
  CHECK(omega_at(lin, fp1(-1.0, 1.0), 1e-3) == doctest::Approx(2.0).epsilon(1e-14));
  CHECK(omega_at(lin, fp1(-1.0, 1.0), 1e-9) == doctest::Approx(2.0).epsilon(1e-14));

  const ModelSpec burgers = make_preset("burgers");
  for (double tau : {-2.0, -0.5, 0.0, 0.3, 1.0}) {
    for (double kappa : {-3.0, -1.0, 0.0, 0.5, 10.0}) {
      for (double lambda : {1e-1, 1e-3, 1e-5}) {
        if (tau == 0.0 && kappa == 0.0) continue;
        CAPTURE(tau); CAPTURE(kappa); CAPTURE(lambda);
        const double w = omega_at(burgers, fp1(tau, kappa), lambda);
        CHECK(std::abs(w - oracle::burgers_omega(tau, kappa, lambda)) < 1e-8);
        CHECK(w >= 0.0);
        CHECK(w <= 2.0);
      }
    }
  }
}

TEST_CASE("omega_at is non-decreasing in lambda") {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> dist(-3.0, 3.0);
  std::uniform_real_distribution<double> loglam(-7.0, 0.0);
  for (const auto& name : {"burgers", "porous-medium", "burgers-degenerate"}) {
    const ModelSpec m = make_preset(name);
    for (int i = 0; i < 40; ++i) {
      const FrequencyPoint p = fp1(dist(rng), dist(rng));
      double l1 = std::pow(10.0, loglam(rng)), l2 = std::pow(10.0, loglam(rng));
      if (l1 > l2) std::swap(l1, l2);
      CHECK(omega_at(m, p, l1) <= omega_at(m, p, l2) + 2e-9);
    }
  }
}

TEST_CASE("omega_delta examples") {
  SamplingPlan plan;
  const auto lin = omega_delta(make_preset("linear-advection"), 1.0, 1e-4, plan);
  CHECK(lin.omega >= 2.0 - 1e-12);
  CHECK(std::abs(lin.witness.tau + lin.witness.kappa(0)) < 1e-12);

  // samplewise arctan oracle for burgers at lambda = 1e-4
  const ModelSpec burgers = make_preset("burgers");
  const auto points = sampling_points(burgers, 1.0, plan);
  REQUIRE(!points.empty());
  double oracle_max = 0.0;
  for (const auto& p : points) {
    CHECK(p.l1_size() >= 1.0 - 1e-12);
    oracle_max = std::max(oracle_max, oracle::burgers_omega(p.tau, p.kappa(0), 1e-4));
  }
  const auto b = omega_delta(burgers, 1.0, 1e-4, plan);
  CHECK(std::abs(b.omega - oracle_max) < 1e-8);
  CHECK(b.omega <= 2.0);
  // kappa = 0 slice lower bound: tau = delta is in the plan
  CHECK(b.omega >= 2.0 * 1e-4 / (1e-4 + 1.0) - 1e-12);

  // porous medium: a = 0, kappa = 0 slice is 2M lambda / (lambda + tau^2)
  const ModelSpec porous = make_preset("porous-medium");
  const double slice = omega_at(porous, fp1(1.0, 0.0), 1e-4);
  CHECK(std::abs(slice - 2.0 * 1e-4 / (1e-4 + 1.0)) < 1e-12);
  CHECK(omega_delta(porous, 1.0, 1e-4, plan).omega >= slice);
}

TEST_CASE("omega_delta ties go to the first point") {
  const ModelSpec lin = linear_model(1.0);
  std::vector<FrequencyPoint> pts{fp1(-2.0, 2.0), fp1(-1.0, 1.0), fp1(5.0, 0.0)};
  const auto r = omega_delta(lin, pts, 1e-3);
  CHECK(r.witness.tau == -2.0);
  CHECK_THROWS(omega_delta(lin, std::vector<FrequencyPoint>{}, 1e-3));
}

TEST_CASE("omega_delta is deterministic") {
  SamplingPlan plan;
  const ModelSpec m = make_preset("anisotropic-2d");
  const auto a = omega_delta(m, 1.0, 1e-3, plan);
  const auto b = omega_delta(m, 1.0, 1e-3, plan);
  CHECK(a.omega == b.omega);
  CHECK(a.witness.tau == b.witness.tau);
  CHECK(a.witness.kappa == b.witness.kappa);
}

TEST_CASE("degeneracy_set_measure") {
  const double s = 1.0 / std::sqrt(2.0);
  CHECK(degeneracy_set_measure(make_preset("linear-advection"), fp1(-s, s), 1e-6, 1000) ==
        doctest::Approx(2.0));
  const double burgers = degeneracy_set_measure(make_preset("burgers"), fp1(0.0, 1.0), 1e-3, 200000);
  CHECK(std::abs(burgers - 2e-3) < 1e-4);
  CHECK(degeneracy_set_measure(make_preset("heat"), fp1(0.0, 1.0), 0.5, 1000) == 0.0);
  // unnormalised input is rescaled first
  CHECK(degeneracy_set_measure(make_preset("linear-advection"), fp1(-3.0, 3.0), 1e-6, 100) ==
        doctest::Approx(2.0));
}

TEST_CASE("check_condition verdicts") {
  SamplingPlan plan;
  const auto lin = check_condition(make_preset("linear-advection"), 1.0, kLadder, plan);
  CHECK(lin.verdict == Verdict::fail);
  for (double w : lin.omegas) CHECK(w >= 2.0 - 1e-6);
  CHECK(lin.omegas.size() == kLadder.size());
  CHECK(lin.witnesses.size() == kLadder.size());
  CHECK(lin.pass_threshold == doctest::Approx(0.1));

  for (const auto& name : {"burgers", "porous-medium", "burgers-degenerate", "heat"}) {
    CAPTURE(name);
    const auto r = check_condition(make_preset(name), 1.0, kLadder, plan);
    CHECK(r.verdict == Verdict::pass);
    CHECK(r.monotone);
    CHECK(r.omegas.back() < 0.1);
    CHECK(r.trend_ratio < 1.0);
    for (double w : r.omegas) {
      CHECK(w >= 0.0);
      CHECK(w <= 2.0);
    }
  }
}

TEST_CASE("burgers omega shrinks like sqrt(lambda)") {
  SamplingPlan plan;
  const auto r = check_condition(make_preset("burgers"), 1.0, kLadder, plan);
  // two decades in lambda -> about one decade in omega
  for (std::size_t k = 2; k < r.omegas.size(); ++k) {
    const double ratio = r.omegas[k - 2] / r.omegas[k];
    CHECK(ratio > 5.0);
    CHECK(ratio < 20.0);
  }
}

TEST_CASE("check_condition lattice mode") {
  SamplingPlan plan;
  plan.lattice = true;
  plan.periods = {1.0};
  const auto lin = check_condition(make_preset("linear-advection"), 1.0, kLadder, plan);
  CHECK(lin.verdict == Verdict::fail);
  for (const auto& w : lin.witnesses) {
    const double n = w.kappa(0) / (2.0 * std::numbers::pi);
    CHECK(std::abs(n - std::round(n)) < 1e-12);
  }
  const auto b = check_condition(make_preset("burgers"), 1.0, kLadder, plan);
  CHECK(b.verdict == Verdict::pass);

  SamplingPlan plan2;
  plan2.lattice = true;
  plan2.periods = {1.0, 1.0};
  CHECK(check_condition(make_preset("anisotropic-2d"), 1.0, kLadder, plan2).verdict == Verdict::pass);

  SamplingPlan missing;
  missing.lattice = true;
  CHECK_THROWS_AS(check_condition(make_preset("burgers"), 1.0, kLadder, missing), std::invalid_argument);
}

TEST_CASE("check_condition rejects bad ladders") {
  SamplingPlan plan;
  const ModelSpec m = make_preset("burgers");
  CHECK_THROWS_AS(check_condition(m, 1.0, {1e-3, 1e-2}, plan), std::invalid_argument);
  CHECK_THROWS_AS(check_condition(m, 1.0, {1e-3, -1e-2}, plan), std::invalid_argument);
  CHECK_THROWS_AS(check_condition(m, 1.0, {}, plan), std::invalid_argument);
  CHECK_THROWS_AS(check_condition(m, 0.0, kLadder, plan), std::invalid_argument);
}

TEST_CASE("verdict names") {
  CHECK(std::string(to_string(Verdict::pass)) == "pass");
  CHECK(std::string(to_string(Verdict::fail)) == "fail");
  CHECK(std::string(to_string(Verdict::inconclusive)) == "inconclusive");
}
