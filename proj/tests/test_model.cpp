#include "aniso/model.hpp"
#include "aniso/presets.hpp"

#include "oracles.hpp"

#include <doctest.h>

#include <cmath>
#include <limits>

using namespace aniso;

namespace {

Mat mat2(double a, double b, double c, double d) {
  Mat m(2, 2);
  m << a, b, c, d;
  return m;
}

Mat mat1(double a) {
  Mat m(1, 1);
  m(0, 0) = a;
  return m;
}

ModelSpec constant_diffusion(Mat a) {
  ModelSpec m;
  m.name = "constant";
  m.dimension = static_cast<int>(a.rows());
  const int d = m.dimension;
  m.flux = [d](double) { return Vec(Vec::Zero(d)); };
  m.diffusion = [a](double) { return a; };
  return m;
}

ModelSpec sigma_abs_model() {
  ModelSpec m;
  m.name = "sigma-abs";
  m.flux = [](double u) { Vec v(1); v(0) = 0.5 * u * u; return v; };
  m.diffusion = [](double u) { return mat1(u * u); };
  m.sqrt_factor = [](double u) { return mat1(std::abs(u)); };
  return m;
}

}  // namespace

TEST_CASE("flux_eval") {
  CHECK(flux_eval(make_preset("burgers"), 2.0)(0) == 2.0);
  for (const auto& name : preset_names()) {
    const ModelSpec m = make_preset(name);
    CHECK(flux_eval(m, 0.0).isZero());
  }
  const Vec f = flux_eval(make_preset("anisotropic-2d"), 1.0);
  CHECK(f(0) == 0.5);
  CHECK(f(1) == doctest::Approx(1.0 / 3.0).epsilon(1e-15));

  ModelSpec bad = make_preset("burgers");
  bad.flux = [](double u) { Vec v(1); v(0) = 1.0 / (u - 0.5); return v; };
  CHECK_THROWS_WITH_AS(flux_eval(bad, 0.5), doctest::Contains("u = 0.5"), ModelError);
}

TEST_CASE("speed_eval") {
  CHECK(speed_eval(make_preset("burgers"), 3.0)(0) == 3.0);
  CHECK(speed_eval(make_preset("linear-advection"), -0.7)(0) == 1.0);

  ModelSpec fd = make_preset("burgers");
  fd.speed = nullptr;
  CHECK(std::abs(speed_eval(fd, 1.0)(0) - 1.0) < 1e-9);
}

TEST_CASE("speed fallback matches analytic speed on every preset") {
  for (const auto& name : preset_names()) {
    const ModelSpec m = make_preset(name);
    for (int s = 0; s <= 40; ++s) {
      const double u = -1.0 + s / 20.0;
      CHECK((speed_fallback(m, u) - speed_eval(m, u)).cwiseAbs().maxCoeff() < 1e-8);
    }
  }
}

TEST_CASE("diffusion_eval") {
  CHECK(diffusion_eval(make_preset("porous-medium"), -0.5)(0, 0) == 1.0);
  CHECK(diffusion_eval(make_preset("anisotropic-2d"), 2.0) == mat2(4, 0, 0, 0));
  CHECK(diffusion_eval(make_preset("burgers"), 0.3).isZero());
  CHECK_THROWS_AS(diffusion_eval(constant_diffusion(mat2(0, 1, 0, 0)), 0.0), ModelError);
}

TEST_CASE("sqrt_factor_eval") {
  ModelSpec diag = constant_diffusion(mat2(4, 0, 0, 0));
  CHECK((sqrt_factor_eval(diag, 0.0) - mat2(2, 0, 0, 0)).cwiseAbs().maxCoeff() < 1e-15);
  CHECK(sqrt_factor_eval(constant_diffusion(mat2(0, 0, 0, 0)), 0.0).isZero());

  const Mat s = sqrt_factor_eval(constant_diffusion(mat2(2, 1, 1, 2)), 0.0);
  CHECK((s * s.transpose() - mat2(2, 1, 1, 2)).cwiseAbs().maxCoeff() < 1e-12);

  CHECK_THROWS_AS(sqrt_factor_eval(constant_diffusion(mat1(-1.0)), 0.0), NotPsdError);
  CHECK_THROWS_AS(sqrt_factor_eval(constant_diffusion(mat2(1, 2, 2, 1)), 0.0), NotPsdError);
  // tiny negative round-off is clamped
  CHECK(sqrt_factor_eval(constant_diffusion(mat1(-1e-14)), 0.0)(0, 0) == 0.0);
}

TEST_CASE("beta_eval") {
  CHECK(beta_eval(sigma_abs_model(), 1.0, 0, 0) == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(beta_eval(make_preset("burgers"), 0.8, 0, 0) == 0.0);

  // quadrature path against the closed-form antiderivative
  ModelSpec porous = make_preset("porous-medium");
  const double analytic = beta_eval(porous, 1.0, 0, 0);
  porous.beta = nullptr;
  const double quadrature = beta_eval(porous, 1.0, 0, 0);
  CHECK(std::abs(analytic - 0.9428090415820635) < 1e-15);
  CHECK(std::abs(quadrature - oracle::porous_beta(1.0)) < 1e-10);
  CHECK(std::abs(beta_eval(porous, -0.3, 0, 0) - oracle::porous_beta(-0.3)) < 1e-10);

  CHECK_THROWS_AS(beta_eval(porous, 0.5, 1, 0), std::out_of_range);
}

TEST_CASE("bprimitive_eval") {
  ModelSpec m = sigma_abs_model();
  CHECK(bprimitive_eval(m, 1.0, 0, 0) == doctest::Approx(1.0 / 3.0).epsilon(1e-12));
  CHECK(bprimitive_eval(make_preset("burgers"), 0.9, 0, 0) == 0.0);

  ModelSpec porous = make_preset("porous-medium");
  CHECK(bprimitive_eval(porous, -1.0, 0, 0) == -1.0);
  porous.bprimitive = nullptr;
  CHECK(std::abs(bprimitive_eval(porous, -1.0, 0, 0) + 1.0) < 1e-10);
}

TEST_CASE("every preset factorises A within 1e-10") {
  for (const auto& name : preset_names()) {
    const ModelSpec m = make_preset(name);
    for (int s = 0; s <= 100; ++s) {
      const double u = -1.0 + s / 50.0;
      const Mat sg = sqrt_factor_eval(m, u);
      CHECK((sg * sg.transpose() - diffusion_eval(m, u)).cwiseAbs().maxCoeff() < 1e-10);
    }
  }
}

TEST_CASE("finite differences of the primitives match sigma and A") {
  // Midpoints of 100 intervals avoid the kink of the porous-medium sigma at 0.
  for (const auto& name : preset_names()) {
    const ModelSpec m = make_preset(name);
    const int d = m.dimension;
    for (int s = 0; s < 100; ++s) {
      const double u = -1.0 + (s + 0.5) / 50.0;
      const double h = 1e-6 * std::max(1.0, std::abs(u));
      const Mat sg = sqrt_factor_eval(m, u);
      const Mat a = diffusion_eval(m, u);
      for (int i = 0; i < d; ++i) {
        for (int k = 0; k < d; ++k) {
          const double dbeta = (beta_eval(m, u + h, i, k) - beta_eval(m, u - h, i, k)) / (2 * h);
          const double db = (bprimitive_eval(m, u + h, i, k) - bprimitive_eval(m, u - h, i, k)) / (2 * h);
          CHECK(std::abs(dbeta - sg(i, k)) < 10 * h);
          CHECK(std::abs(db - a(i, k)) < 10 * h);
        }
      }
    }
  }
}

TEST_CASE("validate_model on presets") {
  for (const auto& name : preset_names()) {
    CAPTURE(name);
    const ModelValidationReport r = validate_model(make_preset(name), 101);
    CHECK(r.passed());
    CHECK(r.samples == 101);
    for (const CheckResult* c : {&r.symmetry, &r.psd, &r.factorization, &r.primitives, &r.chain_rule}) {
      CHECK(c->worst_residual < 1e-10);
    }
  }
}

TEST_CASE("validate_model flags broken models without throwing") {
  const auto asym = validate_model(constant_diffusion(mat2(0, 1, 0, 0)), 11);
  CHECK_FALSE(asym.passed());
  CHECK_FALSE(asym.symmetry.passed);
  CHECK(asym.symmetry.worst_residual == 1.0);

  const auto negative = validate_model(constant_diffusion(mat1(-1.0)), 11);
  CHECK_FALSE(negative.passed());
  CHECK_FALSE(negative.psd.passed);
  CHECK(negative.psd.worst_residual == 1.0);
  CHECK(negative.symmetry.passed);

  ModelSpec wrong_beta = make_preset("burgers-degenerate");
  wrong_beta.beta = [](double u) { return mat1(u * u); };
  const auto r = validate_model(wrong_beta, 21);
  CHECK_FALSE(r.primitives.passed);
  CHECK_FALSE(r.chain_rule.passed);

  ModelSpec nan_model = make_preset("burgers");
  nan_model.diffusion = [](double) { return mat1(std::numeric_limits<double>::quiet_NaN()); };
  CHECK_FALSE(validate_model(nan_model, 5).passed());

  CHECK_THROWS_AS(validate_model(make_preset("burgers"), 1), std::invalid_argument);
}

TEST_CASE("polynomial models") {
  PolynomialModel poly;
  poly.dimension = 2;
  poly.flux = {{{0.0, 0.0, 0.5}}, {{0.0, 1.0}}};
  poly.diffusion = {{{1.0, 0.0, 1.0}}, {{0.0, 0.5}}, {{2.0}}};
  const ModelSpec m = make_polynomial_model(poly);
  CHECK(flux_eval(m, 2.0)(0) == 2.0);
  CHECK(speed_eval(m, 2.0)(0) == 2.0);
  CHECK(speed_eval(m, 2.0)(1) == 1.0);
  CHECK(diffusion_eval(m, 0.5) == mat2(1.25, 0.25, 0.25, 2.0));
  CHECK(bprimitive_eval(m, 1.0, 0, 0) == doctest::Approx(4.0 / 3.0).epsilon(1e-15));
  // A(u) = [[1+u^2, u/2], [u/2, 2]] is positive definite on [-1, 1]
  const auto r = validate_model(m, 21);
  CHECK(r.passed());

  PolynomialModel bad;
  bad.flux = {{{0.0}}};
  bad.diffusion = {};
  CHECK_THROWS_AS(make_polynomial_model(bad), std::invalid_argument);
}

TEST_CASE("unknown preset") {
  CHECK_THROWS_AS(make_preset("navier-stokes"), std::invalid_argument);
  CHECK(make_preset("heat", 2.5).state_bound == 2.5);
}
