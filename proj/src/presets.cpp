#include "aniso/presets.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace aniso {

double Polynomial::operator()(double u) const {
  double acc = 0.0;
  for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) acc = acc * u + *it;
  return acc;
}

Polynomial Polynomial::derivative() const {
  Polynomial out;
  for (std::size_t p = 1; p < coeffs.size(); ++p) out.coeffs.push_back(coeffs[p] * p);
  return out;
}

Polynomial Polynomial::antiderivative() const {
  Polynomial out;
  out.coeffs.push_back(0.0);
  for (std::size_t p = 0; p < coeffs.size(); ++p) out.coeffs.push_back(coeffs[p] / (p + 1));
  return out;
}

namespace {

Vec vec1(double x) {
  Vec v(1);
  v(0) = x;
  return v;
}

Vec vec2(double x, double y) {
  Vec v(2);
  v << x, y;
  return v;
}

Mat mat1(double x) {
  Mat m(1, 1);
  m(0, 0) = x;
  return m;
}

Mat diag2(double x, double y) {
  Mat m(2, 2);
  m << x, 0.0, 0.0, y;
  return m;
}

double sgn(double u) { return (u > 0.0) - (u < 0.0); }

ModelSpec linear_advection() {
  constexpr double c = 1.0;
  ModelSpec m;
  m.name = "linear-advection";
  m.flux = [](double u) { return vec1(c * u); };
  m.speed = [](double) { return vec1(c); };
  m.diffusion = [](double) { return mat1(0.0); };
  m.sqrt_factor = m.diffusion;
  m.beta = m.diffusion;
  m.bprimitive = m.diffusion;
  return m;
}

ModelSpec burgers() {
  ModelSpec m;
  m.name = "burgers";
  m.flux = [](double u) { return vec1(0.5 * u * u); };
  m.speed = [](double u) { return vec1(u); };
  m.diffusion = [](double) { return mat1(0.0); };
  m.sqrt_factor = m.diffusion;
  m.beta = m.diffusion;
  m.bprimitive = m.diffusion;
  return m;
}

ModelSpec burgers_degenerate() {
  ModelSpec m;
  m.name = "burgers-degenerate";
  m.flux = [](double u) { return vec1(0.5 * u * u); };
  m.speed = [](double u) { return vec1(u); };
  m.diffusion = [](double u) { return mat1(u * u); };
  m.sqrt_factor = [](double u) { return mat1(std::abs(u)); };
  m.beta = [](double u) { return mat1(0.5 * u * std::abs(u)); };
  m.bprimitive = [](double u) { return mat1(u * u * u / 3.0); };
  return m;
}

// m = 2: A = 2|u|, B = u|u|.
ModelSpec porous_medium() {
  ModelSpec m;
  m.name = "porous-medium";
  m.flux = [](double) { return vec1(0.0); };
  m.speed = [](double) { return vec1(0.0); };
  m.diffusion = [](double u) { return mat1(2.0 * std::abs(u)); };
  m.sqrt_factor = [](double u) { return mat1(std::sqrt(2.0 * std::abs(u))); };
  m.beta = [](double u) {
    const double au = std::abs(u);
    return mat1(sgn(u) * (2.0 * std::sqrt(2.0) / 3.0) * au * std::sqrt(au));
  };
  m.bprimitive = [](double u) { return mat1(u * std::abs(u)); };
  return m;
}

ModelSpec anisotropic_2d() {
  ModelSpec m;
  m.name = "anisotropic-2d";
  m.dimension = 2;
  m.flux = [](double u) { return vec2(0.5 * u * u, u * u * u / 3.0); };
  m.speed = [](double u) { return vec2(u, u * u); };
  m.diffusion = [](double u) { return diag2(u * u, 0.0); };
  m.sqrt_factor = [](double u) { return diag2(std::abs(u), 0.0); };
  m.beta = [](double u) { return diag2(0.5 * u * std::abs(u), 0.0); };
  m.bprimitive = [](double u) { return diag2(u * u * u / 3.0, 0.0); };
  return m;
}

ModelSpec heat() {
  ModelSpec m;
  m.name = "heat";
  m.flux = [](double) { return vec1(0.0); };
  m.speed = [](double) { return vec1(0.0); };
  m.diffusion = [](double) { return mat1(1.0); };
  m.sqrt_factor = m.diffusion;
  m.beta = [](double u) { return mat1(u); };
  m.bprimitive = m.beta;
  return m;
}

}  // namespace

ModelSpec make_polynomial_model(const PolynomialModel& poly) {
  const int d = poly.dimension;
  if (d != 1 && d != 2) throw std::invalid_argument("model dimension must be 1 or 2");
  if (static_cast<int>(poly.flux.size()) != d) {
    throw std::invalid_argument("polynomial model needs one flux polynomial per dimension");
  }
  const std::size_t n_upper = d == 1 ? 1 : 3;
  if (poly.diffusion.size() != n_upper) {
    throw std::invalid_argument("polynomial model needs the upper triangle of A");
  }
  std::vector<Polynomial> speed;
  for (const auto& p : poly.flux) speed.push_back(p.derivative());
  std::vector<Polynomial> prim;
  for (const auto& p : poly.diffusion) prim.push_back(p.antiderivative());

  auto vec_of = [d](std::vector<Polynomial> ps) {
    return [d, ps = std::move(ps)](double u) {
      Vec v(d);
      for (int i = 0; i < d; ++i) v(i) = ps[i](u);
      return v;
    };
  };
  auto mat_of = [d](std::vector<Polynomial> ps) {
    return [d, ps = std::move(ps)](double u) {
      Mat m(d, d);
      if (d == 1) {
        m(0, 0) = ps[0](u);
      } else {
        m(0, 0) = ps[0](u);
        m(0, 1) = m(1, 0) = ps[1](u);
        m(1, 1) = ps[2](u);
      }
      return m;
    };
  };

  ModelSpec m;
  m.name = poly.name;
  m.dimension = d;
  m.state_bound = poly.state_bound;
  m.flux = vec_of(poly.flux);
  m.speed = vec_of(speed);
  m.diffusion = mat_of(poly.diffusion);
  m.bprimitive = mat_of(prim);
  return m;
}

const std::vector<std::string>& preset_names() {
  static const std::vector<std::string> names = {
      "linear-advection", "burgers", "burgers-degenerate", "porous-medium", "anisotropic-2d", "heat"};
  return names;
}

bool is_preset(const std::string& name) {
  const auto& names = preset_names();
  return std::find(names.begin(), names.end(), name) != names.end();
}

ModelSpec make_preset(const std::string& name, double state_bound) {
  ModelSpec m;
  if (name == "linear-advection") m = linear_advection();
  else if (name == "burgers") m = burgers();
  else if (name == "burgers-degenerate") m = burgers_degenerate();
  else if (name == "porous-medium") m = porous_medium();
  else if (name == "anisotropic-2d") m = anisotropic_2d();
  else if (name == "heat") m = heat();
  else throw std::invalid_argument("unknown model preset '" + name + "'");
  if (!(state_bound > 0.0)) throw std::invalid_argument("state bound must be positive");
  m.state_bound = state_bound;
  return m;
}

}  // namespace aniso
