#pragma once

#include "aniso/model.hpp"

#include <string>
#include <vector>

namespace aniso {

/// Polynomial with coefficients in ascending powers.
struct Polynomial {
  std::vector<double> coeffs;

  double operator()(double u) const;
  Polynomial derivative() const;
  /// Antiderivative vanishing at 0.
  Polynomial antiderivative() const;
  bool operator==(const Polynomial&) const = default;
};

/// Inline model: polynomial flux components and the upper triangle of A.
/// diffusion[0] = A11, diffusion[1] = A12, diffusion[2] = A22 (d = 2);
/// diffusion[0] = A11 only for d = 1.
struct PolynomialModel {
  int dimension = 1;
  std::vector<Polynomial> flux;
  std::vector<Polynomial> diffusion;
  double state_bound = 1.0;
  std::string name = "custom";
  bool operator==(const PolynomialModel&) const = default;
};

ModelSpec make_polynomial_model(const PolynomialModel& poly);

/// Names accepted by make_preset, in gallery order.
const std::vector<std::string>& preset_names();
bool is_preset(const std::string& name);
/// Throws std::invalid_argument for unknown names.
ModelSpec make_preset(const std::string& name, double state_bound = 1.0);

}  // namespace aniso
