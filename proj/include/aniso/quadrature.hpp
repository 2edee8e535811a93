#pragma once

#include <functional>
#include <stdexcept>
#include <string>

namespace aniso {

/// Raised when adaptive quadrature cannot reach the requested tolerance.
class QuadratureError : public std::runtime_error {
public:
  QuadratureError(const std::string& what, double achieved)
      : std::runtime_error(what), achieved_(achieved) {}
  double achieved() const noexcept { return achieved_; }

private:
  double achieved_;
};

struct QuadratureOptions {
  double abs_tol = 1e-10;
  int max_depth = 40;          // bisection levels below the root interval
  int max_intervals = 20000;   // hard cap on live subintervals
  /// Also evaluate panel endpoints so a jump between an endpoint and the
  /// outermost node is not missed. Costs two evaluations per panel and
  /// over-refines integrands that carry evaluation noise.
  bool detect_edge_jumps = false;
};

struct QuadratureResult {
  double value = 0.0;
  double error = 0.0;
  int intervals = 0;
};

/// Globally adaptive 7/15-point Gauss-Kronrod integration of fn over [a, b].
/// The interval with the largest error estimate is bisected until the summed
/// estimate falls below abs_tol. Throws QuadratureError if the budget runs out.
QuadratureResult integrate(const std::function<double(double)>& fn, double a, double b,
                           const QuadratureOptions& opts = {});

/// Same as integrate() but returns only the value.
double integrate_value(const std::function<double(double)>& fn, double a, double b,
                       const QuadratureOptions& opts = {});

}  // namespace aniso
