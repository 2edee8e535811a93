#pragma once

#include <Eigen/Core>

#include <functional>
#include <stdexcept>
#include <string>

namespace aniso {

// Small fixed-capacity vectors and matrices: d is 1 or 2.
using Vec = Eigen::Matrix<double, Eigen::Dynamic, 1, 0, 2, 1>;
using Mat = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, 0, 2, 2>;

class ModelError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

class NotPsdError : public ModelError {
public:
  using ModelError::ModelError;
};

/// Scalar model u_t + div f(u) = div(A(u) grad u) on [-M, M].
///
/// Optional members may be left empty: speed falls back to a central
/// difference of flux, sqrt_factor to the symmetric PSD square root of
/// diffusion, beta and bprimitive to adaptive quadrature from 0.
struct ModelSpec {
  int dimension = 1;
  std::function<Vec(double)> flux;
  std::function<Vec(double)> speed;
  std::function<Mat(double)> diffusion;
  std::function<Mat(double)> sqrt_factor;
  std::function<Mat(double)> beta;        // d/du beta = sqrt_factor, beta(0) = 0
  std::function<Mat(double)> bprimitive;  // d/du B = diffusion, B(0) = 0
  double state_bound = 1.0;
  std::string name;
};

struct ModelTolerances {
  double symmetry = 1e-12;
  double psd = 1e-12;
  double factor = 1e-10;
  double primitive = 1e-10;
  double chain_rule = 1e-10;
};

inline constexpr double kPrimitiveQuadTol = 1e-10;
inline constexpr int kPrimitiveQuadDepth = 40;

Vec flux_eval(const ModelSpec& model, double u);
Vec speed_eval(const ModelSpec& model, double u);
/// Central-difference speed, ignoring any analytic speed the model carries.
Vec speed_fallback(const ModelSpec& model, double u);
Mat diffusion_eval(const ModelSpec& model, double u);
Mat sqrt_factor_eval(const ModelSpec& model, double u, double tol_psd = ModelTolerances{}.psd);
/// Symmetric PSD square root by eigendecomposition; negative eigenvalues
/// above -tol_psd are clamped to zero.
Mat symmetric_sqrt(const Mat& a, double tol_psd = ModelTolerances{}.psd);
double beta_eval(const ModelSpec& model, double u, int i, int k);
double bprimitive_eval(const ModelSpec& model, double u, int i, int j);
Mat beta_matrix(const ModelSpec& model, double u);
Mat bprimitive_matrix(const ModelSpec& model, double u);

struct CheckResult {
  bool passed = true;
  double worst_residual = 0.0;
  double tolerance = 0.0;
  double worst_at = 0.0;  // sample u of the worst residual
};

struct ModelValidationReport {
  CheckResult symmetry;
  CheckResult psd;
  CheckResult factorization;
  CheckResult primitives;
  CheckResult chain_rule;
  int samples = 0;
  std::string error;  // non-empty if an evaluation threw

  bool passed() const {
    return error.empty() && symmetry.passed && psd.passed && factorization.passed &&
           primitives.passed && chain_rule.passed;
  }
};

/// Evaluates every model invariant on a uniform grid of [-M, M].
/// Failures are recorded in the report; nothing is thrown.
ModelValidationReport validate_model(const ModelSpec& model, int samples,
                                     const ModelTolerances& tol = {});

}  // namespace aniso
