#include "aniso/model.hpp"

#include "aniso/quadrature.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <sstream>

namespace aniso {
namespace {

std::string describe(const char* what, const ModelSpec& model, double u) {
  std::ostringstream msg;
  msg << what << " of model '" << model.name << "' is not finite at u = " << u;
  return msg.str();
}

void require_finite(const Vec& v, const char* what, const ModelSpec& model, double u) {
  if (!v.allFinite()) throw ModelError(describe(what, model, u));
}

void require_finite(const Mat& m, const char* what, const ModelSpec& model, double u) {
  if (!m.allFinite()) throw ModelError(describe(what, model, u));
}

double asymmetry(const Mat& a) {
  double worst = 0.0;
  for (int i = 0; i < a.rows(); ++i)
    for (int j = i + 1; j < a.cols(); ++j) worst = std::max(worst, std::abs(a(i, j) - a(j, i)));
  return worst;
}

double min_eigenvalue(const Mat& a) {
  if (a.rows() == 1) return a(0, 0);
  Mat sym = 0.5 * (a + a.transpose());
  Eigen::SelfAdjointEigenSolver<Mat> eig(sym, Eigen::EigenvaluesOnly);
  return eig.eigenvalues().minCoeff();
}

// Square root that never throws: negative eigenvalues are clamped.
Mat clamped_sqrt(const Mat& a) {
  if (a.rows() == 1) {
    Mat s(1, 1);
    s(0, 0) = std::sqrt(std::max(a(0, 0), 0.0));
    return s;
  }
  Mat sym = 0.5 * (a + a.transpose());
  Eigen::SelfAdjointEigenSolver<Mat> eig(sym);
  Vec roots = eig.eigenvalues().cwiseMax(0.0).cwiseSqrt();
  return eig.eigenvectors() * roots.asDiagonal() * eig.eigenvectors().transpose();
}

QuadratureOptions primitive_options() {
  QuadratureOptions opts;
  opts.abs_tol = kPrimitiveQuadTol;
  opts.max_depth = kPrimitiveQuadDepth;
  return opts;
}

void check_index(const ModelSpec& model, int i, int k) {
  if (i < 0 || k < 0 || i >= model.dimension || k >= model.dimension) {
    throw std::out_of_range("matrix index out of range for model dimension");
  }
}

}  // namespace

Vec flux_eval(const ModelSpec& model, double u) {
  Vec f = model.flux(u);
  require_finite(f, "flux", model, u);
  return f;
}

Vec speed_fallback(const ModelSpec& model, double u) {
  const double h = 1e-6 * std::max(1.0, std::abs(u));
  Vec a = (model.flux(u + h) - model.flux(u - h)) / (2.0 * h);
  require_finite(a, "speed", model, u);
  return a;
}

Vec speed_eval(const ModelSpec& model, double u) {
  if (!model.speed) return speed_fallback(model, u);
  Vec a = model.speed(u);
  require_finite(a, "speed", model, u);
  return a;
}

Mat diffusion_eval(const ModelSpec& model, double u) {
  Mat a = model.diffusion(u);
  require_finite(a, "diffusion", model, u);
  const double scale = std::max(1.0, a.cwiseAbs().maxCoeff());
  if (asymmetry(a) > ModelTolerances{}.symmetry * scale) {
    std::ostringstream msg;
    msg << "diffusion of model '" << model.name << "' is not symmetric at u = " << u;
    throw ModelError(msg.str());
  }
  return a;
}

Mat symmetric_sqrt(const Mat& a, double tol_psd) {
  const double lowest = min_eigenvalue(a);
  if (lowest < -tol_psd) {
    std::ostringstream msg;
    msg << "diffusion matrix is not positive semidefinite (eigenvalue " << lowest << ")";
    throw NotPsdError(msg.str());
  }
  return clamped_sqrt(a);
}

Mat sqrt_factor_eval(const ModelSpec& model, double u, double tol_psd) {
  if (model.sqrt_factor) {
    Mat s = model.sqrt_factor(u);
    require_finite(s, "sqrt factor", model, u);
    return s;
  }
  try {
    return symmetric_sqrt(diffusion_eval(model, u), tol_psd);
  } catch (const NotPsdError& e) {
    std::ostringstream msg;
    msg << e.what() << " for model '" << model.name << "' at u = " << u;
    throw NotPsdError(msg.str());
  }
}

double beta_eval(const ModelSpec& model, double u, int i, int k) {
  check_index(model, i, k);
  if (model.beta) return model.beta(u)(i, k);
  return integrate_value([&](double v) { return sqrt_factor_eval(model, v)(i, k); }, 0.0, u,
                         primitive_options());
}

double bprimitive_eval(const ModelSpec& model, double u, int i, int j) {
  check_index(model, i, j);
  if (model.bprimitive) return model.bprimitive(u)(i, j);
  return integrate_value([&](double v) { return model.diffusion(v)(i, j); }, 0.0, u,
                         primitive_options());
}

Mat beta_matrix(const ModelSpec& model, double u) {
  if (model.beta) return model.beta(u);
  const int d = model.dimension;
  Mat out(d, d);
  for (int i = 0; i < d; ++i)
    for (int k = 0; k < d; ++k) out(i, k) = beta_eval(model, u, i, k);
  return out;
}

Mat bprimitive_matrix(const ModelSpec& model, double u) {
  if (model.bprimitive) return model.bprimitive(u);
  const int d = model.dimension;
  Mat out(d, d);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) out(i, j) = bprimitive_eval(model, u, i, j);
  return out;
}

namespace {

void record(CheckResult& check, double residual, double u) {
  if (residual > check.worst_residual || std::isnan(residual)) {
    check.worst_residual = residual;
    check.worst_at = u;
  }
}

void finish(CheckResult& check) {
  check.passed = check.worst_residual <= check.tolerance;
}

}  // namespace

ModelValidationReport validate_model(const ModelSpec& model, int samples,
                                     const ModelTolerances& tol) {
  if (samples < 2) throw std::invalid_argument("validate_model needs at least 2 samples");
  ModelValidationReport report;
  report.samples = samples;
  report.symmetry.tolerance = tol.symmetry;
  report.psd.tolerance = tol.psd;
  report.factorization.tolerance = tol.factor;
  report.primitives.tolerance = tol.primitive;
  report.chain_rule.tolerance = tol.chain_rule;

  const int d = model.dimension;
  const double bound = model.state_bound;
  // Difference quotients of the primitives are compared with interval means
  // of their integrands, so kinks in sigma do not pollute the residual.
  const double h = 1e-3;
  QuadratureOptions fine;
  fine.abs_tol = 1e-13;
  fine.max_depth = 50;

  auto sigma = [&](double v) {
    return model.sqrt_factor ? Mat(model.sqrt_factor(v)) : clamped_sqrt(model.diffusion(v));
  };

  // Weight psi(v) = (c + v)^2 with c > M, so sqrt(psi) = c + v on [-M, M].
  const double shift = bound + 1.0;

  try {
    for (int s = 0; s < samples; ++s) {
      const double u = -bound + 2.0 * bound * s / (samples - 1);
      const Mat a = model.diffusion(u);
      require_finite(a, "diffusion", model, u);
      record(report.symmetry, asymmetry(a), u);
      record(report.psd, std::max(0.0, -min_eigenvalue(a)), u);
      const Mat sg = sigma(u);
      require_finite(sg, "sqrt factor", model, u);
      record(report.factorization, (sg * sg.transpose() - a).cwiseAbs().maxCoeff(), u);

      for (int i = 0; i < d; ++i) {
        for (int k = 0; k < d; ++k) {
          const double dbeta = beta_eval(model, u + h, i, k) - beta_eval(model, u - h, i, k);
          const double sigma_int =
              integrate_value([&](double v) { return sigma(v)(i, k); }, u - h, u + h, fine);
          record(report.primitives, std::abs(dbeta - sigma_int) / (2.0 * h), u);

          const double db = bprimitive_eval(model, u + h, i, k) - bprimitive_eval(model, u - h, i, k);
          const double a_int =
              integrate_value([&](double v) { return model.diffusion(v)(i, k); }, u - h, u + h, fine);
          record(report.primitives, std::abs(db - a_int) / (2.0 * h), u);

          // Integrated chain rule: int_0^u sqrt(psi) sigma = sqrt(psi(u)) beta(u) - int_0^u psi'/(2 sqrt psi) beta.
          const double weighted =
              integrate_value([&](double v) { return (shift + v) * sigma(v)(i, k); }, 0.0, u, fine);
          const double by_parts =
              (shift + u) * beta_eval(model, u, i, k) -
              integrate_value([&](double v) { return beta_eval(model, v, i, k); }, 0.0, u, fine);
          record(report.chain_rule, std::abs(weighted - by_parts), u);
        }
      }
    }
  } catch (const std::exception& e) {
    report.error = e.what();
  }

  finish(report.symmetry);
  finish(report.psd);
  finish(report.factorization);
  finish(report.primitives);
  finish(report.chain_rule);
  return report;
}

}  // namespace aniso
