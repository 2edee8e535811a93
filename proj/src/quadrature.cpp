#include "aniso/quadrature.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <queue>
#include <sstream>
#include <vector>

namespace aniso {
namespace {

// Kronrod nodes on [0, 1] (symmetric); odd indices are the Gauss-7 nodes.
constexpr std::array<double, 8> kNodes = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};

constexpr std::array<double, 8> kKronrodWeights = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};

constexpr std::array<double, 4> kGaussWeights = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct Panel {
  double a;
  double b;
  double value;
  double error;
  int depth;
};

struct ByError {
  bool operator()(const Panel& lhs, const Panel& rhs) const { return lhs.error < rhs.error; }
};

// Linear extrapolation from the two outermost nodes to the endpoint; a jump
// hidden between the endpoint and the first node shows up as a large defect.
double edge_defect(double f_end, double f0, double f1, double gap, double spacing) {
  if (!std::isfinite(f_end)) return 0.0;
  const double predicted = f0 + (f0 - f1) * gap / spacing;
  return std::abs(f_end - predicted) * gap;
}

Panel gauss_kronrod(const std::function<double(double)>& fn, double a, double b, int depth,
                    bool edges) {
  const double center = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  const double fc = fn(center);
  double kronrod = fc * kKronrodWeights[7];
  double gauss = fc * kGaussWeights[3];
  double abs_sum = std::abs(kronrod);
  std::array<double, 2> left{}, right{};
  for (int j = 0; j < 7; ++j) {
    const double dx = half * kNodes[j];
    const double f1 = fn(center - dx);
    const double f2 = fn(center + dx);
    if (j < 2) {
      left[j] = f1;
      right[j] = f2;
    }
    kronrod += kKronrodWeights[j] * (f1 + f2);
    abs_sum += kKronrodWeights[j] * (std::abs(f1) + std::abs(f2));
    if (j % 2 == 1) gauss += kGaussWeights[j / 2] * (f1 + f2);
  }
  const double value = kronrod * half;
  double error = std::abs((kronrod - gauss) * half);
  if (edges) {
    const double gap = half * (1.0 - kNodes[0]);
    const double spacing = half * (kNodes[0] - kNodes[1]);
    error = std::max({error, edge_defect(fn(a), left[0], left[1], gap, spacing),
                      edge_defect(fn(b), right[0], right[1], gap, spacing)});
  }
  // round-off floor
  const double floor = 50.0 * std::numeric_limits<double>::epsilon() * abs_sum * std::abs(half);
  if (error < floor) error = floor;
  return {a, b, value, error, depth};
}

}  // namespace

QuadratureResult integrate(const std::function<double(double)>& fn, double a, double b,
                           const QuadratureOptions& opts) {
  if (a == b) return {};
  const double sign = a < b ? 1.0 : -1.0;
  const double lo = std::min(a, b);
  const double hi = std::max(a, b);

  std::priority_queue<Panel, std::vector<Panel>, ByError> active;
  std::vector<Panel> frozen;  // panels at the depth cap
  double total_value = 0.0;
  double total_error = 0.0;

  Panel root = gauss_kronrod(fn, lo, hi, 0, opts.detect_edge_jumps);
  if (!std::isfinite(root.value)) {
    throw QuadratureError("integrand is not finite on the interval", root.error);
  }
  active.push(root);
  total_value = root.value;
  total_error = root.error;

  while (total_error > opts.abs_tol && !active.empty()) {
    Panel worst = active.top();
    active.pop();
    if (worst.depth >= opts.max_depth) {
      frozen.push_back(worst);
      continue;
    }
    if (static_cast<int>(active.size() + frozen.size()) + 2 > opts.max_intervals) {
      active.push(worst);
      break;
    }
    const double mid = 0.5 * (worst.a + worst.b);
    Panel left = gauss_kronrod(fn, worst.a, mid, worst.depth + 1, opts.detect_edge_jumps);
    Panel right = gauss_kronrod(fn, mid, worst.b, worst.depth + 1, opts.detect_edge_jumps);
    if (!std::isfinite(left.value) || !std::isfinite(right.value)) {
      throw QuadratureError("integrand is not finite on the interval", total_error);
    }
    total_value += left.value + right.value - worst.value;
    total_error += left.error + right.error - worst.error;
    active.push(left);
    active.push(right);
  }

  // Re-sum to shed the drift of the running totals.
  double value = 0.0;
  double error = 0.0;
  int count = static_cast<int>(active.size() + frozen.size());
  for (const Panel& p : frozen) {
    value += p.value;
    error += p.error;
  }
  while (!active.empty()) {
    value += active.top().value;
    error += active.top().error;
    active.pop();
  }
  if (error > opts.abs_tol) {
    std::ostringstream msg;
    msg << "adaptive quadrature on [" << lo << ", " << hi << "] reached error estimate " << error
        << " above tolerance " << opts.abs_tol;
    throw QuadratureError(msg.str(), error);
  }
  return {sign * value, error, count};
}

double integrate_value(const std::function<double(double)>& fn, double a, double b,
                       const QuadratureOptions& opts) {
  return integrate(fn, a, b, opts).value;
}

}  // namespace aniso
