#include "aniso/grid.hpp"

#include <cmath>
#include <stdexcept>

namespace aniso {

PeriodicGrid::PeriodicGrid(std::vector<double> periods, std::vector<int> cells)
    : periods_(std::move(periods)), cells_(std::move(cells)) {
  if (periods_.size() != cells_.size() || periods_.empty() || periods_.size() > 2) {
    throw std::invalid_argument("grid needs 1 or 2 matching periods and cell counts");
  }
  for (std::size_t i = 0; i < periods_.size(); ++i) {
    if (!(periods_[i] > 0.0) || !std::isfinite(periods_[i])) {
      throw std::invalid_argument("grid periods must be positive");
    }
    if (cells_[i] < 4) throw std::invalid_argument("grid needs at least 4 cells per direction");
  }
}

std::size_t PeriodicGrid::size() const {
  std::size_t n = 1;
  for (int c : cells_) n *= static_cast<std::size_t>(c);
  return n;
}

double PeriodicGrid::cell_volume() const {
  double v = 1.0;
  for (int a = 0; a < dimension(); ++a) v *= spacing(a);
  return v;
}

double PeriodicGrid::volume() const {
  double v = 1.0;
  for (double p : periods_) v *= p;
  return v;
}

std::size_t PeriodicGrid::index(int i0, int i1) const {
  auto wrap = [](int i, int n) { return ((i % n) + n) % n; };
  const int a = wrap(i0, cells_[0]);
  if (dimension() == 1) return static_cast<std::size_t>(a);
  return static_cast<std::size_t>(a) * cells_[1] + wrap(i1, cells_[1]);
}

}  // namespace aniso
