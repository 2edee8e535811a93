#pragma once

#include <cstddef>
#include <functional>
#include <vector>

namespace aniso {

/// Cell-centred discretisation of the torus prod_i [0, P_i), d in {1, 2}.
/// Cells are stored row-major: index = i0 * N1 + i1.
class PeriodicGrid {
public:
  PeriodicGrid(std::vector<double> periods, std::vector<int> cells);

  int dimension() const { return static_cast<int>(periods_.size()); }
  double period(int axis) const { return periods_[axis]; }
  int cells(int axis) const { return cells_[axis]; }
  double spacing(int axis) const { return periods_[axis] / cells_[axis]; }
  const std::vector<double>& periods() const { return periods_; }
  const std::vector<int>& cell_counts() const { return cells_; }

  std::size_t size() const;
  double cell_volume() const;
  double volume() const;
  double center(int axis, int index) const { return (index + 0.5) * spacing(axis); }

  /// Flat index with periodic wrap in every direction.
  std::size_t index(int i0, int i1 = 0) const;

  bool operator==(const PeriodicGrid&) const = default;

private:
  std::vector<double> periods_;
  std::vector<int> cells_;
};

struct CellField {
  std::vector<double> values;
  double time = 0.0;
};

/// Initial profile u0(x, y); y is ignored for d = 1.
using Profile = std::function<double(double x, double y)>;

}  // namespace aniso
