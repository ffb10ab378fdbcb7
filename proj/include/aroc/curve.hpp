#pragma once

#include <cstddef>
#include <stdexcept>
#include <vector>

#include "aroc/math.hpp"

namespace aroc {

/// A curve evaluated on a fixed grid of probabilities strictly inside (0,1).
/// The common representation of pooled, conditional and covariate-adjusted
/// ROC estimates.
struct Curve {
  std::vector<double> grid;
  std::vector<double> values;

  std::size_t size() const { return grid.size(); }
  bool operator==(const Curve&) const = default;
};

/// m equispaced grid points k/(m+1), k = 1..m, strictly inside (0,1).
inline std::vector<double> default_grid(std::size_t m = 500) {
  if (m == 0) throw std::invalid_argument("default_grid: m must be positive");
  std::vector<double> g(m);
  const double denom = static_cast<double>(m + 1);
  for (std::size_t k = 0; k < m; ++k) g[k] = static_cast<double>(k + 1) / denom;
  return g;
}

inline void validate_grid(const std::vector<double>& grid) {
  if (grid.empty()) throw std::invalid_argument("grid: must be non-empty");
  double prev = 0.0;
  for (double p : grid) {
    if (!(p > 0.0 && p < 1.0)) {
      throw std::invalid_argument("grid: points must lie strictly inside (0,1)");
    }
    if (!(p > prev)) throw std::invalid_argument("grid: points must be strictly increasing");
    prev = p;
  }
}

inline void validate(const Curve& c) {
  validate_grid(c.grid);
  if (c.values.size() != c.grid.size()) {
    throw std::invalid_argument("curve: grid and values must have equal length");
  }
  for (double v : c.values) {
    if (!(v >= 0.0 && v <= 1.0)) throw std::invalid_argument("curve: values must lie in [0,1]");
  }
}

/// Area under the curve by the trapezoid rule, with the curve extended by the
/// endpoint values 0 at p=0 and 1 at p=1.
inline double auc(const Curve& c) {
  validate(c);
  double area = 0.0;
  double x_prev = 0.0, y_prev = 0.0;
  for (std::size_t k = 0; k < c.size(); ++k) {
    area += 0.5 * (c.grid[k] - x_prev) * (c.values[k] + y_prev);
    x_prev = c.grid[k];
    y_prev = c.values[k];
  }
  area += 0.5 * (1.0 - x_prev) * (1.0 + y_prev);
  return area;
}

}  // namespace aroc
