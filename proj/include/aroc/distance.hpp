#pragma once

#include <algorithm>
#include <cmath>
#include <span>
#include <stdexcept>
#include <string>

#include "aroc/curve.hpp"

namespace aroc {

/// Distance functionals used to compare two curves over the unit interval.
enum class DistanceKind { l1, l2, ks };

inline const char* to_string(DistanceKind kind) {
  switch (kind) {
    case DistanceKind::l1:
      return "L1";
    case DistanceKind::l2:
      return "L2";
    case DistanceKind::ks:
      return "KS";
  }
  throw std::logic_error("DistanceKind: unknown value");
}

inline DistanceKind distance_from_string(const std::string& s) {
  if (s == "L1" || s == "l1") return DistanceKind::l1;
  if (s == "L2" || s == "l2") return DistanceKind::l2;
  if (s == "KS" || s == "ks") return DistanceKind::ks;
  throw std::invalid_argument("unknown distance: " + s);
}

namespace detail {

/// Distance applied to a difference function sampled on the grid:
/// L1 and L2 are grid means (Riemann approximations of the unit-interval
/// integrals), KS is the grid maximum of the absolute value.
inline double distance_of_diff(std::span<const double> diff, DistanceKind kind) {
  if (diff.empty()) throw std::invalid_argument("distance: empty grid");
  double acc = 0.0;
  switch (kind) {
    case DistanceKind::l1:
      for (double d : diff) acc += std::abs(d);
      return acc / static_cast<double>(diff.size());
    case DistanceKind::l2:
      for (double d : diff) acc += d * d;
      return acc / static_cast<double>(diff.size());
    case DistanceKind::ks:
      for (double d : diff) acc = std::max(acc, std::abs(d));
      return acc;
  }
  throw std::logic_error("DistanceKind: unknown value");
}

}  // namespace detail

/// Distance between two curves sharing the same grid.
inline double curve_distance(const Curve& a, const Curve& b, DistanceKind kind) {
  if (a.grid != b.grid) throw std::invalid_argument("curve_distance: grids must match");
  if (a.values.size() != a.grid.size() || b.values.size() != b.grid.size()) {
    throw std::invalid_argument("curve_distance: malformed curve");
  }
  std::vector<double> diff(a.values.size());
  for (std::size_t k = 0; k < diff.size(); ++k) diff[k] = a.values[k] - b.values[k];
  return detail::distance_of_diff(diff, kind);
}

}  // namespace aroc
