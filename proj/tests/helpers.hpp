#pragma once

// Randomized-input generators shared by the property-style tests.

#include <cmath>
#include <vector>

#include "aroc/rng.hpp"
#include "aroc/types.hpp"

namespace helpers {

inline std::vector<double> random_values(aroc::Engine& eng, std::size_t n, double lo = -3.0,
                                         double hi = 3.0) {
  std::vector<double> v(n);
  for (auto& x : v) x = aroc::uniform_range(eng, lo, hi);
  return v;
}

/// Markers from a mix of shapes: normal, uniform, lognormal-ish.
inline std::vector<double> random_markers(aroc::Engine& eng, std::size_t n) {
  const auto shape = aroc::uniform_index(eng, 3);
  std::vector<double> v(n);
  for (auto& x : v) {
    const double z = aroc::standard_normal(eng);
    switch (shape) {
      case 0:
        x = 1.5 * z + 0.3;
        break;
      case 1:
        x = aroc::uniform_range(eng, -2.0, 5.0);
        break;
      default:
        x = std::exp(0.6 * z);
        break;
    }
  }
  return v;
}

inline aroc::PairedSample random_paired(aroc::Engine& eng, std::size_t n) {
  aroc::PairedSample s;
  s.covariate = random_values(eng, n, 0.0, 1.0);
  s.marker.resize(n);
  const double slope = aroc::uniform_range(eng, -2.0, 2.0);
  const double noise = aroc::uniform_range(eng, 0.2, 1.5);
  for (std::size_t i = 0; i < n; ++i) {
    s.marker[i] = slope * s.covariate[i] + noise * aroc::standard_normal(eng);
  }
  return s;
}

inline aroc::StudyDataset random_dataset(aroc::Engine& eng, std::size_t nf, std::size_t ng,
                                         double shift = 1.0) {
  aroc::StudyDataset d;
  d.diseased = random_paired(eng, nf);
  d.healthy = random_paired(eng, ng);
  for (auto& y : d.diseased.marker) y += shift;
  return d;
}

}  // namespace helpers
