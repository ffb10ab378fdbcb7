#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <vector>

#include "aroc/types.hpp"

namespace aroc {

/// Empirical distribution function of a real-valued sample.
///
/// eval(t) is the right-continuous step function #{x_i <= t}/n and
/// quantile(p) its left-continuous generalized inverse inf{t : eval(t) >= p},
/// i.e. the ceil(n*p)-th order statistic.
class Ecdf {
 public:
  explicit Ecdf(std::vector<double> values) : sorted_(std::move(values)) {
    if (sorted_.empty()) throw std::invalid_argument("Ecdf: sample must be non-empty");
    if (!all_finite(sorted_)) throw std::invalid_argument("Ecdf: sample must be finite");
    std::sort(sorted_.begin(), sorted_.end());
  }

  double operator()(double t) const {
    const auto it = std::upper_bound(sorted_.begin(), sorted_.end(), t);
    return static_cast<double>(it - sorted_.begin()) / static_cast<double>(sorted_.size());
  }

  /// Number of sample values <= t.
  std::size_t count_leq(double t) const {
    const auto it = std::upper_bound(sorted_.begin(), sorted_.end(), t);
    return static_cast<std::size_t>(it - sorted_.begin());
  }

  double quantile(double p) const {
    if (!(p > 0.0 && p <= 1.0)) {
      throw std::invalid_argument("Ecdf::quantile: p must lie in (0,1]");
    }
    const auto n = static_cast<double>(sorted_.size());
    auto k = static_cast<std::ptrdiff_t>(std::ceil(n * p));
    // Re-align k with the comparison eval uses, so that quantile and eval
    // form an exact Galois pair in floating point: k = min{k : k/n >= p}.
    while (k > 1 && static_cast<double>(k - 1) / n >= p) --k;
    while (k < static_cast<std::ptrdiff_t>(sorted_.size()) && static_cast<double>(k) / n < p) ++k;
    if (k < 1) k = 1;
    return sorted_[static_cast<std::size_t>(k - 1)];
  }

  std::size_t size() const { return sorted_.size(); }
  const std::vector<double>& sorted() const { return sorted_; }

 private:
  std::vector<double> sorted_;
};

/// Fraction of the sample <= t.
inline double ecdf_eval(const MarkerSample& sample, double t) {
  validate(sample);
  return Ecdf(sample.values)(t);
}

/// The ceil(n*p)-th order statistic, p in (0,1].
inline double empirical_quantile(const MarkerSample& sample, double p) {
  validate(sample);
  return Ecdf(sample.values).quantile(p);
}

}  // namespace aroc
