#pragma once

#include <cmath>
#include <limits>
#include <span>
#include <stdexcept>
#include <vector>

#include "aroc/kernel.hpp"
#include "aroc/nw.hpp"
#include "aroc/types.hpp"

namespace aroc {

/// Candidate grid for data-driven bandwidth selection.
struct BandwidthSearch {
  enum class Mode { leave_one_out };

  std::vector<double> candidates;
  Mode mode = Mode::leave_one_out;
};

/// 25 log-spaced candidates between 0.05x and 2x the covariate sample sd.
inline BandwidthSearch default_bandwidth_search(std::span<const double> covariate,
                                                std::size_t count = 25) {
  if (count < 5) throw std::invalid_argument("default_bandwidth_search: need >= 5 candidates");
  double scale = sample_sd(covariate);
  if (!(scale > 0.0)) scale = 1.0;  // constant covariate: any bandwidth is equivalent
  const double lo = 0.05 * scale;
  const double hi = 2.0 * scale;
  const double step = std::log(hi / lo) / static_cast<double>(count - 1);
  std::vector<double> c(count);
  for (std::size_t k = 0; k < count; ++k) c[k] = lo * std::exp(step * static_cast<double>(k));
  return BandwidthSearch{std::move(c)};
}

inline void validate(const BandwidthSearch& search) {
  if (search.candidates.size() < 5) {
    throw std::invalid_argument("bandwidth search: need >= 5 candidates");
  }
  double prev = 0.0;
  for (double g : search.candidates) {
    if (!(g > 0.0)) throw std::invalid_argument("bandwidth search: candidates must be positive");
    if (!(g > prev)) throw std::invalid_argument("bandwidth search: candidates must be ascending");
    prev = g;
  }
}

/// Leave-one-out squared prediction error of the NW conditional mean,
/// (1/n) sum_i (Y_i - mu_{-i}(X_i; g))^2. Returns +inf when some point has
/// no usable neighbours under g (possible with compact kernels).
inline double loo_cv_score(const PairedSample& sample, KernelSpec kernel, double bandwidth) {
  validate(sample);
  if (!(bandwidth > 0.0)) throw std::invalid_argument("loo_cv_score: bandwidth must be positive");
  const std::size_t n = sample.size();
  const NwDesign design(sample.covariate, bandwidth, kernel);
  double total = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    std::vector<double> row;
    try {
      row = design.weight_row(sample.covariate[i], static_cast<std::ptrdiff_t>(i));
    } catch (const EvaluationError&) {
      return std::numeric_limits<double>::infinity();
    }
    double pred = 0.0;
    for (std::size_t l = 0; l < n; ++l) pred += row[l] * sample.marker[l];
    const double e = sample.marker[i] - pred;
    total += e * e;
  }
  return total / static_cast<double>(n);
}

/// Smallest candidate attaining the minimum LOO-CV score. The selected
/// bandwidth is shared by the mean and the variance fit.
inline double select_bandwidth(const PairedSample& sample, KernelSpec kernel,
                               const BandwidthSearch& search) {
  validate(sample);
  validate(search);
  if (sample.size() < 10) {
    throw std::invalid_argument("select_bandwidth: need at least 10 observations");
  }
  double best_g = 0.0;
  double best_score = std::numeric_limits<double>::infinity();
  for (double g : search.candidates) {
    const double score = loo_cv_score(sample, kernel, g);
    if (score < best_score) {
      best_score = score;
      best_g = g;
    }
  }
  if (!(best_g > 0.0)) {
    throw std::runtime_error("select_bandwidth: every candidate yields a degenerate fit");
  }
  return best_g;
}

inline double select_bandwidth(const PairedSample& sample, KernelSpec kernel = {}) {
  return select_bandwidth(sample, kernel, default_bandwidth_search(sample.covariate));
}

}  // namespace aroc
