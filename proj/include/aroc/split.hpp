#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <vector>

#include "aroc/rng.hpp"
#include "aroc/types.hpp"

namespace aroc {

/// Random-split configuration: rho is the fraction of each population that
/// goes to the pooled-ROC subsample; the complement estimates the AROC.
struct SplitConfig {
  double rho = 0.5;
  std::uint64_t seed = 0;
};

/// The index sets actually used, recorded for reproducibility.
struct SplitRecord {
  std::vector<std::size_t> roc_diseased;
  std::vector<std::size_t> roc_healthy;
  std::vector<std::size_t> aroc_diseased;
  std::vector<std::size_t> aroc_healthy;

  bool operator==(const SplitRecord&) const = default;
};

struct SplitParts {
  MarkerSample roc_diseased;
  MarkerSample roc_healthy;
  PairedSample aroc_diseased;
  PairedSample aroc_healthy;
  SplitRecord record;
};

namespace detail {

/// floor(rho*n) indices drawn uniformly without replacement, sorted; the
/// complement is returned sorted as well. The tiny epsilon guards floating
/// point representations of fractions like 1/3.
inline std::pair<std::vector<std::size_t>, std::vector<std::size_t>> split_indices(
    std::size_t n, double rho, Engine& eng) {
  const auto k = static_cast<std::size_t>(std::floor(rho * static_cast<double>(n) + 1e-9));
  std::vector<std::size_t> idx(n);
  for (std::size_t i = 0; i < n; ++i) idx[i] = i;
  for (std::size_t i = 0; i < k; ++i) {
    const std::size_t j = i + static_cast<std::size_t>(uniform_index(eng, n - i));
    std::swap(idx[i], idx[j]);
  }
  std::vector<std::size_t> first(idx.begin(), idx.begin() + static_cast<std::ptrdiff_t>(k));
  std::vector<std::size_t> second(idx.begin() + static_cast<std::ptrdiff_t>(k), idx.end());
  std::sort(first.begin(), first.end());
  std::sort(second.begin(), second.end());
  return {std::move(first), std::move(second)};
}

}  // namespace detail

/// Randomly partitions each population into a markers-only part for the
/// pooled ROC (the covariates play no role there) and a paired part for the
/// AROC. Deterministic given the seed.
inline SplitParts split_sample(const StudyDataset& data, const SplitConfig& cfg) {
  validate(data);
  if (!(cfg.rho > 0.0 && cfg.rho < 1.0)) {
    throw std::invalid_argument("split_sample: rho must lie in (0,1)");
  }
  if (data.diseased.size() < 4 || data.healthy.size() < 4) {
    throw std::invalid_argument("split_sample: each population needs >= 4 observations");
  }

  Engine eng = make_engine(cfg.seed, Stream::split);
  auto [roc_f, aroc_f] = detail::split_indices(data.diseased.size(), cfg.rho, eng);
  auto [roc_g, aroc_g] = detail::split_indices(data.healthy.size(), cfg.rho, eng);

  if (roc_f.size() < 2 || aroc_f.size() < 2 || roc_g.size() < 2 || aroc_g.size() < 2) {
    throw std::invalid_argument(
        "split_sample: rho leaves a part with fewer than 2 observations");
  }

  SplitParts parts;
  parts.record = SplitRecord{roc_f, roc_g, aroc_f, aroc_g};
  for (std::size_t i : roc_f) parts.roc_diseased.values.push_back(data.diseased.marker[i]);
  for (std::size_t i : roc_g) parts.roc_healthy.values.push_back(data.healthy.marker[i]);
  for (std::size_t i : aroc_f) {
    parts.aroc_diseased.covariate.push_back(data.diseased.covariate[i]);
    parts.aroc_diseased.marker.push_back(data.diseased.marker[i]);
  }
  for (std::size_t i : aroc_g) {
    parts.aroc_healthy.covariate.push_back(data.healthy.covariate[i]);
    parts.aroc_healthy.marker.push_back(data.healthy.marker[i]);
  }
  return parts;
}

}  // namespace aroc
