#pragma once

#include <algorithm>
#include <vector>

#include "aroc/curve.hpp"
#include "aroc/ecdf.hpp"
#include "aroc/nw.hpp"
#include "aroc/types.hpp"

namespace aroc {
namespace detail {

/// Builds the curve p -> #{u_i > 1-p}/n from placement values, consuming the
/// vector (sorted in place).
inline Curve curve_from_placements(std::vector<double>&& placement,
                                   const std::vector<double>& grid) {
  std::sort(placement.begin(), placement.end());
  const auto n = static_cast<double>(placement.size());
  Curve out;
  out.grid = grid;
  out.values.resize(grid.size());
  for (std::size_t k = 0; k < grid.size(); ++k) {
    const double threshold = 1.0 - grid[k];
    const auto it = std::upper_bound(placement.begin(), placement.end(), threshold);
    out.values[k] = static_cast<double>(placement.end() - it) / n;
  }
  return out;
}

}  // namespace detail

/// Empirical pooled ROC curve: 1 - F_hat(G_hat^{-1}(1-p)) on the grid, where
/// F_hat and G_hat are the marker ECDFs of the diseased and healthy samples.
inline Curve pooled_roc(const MarkerSample& diseased, const MarkerSample& healthy,
                        const std::vector<double>& grid) {
  validate(diseased, "diseased sample");
  validate(healthy, "healthy sample");
  validate_grid(grid);
  const Ecdf f(diseased.values);
  const Ecdf g(healthy.values);
  Curve out;
  out.grid = grid;
  out.values.resize(grid.size());
  for (std::size_t k = 0; k < grid.size(); ++k) {
    out.values[k] = 1.0 - f(g.quantile(1.0 - grid[k]));
  }
  return out;
}

/// Covariate-adjusted ROC from a healthy-population location-scale fit.
///
/// Each diseased marker is standardized by the healthy model at its own
/// covariate and mapped through the healthy residual ECDF:
///   U_i = H_hat^G((Y_i^F - mu_hat^G(X_i^F)) / sd_hat^G(X_i^F)),
/// and the curve value at p is the fraction of U_i above 1-p.
inline Curve aroc_from_fit(const PairedSample& diseased, const LocationScaleFit& healthy_fit,
                           const std::vector<double>& grid) {
  validate(diseased, "diseased sample");
  validate_grid(grid);
  const std::size_t nf = diseased.size();
  std::vector<double> placement(nf);
  const Ecdf h(healthy_fit.residuals());
  for (std::size_t i = 0; i < nf; ++i) {
    const auto row = healthy_fit.design().weight_row(diseased.covariate[i]);
    const double u =
        (diseased.marker[i] - healthy_fit.mean_from_row(row)) / healthy_fit.sd_from_row(row);
    placement[i] = static_cast<double>(h.count_leq(u)) / static_cast<double>(h.size());
  }
  return detail::curve_from_placements(std::move(placement), grid);
}

/// Covariate-adjusted ROC estimate: fits the healthy location-scale model
/// with the given bandwidth, then places each diseased observation in the
/// healthy residual distribution.
inline Curve aroc_estimate(const PairedSample& diseased, const PairedSample& healthy,
                           double healthy_bandwidth, KernelSpec kernel,
                           const std::vector<double>& grid) {
  validate(healthy, "healthy sample");
  if (healthy.size() < 2) {
    throw std::invalid_argument("aroc_estimate: healthy sample needs >= 2 observations");
  }
  const LocationScaleFit fit = nw_fit(healthy, healthy_bandwidth, kernel);
  return aroc_from_fit(diseased, fit, grid);
}

/// Conditional (covariate-specific) ROC curve at covariate value x, through
/// the location-scale representation: the healthy conditional quantile is
/// mu_hat^G(x) + sd_hat^G(x) * H_hat^G^{-1}(1-p), standardized by the
/// diseased model at x and mapped through the diseased residual ECDF.
inline Curve conditional_roc(double x, const LocationScaleFit& fit_diseased,
                             const LocationScaleFit& fit_healthy, const ResidualSet& res_diseased,
                             const ResidualSet& res_healthy, const std::vector<double>& grid) {
  validate_grid(grid);
  const Ecdf hf(res_diseased.residuals);
  const Ecdf hg(res_healthy.residuals);
  const double mu_f = fit_diseased.mean(x);
  const double sd_f = fit_diseased.sd(x);
  const double mu_g = fit_healthy.mean(x);
  const double sd_g = fit_healthy.sd(x);
  Curve out;
  out.grid = grid;
  out.values.resize(grid.size());
  for (std::size_t k = 0; k < grid.size(); ++k) {
    const double q = mu_g + sd_g * hg.quantile(1.0 - grid[k]);
    out.values[k] = 1.0 - hf((q - mu_f) / sd_f);
  }
  return out;
}

}  // namespace aroc
