#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <sstream>
#include <stdexcept>
#include <vector>

#include "aroc/bandwidth.hpp"
#include "aroc/curve.hpp"
#include "aroc/distance.hpp"
#include "aroc/estimators.hpp"
#include "aroc/nw.hpp"
#include "aroc/parallel.hpp"
#include "aroc/rng.hpp"
#include "aroc/split.hpp"
#include "aroc/types.hpp"

namespace aroc {

struct BandwidthPolicy {
  enum class Mode { automatic, fixed };

  Mode mode = Mode::automatic;
  double fixed_diseased = 0.0;  // used when mode == fixed
  double fixed_healthy = 0.0;
  /// Re-run the cross-validation selector on every bootstrap sample instead
  /// of reusing the original-sample bandwidths (roughly 25x slower).
  bool reselect_in_bootstrap = false;
};

struct TestConfig {
  std::size_t bootstrap_iterations = 500;
  SplitConfig split{};
  std::vector<DistanceKind> distances{DistanceKind::l1, DistanceKind::l2, DistanceKind::ks};
  std::size_t grid_size = 500;
  KernelSpec kernel{};
  BandwidthPolicy bandwidth{};
  std::uint64_t master_seed = 0;
  unsigned threads = 1;  // bootstrap-replicate parallelism; 0 = auto
};

/// Everything one test run produces, sufficient to reproduce and diagnose it.
struct TestResult {
  std::map<DistanceKind, double> statistics;
  std::map<DistanceKind, double> p_values;
  std::map<DistanceKind, std::vector<double>> bootstrap_replicates;
  Curve roc_curve;
  Curve aroc_curve;
  SplitRecord split_record;
  std::size_t bootstrap_iterations = 0;
  double rho = 0.0;
  std::uint64_t master_seed = 0;
  std::uint64_t split_seed = 0;
  double bandwidth_diseased = 0.0;
  double bandwidth_healthy = 0.0;

  bool operator==(const TestResult&) const = default;
};

namespace detail {

/// Marker resample: n i.i.d. draws from the sample's own ECDF.
inline MarkerSample resample_markers(const MarkerSample& sample, Engine& eng) {
  MarkerSample out;
  out.values.resize(sample.size());
  for (std::size_t i = 0; i < sample.size(); ++i) {
    out.values[i] = sample.values[uniform_index(eng, sample.size())];
  }
  return out;
}

/// Residual resample: rebuilds markers as mu_hat(X_i) + sd_hat(X_i) * eps*
/// with eps* drawn i.i.d. from the fit's standardized residuals and the
/// covariates held fixed.
inline std::vector<double> resample_residual_markers(const LocationScaleFit& fit, Engine& eng) {
  const std::size_t n = fit.size();
  std::vector<double> out(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double eps = fit.residuals()[uniform_index(eng, n)];
    out[i] = fit.fitted_mean()[i] + fit.fitted_sd()[i] * eps;
  }
  return out;
}

/// AROC curve for a healthy fit with precomputed weight rows at the diseased
/// covariates. Bit-identical to aroc_from_fit, which recomputes the rows.
inline Curve aroc_with_rows(const std::vector<double>& diseased_marker,
                            const std::vector<std::vector<double>>& rows,
                            const LocationScaleFit& healthy_fit,
                            const std::vector<double>& grid) {
  const std::size_t nf = diseased_marker.size();
  const Ecdf h(healthy_fit.residuals());
  std::vector<double> placement(nf);
  for (std::size_t i = 0; i < nf; ++i) {
    const double u = (diseased_marker[i] - healthy_fit.mean_from_row(rows[i])) /
                     healthy_fit.sd_from_row(rows[i]);
    placement[i] = static_cast<double>(h.count_leq(u)) / static_cast<double>(h.size());
  }
  return curve_from_placements(std::move(placement), grid);
}

}  // namespace detail

/// Bootstrap test of equality between the pooled ROC and the AROC curve.
///
/// The two curves are estimated from disjoint random subsamples so that the
/// observed distance statistic s has independent ingredients. Bootstrap
/// replicates resample the ROC part from its marker ECDFs and the AROC part
/// by residual resampling under the fitted location-scale models; each
/// replicate statistic is the distance of the doubly centered difference
///   (ROC* - ROC_hat) - (AROC* - AROC_hat),
/// which replicates the null distribution without assuming the null when
/// generating the data. The p-value is the fraction of replicates with
/// s <= t*.
inline TestResult run_test(const StudyDataset& data, const TestConfig& cfg) {
  if (cfg.bootstrap_iterations < 1) {
    throw std::invalid_argument("run_test: bootstrap_iterations must be >= 1");
  }
  if (cfg.grid_size < 10) throw std::invalid_argument("run_test: grid size must be >= 10");
  if (cfg.distances.empty()) throw std::invalid_argument("run_test: no distances requested");

  // Step 1: split, estimate both curves, compute the observed statistics.
  SplitParts parts = split_sample(data, cfg.split);
  const std::vector<double> grid = default_grid(cfg.grid_size);

  double bw_f = cfg.bandwidth.fixed_diseased;
  double bw_g = cfg.bandwidth.fixed_healthy;
  if (cfg.bandwidth.mode == BandwidthPolicy::Mode::automatic) {
    bw_f = select_bandwidth(parts.aroc_diseased, cfg.kernel);
    bw_g = select_bandwidth(parts.aroc_healthy, cfg.kernel);
  }
  if (!(bw_f > 0.0) || !(bw_g > 0.0)) {
    throw std::invalid_argument("run_test: bandwidths must be positive");
  }

  const double floor_f = default_variance_floor(parts.aroc_diseased.marker);
  const double floor_g = default_variance_floor(parts.aroc_healthy.marker);
  auto design_f = std::make_shared<const NwDesign>(parts.aroc_diseased.covariate, bw_f, cfg.kernel);
  auto design_g = std::make_shared<const NwDesign>(parts.aroc_healthy.covariate, bw_g, cfg.kernel);
  const LocationScaleFit fit_f(design_f, parts.aroc_diseased.marker, floor_f);
  const LocationScaleFit fit_g(design_g, parts.aroc_healthy.marker, floor_g);

  const Curve roc_hat = pooled_roc(parts.roc_diseased, parts.roc_healthy, grid);

  // Weight rows of the healthy design at the diseased covariates; the
  // covariates stay fixed across replicates, so these are computed once.
  const std::size_t n_af = parts.aroc_diseased.size();
  std::vector<std::vector<double>> cross_rows(n_af);
  for (std::size_t i = 0; i < n_af; ++i) {
    cross_rows[i] = design_g->weight_row(parts.aroc_diseased.covariate[i]);
  }
  const Curve aroc_hat =
      detail::aroc_with_rows(parts.aroc_diseased.marker, cross_rows, fit_g, grid);

  TestResult result;
  result.roc_curve = roc_hat;
  result.aroc_curve = aroc_hat;
  result.split_record = parts.record;
  result.bootstrap_iterations = cfg.bootstrap_iterations;
  result.rho = cfg.split.rho;
  result.master_seed = cfg.master_seed;
  result.split_seed = cfg.split.seed;
  result.bandwidth_diseased = bw_f;
  result.bandwidth_healthy = bw_g;

  for (DistanceKind kind : cfg.distances) {
    result.statistics[kind] = curve_distance(roc_hat, aroc_hat, kind);
  }

  // Steps 2-4: bootstrap replicates on deterministic per-replicate
  // substreams, so any execution schedule produces identical results.
  const std::size_t b_total = cfg.bootstrap_iterations;
  const std::size_t m = grid.size();
  std::map<DistanceKind, std::vector<double>> replicates;
  for (const auto& [kind, s] : result.statistics) {
    replicates[kind].resize(b_total);
  }

  parallel_for(
      b_total,
      [&](std::size_t b) {
        try {
          Engine eng = make_engine(cfg.master_seed, Stream::bootstrap, b);
          const MarkerSample roc_f_star = detail::resample_markers(parts.roc_diseased, eng);
          const MarkerSample roc_g_star = detail::resample_markers(parts.roc_healthy, eng);
          const std::vector<double> y_af_star = detail::resample_residual_markers(fit_f, eng);
          const std::vector<double> y_ag_star = detail::resample_residual_markers(fit_g, eng);

          const Curve roc_star = pooled_roc(roc_f_star, roc_g_star, grid);

          Curve aroc_star;
          if (cfg.bandwidth.reselect_in_bootstrap) {
            const PairedSample healthy_star{parts.aroc_healthy.covariate, y_ag_star};
            const double bw_star = select_bandwidth(healthy_star, cfg.kernel);
            const LocationScaleFit fit_star = nw_fit(healthy_star, bw_star, cfg.kernel, floor_g);
            const PairedSample diseased_star{parts.aroc_diseased.covariate, y_af_star};
            aroc_star = aroc_from_fit(diseased_star, fit_star, grid);
          } else {
            const LocationScaleFit fit_star(design_g, y_ag_star, floor_g);
            aroc_star = detail::aroc_with_rows(y_af_star, cross_rows, fit_star, grid);
          }

          std::vector<double> diff(m);
          for (std::size_t k = 0; k < m; ++k) {
            diff[k] = (roc_star.values[k] - roc_hat.values[k]) -
                      (aroc_star.values[k] - aroc_hat.values[k]);
          }
          for (auto& [kind, t] : replicates) {
            t[b] = detail::distance_of_diff(diff, kind);
          }
        } catch (const std::exception& e) {
          std::ostringstream msg;
          msg << "bootstrap replicate " << b << ": " << e.what();
          throw std::runtime_error(msg.str());
        }
      },
      cfg.threads);

  // Step 5: p-value per distance, with the weak inequality s <= t*.
  for (const auto& [kind, s] : result.statistics) {
    const auto& t = replicates.at(kind);
    std::size_t count = 0;
    for (double tb : t) {
      if (s <= tb) ++count;
    }
    result.p_values[kind] = static_cast<double>(count) / static_cast<double>(b_total);
  }
  result.bootstrap_replicates = std::move(replicates);
  return result;
}

}  // namespace aroc
