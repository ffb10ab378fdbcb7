#pragma once

#include <algorithm>
#include <cmath>
#include <memory>
#include <span>
#include <sstream>
#include <stdexcept>
#include <vector>

#include "aroc/kernel.hpp"
#include "aroc/types.hpp"

namespace aroc {

/// Thrown when a local fit cannot be evaluated at a point (all kernel
/// weights vanish there, which can happen with compactly supported kernels).
class EvaluationError : public std::runtime_error {
 public:
  explicit EvaluationError(const std::string& msg) : std::runtime_error(msg) {}
};

/// Fixed smoothing geometry: covariate locations plus one bandwidth. The
/// normalized Nadaraya-Watson weight rows depend only on this, so a design
/// can be fitted to many marker vectors (the residual bootstrap refits the
/// same design hundreds of times with the covariates held fixed).
class NwDesign {
 public:
  NwDesign(std::vector<double> covariate, double bandwidth, KernelSpec kernel = {})
      : x_(std::move(covariate)), bandwidth_(bandwidth), kernel_(kernel) {
    if (!(bandwidth_ > 0.0)) throw std::invalid_argument("NwDesign: bandwidth must be positive");
    if (x_.size() < 2) throw std::invalid_argument("NwDesign: need at least 2 observations");
    if (!all_finite(x_)) throw std::invalid_argument("NwDesign: covariates must be finite");
    const std::size_t n = x_.size();
    train_weights_.resize(n * n);
    for (std::size_t j = 0; j < n; ++j) {
      write_weight_row(x_[j], {train_weights_.data() + j * n, n}, -1);
    }
  }

  std::size_t size() const { return x_.size(); }
  double bandwidth() const { return bandwidth_; }
  const KernelSpec& kernel() const { return kernel_; }
  const std::vector<double>& covariate() const { return x_; }

  /// Normalized weights at the j-th training point (row of the hat matrix).
  std::span<const double> train_row(std::size_t j) const {
    return {train_weights_.data() + j * x_.size(), x_.size()};
  }

  /// Normalized weights W_i(x) at an arbitrary point. skip >= 0 excludes
  /// that training index (leave-one-out). Throws EvaluationError if every
  /// kernel weight is zero at x.
  std::vector<double> weight_row(double x, std::ptrdiff_t skip = -1) const {
    std::vector<double> w(x_.size());
    write_weight_row(x, w, skip);
    return w;
  }

 private:
  void write_weight_row(double x, std::span<double> w, std::ptrdiff_t skip) const {
    const std::size_t n = x_.size();
    if (kernel_.family == KernelSpec::Family::gaussian) {
      // Work with shifted log-weights so the normalized row is well defined
      // even when x is far from every training point.
      double amax = -std::numeric_limits<double>::infinity();
      for (std::size_t i = 0; i < n; ++i) {
        if (static_cast<std::ptrdiff_t>(i) == skip) continue;
        const double u = (x - x_[i]) / bandwidth_;
        const double a = -0.5 * u * u;
        w[i] = a;
        if (a > amax) amax = a;
      }
      double total = 0.0;
      for (std::size_t i = 0; i < n; ++i) {
        if (static_cast<std::ptrdiff_t>(i) == skip) {
          w[i] = 0.0;
          continue;
        }
        w[i] = std::exp(w[i] - amax);
        total += w[i];
      }
      for (std::size_t i = 0; i < n; ++i) w[i] /= total;
      return;
    }

    double total = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      if (static_cast<std::ptrdiff_t>(i) == skip) {
        w[i] = 0.0;
        continue;
      }
      w[i] = kernel_.density((x - x_[i]) / bandwidth_);
      total += w[i];
    }
    if (!(total > 0.0)) {
      std::ostringstream msg;
      msg << "local fit not evaluable at x=" << x << ": all kernel weights are zero";
      throw EvaluationError(msg.str());
    }
    for (std::size_t i = 0; i < n; ++i) w[i] /= total;
  }

  std::vector<double> x_;
  double bandwidth_;
  KernelSpec kernel_;
  std::vector<double> train_weights_;  // n x n, row-major
};

/// Nonparametric location-scale fit Y = mu(X) + sigma(X) * eps with
/// Nadaraya-Watson estimates of the conditional mean and (about-the-fit)
/// conditional variance, sharing one bandwidth. The fitted sd is clamped
/// below at variance_floor so standardized residuals are always defined.
class LocationScaleFit {
 public:
  LocationScaleFit(std::shared_ptr<const NwDesign> design, std::vector<double> marker,
                   double variance_floor)
      : design_(std::move(design)), y_(std::move(marker)), floor_(variance_floor) {
    const std::size_t n = design_->size();
    if (y_.size() != n) {
      throw std::invalid_argument("LocationScaleFit: marker length must match design");
    }
    if (!(floor_ > 0.0)) {
      throw std::invalid_argument("LocationScaleFit: variance floor must be positive");
    }
    fitted_mean_.resize(n);
    for (std::size_t j = 0; j < n; ++j) fitted_mean_[j] = dot(design_->train_row(j), y_);
    sq_dev_.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
      const double r = y_[i] - fitted_mean_[i];
      sq_dev_[i] = r * r;
    }
    fitted_sd_.resize(n);
    residuals_.resize(n);
    for (std::size_t j = 0; j < n; ++j) {
      fitted_sd_[j] = std::max(floor_, std::sqrt(dot(design_->train_row(j), sq_dev_)));
    }
    for (std::size_t i = 0; i < n; ++i) {
      residuals_[i] = (y_[i] - fitted_mean_[i]) / fitted_sd_[i];
    }
  }

  double mean(double x) const { return mean_from_row(design_->weight_row(x)); }
  double sd(double x) const { return sd_from_row(design_->weight_row(x)); }

  double mean_from_row(std::span<const double> row) const { return dot(row, y_); }
  double sd_from_row(std::span<const double> row) const {
    return std::max(floor_, std::sqrt(dot(row, sq_dev_)));
  }

  const NwDesign& design() const { return *design_; }
  std::shared_ptr<const NwDesign> design_ptr() const { return design_; }
  const std::vector<double>& marker() const { return y_; }
  const std::vector<double>& fitted_mean() const { return fitted_mean_; }
  const std::vector<double>& fitted_sd() const { return fitted_sd_; }
  const std::vector<double>& residuals() const { return residuals_; }
  double variance_floor() const { return floor_; }
  std::size_t size() const { return y_.size(); }

 private:
  static double dot(std::span<const double> a, std::span<const double> b) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
  }

  std::shared_ptr<const NwDesign> design_;
  std::vector<double> y_;
  double floor_;
  std::vector<double> fitted_mean_;
  std::vector<double> fitted_sd_;
  std::vector<double> sq_dev_;  // (Y_i - mu_hat(X_i))^2, reused by sd_from_row
  std::vector<double> residuals_;
};

/// Standardized residuals (Y_i - mu_hat(X_i)) / sd_hat(X_i).
struct ResidualSet {
  std::vector<double> residuals;
};

/// Default clamp for the fitted conditional sd: a tiny multiple of the
/// marker scale, only reachable on (near-)degenerate data.
inline double default_variance_floor(std::span<const double> marker) {
  const double sd = sample_sd(marker);
  return 1e-8 * (sd > 0.0 ? sd : 1.0);
}

inline LocationScaleFit nw_fit(const PairedSample& sample, double bandwidth,
                               KernelSpec kernel = {}, double variance_floor = 0.0) {
  validate(sample);
  if (sample.size() < 2) throw std::invalid_argument("nw_fit: need at least 2 observations");
  if (!(bandwidth > 0.0)) throw std::invalid_argument("nw_fit: bandwidth must be positive");
  const double floor =
      variance_floor > 0.0 ? variance_floor : default_variance_floor(sample.marker);
  auto design = std::make_shared<NwDesign>(sample.covariate, bandwidth, kernel);
  return LocationScaleFit(std::move(design), sample.marker, floor);
}

inline ResidualSet standardized_residuals(const LocationScaleFit& fit) {
  return ResidualSet{fit.residuals()};
}

}  // namespace aroc
