#pragma once

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace aroc {

/// Smoothing kernel: a symmetric probability density on the real line.
/// Gaussian is the default; its unbounded support means local weights can
/// always be normalized. Epanechnikov has compact support, so evaluation far
/// from the data can fail with zero total weight.
struct KernelSpec {
  enum class Family { gaussian, epanechnikov };

  Family family = Family::gaussian;

  double density(double u) const {
    switch (family) {
      case Family::gaussian:
        return std::exp(-0.5 * u * u) / std::sqrt(2.0 * std::numbers::pi);
      case Family::epanechnikov:
        return std::abs(u) < 1.0 ? 0.75 * (1.0 - u * u) : 0.0;
    }
    throw std::logic_error("KernelSpec: unknown family");
  }

  const char* name() const {
    switch (family) {
      case Family::gaussian:
        return "gaussian";
      case Family::epanechnikov:
        return "epanechnikov";
    }
    throw std::logic_error("KernelSpec: unknown family");
  }

  static KernelSpec gaussian() { return {Family::gaussian}; }
  static KernelSpec epanechnikov() { return {Family::epanechnikov}; }
};

inline KernelSpec kernel_from_name(const std::string& name) {
  if (name == "gaussian") return KernelSpec::gaussian();
  if (name == "epanechnikov") return KernelSpec::epanechnikov();
  throw std::invalid_argument("unknown kernel: " + name);
}

}  // namespace aroc
