#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

#include "aroc/math.hpp"

namespace aroc {

/// Diagnostic marker measurements for one population, covariate-free.
struct MarkerSample {
  std::vector<double> values;

  std::size_t size() const { return values.size(); }
};

/// (covariate, marker) observations for one population.
struct PairedSample {
  std::vector<double> covariate;
  std::vector<double> marker;

  std::size_t size() const { return marker.size(); }
};

struct DatasetMeta {
  std::string marker_name;
  std::string covariate_name;
  bool marker_negated = false;
  std::size_t dropped_rows = 0;
};

/// The unit of ingestion: diseased and healthy paired samples.
struct StudyDataset {
  PairedSample diseased;
  PairedSample healthy;
  DatasetMeta meta;
};

inline void validate(const MarkerSample& s, const char* what = "marker sample") {
  if (s.values.empty()) {
    throw std::invalid_argument(std::string(what) + ": must be non-empty");
  }
  if (!all_finite(s.values)) {
    throw std::invalid_argument(std::string(what) + ": all values must be finite");
  }
}

inline void validate(const PairedSample& s, const char* what = "paired sample") {
  if (s.marker.empty()) {
    throw std::invalid_argument(std::string(what) + ": must be non-empty");
  }
  if (s.covariate.size() != s.marker.size()) {
    throw std::invalid_argument(std::string(what) +
                                ": covariate and marker must have equal length");
  }
  if (!all_finite(s.covariate) || !all_finite(s.marker)) {
    throw std::invalid_argument(std::string(what) + ": all entries must be finite");
  }
}

inline void validate(const StudyDataset& d) {
  validate(d.diseased, "diseased sample");
  validate(d.healthy, "healthy sample");
}

}  // namespace aroc
