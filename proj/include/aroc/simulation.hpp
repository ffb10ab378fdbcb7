#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <numbers>
#include <stdexcept>
#include <string>
#include <vector>

#include "aroc/math.hpp"
#include "aroc/parallel.hpp"
#include "aroc/rng.hpp"
#include "aroc/testing.hpp"
#include "aroc/types.hpp"

namespace aroc {

enum class ScenarioId { A, B, C, D };

inline char to_char(ScenarioId id) {
  switch (id) {
    case ScenarioId::A:
      return 'A';
    case ScenarioId::B:
      return 'B';
    case ScenarioId::C:
      return 'C';
    case ScenarioId::D:
      return 'D';
  }
  throw std::logic_error("ScenarioId: unknown value");
}

inline ScenarioId scenario_from_string(const std::string& s) {
  if (s == "A" || s == "a") return ScenarioId::A;
  if (s == "B" || s == "b") return ScenarioId::B;
  if (s == "C" || s == "c") return ScenarioId::C;
  if (s == "D" || s == "d") return ScenarioId::D;
  throw std::invalid_argument("unknown scenario: " + s);
}

/// Location-scale data-generating process for one synthetic scenario:
/// Y^D = mu^D(X) + sd^D(X) * eps with eps ~ N(0,1) and X uniform on the
/// covariate interval (shared by both populations).
struct ScenarioSpec {
  ScenarioId id = ScenarioId::A;
  std::function<double(double)> mean_diseased;
  std::function<double(double)> mean_healthy;
  std::function<double(double)> sd_diseased;
  std::function<double(double)> sd_healthy;
  double covariate_lo = 0.0;
  double covariate_hi = 1.0;
};

inline ScenarioSpec scenario_spec(ScenarioId id) {
  ScenarioSpec s;
  s.id = id;
  switch (id) {
    case ScenarioId::A:
      s.mean_diseased = [](double) { return 2.5; };
      s.mean_healthy = [](double) { return 1.0; };
      s.sd_diseased = [](double) { return 1.3; };
      s.sd_healthy = [](double) { return 1.0; };
      break;
    case ScenarioId::B:
      s.mean_diseased = [](double x) { return 1.5 * x; };
      s.mean_healthy = [](double) { return 0.0; };
      s.sd_diseased = [](double) { return 0.5; };
      s.sd_healthy = [](double) { return 0.5; };
      break;
    case ScenarioId::C:
      s.mean_diseased = [](double x) { return 2.5 + 2.0 * std::log(x); };
      s.mean_healthy = [](double x) { return 1.0 + 2.0 * std::log(x); };
      s.sd_diseased = [](double) { return 1.3; };
      s.sd_healthy = [](double) { return 1.0; };
      s.covariate_lo = 1.0;
      s.covariate_hi = 15.0;
      break;
    case ScenarioId::D:
      s.mean_diseased = [](double x) { return x * x; };
      s.mean_healthy = [](double x) { return 3.0 * std::sin(std::numbers::pi * (x + 1.0)); };
      s.sd_diseased = [](double) { return 1.0; };
      s.sd_healthy = [](double) { return 1.0; };
      break;
  }
  return s;
}

namespace detail {

inline PairedSample generate_population(const ScenarioSpec& spec, std::size_t n, Engine& eng,
                                        bool diseased) {
  PairedSample out;
  out.covariate.resize(n);
  out.marker.resize(n);
  const auto& mu = diseased ? spec.mean_diseased : spec.mean_healthy;
  const auto& sd = diseased ? spec.sd_diseased : spec.sd_healthy;
  for (std::size_t i = 0; i < n; ++i) {
    const double x = uniform_range(eng, spec.covariate_lo, spec.covariate_hi);
    out.covariate[i] = x;
    out.marker[i] = mu(x) + sd(x) * standard_normal(eng);
  }
  return out;
}

}  // namespace detail

/// Draws a synthetic study dataset; the two populations use independent
/// substreams of the seed.
inline StudyDataset generate_scenario(const ScenarioSpec& spec, std::size_t n_diseased,
                                      std::size_t n_healthy, std::uint64_t seed) {
  if (n_diseased < 1 || n_healthy < 1) {
    throw std::invalid_argument("generate_scenario: sample sizes must be >= 1");
  }
  if (!spec.mean_diseased || !spec.mean_healthy || !spec.sd_diseased || !spec.sd_healthy) {
    throw std::invalid_argument("generate_scenario: scenario functions not set");
  }
  Engine eng_f = make_engine(seed, Stream::scenario, 0);
  Engine eng_g = make_engine(seed, Stream::scenario, 1);
  StudyDataset data;
  data.diseased = detail::generate_population(spec, n_diseased, eng_f, true);
  data.healthy = detail::generate_population(spec, n_healthy, eng_g, false);
  data.meta.marker_name = std::string("marker_") + to_char(spec.id);
  data.meta.covariate_name = "x";
  return data;
}

inline StudyDataset generate_scenario(ScenarioId id, std::size_t n_diseased,
                                      std::size_t n_healthy, std::uint64_t seed) {
  return generate_scenario(scenario_spec(id), n_diseased, n_healthy, seed);
}

/// The conditional (equivalently covariate-adjusted) ROC curve of scenario C
/// in closed form; the same for every covariate value.
inline double scenario_c_analytic_roc(double p) {
  if (!(p > 0.0 && p < 1.0)) {
    throw std::invalid_argument("scenario_c_analytic_roc: p must lie in (0,1)");
  }
  return 1.0 - normal_cdf((10.0 / 13.0) * (normal_quantile(1.0 - p) - 1.5));
}

/// Binomial band p_hat +- 1.96 * sqrt(alpha(1-alpha)/n_s), clipped to [0,1];
/// used to judge whether an estimated rejection proportion is consistent
/// with the nominal level.
inline std::pair<double, double> calibration_interval(double p_hat, double alpha,
                                                      std::size_t n_s) {
  if (!(alpha > 0.0 && alpha < 1.0)) {
    throw std::invalid_argument("calibration_interval: alpha must lie in (0,1)");
  }
  if (n_s < 1) throw std::invalid_argument("calibration_interval: n_s must be >= 1");
  const double half = 1.96 * std::sqrt(alpha * (1.0 - alpha) / static_cast<double>(n_s));
  return {std::max(0.0, p_hat - half), std::min(1.0, p_hat + half)};
}

struct MonteCarloPlan {
  ScenarioSpec scenario;
  std::vector<std::pair<std::size_t, std::size_t>> sample_sizes;
  std::vector<double> rhos{0.5};
  std::size_t replications = 200;
  std::vector<double> alphas{0.025, 0.05, 0.1};
  TestConfig test_template{};
  std::uint64_t seed = 0;
  unsigned threads = 0;
};

struct RejectionRow {
  ScenarioId scenario;
  std::size_t n_diseased;
  std::size_t n_healthy;
  double rho;
  DistanceKind distance;
  double alpha;
  double proportion;
  double interval_lo;
  double interval_hi;
  std::size_t replications;
  std::size_t bootstrap_iterations;
};

struct RejectionTable {
  std::vector<RejectionRow> rows;
};

/// Runs the level/power study: for every (size, rho) cell, simulates
/// replications datasets, runs the bootstrap test on each, and tabulates the
/// rejection proportion per distance and alpha with its calibration
/// interval. Replications are parallelized; every replication derives its
/// dataset and test seeds from the plan seed and the cell parameters, so the
/// table is reproducible regardless of scheduling or cell order.
inline RejectionTable run_monte_carlo(const MonteCarloPlan& plan) {
  if (plan.replications < 1) {
    throw std::invalid_argument("run_monte_carlo: replications must be >= 1");
  }
  if (plan.sample_sizes.empty()) {
    throw std::invalid_argument("run_monte_carlo: no sample sizes given");
  }
  for (double a : plan.alphas) {
    if (!(a > 0.0 && a < 1.0)) {
      throw std::invalid_argument("run_monte_carlo: alphas must lie in (0,1)");
    }
  }

  RejectionTable table;
  for (const auto& [nf, ng] : plan.sample_sizes) {
    for (double rho : plan.rhos) {
      const std::uint64_t cell_seed =
          mix_seed(plan.seed, static_cast<std::uint64_t>(to_char(plan.scenario.id)),
                   static_cast<std::uint64_t>(nf), static_cast<std::uint64_t>(ng),
                   static_cast<std::uint64_t>(rho * 1e6));

      std::vector<std::map<DistanceKind, double>> p_values(plan.replications);
      parallel_for(
          plan.replications,
          [&](std::size_t r) {
            try {
              const std::uint64_t data_seed = mix_seed(cell_seed, 2 * r);
              const std::uint64_t test_seed = mix_seed(cell_seed, 2 * r + 1);
              const StudyDataset data = generate_scenario(plan.scenario, nf, ng, data_seed);
              TestConfig cfg = plan.test_template;
              cfg.split.rho = rho;
              cfg.split.seed = test_seed;
              cfg.master_seed = test_seed;
              cfg.threads = 1;  // the replication level owns the parallelism
              p_values[r] = run_test(data, cfg).p_values;
            } catch (const std::exception& e) {
              std::ostringstream msg;
              msg << "scenario " << to_char(plan.scenario.id) << " (" << nf << "," << ng
                  << ") rho=" << rho << " replication " << r << ": " << e.what();
              throw std::runtime_error(msg.str());
            }
          },
          plan.threads);

      std::vector<DistanceKind> kinds = plan.test_template.distances;
      std::sort(kinds.begin(), kinds.end());
      kinds.erase(std::unique(kinds.begin(), kinds.end()), kinds.end());
      for (DistanceKind kind : kinds) {
        for (double alpha : plan.alphas) {
          std::size_t rejections = 0;
          for (const auto& pv : p_values) {
            if (pv.at(kind) <= alpha) ++rejections;
          }
          const double prop =
              static_cast<double>(rejections) / static_cast<double>(plan.replications);
          const auto [lo, hi] = calibration_interval(prop, alpha, plan.replications);
          table.rows.push_back(RejectionRow{plan.scenario.id, nf, ng, rho, kind, alpha, prop,
                                            lo, hi, plan.replications,
                                            plan.test_template.bootstrap_iterations});
        }
      }
    }
  }
  return table;
}

}  // namespace aroc
