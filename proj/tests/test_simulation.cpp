#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <cmath>

#include "aroc/estimators.hpp"
#include "aroc/simulation.hpp"
#include "oracles.hpp"

using Catch::Approx;
using aroc::ScenarioId;

TEST_CASE("scenario A marker mean converges to the model mean", "[simulation]") {
  const auto data = aroc::generate_scenario(ScenarioId::A, 10000, 10000, 8);
  CHECK(std::abs(aroc::mean(data.diseased.marker) - 2.5) < 3.0 * 1.3 / std::sqrt(10000.0));
  CHECK(std::abs(aroc::mean(data.healthy.marker) - 1.0) < 3.0 / std::sqrt(10000.0));
}

TEST_CASE("scenario B healthy marker has no covariate trend", "[simulation]") {
  const auto data = aroc::generate_scenario(ScenarioId::B, 100, 10000, 9);
  const double slope = oracles::ols_slope(data.healthy.covariate, data.healthy.marker);
  CHECK(std::abs(slope) < 0.05);
  // the diseased slope is 1.5 by construction
  const auto big = aroc::generate_scenario(ScenarioId::B, 10000, 100, 10);
  CHECK(oracles::ols_slope(big.diseased.covariate, big.diseased.marker) ==
        Approx(1.5).margin(0.05));
}

TEST_CASE("scenario C covariate stays inside [1,15]", "[simulation]") {
  for (std::uint64_t seed : {1ull, 2ull, 3ull, 4ull}) {
    const auto data = aroc::generate_scenario(ScenarioId::C, 500, 500, seed);
    for (const auto* sample : {&data.diseased, &data.healthy}) {
      const auto [lo, hi] =
          std::minmax_element(sample->covariate.begin(), sample->covariate.end());
      CHECK(*lo >= 1.0);
      CHECK(*hi <= 15.0);
    }
  }
}

TEST_CASE("generation is deterministic per seed with independent populations",
          "[simulation]") {
  const auto a = aroc::generate_scenario(ScenarioId::D, 50, 70, 77);
  const auto b = aroc::generate_scenario(ScenarioId::D, 50, 70, 77);
  CHECK(a.diseased.marker == b.diseased.marker);
  CHECK(a.healthy.marker == b.healthy.marker);
  // changing the healthy size must not disturb the diseased draw
  const auto c = aroc::generate_scenario(ScenarioId::D, 50, 99, 77);
  CHECK(a.diseased.marker == c.diseased.marker);
}

TEST_CASE("unknown scenario ids are rejected", "[simulation]") {
  CHECK_THROWS_AS(aroc::scenario_from_string("E"), std::invalid_argument);
  CHECK_THROWS_AS(aroc::generate_scenario(aroc::ScenarioSpec{}, 10, 10, 0),
                  std::invalid_argument);
}

TEST_CASE("scenario C closed form values", "[simulation][paper]") {
  CHECK(aroc::scenario_c_analytic_roc(0.5) == Approx(0.875718375891409).margin(1e-12));
  // lies above the diagonal everywhere
  for (int k = 1; k < 100; ++k) {
    const double p = k / 100.0;
    CHECK(aroc::scenario_c_analytic_roc(p) > p);
  }
  // area under the analytic curve equals the binormal AUC identity
  const double area = oracles::simpson([](double p) { return aroc::scenario_c_analytic_roc(p); },
                                       1e-9, 1.0 - 1e-9, 4096);
  CHECK(area == Approx(aroc::normal_cdf(1.5 / std::sqrt(2.69))).margin(1e-5));
  CHECK(area == Approx(0.819790279751).margin(1e-4));
  CHECK_THROWS_AS(aroc::scenario_c_analytic_roc(0.0), std::invalid_argument);
  CHECK_THROWS_AS(aroc::scenario_c_analytic_roc(1.0), std::invalid_argument);
}

TEST_CASE("pooled and adjusted curves agree on large null-scenario samples",
          "[simulation][slow]") {
  for (auto id : {ScenarioId::A, ScenarioId::B}) {
    const auto data = aroc::generate_scenario(id, 2000, 2000, 13);
    const auto grid = aroc::default_grid(200);
    const auto roc = aroc::pooled_roc(aroc::MarkerSample{data.diseased.marker},
                                      aroc::MarkerSample{data.healthy.marker}, grid);
    const double bw = aroc::select_bandwidth(data.healthy, {});
    const auto adj = aroc::aroc_estimate(data.diseased, data.healthy, bw, {}, grid);
    CHECK(aroc::curve_distance(roc, adj, aroc::DistanceKind::ks) < 0.06);
  }
}

TEST_CASE("scenario C pooled ROC sits below the AROC mid-range", "[simulation][slow]") {
  const auto data = aroc::generate_scenario(ScenarioId::C, 2000, 2000, 14);
  const auto grid = aroc::default_grid(200);
  const auto roc = aroc::pooled_roc(aroc::MarkerSample{data.diseased.marker},
                                    aroc::MarkerSample{data.healthy.marker}, grid);
  const double bw = aroc::select_bandwidth(data.healthy, {});
  const auto adj = aroc::aroc_estimate(data.diseased, data.healthy, bw, {}, grid);
  for (std::size_t k = 0; k < grid.size(); ++k) {
    if (grid[k] > 0.1 && grid[k] < 0.9) CHECK(roc.values[k] < adj.values[k]);
  }
}

TEST_CASE("calibration_interval evaluates the binomial band", "[simulation]") {
  const auto [lo, hi] = aroc::calibration_interval(0.05, 0.05, 1000);
  CHECK(lo == Approx(0.036491632222952).margin(1e-12));
  CHECK(hi == Approx(0.063508367777048).margin(1e-12));

  const auto [lo2, hi2] = aroc::calibration_interval(0.5, 0.5, 100000000);
  CHECK(hi2 - lo2 < 0.001);

  const auto [lo3, hi3] = aroc::calibration_interval(0.01, 0.025, 1000);
  CHECK(lo3 >= 0.0);
  CHECK(hi3 > 0.01);

  // half-width 1.96*sqrt(0.025*0.975/1000) ~ 0.0097 exceeds 0.001: clipped
  const auto [lo4, hi4] = aroc::calibration_interval(0.001, 0.025, 1000);
  CHECK(lo4 == 0.0);

  CHECK_THROWS_AS(aroc::calibration_interval(0.5, 0.0, 100), std::invalid_argument);
  CHECK_THROWS_AS(aroc::calibration_interval(0.5, 1.0, 100), std::invalid_argument);
}

TEST_CASE("a single-replication Monte Carlo cell is a 0/1 table", "[simulation]") {
  aroc::MonteCarloPlan plan;
  plan.scenario = aroc::scenario_spec(ScenarioId::A);
  plan.sample_sizes = {{40, 40}};
  plan.replications = 1;
  plan.alphas = {0.05};
  plan.test_template.bootstrap_iterations = 20;
  plan.test_template.grid_size = 50;
  plan.seed = 3;
  const auto table = aroc::run_monte_carlo(plan);
  REQUIRE(table.rows.size() == 3);  // one per distance
  for (const auto& row : table.rows) {
    CHECK((row.proportion == 0.0 || row.proportion == 1.0));
    CHECK(row.interval_lo <= row.proportion);
    CHECK(row.interval_hi >= row.proportion);
  }
}

TEST_CASE("Monte Carlo proportions are exact fractions and reproducible",
          "[simulation][slow]") {
  aroc::MonteCarloPlan plan;
  plan.scenario = aroc::scenario_spec(ScenarioId::B);
  plan.sample_sizes = {{40, 44}};
  plan.replications = 25;
  plan.alphas = {0.1, 0.05};
  plan.test_template.bootstrap_iterations = 40;
  plan.test_template.grid_size = 50;
  plan.seed = 4;
  plan.threads = 2;
  const auto table = aroc::run_monte_carlo(plan);
  REQUIRE(table.rows.size() == 6);
  for (const auto& row : table.rows) {
    const double scaled = row.proportion * 25.0;
    CHECK(scaled == Approx(std::round(scaled)).margin(1e-9));
  }
  plan.threads = 1;
  const auto again = aroc::run_monte_carlo(plan);
  for (std::size_t i = 0; i < table.rows.size(); ++i) {
    CHECK(table.rows[i].proportion == again.rows[i].proportion);
  }
}
