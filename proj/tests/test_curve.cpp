#include <catch2/catch_amalgamated.hpp>

#include "aroc/curve.hpp"

using Catch::Approx;
using aroc::Curve;

TEST_CASE("default_grid lies strictly inside (0,1) and is symmetric", "[curve]") {
  const auto g = aroc::default_grid(500);
  REQUIRE(g.size() == 500);
  CHECK(g.front() == Approx(1.0 / 501.0));
  CHECK(g.back() == Approx(500.0 / 501.0));
  aroc::validate_grid(g);
  for (std::size_t k = 0; k < g.size(); ++k) {
    CHECK(g[k] + g[g.size() - 1 - k] == Approx(1.0).margin(1e-15));
  }
}

TEST_CASE("curve validation rejects malformed inputs", "[curve]") {
  CHECK_THROWS_AS(aroc::validate_grid({0.2, 0.2, 0.4}), std::invalid_argument);
  CHECK_THROWS_AS(aroc::validate_grid({0.0, 0.5}), std::invalid_argument);
  CHECK_THROWS_AS(aroc::validate_grid({0.5, 1.0}), std::invalid_argument);
  CHECK_THROWS_AS(aroc::validate(Curve{{0.5}, {1.2}}), std::invalid_argument);
  CHECK_THROWS_AS(aroc::validate(Curve{{0.2, 0.5}, {0.5}}), std::invalid_argument);
}

TEST_CASE("auc of the diagonal is one half", "[curve]") {
  Curve c;
  c.grid = aroc::default_grid(500);
  c.values = c.grid;
  CHECK(aroc::auc(c) == Approx(0.5).margin(1e-12));

  // trapezoid is exact for linear curves on any grid
  Curve odd;
  odd.grid = {0.1, 0.17, 0.52, 0.9};
  odd.values = odd.grid;
  CHECK(aroc::auc(odd) == Approx(0.5).margin(1e-12));
}

TEST_CASE("auc of the constant-1 curve reflects the endpoint rule", "[curve]") {
  Curve c;
  c.grid = aroc::default_grid(500);
  c.values.assign(500, 1.0);
  // the (0,0) anchor contributes a wedge of width grid[0]
  CHECK(aroc::auc(c) == Approx(1.0 - c.grid.front() / 2.0).margin(1e-12));
  CHECK(aroc::auc(c) > 0.999);
}
