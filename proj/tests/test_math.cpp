#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "aroc/math.hpp"

using Catch::Approx;

TEST_CASE("normal_cdf matches reference values", "[math]") {
  CHECK(aroc::normal_cdf(0.0) == Approx(0.5).margin(1e-15));
  CHECK(aroc::normal_cdf(1.0) == Approx(0.841344746068542949).margin(1e-13));
  CHECK(aroc::normal_cdf(2.0) == Approx(0.977249868051820793).margin(1e-13));
  CHECK(aroc::normal_cdf(0.5) == Approx(0.691462461274013104).margin(1e-13));
  CHECK(aroc::normal_cdf(-1.3) == Approx(0.096800484585610326).margin(1e-13));
  CHECK(aroc::normal_cdf(15.0 / 13.0) == Approx(0.875718375891408928).margin(1e-13));
}

TEST_CASE("normal_quantile matches reference critical values", "[math]") {
  CHECK(aroc::normal_quantile(0.5) == Approx(0.0).margin(1e-15));
  CHECK(aroc::normal_quantile(0.975) == Approx(1.959963984540054).margin(1e-12));
  CHECK(aroc::normal_quantile(0.995) == Approx(2.575829303548901).margin(1e-12));
  CHECK(aroc::normal_quantile(0.9995) == Approx(3.290526731491895).margin(1e-12));
  CHECK(aroc::normal_quantile(0.3) == Approx(-0.524400512708041).margin(1e-12));
  CHECK(aroc::normal_quantile(0.01) == Approx(-2.326347874040841).margin(1e-12));
  CHECK(aroc::normal_quantile(1e-8) == Approx(-5.612001244174789).margin(1e-11));
}

TEST_CASE("normal_quantile inverts normal_cdf to high accuracy", "[math]") {
  for (int k = 1; k < 2000; ++k) {
    const double p = static_cast<double>(k) / 2000.0;
    CHECK(aroc::normal_cdf(aroc::normal_quantile(p)) == Approx(p).margin(1e-12));
  }
  // symmetry
  for (double p : {0.001, 0.02425, 0.1, 0.25, 0.4}) {
    CHECK(aroc::normal_quantile(p) == Approx(-aroc::normal_quantile(1.0 - p)).margin(1e-12));
  }
}

TEST_CASE("normal_quantile rejects out-of-range arguments", "[math]") {
  CHECK_THROWS_AS(aroc::normal_quantile(0.0), std::invalid_argument);
  CHECK_THROWS_AS(aroc::normal_quantile(1.0), std::invalid_argument);
  CHECK_THROWS_AS(aroc::normal_quantile(-0.2), std::invalid_argument);
}

TEST_CASE("mean and sample_sd basics", "[math]") {
  const std::vector<double> v{1.0, 2.0, 3.0, 4.0};
  CHECK(aroc::mean(v) == Approx(2.5));
  CHECK(aroc::sample_sd(v) == Approx(std::sqrt(5.0 / 3.0)));
  CHECK(aroc::sample_sd(std::vector<double>{7.0}) == 0.0);
  CHECK_THROWS_AS(aroc::mean(std::vector<double>{}), std::invalid_argument);
}
