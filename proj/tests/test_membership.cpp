#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "fuzzident/membership.hpp"

using namespace fuzzident;

namespace {
constexpr double kExpHalf = 0.60653065971263342;  // exp(-1/2)
}

TEST_CASE("mu reference values") {
  CHECK(mu(GaussianMF(0, 1), 0) == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(mu(GaussianMF(0, 1), 1) == doctest::Approx(kExpHalf).epsilon(1e-15));
  CHECK(mu(GaussianMF(5, 2), 5) == doctest::Approx(1.0).epsilon(1e-15));
}

TEST_CASE("dmu_dc reference values and antisymmetry") {
  CHECK(dmu_dc(GaussianMF(0, 1), 0) == 0.0);
  CHECK(dmu_dc(GaussianMF(0, 1), 1) == doctest::Approx(kExpHalf).epsilon(1e-15));
  CHECK(dmu_dc(GaussianMF(0, 1), -1) ==
        doctest::Approx(-kExpHalf).epsilon(1e-15));
}

TEST_CASE("dmu_ddelta reference values") {
  CHECK(dmu_ddelta(GaussianMF(0, 1), 0) == 0.0);
  CHECK(dmu_ddelta(GaussianMF(0, 1), 1) ==
        doctest::Approx(kExpHalf).epsilon(1e-15));
  CHECK(dmu_ddelta(GaussianMF(2, 0.5), 2) == 0.0);
}

TEST_CASE("spread must be strictly positive") {
  CHECK_THROWS_AS(GaussianMF(0.0, 0.0), std::invalid_argument);
  CHECK_THROWS_AS(GaussianMF(0.0, -1.0), std::invalid_argument);
}

TEST_CASE("gradients match finite differences of mu") {
  std::mt19937 rng(5);
  std::uniform_real_distribution<double> center(-5.0, 5.0);
  std::uniform_real_distribution<double> spread(0.1, 3.0);
  std::uniform_real_distribution<double> offset(-4.0, 4.0);
  for (int i = 0; i < 2000; ++i) {
    const double c = center(rng), d = spread(rng);
    const double x = c + offset(rng) * d;
    const double h = 1e-6 * d;
    const GaussianMF mf(c, d);
    const double fd_c =
        (mu(GaussianMF(c + h, d), x) - mu(GaussianMF(c - h, d), x)) / (2 * h);
    const double fd_d =
        (mu(GaussianMF(c, d + h), x) - mu(GaussianMF(c, d - h), x)) / (2 * h);
    const double scale_c = std::max(1e-12, std::abs(fd_c));
    const double scale_d = std::max(1e-12, std::abs(fd_d));
    CHECK(std::abs(dmu_dc(mf, x) - fd_c) / std::max(1.0, scale_c) < 1e-6);
    CHECK(std::abs(dmu_ddelta(mf, x) - fd_d) / std::max(1.0, scale_d) < 1e-6);
    CHECK(dmu_ddelta(mf, x) >= 0.0);
    // symmetry about the center (up to rounding of the argument)
    const double t = offset(rng);
    CHECK(std::abs(mu(mf, c + t) - mu(mf, c - t)) <= 1e-12);
  }
}
