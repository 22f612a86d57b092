#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>
#include <vector>

#include "fuzzident/norms.hpp"

using namespace fuzzident;

namespace {

const std::vector<Composition> kAllKinds = {
    Composition(NormFamily::MinMax),     Composition(NormFamily::ProductSum),
    Composition(NormFamily::Smooth1),    Composition(NormFamily::SmoothAtan),
    Composition(NormFamily::SmoothAcos), Composition(NormFamily::Smooth4)};

const std::vector<Composition> kSmoothKinds = {
    Composition(NormFamily::Smooth1), Composition(NormFamily::SmoothAtan),
    Composition(NormFamily::SmoothAcos), Composition(NormFamily::Smooth4)};

double central_diff_a(const Composition& comp, bool use_t, double a, double b,
                      double h) {
  auto eval = [&](double x) {
    return use_t ? t_norm(comp, x, b).value : s_norm(comp, x, b).value;
  };
  return (eval(a + h) - eval(a - h)) / (2.0 * h);
}

}  // namespace

TEST_CASE("t-norm reference values") {
  CHECK(t_norm(Composition(NormFamily::ProductSum), 0.5, 0.4).value ==
        doctest::Approx(0.2).epsilon(1e-12));
  CHECK(t_norm(Composition(NormFamily::SmoothAtan), 0.7, 1.0).value ==
        doctest::Approx(0.7).epsilon(1e-12));
  // (4/pi) atan(tan(pi/8)^2), evaluated at high precision beforehand
  CHECK(t_norm(Composition(NormFamily::SmoothAtan), 0.5, 0.5).value ==
        doctest::Approx(0.21634689593878546).epsilon(1e-12));
}

TEST_CASE("s-norm reference values") {
  CHECK(s_norm(Composition(NormFamily::MinMax), 0.3, 0.7).value ==
        doctest::Approx(0.7).epsilon(1e-12));
  CHECK(s_norm(Composition(NormFamily::SmoothAcos), 0.4, 0.0).value ==
        doctest::Approx(0.4).epsilon(1e-12));
  // (2/pi) arccos(cos(pi/4)^2) = (2/pi) arccos(1/2) = 2/3 exactly
  CHECK(s_norm(Composition(NormFamily::SmoothAcos), 0.5, 0.5).value ==
        doctest::Approx(2.0 / 3.0).epsilon(1e-12));
}

TEST_CASE("dual construction reference values") {
  CHECK(dual_s_from_t(Composition(NormFamily::ProductSum), 0.5, 0.5).value ==
        doctest::Approx(0.75).epsilon(1e-12));
  CHECK(dual_s_from_t(Composition(NormFamily::MinMax), 0.3, 0.7).value ==
        doctest::Approx(0.7).epsilon(1e-12));
  CHECK(dual_s_from_t(Composition(NormFamily::Smooth1, 2.0), 0.2, 0.0).value ==
        doctest::Approx(0.2).epsilon(1e-12));
}

TEST_CASE("fold_t examples") {
  const Composition prodsum(NormFamily::ProductSum);
  const std::vector<double> v{0.5, 0.5, 0.5};
  CHECK(fold_t(prodsum, v) == doctest::Approx(0.125).epsilon(1e-12));
  const std::vector<double> w{0.9, 0.2, 0.6};
  CHECK(fold_t(Composition(NormFamily::MinMax), w) ==
        doctest::Approx(0.2).epsilon(1e-12));
  const std::vector<double> one{0.37};
  CHECK(fold_t(Composition(NormFamily::SmoothAtan), one) ==
        doctest::Approx(0.37).epsilon(1e-12));
  CHECK_THROWS_AS(fold_t(prodsum, std::vector<double>{}),
                  std::invalid_argument);
}

TEST_CASE("domain errors beyond the clamping tolerance") {
  const Composition comp(NormFamily::SmoothAtan);
  CHECK_THROWS_AS(t_norm(comp, -0.01, 0.5), std::domain_error);
  CHECK_THROWS_AS(s_norm(comp, 0.5, 1.01), std::domain_error);
  // within 1e-12 is clamped, not rejected
  CHECK(t_norm(comp, 1.0 + 1e-13, 1.0).value == doctest::Approx(1.0));
  CHECK(s_norm(comp, -1e-13, 0.0).value == doctest::Approx(0.0));
}

TEST_CASE("norm axioms over random samples") {
  std::mt19937 rng(42);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  for (const Composition& comp : kAllKinds) {
    CAPTURE(comp.name());
    for (int i = 0; i < 10000; ++i) {
      const double a = unit(rng), b = unit(rng), c = unit(rng);
      // commutativity, exact
      CHECK(t_norm(comp, a, b).value == t_norm(comp, b, a).value);
      CHECK(s_norm(comp, a, b).value == s_norm(comp, b, a).value);
      // associativity
      const double t_left = t_norm(comp, t_norm(comp, a, b).value, c).value;
      const double t_right = t_norm(comp, a, t_norm(comp, b, c).value).value;
      CHECK(std::abs(t_left - t_right) < 1e-9);
      const double s_left = s_norm(comp, s_norm(comp, a, b).value, c).value;
      const double s_right = s_norm(comp, a, s_norm(comp, b, c).value).value;
      CHECK(std::abs(s_left - s_right) < 1e-9);
      // monotonicity: compare at ordered argument pairs
      const double lo_a = std::min(a, c), hi_a = std::max(a, c);
      const double lo_b = std::min(b, unit(rng)), hi_b = std::max(b, lo_b);
      CHECK(t_norm(comp, lo_a, lo_b).value <=
            t_norm(comp, hi_a, hi_b).value + 1e-12);
      CHECK(s_norm(comp, lo_a, lo_b).value <=
            s_norm(comp, hi_a, hi_b).value + 1e-12);
      // boundary axioms
      CHECK(std::abs(t_norm(comp, a, 1.0).value - a) < 1e-12);
      CHECK(std::abs(s_norm(comp, a, 0.0).value - a) < 1e-12);
      // range closure
      const double tv = t_norm(comp, a, b).value;
      const double sv = s_norm(comp, a, b).value;
      CHECK(tv >= 0.0);
      CHECK(tv <= 1.0);
      CHECK(sv >= 0.0);
      CHECK(sv <= 1.0);
    }
  }
}

TEST_CASE("duality holds for the De Morgan pairs") {
  const std::vector<Composition> dual_pairs = {
      Composition(NormFamily::ProductSum), Composition(NormFamily::MinMax),
      Composition(NormFamily::SmoothAtan), Composition(NormFamily::SmoothAcos)};
  std::mt19937 rng(7);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  for (const Composition& comp : dual_pairs) {
    CAPTURE(comp.name());
    for (int i = 0; i < 10000; ++i) {
      const double a = unit(rng), b = unit(rng);
      CHECK(std::abs(s_norm(comp, a, b).value -
                     dual_s_from_t(comp, a, b).value) < 1e-9);
    }
  }
}

TEST_CASE("analytic partials match finite differences on the interior") {
  std::mt19937 rng(99);
  std::uniform_real_distribution<double> interior(0.01, 0.99);
  const double h = 1e-6;
  for (const Composition& comp : kSmoothKinds) {
    CAPTURE(comp.name());
    for (int i = 0; i < 2000; ++i) {
      const double a = interior(rng), b = interior(rng);
      for (bool use_t : {true, false}) {
        const NormEval e = use_t ? t_norm(comp, a, b) : s_norm(comp, a, b);
        const double fd = central_diff_a(comp, use_t, a, b, h);
        const double scale = std::max({1.0, std::abs(e.d_da), std::abs(fd)});
        CHECK(std::abs(e.d_da - fd) / scale < 1e-5);
        CHECK(std::isfinite(e.d_da));
        CHECK(std::isfinite(e.d_db));
      }
    }
  }
}

TEST_CASE("smooth kinds stay smooth across the diagonal; min-max does not") {
  // second difference of T along a at a = b stays bounded for smooth kinds
  const double h = 1e-4;
  for (const Composition& comp : kSmoothKinds) {
    CAPTURE(comp.name());
    for (double x : {0.2, 0.5, 0.8}) {
      const double d2 = (t_norm(comp, x + h, x).value -
                         2.0 * t_norm(comp, x, x).value +
                         t_norm(comp, x - h, x).value) /
                        (h * h);
      CHECK(std::abs(d2) < 50.0);
    }
  }
  // min exhibits a unit jump in dT/da when a crosses b
  const Composition minmax(NormFamily::MinMax);
  const double below = central_diff_a(minmax, true, 0.5 - 1e-3, 0.5, 1e-5);
  const double above = central_diff_a(minmax, true, 0.5 + 1e-3, 0.5, 1e-5);
  CHECK(below == doctest::Approx(1.0).epsilon(1e-6));
  CHECK(above == doctest::Approx(0.0).epsilon(1e-6));
}

TEST_CASE("composition names round-trip and reject unknowns") {
  for (const Composition& comp : kAllKinds) {
    CHECK(Composition::from_name(comp.name()).family == comp.family);
  }
  CHECK_THROWS_AS(Composition::from_name("frank"), std::invalid_argument);
  CHECK_THROWS_AS(Composition(NormFamily::Smooth1, 1.0), std::invalid_argument);
}
