#pragma once

#include <cmath>
#include <stdexcept>

namespace fuzzident {

/// Gaussian membership function with center c and spread delta > 0.
struct GaussianMF {
  double center = 0.0;
  double spread = 1.0;

  GaussianMF() = default;
  GaussianMF(double c, double d) : center(c), spread(d) {
    if (!(spread > 0.0)) {
      throw std::invalid_argument("GaussianMF spread must be positive");
    }
  }
};

/// exp(-((x-c)/delta)^2 / 2), in (0, 1], 1 exactly at the center.
inline double mu(const GaussianMF& mf, double x) {
  const double z = (x - mf.center) / mf.spread;
  return std::exp(-0.5 * z * z);
}

/// d mu / d center = mu(x) (x - c) / delta^2
inline double dmu_dc(const GaussianMF& mf, double x) {
  return mu(mf, x) * (x - mf.center) / (mf.spread * mf.spread);
}

/// d mu / d delta = mu(x) (x - c)^2 / delta^3, nonnegative everywhere
inline double dmu_ddelta(const GaussianMF& mf, double x) {
  const double d = x - mf.center;
  return mu(mf, x) * d * d / (mf.spread * mf.spread * mf.spread);
}

}  // namespace fuzzident
