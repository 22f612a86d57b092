#include "fuzzident/norms.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace fuzzident {

namespace {

constexpr double kClampTol = 1e-12;
constexpr double kPi = std::numbers::pi;

double clamp_unit(double v, const char* what) {
  if (v < -kClampTol || v > 1.0 + kClampTol) {
    throw std::domain_error(std::string(what) + " argument outside [0, 1]: " +
                            std::to_string(v));
  }
  if (v < 0.0) return 0.0;
  if (v > 1.0) return 1.0;
  return v;
}

double clamp01(double v) { return v < 0.0 ? 0.0 : (v > 1.0 ? 1.0 : v); }

// min/max with the 0.5 tie convention for the subgradient.
NormEval min_eval(double a, double b) {
  if (a < b) return {a, 1.0, 0.0};
  if (a > b) return {b, 0.0, 1.0};
  return {a, 0.5, 0.5};
}

NormEval max_eval(double a, double b) {
  if (a > b) return {a, 1.0, 0.0};
  if (a < b) return {b, 0.0, 1.0};
  return {a, 0.5, 0.5};
}

// T(a,b) = (4/pi) atan(tan(pi a/4) tan(pi b/4))
NormEval atan_t(double a, double b) {
  const double ga = std::tan(kPi * a / 4.0);
  const double gb = std::tan(kPi * b / 4.0);
  const double p = ga * gb;
  const double v = (4.0 / kPi) * std::atan(p);
  const double sa = 1.0 + ga * ga;  // (4/pi) d/da tan(pi a/4)
  const double sb = 1.0 + gb * gb;
  const double w = 1.0 / (1.0 + p * p);
  return {clamp01(v), w * sa * gb, w * sb * ga};
}

// S(a,b) = 1 - T(1-a, 1-b) in closed form; derivatives via reflection.
NormEval atan_s(double a, double b) {
  NormEval t = atan_t(1.0 - a, 1.0 - b);
  return {clamp01(1.0 - t.value), t.d_da, t.d_db};
}

// T(a,b) = 1 - (2/pi) acos(sin(pi a/2) sin(pi b/2))
NormEval acos_t(double a, double b) {
  const double ha = std::sin(kPi * a / 2.0);
  const double hb = std::sin(kPi * b / 2.0);
  const double m = ha * hb;
  const double v = 1.0 - (2.0 / kPi) * std::acos(m);
  const double denom2 = 1.0 - m * m;
  if (denom2 <= 0.0) {
    // only reachable at a = b = 1; one-sided limit along either edge is 1
    return {clamp01(v), 1.0, 1.0};
  }
  const double denom = std::sqrt(denom2);
  return {clamp01(v), std::cos(kPi * a / 2.0) * hb / denom,
          std::cos(kPi * b / 2.0) * ha / denom};
}

// S(a,b) = (2/pi) acos(cos(pi a/2) cos(pi b/2))
NormEval acos_s(double a, double b) {
  const double ca = std::cos(kPi * a / 2.0);
  const double cb = std::cos(kPi * b / 2.0);
  const double m = ca * cb;
  const double v = (2.0 / kPi) * std::acos(m);
  const double denom2 = 1.0 - m * m;
  if (denom2 <= 0.0) {
    // only reachable at a = b = 0; boundary limit S(a,0)=a gives slope 1
    return {clamp01(v), 1.0, 1.0};
  }
  const double denom = std::sqrt(denom2);
  return {clamp01(v), std::sin(kPi * a / 2.0) * cb / denom,
          std::sin(kPi * b / 2.0) * ca / denom};
}

// T(a,b) = 1 - cos((2/pi) acos(1-a) acos(1-b))
NormEval smooth1_t(double a, double b) {
  const double ua = std::acos(1.0 - a);
  const double ub = std::acos(1.0 - b);
  const double phi = (2.0 / kPi) * (ua * ub);  // grouped so T(a,b) == T(b,a) exactly
  const double v = 1.0 - std::cos(phi);
  const double s = std::sin(phi);
  // u'(x) = 1/sqrt(x(2-x)); finite limit as x -> 0 since sin(phi) -> 0
  const double limit_a = (2.0 / kPi) * ub;
  const double limit_b = (2.0 / kPi) * ua;
  double da = (a < 1e-12) ? limit_a * limit_a
                          : s * (2.0 / kPi) * ub / std::sqrt(a * (2.0 - a));
  double db = (b < 1e-12) ? limit_b * limit_b
                          : s * (2.0 / kPi) * ua / std::sqrt(b * (2.0 - b));
  return {clamp01(v), da, db};
}

// T(a,b) = cos(acos a + acos b - (2/pi) acos a acos b)
NormEval smooth4_t(double a, double b) {
  const double va = std::acos(a);
  const double vb = std::acos(b);
  const double theta = va + vb - (2.0 / kPi) * (va * vb);
  const double v = std::cos(theta);
  const double s = std::sin(theta);
  if (a > 1.0 - 1e-12 && b > 1.0 - 1e-12) return {clamp01(v), 1.0, 1.0};
  // slope is unbounded approaching a = 1 with b < 1; keep it finite for the
  // gradient chain by flooring the denominator
  const double da = s * (1.0 - (2.0 / kPi) * vb) /
                    std::sqrt(std::max(1.0 - a * a, 1e-24));
  const double db = s * (1.0 - (2.0 / kPi) * va) /
                    std::sqrt(std::max(1.0 - b * b, 1e-24));
  return {clamp01(v), da, db};
}

// S(a,b) = cos((2/pi) acos a acos b)
NormEval smooth4_s(double a, double b) {
  const double va = std::acos(a);
  const double vb = std::acos(b);
  const double psi = (2.0 / kPi) * (va * vb);
  const double v = std::cos(psi);
  const double s = std::sin(psi);
  const double limit_a = (2.0 / kPi) * vb;
  const double limit_b = (2.0 / kPi) * va;
  double da = (a > 1.0 - 1e-12)
                  ? limit_a * limit_a
                  : s * (2.0 / kPi) * vb / std::sqrt(1.0 - a * a);
  double db = (b > 1.0 - 1e-12)
                  ? limit_b * limit_b
                  : s * (2.0 / kPi) * va / std::sqrt(1.0 - b * b);
  return {clamp01(v), da, db};
}

}  // namespace

Composition::Composition(NormFamily f, double beta_) : family(f), beta(beta_) {
  if (family == NormFamily::Smooth1 && !(beta > 1.0)) {
    throw std::invalid_argument("smooth1 requires beta > 1");
  }
}

std::string Composition::name() const {
  switch (family) {
    case NormFamily::MinMax: return "minmax";
    case NormFamily::ProductSum: return "prodsum";
    case NormFamily::Smooth1: return "smooth1";
    case NormFamily::SmoothAtan: return "atan";
    case NormFamily::SmoothAcos: return "acos";
    case NormFamily::Smooth4: return "smooth4";
  }
  throw std::logic_error("unreachable composition tag");
}

Composition Composition::from_name(std::string_view name, double beta) {
  if (name == "minmax") return Composition(NormFamily::MinMax);
  if (name == "prodsum") return Composition(NormFamily::ProductSum);
  if (name == "smooth1") return Composition(NormFamily::Smooth1, beta);
  if (name == "atan") return Composition(NormFamily::SmoothAtan);
  if (name == "acos") return Composition(NormFamily::SmoothAcos);
  if (name == "smooth4") return Composition(NormFamily::Smooth4);
  throw std::invalid_argument(
      "unknown composition \"" + std::string(name) +
      "\" (valid: minmax, prodsum, smooth1, atan, acos, smooth4)");
}

bool Composition::smooth() const {
  return family != NormFamily::MinMax && family != NormFamily::ProductSum;
}

NormEval t_norm(const Composition& comp, double a, double b) {
  a = clamp_unit(a, "t_norm");
  b = clamp_unit(b, "t_norm");
  switch (comp.family) {
    case NormFamily::MinMax: return min_eval(a, b);
    case NormFamily::ProductSum: return {a * b, b, a};
    case NormFamily::Smooth1: return smooth1_t(a, b);
    case NormFamily::SmoothAtan: return atan_t(a, b);
    case NormFamily::SmoothAcos: return acos_t(a, b);
    case NormFamily::Smooth4: return smooth4_t(a, b);
  }
  throw std::logic_error("unreachable composition tag");
}

NormEval s_norm(const Composition& comp, double a, double b) {
  a = clamp_unit(a, "s_norm");
  b = clamp_unit(b, "s_norm");
  switch (comp.family) {
    case NormFamily::MinMax: return max_eval(a, b);
    case NormFamily::ProductSum: return {a + b - a * b, 1.0 - b, 1.0 - a};
    case NormFamily::Smooth1: return dual_s_from_t(comp, a, b);
    case NormFamily::SmoothAtan: return atan_s(a, b);
    case NormFamily::SmoothAcos: return acos_s(a, b);
    case NormFamily::Smooth4: return smooth4_s(a, b);
  }
  throw std::logic_error("unreachable composition tag");
}

NormEval dual_s_from_t(const Composition& comp, double a, double b) {
  a = clamp_unit(a, "dual_s_from_t");
  b = clamp_unit(b, "dual_s_from_t");
  NormEval t = t_norm(comp, 1.0 - a, 1.0 - b);
  return {clamp01(1.0 - t.value), t.d_da, t.d_db};
}

double fold_t(const Composition& comp, std::span<const double> values) {
  if (values.empty()) throw std::invalid_argument("fold_t: empty sequence");
  double acc = clamp_unit(values[0], "fold_t");
  for (std::size_t i = 1; i < values.size(); ++i) {
    acc = t_norm(comp, acc, values[i]).value;
  }
  return acc;
}

double fold_s(const Composition& comp, std::span<const double> values) {
  if (values.empty()) throw std::invalid_argument("fold_s: empty sequence");
  double acc = clamp_unit(values[0], "fold_s");
  for (std::size_t i = 1; i < values.size(); ++i) {
    acc = s_norm(comp, acc, values[i]).value;
  }
  return acc;
}

}  // namespace fuzzident
