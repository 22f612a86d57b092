#pragma once

#include <span>
#include <string>
#include <string_view>

namespace fuzzident {

/// The fuzzy composition families available for rule aggregation.
/// Each tag selects one (s-norm, t-norm) pair.
enum class NormFamily {
  MinMax,      // S = max, T = min (subgradient convention at ties)
  ProductSum,  // S = a + b - ab, T = ab
  Smooth1,     // arccos-generated t-norm; s-norm is its De Morgan dual
  SmoothAtan,  // "atan" composition
  SmoothAcos,  // "acos" composition
  Smooth4      // second arccos-generated pair
};

struct Composition {
  NormFamily family = NormFamily::ProductSum;
  double beta = 2.0;  // Smooth1 shape parameter, must be > 1; unused elsewhere

  Composition() = default;
  Composition(NormFamily f, double beta = 2.0);

  /// Canonical lowercase name: minmax, prodsum, smooth1, atan, acos, smooth4.
  std::string name() const;
  static Composition from_name(std::string_view name, double beta = 2.0);

  bool smooth() const;

  bool operator==(const Composition&) const = default;
};

/// Value of a norm together with its partial derivatives.
struct NormEval {
  double value = 0.0;
  double d_da = 0.0;
  double d_db = 0.0;
};

/// T(a, b) with analytic partials. Arguments must lie in [0, 1] up to a
/// 1e-12 clamping tolerance; farther values raise std::domain_error.
NormEval t_norm(const Composition& comp, double a, double b);

/// S(a, b) with analytic partials. Same domain contract as t_norm.
NormEval s_norm(const Composition& comp, double a, double b);

/// The De Morgan dual 1 - T(1-a, 1-b), derivatives propagated.
NormEval dual_s_from_t(const Composition& comp, double a, double b);

/// Left fold of the t-norm over a non-empty sequence.
double fold_t(const Composition& comp, std::span<const double> values);

/// Left fold of the s-norm over a non-empty sequence.
double fold_s(const Composition& comp, std::span<const double> values);

}  // namespace fuzzident
