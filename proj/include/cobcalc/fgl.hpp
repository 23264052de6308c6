#pragma once

#include <optional>
#include <string>
#include <string_view>

#include "cobcalc/error.hpp"
#include "cobcalc/evaluate.hpp"
#include "cobcalc/series.hpp"

namespace cobcalc {

enum class FglKind { additive, multiplicative, universal_rational };

std::string to_string(FglKind kind);
/// Accepts "additive", "multiplicative", "universal", "universal-rational".
FglKind parse_fgl_kind(std::string_view name);
CoeffKind coefficient_kind(FglKind kind);

// Residuals of the three axioms, each of which must be the zero series.
struct AxiomReport {
  TruncatedSeries unit_left;      // F(x, 0) - x
  TruncatedSeries unit_right;     // F(0, y) - y
  TruncatedSeries commutativity;  // F(x, y) - F(y, x)
  TruncatedSeries associativity;  // F(F(x, y), z) - F(x, F(y, z))

  bool unit() const { return unit_left.is_zero() && unit_right.is_zero(); }
  bool comm() const { return commutativity.is_zero(); }
  bool assoc() const { return associativity.is_zero(); }
  bool ok() const { return unit() && comm() && assoc(); }
};

// A formal group law over the coefficient ring of its kind:
//   additive          F = x + y                    over Q
//   multiplicative    F = x + y - beta x y         over Q[beta]
//   universal         F = exp(log x + log y)       over Q[m1, m2, ...]
//                     with log x = x + m1 x^2 + m2 x^3 + ...
// The law is stored as a series in t1 = x, t2 = y; the formal inverse
// (and log / exp for the universal kind) as series in t1.
class FormalGroupLaw {
 public:
  /// Builds the law in ctx's coefficient ring and caps (ctx.n_vars is
  /// ignored). Throws InvalidInput if the caps are below degree 2, and
  /// InternalError if the axiom check at construction fails.
  static FormalGroupLaw build(FglKind kind, const RingContext& ctx);
  static FormalGroupLaw build(FglKind kind, int max_t, int max_w);

  FglKind kind() const { return kind_; }
  /// The two-variable context the law lives in.
  const RingContext& context() const { return law_.context(); }
  /// Ambient ring with n degree-1 variables and this law's coefficients.
  RingContext ring(int n_vars) const { return context().with_vars(n_vars); }
  bool acts_on(const RingContext& ctx) const { return ctx.same_coefficients(context()); }

  const TruncatedSeries& law() const { return law_; }
  const TruncatedSeries& inverse_series() const { return inverse_; }
  const std::optional<TruncatedSeries>& logarithm() const { return log_; }
  const std::optional<TruncatedSeries>& exponential() const { return exp_; }

 private:
  FormalGroupLaw(FglKind kind, TruncatedSeries law) : kind_(kind), law_(std::move(law)), inverse_(law_.context()) {}

  FglKind kind_;
  TruncatedSeries law_;
  TruncatedSeries inverse_;
  std::optional<TruncatedSeries> log_;
  std::optional<TruncatedSeries> exp_;
};

AxiomReport verify_fgl_axioms(const FormalGroupLaw& F);

/// Logarithm x + m1 x^2 + m2 x^3 + ... in one variable over ctx's coefficients.
TruncatedSeries universal_logarithm(const RingContext& ctx);
/// Compositional inverse of a series g(x) = x + O(x^2) in one variable,
/// computed order by order.
TruncatedSeries compositional_inverse(const TruncatedSeries& g);

/// Image of s under every coefficient generator going to zero; the result
/// lives over plain Q with the same caps.
TruncatedSeries specialize_generators_to_zero(const TruncatedSeries& s);

namespace detail {
inline void require_augmented(bool constant, const char* op) {
  if (constant) throw InvalidInput(std::string(op) + ": argument must have zero constant term");
}
}  // namespace detail

/// F(a, b).
template <SeriesAlgebra A>
A fgl_sum(const FormalGroupLaw& F, const A& a, const A& b) {
  detail::require_augmented(has_constant_term(a) || has_constant_term(b), "fgl_sum");
  const RingContext& base = base_context(a);
  if (!F.acts_on(base)) throw InvalidInput("fgl_sum: argument ring does not match the formal group law");
  switch (F.kind()) {
    case FglKind::additive:
      return a + b;
    case FglKind::multiplicative:
      return a + b + scale(a * b, -TruncatedSeries::generator(base, 1));
    case FglKind::universal_rational:
      break;
  }
  return evaluate<A>(F.law(), {a, b});
}

/// The formal inverse chi(a), so that F(a, chi(a)) = 0.
template <SeriesAlgebra A>
A fgl_inverse(const FormalGroupLaw& F, const A& a) {
  detail::require_augmented(has_constant_term(a), "fgl_inverse");
  if (!F.acts_on(base_context(a))) throw InvalidInput("fgl_inverse: argument ring does not match the formal group law");
  if (F.kind() == FglKind::additive) return scale(a, TruncatedSeries::constant(base_context(a), -1));
  return evaluate<A>(F.inverse_series(), {a});
}

/// [n](a) by iterated formal sums; negative n goes through the inverse.
template <SeriesAlgebra A>
A n_series(const FormalGroupLaw& F, long n, const A& a) {
  detail::require_augmented(has_constant_term(a), "n_series");
  A acc = zero_like(a);
  for (long k = 0; k < (n < 0 ? -n : n); ++k) acc = fgl_sum(F, a, acc);
  return n < 0 ? fgl_inverse(F, acc) : acc;
}

}  // namespace cobcalc
