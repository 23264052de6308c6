#pragma once

#include <array>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "cobcalc/rational.hpp"

namespace cobcalc {

// Which coefficient ring the series live over.
//   rational            : Q, no coefficient generators (Chow / additive law)
//   multiplicative_beta : Q[beta], beta of degree -1
//   universal_rational  : Q[m1, m2, ...], m_i of degree -i (rational Lazard ring)
enum class CoeffKind { rational, multiplicative_beta, universal_rational };

std::string to_string(CoeffKind kind);

// Shape of the ambient truncated ring. Two caps cut the power-series ring
// down to a finite window: max_t bounds the total degree in the degree-1
// variables, max_w bounds the Lazard weight sum(i * alpha_i).
struct RingContext {
  int n_vars = 1;
  CoeffKind kind = CoeffKind::rational;
  int max_t = 6;
  int max_w = 5;

  static constexpr int kMaxVars = 8;
  static constexpr int kMaxGenerators = 16;

  /// Validating factory; throws InvalidInput on out-of-range fields.
  static RingContext make(int n_vars, CoeffKind kind, int max_t, int max_w);

  /// Number of coefficient generators that can occur under the weight cap.
  int generator_count() const;
  /// Weight of generator g (1-based): m_g has weight g, beta has weight 1.
  int generator_weight(int g) const;
  /// "m3", "beta", ...
  std::string generator_name(int g) const;

  RingContext with_vars(int n) const;
  RingContext with_caps(int t, int w) const;

  /// Same coefficient ring and caps; the number of variables may differ.
  bool same_coefficients(const RingContext& other) const;

  friend bool operator==(const RingContext&, const RingContext&) = default;
};

// m^alpha t^beta. Exponents live in fixed slots so that products and
// comparisons stay allocation-free; t-variables occupy the first kMaxVars
// slots, coefficient generators the rest.
class Monomial {
 public:
  static constexpr int kSlots = RingContext::kMaxVars + RingContext::kMaxGenerators;

  Monomial() = default;

  /// lazard: pairs (generator index i >= 1, exponent). Throws InvalidInput
  /// on shape mismatch; caps are not checked here.
  static Monomial make(const RingContext& ctx, std::span<const int> t_exps,
                       std::span<const std::pair<int, int>> lazard = {});
  static Monomial variable(int j);                     // t_{j+1}
  static Monomial generator(const RingContext& ctx, int g);  // m_g or beta

  int t_exp(int j) const { return slots_[j]; }
  int lazard_exp(int g) const { return slots_[RingContext::kMaxVars + g - 1]; }
  int t_degree() const { return t_degree_; }
  int weight() const { return weight_; }
  /// Diagonal degree q of MGL^{2q,q}: |beta| - sum(i * alpha_i).
  int degree() const { return int(t_degree_) - int(weight_); }

  std::vector<int> t_exps(const RingContext& ctx) const;
  std::vector<std::pair<int, int>> lazard_exps() const;

  /// Lazard part only (all t-exponents cleared).
  Monomial coefficient_part() const;
  /// t part only.
  Monomial t_part() const;

  bool fits(const RingContext& ctx) const {
    return t_degree_ <= ctx.max_t && weight_ <= ctx.max_w;
  }

  friend Monomial operator*(const Monomial& a, const Monomial& b);
  friend bool operator==(const Monomial&, const Monomial&) = default;
  /// Canonical order: t-degree, then t-exponents (graded lex, t1 heaviest
  /// first), then Lazard weight, then Lazard exponents lexicographically.
  friend std::strong_ordering operator<=>(const Monomial& a, const Monomial& b);

  std::size_t hash() const;

 private:
  std::array<std::uint8_t, kSlots> slots_{};
  std::uint16_t t_degree_ = 0;
  std::uint16_t weight_ = 0;
};

struct MonomialHash {
  std::size_t operator()(const Monomial& m) const { return m.hash(); }
};

struct Term {
  Monomial mono;
  Rational coeff;
  friend bool operator==(const Term& a, const Term& b) {
    return a.mono == b.mono && a.coeff == b.coeff;
  }
};

// Exact element of the doubly truncated ring described by its context.
// Terms are kept sorted in canonical monomial order with no zero
// coefficients, so structural equality is ring equality.
class TruncatedSeries {
 public:
  explicit TruncatedSeries(const RingContext& ctx) : ctx_(ctx) {}

  static TruncatedSeries zero(const RingContext& ctx) { return TruncatedSeries(ctx); }
  static TruncatedSeries one(const RingContext& ctx);
  static TruncatedSeries constant(const RingContext& ctx, const Rational& c);
  static TruncatedSeries variable(const RingContext& ctx, int j);      // t_{j+1}
  static TruncatedSeries generator(const RingContext& ctx, int g);     // m_g / beta
  static TruncatedSeries monomial(const RingContext& ctx, const Monomial& m,
                                  const Rational& c = 1);
  /// Collects like terms, drops zeros and anything outside the caps.
  static TruncatedSeries from_terms(const RingContext& ctx, std::vector<Term> terms);

  const RingContext& context() const { return ctx_; }
  std::span<const Term> terms() const { return terms_; }
  std::size_t size() const { return terms_.size(); }
  bool is_zero() const { return terms_.empty(); }

  Rational coefficient(const Monomial& m) const;
  /// True if some term has t-degree 0 (a constant in the degree-1 variables).
  bool has_constant_term() const;
  /// Smallest t-degree present; max_t + 1 for the zero series.
  int t_order() const;
  /// Drops every term of t-degree above cap.
  TruncatedSeries truncated_t(int cap) const;
  /// Same terms re-read in another context with identical coefficients
  /// and at least as many variables.
  TruncatedSeries in_context(const RingContext& target) const;

  TruncatedSeries pow(unsigned n) const;

  TruncatedSeries& operator+=(const TruncatedSeries& o);
  TruncatedSeries& operator-=(const TruncatedSeries& o);
  TruncatedSeries& operator*=(const TruncatedSeries& o);
  TruncatedSeries& operator*=(const Rational& c);

  friend TruncatedSeries operator+(TruncatedSeries a, const TruncatedSeries& b) { return a += b; }
  friend TruncatedSeries operator-(TruncatedSeries a, const TruncatedSeries& b) { return a -= b; }
  friend TruncatedSeries operator*(const TruncatedSeries& a, const TruncatedSeries& b);
  friend TruncatedSeries operator*(TruncatedSeries a, const Rational& c) { return a *= c; }
  friend TruncatedSeries operator*(const Rational& c, TruncatedSeries a) { return a *= c; }
  friend TruncatedSeries operator-(TruncatedSeries a);

  friend bool operator==(const TruncatedSeries& a, const TruncatedSeries& b) {
    return a.ctx_ == b.ctx_ && a.terms_ == b.terms_;
  }

 private:
  RingContext ctx_;
  std::vector<Term> terms_;
};

// Hooks that let generic code (series evaluation, FGL sums, Chern classes)
// run over any commutative algebra built on top of a TruncatedSeries base.
inline const RingContext& base_context(const TruncatedSeries& s) { return s.context(); }
inline TruncatedSeries unit_like(const TruncatedSeries& s) { return TruncatedSeries::one(s.context()); }
inline TruncatedSeries zero_like(const TruncatedSeries& s) { return TruncatedSeries::zero(s.context()); }
inline TruncatedSeries scale(const TruncatedSeries& s, const TruncatedSeries& c) { return s * c; }
inline bool has_constant_term(const TruncatedSeries& s) { return s.has_constant_term(); }

/// Throws InvalidInput unless both series share a context.
void require_same_context(const TruncatedSeries& a, const TruncatedSeries& b, const char* op);

TruncatedSeries series_add(const TruncatedSeries& a, const TruncatedSeries& b);
TruncatedSeries series_mul(const TruncatedSeries& a, const TruncatedSeries& b);

/// Simultaneous substitution t_j -> image_j for every assigned variable;
/// unassigned variables stay put. Images must live in s's context and have
/// no constant term.
TruncatedSeries substitute(const TruncatedSeries& s,
                           const std::map<int, TruncatedSeries>& assignment);

/// Full composition: every variable of s is replaced by images[j], which may
/// live in a context with a different number of variables but the same
/// coefficients and caps.
TruncatedSeries compose(const TruncatedSeries& s, std::span<const TruncatedSeries> images);

/// All monomials with t-degree k and diagonal degree d inside the caps.
std::vector<Monomial> bidegree_basis(const RingContext& ctx, int d, int k);

/// Every Lazard-only monomial of weight exactly w (w <= ctx.max_w).
std::vector<Monomial> lazard_monomials_of_weight(const RingContext& ctx, int w);

}  // namespace cobcalc
