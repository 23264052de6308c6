#pragma once

#include <memory>
#include <span>
#include <utility>
#include <vector>

#include "cobcalc/equivariant.hpp"
#include "cobcalc/evaluate.hpp"
#include "cobcalc/fgl.hpp"
#include "cobcalc/series.hpp"

namespace cobcalc {

// A vector bundle presented by its Chern roots (splitting principle).
struct SplitBundle {
  std::vector<TruncatedSeries> roots;

  /// Throws InvalidInput on an empty root list, mixed contexts, or a root
  /// with a constant term.
  static SplitBundle make(std::vector<TruncatedSeries> roots);
  /// The trivial bundle of the given rank (all roots zero).
  static SplitBundle trivial(const RingContext& ctx, int rank);

  int rank() const { return static_cast<int>(roots.size()); }
  const RingContext& context() const { return roots.front().context(); }
  SplitBundle direct_sum(const SplitBundle& other) const;
};

/// e_1, ..., e_r of the given elements.
template <SeriesAlgebra A>
std::vector<A> elementary_symmetric(std::span<const A> xs) {
  if (xs.empty()) return {};
  // e[k] after processing a prefix; e[0] = 1.
  std::vector<A> e{unit_like(xs[0])};
  for (const A& x : xs) {
    e.push_back(zero_like(x));
    for (std::size_t k = e.size() - 1; k >= 1; --k) e[k] = e[k] + e[k - 1] * x;
  }
  e.erase(e.begin());
  return e;
}

/// c_1(E), ..., c_r(E).
std::vector<TruncatedSeries> chern_classes(const SplitBundle& E);

/// Coefficients 1..(r+s) of (1 + c_1 u + ...)(1 + c'_1 u + ...).
std::vector<TruncatedSeries> multiply_chern_polynomials(const std::vector<TruncatedSeries>& c,
                                                        const std::vector<TruncatedSeries>& c_prime);

/// Roots x_j -> F(x_j, y): the bundle E tensored with a line of class y.
template <SeriesAlgebra A>
std::vector<A> twist_roots(std::span<const A> roots, const A& y, const FormalGroupLaw& F) {
  std::vector<A> out;
  out.reserve(roots.size());
  for (const A& x : roots) out.push_back(fgl_sum(F, x, y));
  return out;
}

SplitBundle twist_by_line(const SplitBundle& E, const TruncatedSeries& y, const FormalGroupLaw& F);

// B[xi] / (xi^n - c_1 xi^{n-1} + ... + (-1)^n c_n) over a truncated base B.
// Elements are coordinate vectors in the basis 1, xi, ..., xi^{n-1}. A term
// b xi^j is kept only while j + t-degree(b) <= max_t: this filtration is
// compatible with the reduction rule as long as c_i has t-order >= i, which
// every Chern class of a split bundle satisfies.
class ProjBundleRing {
 public:
  using Ptr = std::shared_ptr<const ProjBundleRing>;

  /// chern = c_1..c_n with n >= 1; throws InvalidInput if some c_i has a
  /// term of t-degree below i or lives in another context.
  static Ptr make(const RingContext& base, std::vector<TruncatedSeries> chern);
  /// P^{n-1} x base: all Chern classes zero.
  static Ptr trivial(const RingContext& base, int rank);
  /// P(1 + E), rank(E) + 1.
  static Ptr projective_completion(const SplitBundle& E);

  const RingContext& base() const { return base_; }
  int rank() const { return static_cast<int>(chern_.size()); }
  const std::vector<TruncatedSeries>& chern() const { return chern_; }

  /// Coordinates of the polynomial sum_k coeffs[k] xi^k, reducing the top
  /// power one step at a time.
  std::vector<TruncatedSeries> reduce(std::vector<TruncatedSeries> coeffs) const;
  /// Same result via the table of reduced powers xi^n, xi^{n+1}, ...
  std::vector<TruncatedSeries> reduce_by_table(const std::vector<TruncatedSeries>& coeffs) const;
  /// Reduced coordinates of xi^k, built by repeated multiplication by xi.
  std::vector<TruncatedSeries> power_coordinates(int k) const;

  /// Applies the xi-filtration cut to a coordinate vector in place.
  void truncate(std::vector<TruncatedSeries>& coords) const;

 private:
  ProjBundleRing(const RingContext& base, std::vector<TruncatedSeries> chern);

  RingContext base_;
  std::vector<TruncatedSeries> chern_;
  std::vector<std::vector<TruncatedSeries>> power_table_;  // xi^n .. xi^{2n-2}
};

class ProjBundleElement {
 public:
  /// coords.size() must equal the ring's rank.
  ProjBundleElement(ProjBundleRing::Ptr ring, std::vector<TruncatedSeries> coords);

  /// Pull-back p*(a) of a base element.
  static ProjBundleElement lift(const ProjBundleRing::Ptr& ring, const TruncatedSeries& a);
  static ProjBundleElement xi(const ProjBundleRing::Ptr& ring);
  static ProjBundleElement xi_power(const ProjBundleRing::Ptr& ring, int k);

  const ProjBundleRing::Ptr& ring() const { return ring_; }
  const std::vector<TruncatedSeries>& coords() const { return coords_; }

  friend ProjBundleElement operator+(const ProjBundleElement& u, const ProjBundleElement& v);
  friend ProjBundleElement operator-(const ProjBundleElement& u, const ProjBundleElement& v);
  friend ProjBundleElement operator*(const ProjBundleElement& u, const ProjBundleElement& v);
  friend bool operator==(const ProjBundleElement& u, const ProjBundleElement& v);

 private:
  ProjBundleRing::Ptr ring_;
  std::vector<TruncatedSeries> coords_;
};

inline const RingContext& base_context(const ProjBundleElement& u) { return u.ring()->base(); }
ProjBundleElement unit_like(const ProjBundleElement& u);
ProjBundleElement zero_like(const ProjBundleElement& u);
ProjBundleElement scale(const ProjBundleElement& u, const TruncatedSeries& c);
inline bool has_constant_term(const ProjBundleElement& u) { return u.coords().front().has_constant_term(); }

ProjBundleRing::Ptr pb_ring(const RingContext& base, std::vector<TruncatedSeries> chern);
ProjBundleElement pb_mul(const ProjBundleElement& u, const ProjBundleElement& v);

/// c_1(O(1)) = chi(xi), with xi = c_1(O(-1)).
ProjBundleElement hyperplane_class(const ProjBundleRing::Ptr& ring, const FormalGroupLaw& F);
/// c_1(O(1)) found instead by solving F(xi, eta) = 0 for eta inside the ring.
ProjBundleElement hyperplane_class_by_solving(const ProjBundleRing::Ptr& ring, const FormalGroupLaw& F);

/// th(E) = c_n(p*E (x) O(1)) in R = P(1 + E).
ProjBundleElement thom_class(const SplitBundle& E, const ProjBundleRing::Ptr& R, const FormalGroupLaw& F);

/// s_*(a) = p*(a) th(E) for the zero section s of P(1 + E).
ProjBundleElement zero_section_pushforward(const TruncatedSeries& a, const SplitBundle& E,
                                           const ProjBundleRing::Ptr& R, const FormalGroupLaw& F);
/// Same, reusing an already computed Thom class.
ProjBundleElement zero_section_pushforward(const TruncatedSeries& a, const ProjBundleElement& thom);

/// s^*: xi -> 0, i.e. the xi^0 coordinate.
TruncatedSeries zero_section_restriction(const ProjBundleElement& u);

/// c_1(p*L (x) O(1)) for a line bundle L, via an FGL twist of the root by
/// the solved hyperplane class. This is the divisor class of the zero
/// section, computed without the Thom class.
ProjBundleElement zero_section_divisor_class(const SplitBundle& L, const ProjBundleRing::Ptr& R,
                                             const FormalGroupLaw& F);

// Fixed-point restriction of the flag variety: the pure tensor a (x) b goes
// to (a * w(b))_w for w running over the enumerated Weyl group.
struct FlagImage {
  std::vector<IntMatrix> elements;
  std::vector<TruncatedSeries> components;
};

FlagImage flag_restriction(const TruncatedSeries& a, const TruncatedSeries& b, const WeylGroupSpec& W,
                           const FormalGroupLaw& F);
/// Sum of pure tensors.
FlagImage flag_restriction(std::span<const std::pair<TruncatedSeries, TruncatedSeries>> tensors,
                           const WeylGroupSpec& W, const FormalGroupLaw& F);

// Congruence between the components at w and (i j) w, which must agree
// modulo t_i -_F t_j.
struct CongruenceVerdict {
  std::size_t from = 0;  // index into FlagImage::elements
  std::size_t to = 0;
  int i = 0;  // transposed coordinates, 0-based
  int j = 0;
  bool holds = false;
};

/// One verdict for every pair of elements related by a coordinate
/// transposition. Divisibility by t_i -_F t_j is tested as vanishing under
/// t_i -> t_j, which is equivalent because the quotient by t_i - t_j is a unit.
std::vector<CongruenceVerdict> gkm_congruences(const FlagImage& image);

}  // namespace cobcalc
