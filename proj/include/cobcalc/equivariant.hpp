#pragma once

#include <cstddef>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "cobcalc/fgl.hpp"
#include "cobcalc/series.hpp"

namespace cobcalc {

// Element of the character lattice X(T) = Z^n in the basis chi_1..chi_n.
struct CharacterVector {
  std::vector<long> coords;

  std::size_t rank() const { return coords.size(); }
  friend CharacterVector operator+(const CharacterVector& a, const CharacterVector& b);
  friend bool operator==(const CharacterVector&, const CharacterVector&) = default;
};

// Square integer matrix acting on X(T) by w * c.
class IntMatrix {
 public:
  IntMatrix() = default;
  explicit IntMatrix(int n) : n_(n), data_(static_cast<std::size_t>(n) * n, 0) {}

  static IntMatrix identity(int n);
  /// Throws InvalidInput unless rows form a square matrix.
  static IntMatrix from_rows(const std::vector<std::vector<long>>& rows);
  /// Permutation matrix sending e_j to e_{perm[j]}.
  static IntMatrix permutation(const std::vector<int>& perm);

  int size() const { return n_; }
  long& operator()(int r, int c) { return data_[static_cast<std::size_t>(r) * n_ + c]; }
  long operator()(int r, int c) const { return data_[static_cast<std::size_t>(r) * n_ + c]; }

  CharacterVector column(int j) const;
  CharacterVector apply(const CharacterVector& c) const;
  long determinant() const;
  bool invertible_over_z() const;
  std::vector<std::vector<long>> rows() const;

  friend IntMatrix operator*(const IntMatrix& a, const IntMatrix& b);
  friend bool operator==(const IntMatrix&, const IntMatrix&) = default;
  friend auto operator<=>(const IntMatrix&, const IntMatrix&) = default;

 private:
  int n_ = 0;
  std::vector<long> data_;
};

// Finite group acting on X(T), given by generators.
struct WeylGroupSpec {
  static constexpr std::size_t kDefaultCap = 50000;

  int rank = 0;
  std::vector<IntMatrix> generators;

  /// Validates shapes and invertibility over Z.
  static WeylGroupSpec make(int rank, std::vector<IntMatrix> generators);
  /// S_n by adjacent transpositions (type A Weyl group of GL(n)).
  static WeylGroupSpec symmetric(int n);
  /// Signed permutations of n coordinates (types B/C).
  static WeylGroupSpec signed_permutations(int n);
  /// {+1, -1} acting on a rank-one lattice (Weyl group of SL(2)).
  static WeylGroupSpec sign();
  /// Trivial group on a rank-n lattice.
  static WeylGroupSpec trivial(int n);

  /// All elements, identity first, then breadth-first in generator order.
  /// Throws CapExceeded if the closure passes cap elements.
  std::vector<IntMatrix> enumerate(std::size_t cap = kDefaultCap) const;
};

// Named split reductive groups with their Weyl data.
struct GroupPreset {
  std::string name;  // "GL(3)", "SL(2)", "torus(2)"
  int rank = 0;
  WeylGroupSpec weyl;
  std::size_t order = 1;  // |W|

  static GroupPreset gl(int n);
  static GroupPreset sl2();
  static GroupPreset torus(int n);
  /// Accepts "GL2", "GL(2)", "SL2", "SL(2)", "T3", "torus3", "torus(3)".
  static GroupPreset parse(std::string_view text);
};

/// First Chern class of L_c: the formal sum over j of [c_j](t_j).
TruncatedSeries character_class(const FormalGroupLaw& F, const RingContext& ctx, const CharacterVector& c);

/// Images t_j -> character_class(w e_j) defining the action of w.
std::vector<TruncatedSeries> weyl_images(const IntMatrix& w, const RingContext& ctx, const FormalGroupLaw& F);

/// Ring endomorphism of S(T) given by t_j -> [w e_j]. Composition matches
/// matrix multiplication: apply(w1, apply(w2, s)) = apply(w1 w2, s).
TruncatedSeries weyl_apply(const IntMatrix& w, const TruncatedSeries& s, const FormalGroupLaw& F);

struct InvariantSpace {
  int degree = 0;
  int k_max = 0;
  std::vector<Monomial> ambient;         // spanning monomials of the window
  std::vector<TruncatedSeries> basis;    // echelon basis of the fixed subspace

  std::size_t dimension() const { return basis.size(); }
};

/// W-fixed subspace of the degree-d part of S(T) / I^{k_max + 1}, computed
/// as the joint kernel of (g - id) over the generators.
InvariantSpace invariant_basis(const WeylGroupSpec& W, const FormalGroupLaw& F, int degree, int k_max);

/// Degree -> invariant dimension for each degree in [d_lo, d_hi]. Degrees
/// are evaluated on up to `threads` workers; the result does not depend on it.
std::map<int, std::size_t> bg_dimensions(const GroupPreset& preset, const FormalGroupLaw& F, int d_lo,
                                         int d_hi, int k_max, unsigned threads = 1);

/// Number of monomials c_1^a1 ... c_n^an with a1 + 2 a2 + ... + n an = d.
std::size_t elementary_monomial_count(int n, int d);

}  // namespace cobcalc
