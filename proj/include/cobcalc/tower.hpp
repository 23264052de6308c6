#pragma once

#include <map>
#include <optional>
#include <vector>

#include "cobcalc/fgl.hpp"
#include "cobcalc/linalg.hpp"

namespace cobcalc {

// One degree of an inverse system V_0 <- V_1 <- ... <- V_k of finite
// dimensional Q-vector spaces; maps[i] : V_{i+1} -> V_i has shape
// dims[i] x dims[i+1].
struct TowerSlice {
  std::vector<std::size_t> dims;
  std::vector<QMatrix> maps;

  /// Throws InvalidInput if the shapes do not chain or the window has
  /// fewer than two maps.
  void validate() const;
  std::size_t levels() const { return dims.size(); }
  /// Composite V_j -> V_i for j >= i.
  QMatrix composite(std::size_t j, std::size_t i) const;
};

struct Tower {
  std::map<int, TowerSlice> degrees;

  const TowerSlice& at(int d) const;
};

/// Smallest lag r such that, for every level i with i + r inside the
/// window, the image of V_{i+r} in V_i equals the image of every deeper
/// V_j (j > i + r). std::nullopt if images are still shrinking at the end
/// of the window. Throws InvalidInput on malformed shapes.
std::optional<std::size_t> stabilization_index(const Tower& T, int d);

/// Dimension of the inverse limit as seen through the window: the stable
/// image in the deepest level whose stable image is determined. lim^1
/// vanishes for towers of finite-dimensional spaces. Throws NotStabilized
/// when stabilization_index finds nothing.
std::size_t inverse_limit_dim(const Tower& T, int d);

/// Levels i = 0..i_max are the degree-d parts of L[xi] / (xi^{i+1}), the
/// cobordism of P^i over the law's coefficient ring, with the restriction
/// maps along P^i -> P^{i+1}. Degrees d_min..d_max.
Tower projective_space_tower(const FormalGroupLaw& F, int d_max, int i_max, int d_min = 0);

/// Applies a levelwise change of basis V_i -> P_i V_i to every map.
TowerSlice change_basis(const TowerSlice& slice, const std::vector<QMatrix>& bases);

}  // namespace cobcalc
