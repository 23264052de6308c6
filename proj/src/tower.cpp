#include "cobcalc/tower.hpp"

#include <map>
#include <utility>

#include "cobcalc/bundle.hpp"
#include "cobcalc/error.hpp"

namespace cobcalc {

void TowerSlice::validate() const {
  if (dims.size() < 3 || maps.size() + 1 != dims.size())
    throw InvalidInput("tower: need levels V_0..V_k with k >= 2 and one map per consecutive pair");
  for (std::size_t i = 0; i < maps.size(); ++i)
    if (maps[i].rows() != dims[i] || maps[i].cols() != dims[i + 1])
      throw InvalidInput("tower: map " + std::to_string(i) + " has shape " + std::to_string(maps[i].rows()) + "x" +
                         std::to_string(maps[i].cols()) + ", expected " + std::to_string(dims[i]) + "x" +
                         std::to_string(dims[i + 1]));
}

QMatrix TowerSlice::composite(std::size_t j, std::size_t i) const {
  if (j < i || j >= dims.size()) throw InvalidInput("tower: composite needs i <= j inside the window");
  QMatrix m = QMatrix::identity(dims[i]);
  for (std::size_t l = i; l < j; ++l) m = m * maps[l];
  return m;
}

const TowerSlice& Tower::at(int d) const {
  auto it = degrees.find(d);
  if (it == degrees.end()) throw InvalidInput("tower: no data in degree " + std::to_string(d));
  return it->second;
}

std::optional<std::size_t> stabilization_index(const Tower& T, int d) {
  const TowerSlice& s = T.at(d);
  s.validate();
  const std::size_t k = s.levels() - 1;
  for (std::size_t lag = 0; lag < k; ++lag) {
    bool stable = true;
    for (std::size_t i = 0; stable && i + lag + 1 <= k; ++i) {
      const QMatrix reference = s.composite(i + lag, i);
      QMatrix deeper = reference;
      for (std::size_t j = i + lag + 1; stable && j <= k; ++j) {
        deeper = deeper * s.maps[j - 1];
        stable = same_column_space(reference, deeper);
      }
    }
    if (stable) return lag;
  }
  return std::nullopt;
}

std::size_t inverse_limit_dim(const Tower& T, int d) {
  const auto lag = stabilization_index(T, d);
  if (!lag)
    throw NotStabilized("tower: images in degree " + std::to_string(d) +
                        " are still shrinking at the end of the window; refusing to extrapolate");
  const TowerSlice& s = T.at(d);
  // Deepest level whose stable image was checked against a deeper one.
  const std::size_t level = s.levels() - 2 - *lag;
  return s.composite(level + *lag, level).rank();
}

Tower projective_space_tower(const FormalGroupLaw& F, int d_max, int i_max, int d_min) {
  if (i_max < 2) throw InvalidInput("projective_space_tower: need at least levels 0..2");
  if (d_max < d_min) throw InvalidInput("projective_space_tower: empty degree range");
  const RingContext ctx = F.ring(1);

  // Basis of the degree-d part of L[xi]/(xi^{i+1}): xi^j m^alpha with
  // j - weight(alpha) = d. The variable t1 stands in for xi.
  auto level_basis = [&](int d, int i) {
    std::vector<std::pair<int, Monomial>> basis;
    for (int j = 0; j <= std::min(i, ctx.max_t); ++j)
      for (const Monomial& m : lazard_monomials_of_weight(ctx, j - d)) basis.emplace_back(j, m);
    return basis;
  };

  std::vector<ProjBundleRing::Ptr> rings;
  for (int i = 0; i <= i_max; ++i) rings.push_back(ProjBundleRing::trivial(ctx, i + 1));

  Tower T;
  for (int d = d_min; d <= d_max; ++d) {
    TowerSlice slice;
    std::vector<std::vector<std::pair<int, Monomial>>> bases;
    for (int i = 0; i <= i_max; ++i) {
      bases.push_back(level_basis(d, i));
      slice.dims.push_back(bases.back().size());
    }
    for (int i = 0; i < i_max; ++i) {
      std::map<std::pair<int, Monomial>, std::size_t> index;
      for (std::size_t r = 0; r < bases[i].size(); ++r) index.emplace(bases[i][r], r);
      QMatrix map(bases[i].size(), bases[i + 1].size());
      for (std::size_t c = 0; c < bases[i + 1].size(); ++c) {
        const auto& [j, m] = bases[i + 1][c];
        // Restrict xi^j m from P^{i+1} to P^i.
        const ProjBundleElement image =
            scale(ProjBundleElement::xi_power(rings[i], j), TruncatedSeries::monomial(ctx, m));
        for (std::size_t jj = 0; jj < image.coords().size(); ++jj)
          for (const Term& t : image.coords()[jj].terms()) {
            auto it = index.find({static_cast<int>(jj), t.mono.coefficient_part()});
            if (it == index.end() || t.mono.t_degree() != 0)
              throw InternalError("projective_space_tower: restriction left the degree slice");
            map(it->second, c) += t.coeff;
          }
      }
      slice.maps.push_back(std::move(map));
    }
    T.degrees.emplace(d, std::move(slice));
  }
  return T;
}

TowerSlice change_basis(const TowerSlice& slice, const std::vector<QMatrix>& bases) {
  slice.validate();
  if (bases.size() != slice.dims.size()) throw InvalidInput("change_basis: need one matrix per level");
  TowerSlice out = slice;
  for (std::size_t i = 0; i < slice.maps.size(); ++i)
    out.maps[i] = bases[i] * slice.maps[i] * bases[i + 1].inverse();
  return out;
}

}  // namespace cobcalc
