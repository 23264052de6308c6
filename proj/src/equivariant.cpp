#include "cobcalc/equivariant.hpp"

#include <algorithm>
#include <cctype>
#include <deque>
#include <set>
#include <unordered_map>

#include "cobcalc/error.hpp"
#include "cobcalc/linalg.hpp"
#include "cobcalc/parallel.hpp"

namespace cobcalc {

CharacterVector operator+(const CharacterVector& a, const CharacterVector& b) {
  if (a.rank() != b.rank()) throw InvalidInput("character sum: rank mismatch");
  CharacterVector c = a;
  for (std::size_t i = 0; i < c.coords.size(); ++i) c.coords[i] += b.coords[i];
  return c;
}

// ---------------------------------------------------------------------------
// IntMatrix

IntMatrix IntMatrix::identity(int n) {
  IntMatrix m(n);
  for (int i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

IntMatrix IntMatrix::from_rows(const std::vector<std::vector<long>>& rows) {
  const int n = static_cast<int>(rows.size());
  IntMatrix m(n);
  for (int r = 0; r < n; ++r) {
    if (static_cast<int>(rows[r].size()) != n) throw InvalidInput("integer matrix must be square");
    for (int c = 0; c < n; ++c) m(r, c) = rows[r][c];
  }
  return m;
}

IntMatrix IntMatrix::permutation(const std::vector<int>& perm) {
  const int n = static_cast<int>(perm.size());
  IntMatrix m(n);
  for (int j = 0; j < n; ++j) m(perm[j], j) = 1;
  return m;
}

CharacterVector IntMatrix::column(int j) const {
  CharacterVector c{std::vector<long>(n_)};
  for (int i = 0; i < n_; ++i) c.coords[i] = (*this)(i, j);
  return c;
}

CharacterVector IntMatrix::apply(const CharacterVector& v) const {
  if (static_cast<int>(v.rank()) != n_) throw InvalidInput("matrix action: rank mismatch");
  CharacterVector out{std::vector<long>(n_, 0)};
  for (int i = 0; i < n_; ++i)
    for (int j = 0; j < n_; ++j) out.coords[i] += (*this)(i, j) * v.coords[j];
  return out;
}

long IntMatrix::determinant() const {
  QMatrix q(n_, n_);
  for (int i = 0; i < n_; ++i)
    for (int j = 0; j < n_; ++j) q(i, j) = (*this)(i, j);
  // Gaussian elimination keeping track of swaps and pivots.
  Rational det = 1;
  for (int c = 0; c < n_; ++c) {
    int p = c;
    while (p < n_ && q(p, c) == 0) ++p;
    if (p == n_) return 0;
    if (p != c) {
      for (int j = 0; j < n_; ++j) std::swap(q(p, j), q(c, j));
      det = -det;
    }
    det *= q(c, c);
    for (int i = c + 1; i < n_; ++i) {
      if (q(i, c) == 0) continue;
      Rational f = q(i, c) / q(c, c);
      for (int j = c; j < n_; ++j) q(i, j) -= f * q(c, j);
    }
  }
  return det.get_num().get_si();
}

bool IntMatrix::invertible_over_z() const {
  const long d = determinant();
  return d == 1 || d == -1;
}

std::vector<std::vector<long>> IntMatrix::rows() const {
  std::vector<std::vector<long>> out(n_, std::vector<long>(n_));
  for (int i = 0; i < n_; ++i)
    for (int j = 0; j < n_; ++j) out[i][j] = (*this)(i, j);
  return out;
}

IntMatrix operator*(const IntMatrix& a, const IntMatrix& b) {
  if (a.n_ != b.n_) throw InvalidInput("matrix product: size mismatch");
  IntMatrix m(a.n_);
  for (int i = 0; i < a.n_; ++i)
    for (int k = 0; k < a.n_; ++k)
      if (long aik = a(i, k))
        for (int j = 0; j < a.n_; ++j) m(i, j) += aik * b(k, j);
  return m;
}

// ---------------------------------------------------------------------------
// Weyl groups and presets

WeylGroupSpec WeylGroupSpec::make(int rank, std::vector<IntMatrix> generators) {
  if (rank < 1 || rank > RingContext::kMaxVars) throw InvalidInput("Weyl group: rank out of range");
  for (const auto& g : generators) {
    if (g.size() != rank) throw InvalidInput("Weyl group: generator has the wrong size");
    if (!g.invertible_over_z()) throw InvalidInput("Weyl group: generator is not invertible over Z");
  }
  return WeylGroupSpec{rank, std::move(generators)};
}

WeylGroupSpec WeylGroupSpec::symmetric(int n) {
  std::vector<IntMatrix> gens;
  for (int i = 0; i + 1 < n; ++i) {
    std::vector<int> perm(n);
    for (int j = 0; j < n; ++j) perm[j] = j;
    std::swap(perm[i], perm[i + 1]);
    gens.push_back(IntMatrix::permutation(perm));
  }
  return make(n, std::move(gens));
}

WeylGroupSpec WeylGroupSpec::signed_permutations(int n) {
  WeylGroupSpec w = symmetric(n);
  IntMatrix flip = IntMatrix::identity(n);
  flip(n - 1, n - 1) = -1;
  w.generators.push_back(flip);
  return w;
}

WeylGroupSpec WeylGroupSpec::sign() { return make(1, {IntMatrix::from_rows({{-1}})}); }

WeylGroupSpec WeylGroupSpec::trivial(int n) { return make(n, {}); }

std::vector<IntMatrix> WeylGroupSpec::enumerate(std::size_t cap) const {
  std::vector<IntMatrix> elements{IntMatrix::identity(rank)};
  std::set<IntMatrix> seen(elements.begin(), elements.end());
  for (std::size_t i = 0; i < elements.size(); ++i) {
    for (const IntMatrix& g : generators) {
      IntMatrix h = g * elements[i];
      if (seen.insert(h).second) {
        if (elements.size() >= cap)
          throw CapExceeded("Weyl group closure exceeded " + std::to_string(cap) + " elements");
        elements.push_back(std::move(h));
      }
    }
  }
  return elements;
}

GroupPreset GroupPreset::gl(int n) {
  std::size_t order = 1;
  for (int i = 2; i <= n; ++i) order *= static_cast<std::size_t>(i);
  return GroupPreset{"GL(" + std::to_string(n) + ")", n, WeylGroupSpec::symmetric(n), order};
}

GroupPreset GroupPreset::sl2() { return GroupPreset{"SL(2)", 1, WeylGroupSpec::sign(), 2}; }

GroupPreset GroupPreset::torus(int n) {
  return GroupPreset{"torus(" + std::to_string(n) + ")", n, WeylGroupSpec::trivial(n), 1};
}

GroupPreset GroupPreset::parse(std::string_view text) {
  std::string s;
  for (char ch : text)
    if (ch != '(' && ch != ')' && !std::isspace(static_cast<unsigned char>(ch)))
      s += static_cast<char>(std::toupper(static_cast<unsigned char>(ch)));
  auto number_after = [&](std::size_t prefix) -> int {
    if (s.size() <= prefix) throw InvalidInput("group preset '" + std::string(text) + "' is missing its rank");
    for (std::size_t i = prefix; i < s.size(); ++i)
      if (!std::isdigit(static_cast<unsigned char>(s[i])))
        throw InvalidInput("unknown group preset '" + std::string(text) + "'");
    return std::stoi(s.substr(prefix));
  };
  int n = 0;
  if (s.rfind("GL", 0) == 0) {
    n = number_after(2);
    if (n < 1 || n > RingContext::kMaxVars) throw InvalidInput("GL(n): n out of range");
    return gl(n);
  }
  if (s.rfind("SL", 0) == 0) {
    if (number_after(2) != 2) throw InvalidInput("only SL(2) is available as an SL preset");
    return sl2();
  }
  if (s.rfind("TORUS", 0) == 0)
    n = number_after(5);
  else if (s.rfind("T", 0) == 0)
    n = number_after(1);
  else
    throw InvalidInput("unknown group preset '" + std::string(text) + "' (expected GLn, SL2 or torusN)");
  if (n < 1 || n > RingContext::kMaxVars) throw InvalidInput("torus(n): n out of range");
  return torus(n);
}

// ---------------------------------------------------------------------------
// Character classes and the Weyl action

TruncatedSeries character_class(const FormalGroupLaw& F, const RingContext& ctx, const CharacterVector& c) {
  if (static_cast<int>(c.rank()) != ctx.n_vars) throw InvalidInput("character_class: rank mismatch");
  if (!F.acts_on(ctx)) throw InvalidInput("character_class: context does not match the formal group law");
  TruncatedSeries acc = TruncatedSeries::zero(ctx);
  for (int j = 0; j < ctx.n_vars; ++j) {
    if (c.coords[j] == 0) continue;
    acc = fgl_sum(F, acc, n_series(F, c.coords[j], TruncatedSeries::variable(ctx, j)));
  }
  return acc;
}

std::vector<TruncatedSeries> weyl_images(const IntMatrix& w, const RingContext& ctx, const FormalGroupLaw& F) {
  if (w.size() != ctx.n_vars) throw InvalidInput("weyl_apply: matrix size does not match the number of variables");
  if (!w.invertible_over_z()) throw InvalidInput("weyl_apply: matrix is not invertible over Z");
  std::vector<TruncatedSeries> images;
  images.reserve(ctx.n_vars);
  for (int j = 0; j < ctx.n_vars; ++j) images.push_back(character_class(F, ctx, w.column(j)));
  return images;
}

TruncatedSeries weyl_apply(const IntMatrix& w, const TruncatedSeries& s, const FormalGroupLaw& F) {
  return compose(s, weyl_images(w, s.context(), F));
}

// ---------------------------------------------------------------------------
// Invariants

InvariantSpace invariant_basis(const WeylGroupSpec& W, const FormalGroupLaw& F, int degree, int k_max) {
  const RingContext ctx = F.ring(W.rank);
  if (k_max < 0 || k_max > ctx.max_t)
    throw InvalidInput("invariant_basis: t-order window exceeds the t-order cap");
  W.enumerate();  // finiteness guard; throws CapExceeded

  InvariantSpace space;
  space.degree = degree;
  space.k_max = k_max;
  for (int k = 0; k <= k_max; ++k) {
    auto part = bidegree_basis(ctx, degree, k);
    space.ambient.insert(space.ambient.end(), part.begin(), part.end());
  }
  const std::size_t dim = space.ambient.size();
  if (dim == 0) return space;

  std::unordered_map<Monomial, std::size_t, MonomialHash> index;
  for (std::size_t i = 0; i < dim; ++i) index.emplace(space.ambient[i], i);

  QMatrix system(0, dim);
  for (const IntMatrix& g : W.generators) {
    const auto images = weyl_images(g, ctx, F);
    QMatrix block(dim, dim);
    for (std::size_t col = 0; col < dim; ++col) {
      const TruncatedSeries img = compose(TruncatedSeries::monomial(ctx, space.ambient[col]), images);
      for (const Term& t : img.terms()) {
        if (t.mono.t_degree() > k_max) break;
        auto it = index.find(t.mono);
        if (it == index.end()) throw InternalError("invariant_basis: Weyl action left the degree window");
        block(it->second, col) += t.coeff;
      }
      block(col, col) -= 1;
    }
    system.stack_below(block);
  }

  for (const auto& v : system.kernel()) {
    std::vector<Term> terms;
    for (std::size_t i = 0; i < dim; ++i)
      if (v[i] != 0) terms.push_back({space.ambient[i], v[i]});
    space.basis.push_back(TruncatedSeries::from_terms(ctx, std::move(terms)));
  }
  return space;
}

std::map<int, std::size_t> bg_dimensions(const GroupPreset& preset, const FormalGroupLaw& F, int d_lo, int d_hi,
                                         int k_max, unsigned threads) {
  if (d_hi < d_lo) throw InvalidInput("bg_dimensions: empty degree range");
  const std::size_t n = static_cast<std::size_t>(d_hi - d_lo + 1);
  auto dims = parallel_map<std::size_t>(n, threads, [&](std::size_t i) {
    return invariant_basis(preset.weyl, F, d_lo + static_cast<int>(i), k_max).dimension();
  });
  std::map<int, std::size_t> out;
  for (std::size_t i = 0; i < n; ++i) out[d_lo + static_cast<int>(i)] = dims[i];
  return out;
}

std::size_t elementary_monomial_count(int n, int d) {
  if (d < 0) return 0;
  // Partitions of d into parts of size at most n.
  std::vector<std::size_t> ways(d + 1, 0);
  ways[0] = 1;
  for (int part = 1; part <= n; ++part)
    for (int s = part; s <= d; ++s) ways[s] += ways[s - part];
  return ways[d];
}

}  // namespace cobcalc
