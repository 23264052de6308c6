#include "cobcalc/bundle.hpp"

#include <map>

#include "cobcalc/error.hpp"

namespace cobcalc {

// ---------------------------------------------------------------------------
// Split bundles and Chern classes

SplitBundle SplitBundle::make(std::vector<TruncatedSeries> roots) {
  if (roots.empty()) throw InvalidInput("split bundle: need at least one Chern root");
  for (const auto& r : roots) {
    if (!(r.context() == roots.front().context())) throw InvalidInput("split bundle: roots in different contexts");
    if (r.has_constant_term()) throw InvalidInput("split bundle: Chern roots must have zero constant term");
  }
  return SplitBundle{std::move(roots)};
}

SplitBundle SplitBundle::trivial(const RingContext& ctx, int rank) {
  if (rank < 1) throw InvalidInput("split bundle: rank must be positive");
  return SplitBundle{std::vector<TruncatedSeries>(rank, TruncatedSeries::zero(ctx))};
}

SplitBundle SplitBundle::direct_sum(const SplitBundle& other) const {
  std::vector<TruncatedSeries> all = roots;
  all.insert(all.end(), other.roots.begin(), other.roots.end());
  return make(std::move(all));
}

std::vector<TruncatedSeries> chern_classes(const SplitBundle& E) {
  return elementary_symmetric<TruncatedSeries>(E.roots);
}

std::vector<TruncatedSeries> multiply_chern_polynomials(const std::vector<TruncatedSeries>& c,
                                                        const std::vector<TruncatedSeries>& c_prime) {
  if (c.empty()) return c_prime;
  if (c_prime.empty()) return c;
  const RingContext& ctx = c.front().context();
  auto coeff = [&](const std::vector<TruncatedSeries>& v, std::size_t k) {
    return k == 0 ? TruncatedSeries::one(ctx) : v[k - 1];
  };
  std::vector<TruncatedSeries> out;
  for (std::size_t k = 1; k <= c.size() + c_prime.size(); ++k) {
    TruncatedSeries acc = TruncatedSeries::zero(ctx);
    for (std::size_t i = 0; i <= k; ++i) {
      if (i > c.size() || k - i > c_prime.size()) continue;
      acc += coeff(c, i) * coeff(c_prime, k - i);
    }
    out.push_back(std::move(acc));
  }
  return out;
}

SplitBundle twist_by_line(const SplitBundle& E, const TruncatedSeries& y, const FormalGroupLaw& F) {
  if (y.has_constant_term()) throw InvalidInput("twist_by_line: line class must have zero constant term");
  return SplitBundle::make(twist_roots<TruncatedSeries>(E.roots, y, F));
}

// ---------------------------------------------------------------------------
// Projective bundle rings

ProjBundleRing::ProjBundleRing(const RingContext& base, std::vector<TruncatedSeries> chern)
    : base_(base), chern_(std::move(chern)) {}

ProjBundleRing::Ptr ProjBundleRing::make(const RingContext& base, std::vector<TruncatedSeries> chern) {
  if (chern.empty()) throw InvalidInput("pb_ring: need at least one Chern class (rank >= 1)");
  for (std::size_t i = 0; i < chern.size(); ++i) {
    if (!(chern[i].context() == base)) throw InvalidInput("pb_ring: Chern class lives in a different context");
    if (!chern[i].is_zero() && chern[i].t_order() < static_cast<int>(i + 1))
      throw InvalidInput("pb_ring: c_" + std::to_string(i + 1) + " must have t-order at least " +
                         std::to_string(i + 1));
  }
  auto ring = std::shared_ptr<ProjBundleRing>(new ProjBundleRing(base, std::move(chern)));
  const int n = ring->rank();
  // Reduced xi^n, then multiply by xi and reduce one step each time.
  std::vector<TruncatedSeries> cur(n, TruncatedSeries::zero(base));
  for (int i = 1; i <= n; ++i) cur[n - i] = (i % 2 == 1) ? ring->chern_[i - 1] : -ring->chern_[i - 1];
  ring->truncate(cur);
  for (int k = n; k <= 2 * n - 2; ++k) {
    ring->power_table_.push_back(cur);
    std::vector<TruncatedSeries> shifted(n + 1, TruncatedSeries::zero(base));
    for (int j = 0; j < n; ++j) shifted[j + 1] = cur[j];
    cur = ring->reduce(std::move(shifted));
  }
  return ring;
}

ProjBundleRing::Ptr ProjBundleRing::trivial(const RingContext& base, int rank) {
  if (rank < 1) throw InvalidInput("pb_ring: rank must be positive");
  return make(base, std::vector<TruncatedSeries>(rank, TruncatedSeries::zero(base)));
}

ProjBundleRing::Ptr ProjBundleRing::projective_completion(const SplitBundle& E) {
  return make(E.context(), chern_classes(SplitBundle::trivial(E.context(), 1).direct_sum(E)));
}

void ProjBundleRing::truncate(std::vector<TruncatedSeries>& coords) const {
  for (std::size_t j = 0; j < coords.size(); ++j) {
    const int cap = base_.max_t - static_cast<int>(j);
    if (cap < 0)
      coords[j] = TruncatedSeries::zero(base_);
    else if (!coords[j].is_zero())
      coords[j] = coords[j].truncated_t(cap);
  }
}

std::vector<TruncatedSeries> ProjBundleRing::reduce(std::vector<TruncatedSeries> coeffs) const {
  const int n = rank();
  truncate(coeffs);
  for (int k = static_cast<int>(coeffs.size()) - 1; k >= n; --k) {
    if (coeffs[k].is_zero()) continue;
    // xi^k = xi^{k-n} (c_1 xi^{n-1} - c_2 xi^{n-2} + ... )
    for (int i = 1; i <= n; ++i) {
      if (chern_[i - 1].is_zero()) continue;
      TruncatedSeries term = chern_[i - 1] * coeffs[k];
      const int cap = base_.max_t - (k - i);
      if (cap < 0) continue;
      term = term.truncated_t(cap);
      if (i % 2 == 1)
        coeffs[k - i] += term;
      else
        coeffs[k - i] -= term;
    }
  }
  coeffs.resize(n, TruncatedSeries::zero(base_));
  truncate(coeffs);
  return coeffs;
}

std::vector<TruncatedSeries> ProjBundleRing::power_coordinates(int k) const {
  const int n = rank();
  if (k < 0) throw InvalidInput("power_coordinates: negative exponent");
  if (k < n) {
    std::vector<TruncatedSeries> e(n, TruncatedSeries::zero(base_));
    e[k] = TruncatedSeries::one(base_);
    truncate(e);
    return e;
  }
  if (k - n < static_cast<int>(power_table_.size())) return power_table_[k - n];
  int p = n;
  std::vector<TruncatedSeries> cur;
  if (power_table_.empty()) {
    std::vector<TruncatedSeries> top(n + 1, TruncatedSeries::zero(base_));
    top[n] = TruncatedSeries::one(base_);
    cur = reduce(std::move(top));
  } else {
    p = n + static_cast<int>(power_table_.size()) - 1;
    cur = power_table_.back();
  }
  for (; p < k; ++p) {
    std::vector<TruncatedSeries> shifted(n + 1, TruncatedSeries::zero(base_));
    for (int j = 0; j < n; ++j) shifted[j + 1] = cur[j];
    cur = reduce(std::move(shifted));
  }
  return cur;
}

std::vector<TruncatedSeries> ProjBundleRing::reduce_by_table(const std::vector<TruncatedSeries>& coeffs) const {
  const int n = rank();
  std::vector<TruncatedSeries> out(n, TruncatedSeries::zero(base_));
  for (int k = 0; k < static_cast<int>(coeffs.size()); ++k) {
    if (coeffs[k].is_zero()) continue;
    if (k < n) {
      out[k] += coeffs[k];
      continue;
    }
    const auto power = power_coordinates(k);
    for (int j = 0; j < n; ++j)
      if (!power[j].is_zero()) out[j] += coeffs[k] * power[j];
  }
  truncate(out);
  return out;
}

// ---------------------------------------------------------------------------
// Elements

ProjBundleElement::ProjBundleElement(ProjBundleRing::Ptr ring, std::vector<TruncatedSeries> coords)
    : ring_(std::move(ring)), coords_(std::move(coords)) {
  if (!ring_) throw InvalidInput("projective bundle element: null ring");
  if (static_cast<int>(coords_.size()) != ring_->rank())
    throw InvalidInput("projective bundle element: expected " + std::to_string(ring_->rank()) + " coordinates");
  for (const auto& c : coords_)
    if (!(c.context() == ring_->base()))
      throw InvalidInput("projective bundle element: coordinate lives in a different context");
  ring_->truncate(coords_);
}

ProjBundleElement ProjBundleElement::lift(const ProjBundleRing::Ptr& ring, const TruncatedSeries& a) {
  std::vector<TruncatedSeries> c(ring->rank(), TruncatedSeries::zero(ring->base()));
  c[0] = a;
  return ProjBundleElement(ring, std::move(c));
}

ProjBundleElement ProjBundleElement::xi(const ProjBundleRing::Ptr& ring) { return xi_power(ring, 1); }

ProjBundleElement ProjBundleElement::xi_power(const ProjBundleRing::Ptr& ring, int k) {
  return ProjBundleElement(ring, ring->power_coordinates(k));
}

namespace {
void require_same_ring(const ProjBundleElement& u, const ProjBundleElement& v) {
  if (u.ring() != v.ring()) throw InvalidInput("projective bundle elements belong to different rings");
}
}  // namespace

ProjBundleElement operator+(const ProjBundleElement& u, const ProjBundleElement& v) {
  require_same_ring(u, v);
  std::vector<TruncatedSeries> c = u.coords_;
  for (std::size_t j = 0; j < c.size(); ++j) c[j] += v.coords_[j];
  return ProjBundleElement(u.ring_, std::move(c));
}

ProjBundleElement operator-(const ProjBundleElement& u, const ProjBundleElement& v) {
  require_same_ring(u, v);
  std::vector<TruncatedSeries> c = u.coords_;
  for (std::size_t j = 0; j < c.size(); ++j) c[j] -= v.coords_[j];
  return ProjBundleElement(u.ring_, std::move(c));
}

ProjBundleElement operator*(const ProjBundleElement& u, const ProjBundleElement& v) {
  require_same_ring(u, v);
  const auto& ring = *u.ring_;
  const int n = ring.rank();
  const RingContext& base = ring.base();
  std::vector<TruncatedSeries> conv(2 * n - 1, TruncatedSeries::zero(base));
  for (int i = 0; i < n; ++i) {
    if (u.coords_[i].is_zero()) continue;
    for (int j = 0; j < n; ++j) {
      if (v.coords_[j].is_zero()) continue;
      const int cap = base.max_t - (i + j);
      if (cap < 0) continue;
      conv[i + j] += (u.coords_[i] * v.coords_[j]).truncated_t(cap);
    }
  }
  return ProjBundleElement(u.ring_, ring.reduce(std::move(conv)));
}

bool operator==(const ProjBundleElement& u, const ProjBundleElement& v) {
  return u.ring_ == v.ring_ && u.coords_ == v.coords_;
}

ProjBundleElement unit_like(const ProjBundleElement& u) {
  return ProjBundleElement::lift(u.ring(), TruncatedSeries::one(u.ring()->base()));
}

ProjBundleElement zero_like(const ProjBundleElement& u) {
  return ProjBundleElement::lift(u.ring(), TruncatedSeries::zero(u.ring()->base()));
}

ProjBundleElement scale(const ProjBundleElement& u, const TruncatedSeries& c) {
  std::vector<TruncatedSeries> coords = u.coords();
  for (auto& x : coords)
    if (!x.is_zero()) x *= c;
  return ProjBundleElement(u.ring(), std::move(coords));
}

ProjBundleRing::Ptr pb_ring(const RingContext& base, std::vector<TruncatedSeries> chern) {
  return ProjBundleRing::make(base, std::move(chern));
}

ProjBundleElement pb_mul(const ProjBundleElement& u, const ProjBundleElement& v) { return u * v; }

// ---------------------------------------------------------------------------
// Thom classes and the zero section

ProjBundleElement hyperplane_class(const ProjBundleRing::Ptr& ring, const FormalGroupLaw& F) {
  return fgl_inverse(F, ProjBundleElement::xi(ring));
}

ProjBundleElement hyperplane_class_by_solving(const ProjBundleRing::Ptr& ring, const FormalGroupLaw& F) {
  const ProjBundleElement xi = ProjBundleElement::xi(ring);
  ProjBundleElement eta = zero_like(xi) - xi;
  // Every round pushes the residual one step deeper into the xi-filtration.
  for (int round = 0; round <= ring->base().max_t + 1; ++round) {
    ProjBundleElement err = fgl_sum(F, xi, eta);
    if (err == zero_like(xi)) return eta;
    eta = eta - err;
  }
  throw InternalError("hyperplane_class_by_solving: iteration did not converge inside the caps");
}

namespace {
void require_completion(const SplitBundle& E, const ProjBundleRing::Ptr& R, const char* op) {
  if (!R || R->rank() != E.rank() + 1)
    throw InvalidInput(std::string(op) + ": ring must be P(1 + E), of rank rank(E) + 1");
  if (!(R->base() == E.context())) throw InvalidInput(std::string(op) + ": bundle and ring have different bases");
}
}  // namespace

ProjBundleElement thom_class(const SplitBundle& E, const ProjBundleRing::Ptr& R, const FormalGroupLaw& F) {
  require_completion(E, R, "thom_class");
  const ProjBundleElement eta = hyperplane_class(R, F);
  std::vector<ProjBundleElement> lifted;
  for (const auto& x : E.roots) lifted.push_back(ProjBundleElement::lift(R, x));
  const auto twisted = twist_roots<ProjBundleElement>(lifted, eta, F);
  return elementary_symmetric<ProjBundleElement>(twisted).back();
}

ProjBundleElement zero_section_pushforward(const TruncatedSeries& a, const SplitBundle& E,
                                           const ProjBundleRing::Ptr& R, const FormalGroupLaw& F) {
  return zero_section_pushforward(a, thom_class(E, R, F));
}

ProjBundleElement zero_section_pushforward(const TruncatedSeries& a, const ProjBundleElement& thom) {
  return ProjBundleElement::lift(thom.ring(), a) * thom;
}

TruncatedSeries zero_section_restriction(const ProjBundleElement& u) { return u.coords().front(); }

ProjBundleElement zero_section_divisor_class(const SplitBundle& L, const ProjBundleRing::Ptr& R,
                                             const FormalGroupLaw& F) {
  if (L.rank() != 1) throw InvalidInput("zero_section_divisor_class: expects a line bundle");
  require_completion(L, R, "zero_section_divisor_class");
  const ProjBundleElement y = hyperplane_class_by_solving(R, F);
  std::vector<ProjBundleElement> lifted{ProjBundleElement::lift(R, L.roots.front())};
  const auto twisted = twist_roots<ProjBundleElement>(lifted, y, F);
  return elementary_symmetric<ProjBundleElement>(twisted).front();
}

// ---------------------------------------------------------------------------
// Flag varieties

FlagImage flag_restriction(const TruncatedSeries& a, const TruncatedSeries& b, const WeylGroupSpec& W,
                           const FormalGroupLaw& F) {
  std::pair<TruncatedSeries, TruncatedSeries> pure{a, b};
  return flag_restriction(std::span(&pure, 1), W, F);
}

FlagImage flag_restriction(std::span<const std::pair<TruncatedSeries, TruncatedSeries>> tensors,
                           const WeylGroupSpec& W, const FormalGroupLaw& F) {
  if (tensors.empty()) throw InvalidInput("flag_restriction: need at least one tensor");
  const RingContext& ctx = tensors.front().first.context();
  if (ctx.n_vars != W.rank) throw InvalidInput("flag_restriction: ring rank does not match the Weyl group");
  FlagImage image;
  image.elements = W.enumerate();
  for (const IntMatrix& w : image.elements) {
    const auto images = weyl_images(w, ctx, F);
    TruncatedSeries acc = TruncatedSeries::zero(ctx);
    for (const auto& [a, b] : tensors) {
      require_same_context(a, b, "flag_restriction");
      require_same_context(a, acc, "flag_restriction");
      acc += a * compose(b, images);
    }
    image.components.push_back(std::move(acc));
  }
  return image;
}

std::vector<CongruenceVerdict> gkm_congruences(const FlagImage& image) {
  std::vector<CongruenceVerdict> out;
  if (image.components.empty()) return out;
  const RingContext& ctx = image.components.front().context();
  const int n = ctx.n_vars;
  std::map<IntMatrix, std::size_t> index;
  for (std::size_t k = 0; k < image.elements.size(); ++k) index.emplace(image.elements[k], k);

  for (std::size_t u = 0; u < image.elements.size(); ++u) {
    for (int i = 0; i < n; ++i) {
      for (int j = i + 1; j < n; ++j) {
        std::vector<int> perm(n);
        for (int k = 0; k < n; ++k) perm[k] = k;
        std::swap(perm[i], perm[j]);
        auto it = index.find(IntMatrix::permutation(perm) * image.elements[u]);
        if (it == index.end() || it->second <= u) continue;
        const TruncatedSeries diff = image.components[u] - image.components[it->second];
        const TruncatedSeries on_diagonal = substitute(diff, {{i, TruncatedSeries::variable(ctx, j)}});
        out.push_back({u, it->second, i, j, on_diagonal.is_zero()});
      }
    }
  }
  return out;
}

}  // namespace cobcalc
