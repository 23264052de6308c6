#include "cobcalc/series.hpp"

#include <algorithm>
#include <string>
#include <unordered_map>

#include "cobcalc/error.hpp"
#include "cobcalc/evaluate.hpp"

namespace cobcalc {

std::string to_string(CoeffKind kind) {
  switch (kind) {
    case CoeffKind::rational: return "rational";
    case CoeffKind::multiplicative_beta: return "multiplicative-beta";
    case CoeffKind::universal_rational: return "universal-rational";
  }
  return "?";
}

// ---------------------------------------------------------------------------
// RingContext

RingContext RingContext::make(int n_vars, CoeffKind kind, int max_t, int max_w) {
  if (n_vars < 1 || n_vars > kMaxVars)
    throw InvalidInput("ring context: n_vars must be in [1, " + std::to_string(kMaxVars) + "]");
  if (max_t < 0 || max_t > 255) throw InvalidInput("ring context: t-order cap must be in [0, 255]");
  if (max_w < 0 || max_w > 255) throw InvalidInput("ring context: Lazard weight cap must be in [0, 255]");
  RingContext ctx{n_vars, kind, max_t, max_w};
  if (ctx.generator_count() > kMaxGenerators)
    throw InvalidInput("ring context: universal coefficients support a weight cap of at most " +
                       std::to_string(kMaxGenerators));
  return ctx;
}

int RingContext::generator_count() const {
  switch (kind) {
    case CoeffKind::rational: return 0;
    case CoeffKind::multiplicative_beta: return 1;
    case CoeffKind::universal_rational: return max_w;
  }
  return 0;
}

int RingContext::generator_weight(int g) const {
  return kind == CoeffKind::universal_rational ? g : 1;
}

std::string RingContext::generator_name(int g) const {
  return kind == CoeffKind::multiplicative_beta ? std::string("beta") : "m" + std::to_string(g);
}

RingContext RingContext::with_vars(int n) const { return make(n, kind, max_t, max_w); }
RingContext RingContext::with_caps(int t, int w) const { return make(n_vars, kind, t, w); }

bool RingContext::same_coefficients(const RingContext& other) const {
  return kind == other.kind && max_t == other.max_t && max_w == other.max_w;
}

// ---------------------------------------------------------------------------
// Monomial

Monomial Monomial::make(const RingContext& ctx, std::span<const int> t_exps,
                        std::span<const std::pair<int, int>> lazard) {
  if (static_cast<int>(t_exps.size()) != ctx.n_vars)
    throw InvalidInput("monomial: expected " + std::to_string(ctx.n_vars) + " t-exponents");
  Monomial m;
  int tdeg = 0;
  for (std::size_t j = 0; j < t_exps.size(); ++j) {
    if (t_exps[j] < 0 || t_exps[j] > 255) throw InvalidInput("monomial: t-exponent out of range");
    m.slots_[j] = static_cast<std::uint8_t>(t_exps[j]);
    tdeg += t_exps[j];
  }
  int weight = 0;
  for (auto [g, e] : lazard) {
    if (g < 1 || g > ctx.generator_count())
      throw InvalidInput("monomial: unknown coefficient generator index " + std::to_string(g));
    if (e < 0 || e > 255) throw InvalidInput("monomial: Lazard exponent out of range");
    auto& slot = m.slots_[RingContext::kMaxVars + g - 1];
    if (slot != 0) throw InvalidInput("monomial: repeated coefficient generator");
    slot = static_cast<std::uint8_t>(e);
    weight += e * ctx.generator_weight(g);
  }
  if (tdeg > 0xffff || weight > 0xffff) throw InvalidInput("monomial: degree overflow");
  m.t_degree_ = static_cast<std::uint16_t>(tdeg);
  m.weight_ = static_cast<std::uint16_t>(weight);
  return m;
}

Monomial Monomial::variable(int j) {
  Monomial m;
  m.slots_[j] = 1;
  m.t_degree_ = 1;
  return m;
}

Monomial Monomial::generator(const RingContext& ctx, int g) {
  if (g < 1 || g > ctx.generator_count())
    throw InvalidInput("monomial: unknown coefficient generator index " + std::to_string(g));
  Monomial m;
  m.slots_[RingContext::kMaxVars + g - 1] = 1;
  m.weight_ = static_cast<std::uint16_t>(ctx.generator_weight(g));
  return m;
}

std::vector<int> Monomial::t_exps(const RingContext& ctx) const {
  return std::vector<int>(slots_.begin(), slots_.begin() + ctx.n_vars);
}

std::vector<std::pair<int, int>> Monomial::lazard_exps() const {
  std::vector<std::pair<int, int>> out;
  for (int g = 1; g <= RingContext::kMaxGenerators; ++g)
    if (int e = lazard_exp(g); e != 0) out.emplace_back(g, e);
  return out;
}

Monomial Monomial::coefficient_part() const {
  Monomial m = *this;
  std::fill(m.slots_.begin(), m.slots_.begin() + RingContext::kMaxVars, std::uint8_t{0});
  m.t_degree_ = 0;
  return m;
}

Monomial Monomial::t_part() const {
  Monomial m = *this;
  std::fill(m.slots_.begin() + RingContext::kMaxVars, m.slots_.end(), std::uint8_t{0});
  m.weight_ = 0;
  return m;
}

Monomial operator*(const Monomial& a, const Monomial& b) {
  Monomial m;
  for (int i = 0; i < Monomial::kSlots; ++i)
    m.slots_[i] = static_cast<std::uint8_t>(a.slots_[i] + b.slots_[i]);
  m.t_degree_ = static_cast<std::uint16_t>(a.t_degree_ + b.t_degree_);
  m.weight_ = static_cast<std::uint16_t>(a.weight_ + b.weight_);
  return m;
}

std::strong_ordering operator<=>(const Monomial& a, const Monomial& b) {
  if (a.t_degree_ != b.t_degree_) return a.t_degree_ <=> b.t_degree_;
  for (int j = 0; j < RingContext::kMaxVars; ++j)
    if (a.slots_[j] != b.slots_[j]) return b.slots_[j] <=> a.slots_[j];
  if (a.weight_ != b.weight_) return a.weight_ <=> b.weight_;
  for (int j = RingContext::kMaxVars; j < Monomial::kSlots; ++j)
    if (a.slots_[j] != b.slots_[j]) return b.slots_[j] <=> a.slots_[j];
  return std::strong_ordering::equal;
}

std::size_t Monomial::hash() const {
  std::uint64_t h = 1469598103934665603ull;
  for (auto s : slots_) {
    h ^= s;
    h *= 1099511628211ull;
  }
  return static_cast<std::size_t>(h);
}

// ---------------------------------------------------------------------------
// TruncatedSeries

TruncatedSeries TruncatedSeries::one(const RingContext& ctx) { return constant(ctx, 1); }

TruncatedSeries TruncatedSeries::constant(const RingContext& ctx, const Rational& c) {
  return monomial(ctx, Monomial{}, c);
}

TruncatedSeries TruncatedSeries::variable(const RingContext& ctx, int j) {
  if (j < 0 || j >= ctx.n_vars) throw InvalidInput("variable index out of range");
  return monomial(ctx, Monomial::variable(j));
}

TruncatedSeries TruncatedSeries::generator(const RingContext& ctx, int g) {
  return monomial(ctx, Monomial::generator(ctx, g));
}

TruncatedSeries TruncatedSeries::monomial(const RingContext& ctx, const Monomial& m, const Rational& c) {
  TruncatedSeries s(ctx);
  if (c != 0 && m.fits(ctx)) s.terms_.push_back({m, c});
  return s;
}

TruncatedSeries TruncatedSeries::from_terms(const RingContext& ctx, std::vector<Term> terms) {
  std::erase_if(terms, [&](const Term& t) { return !t.mono.fits(ctx) || t.coeff == 0; });
  std::sort(terms.begin(), terms.end(), [](const Term& a, const Term& b) { return a.mono < b.mono; });
  TruncatedSeries s(ctx);
  for (auto& t : terms) {
    if (!s.terms_.empty() && s.terms_.back().mono == t.mono)
      s.terms_.back().coeff += t.coeff;
    else
      s.terms_.push_back(std::move(t));
  }
  std::erase_if(s.terms_, [](const Term& t) { return t.coeff == 0; });
  return s;
}

Rational TruncatedSeries::coefficient(const Monomial& m) const {
  auto it = std::lower_bound(terms_.begin(), terms_.end(), m,
                             [](const Term& t, const Monomial& key) { return t.mono < key; });
  if (it != terms_.end() && it->mono == m) return it->coeff;
  return 0;
}

bool TruncatedSeries::has_constant_term() const {
  return !terms_.empty() && terms_.front().mono.t_degree() == 0;
}

int TruncatedSeries::t_order() const {
  return terms_.empty() ? ctx_.max_t + 1 : terms_.front().mono.t_degree();
}

TruncatedSeries TruncatedSeries::truncated_t(int cap) const {
  TruncatedSeries s(ctx_);
  for (const auto& t : terms_) {
    if (t.mono.t_degree() > cap) break;
    s.terms_.push_back(t);
  }
  return s;
}

TruncatedSeries TruncatedSeries::in_context(const RingContext& target) const {
  if (!target.same_coefficients(ctx_) || target.n_vars < ctx_.n_vars)
    throw InvalidInput("in_context: target context cannot hold this series");
  TruncatedSeries s = *this;
  s.ctx_ = target;
  return s;
}

TruncatedSeries TruncatedSeries::pow(unsigned n) const {
  TruncatedSeries result = one(ctx_);
  TruncatedSeries base = *this;
  while (n) {
    if (n & 1u) result *= base;
    n >>= 1u;
    if (n) base *= base;
  }
  return result;
}

void require_same_context(const TruncatedSeries& a, const TruncatedSeries& b, const char* op) {
  if (!(a.context() == b.context()))
    throw InvalidInput(std::string(op) + ": operands live in different ring contexts");
}

TruncatedSeries& TruncatedSeries::operator+=(const TruncatedSeries& o) {
  require_same_context(*this, o, "series_add");
  if (o.terms_.empty()) return *this;
  std::vector<Term> merged;
  merged.reserve(terms_.size() + o.terms_.size());
  auto i = terms_.begin();
  auto j = o.terms_.begin();
  while (i != terms_.end() && j != o.terms_.end()) {
    auto c = i->mono <=> j->mono;
    if (c < 0) {
      merged.push_back(std::move(*i++));
    } else if (c > 0) {
      merged.push_back(*j++);
    } else {
      Rational sum = i->coeff + j->coeff;
      if (sum != 0) merged.push_back({i->mono, std::move(sum)});
      ++i;
      ++j;
    }
  }
  for (; i != terms_.end(); ++i) merged.push_back(std::move(*i));
  for (; j != o.terms_.end(); ++j) merged.push_back(*j);
  terms_ = std::move(merged);
  return *this;
}

TruncatedSeries& TruncatedSeries::operator-=(const TruncatedSeries& o) { return *this += -o; }

TruncatedSeries& TruncatedSeries::operator*=(const TruncatedSeries& o) {
  *this = *this * o;
  return *this;
}

TruncatedSeries& TruncatedSeries::operator*=(const Rational& c) {
  if (c == 0) {
    terms_.clear();
    return *this;
  }
  for (auto& t : terms_) t.coeff *= c;
  return *this;
}

TruncatedSeries operator-(TruncatedSeries a) {
  for (auto& t : a.terms_) t.coeff = -t.coeff;
  return a;
}

TruncatedSeries operator*(const TruncatedSeries& a, const TruncatedSeries& b) {
  require_same_context(a, b, "series_mul");
  const RingContext& ctx = a.ctx_;
  TruncatedSeries out(ctx);
  if (a.terms_.empty() || b.terms_.empty()) return out;

  // Fast path: multiplication by a pure scalar.
  if (b.terms_.size() == 1 && b.terms_[0].mono == Monomial{}) return a * b.terms_[0].coeff;
  if (a.terms_.size() == 1 && a.terms_[0].mono == Monomial{}) return b * a.terms_[0].coeff;

  std::unordered_map<Monomial, Rational, MonomialHash> acc;
  acc.reserve(std::min<std::size_t>(a.terms_.size() * b.terms_.size(), 1u << 16));
  Rational prod;
  for (const Term& ta : a.terms_) {
    const int room_t = ctx.max_t - ta.mono.t_degree();
    if (room_t < 0) break;
    const int room_w = ctx.max_w - ta.mono.weight();
    for (const Term& tb : b.terms_) {
      // b is sorted by t-degree first, so nothing later fits either.
      if (tb.mono.t_degree() > room_t) break;
      if (tb.mono.weight() > room_w) continue;
      mpq_mul(prod.get_mpq_t(), ta.coeff.get_mpq_t(), tb.coeff.get_mpq_t());
      auto [it, inserted] = acc.try_emplace(ta.mono * tb.mono);
      if (inserted)
        it->second = prod;
      else
        mpq_add(it->second.get_mpq_t(), it->second.get_mpq_t(), prod.get_mpq_t());
    }
  }
  out.terms_.reserve(acc.size());
  for (auto& [m, c] : acc)
    if (c != 0) out.terms_.push_back({m, std::move(c)});
  std::sort(out.terms_.begin(), out.terms_.end(),
            [](const Term& x, const Term& y) { return x.mono < y.mono; });
  return out;
}

TruncatedSeries series_add(const TruncatedSeries& a, const TruncatedSeries& b) { return a + b; }
TruncatedSeries series_mul(const TruncatedSeries& a, const TruncatedSeries& b) { return a * b; }

// ---------------------------------------------------------------------------
// Substitution

TruncatedSeries compose(const TruncatedSeries& s, std::span<const TruncatedSeries> images) {
  if (static_cast<int>(images.size()) != s.context().n_vars)
    throw InvalidInput("compose: need exactly one image per variable");
  for (const auto& img : images) {
    if (!(img.context() == images[0].context()))
      throw InvalidInput("compose: images live in different ring contexts");
    if (img.has_constant_term())
      throw InvalidInput("compose: substituted series must have zero constant term");
  }
  return evaluate<TruncatedSeries>(s, images);
}

TruncatedSeries substitute(const TruncatedSeries& s, const std::map<int, TruncatedSeries>& assignment) {
  const RingContext& ctx = s.context();
  std::vector<TruncatedSeries> images;
  images.reserve(ctx.n_vars);
  for (int j = 0; j < ctx.n_vars; ++j) images.push_back(TruncatedSeries::variable(ctx, j));
  for (const auto& [j, img] : assignment) {
    if (j < 0 || j >= ctx.n_vars) throw InvalidInput("substitute: variable index out of range");
    if (!(img.context() == ctx)) throw InvalidInput("substitute: image lives in a different ring context");
    images[j] = img;
  }
  return compose(s, images);
}

// ---------------------------------------------------------------------------
// Bidegree bases

namespace {

// Compositions of k into n parts, heaviest-first lexicographic order.
void compositions(int n, int k, std::vector<int>& cur, std::vector<std::vector<int>>& out) {
  if (static_cast<int>(cur.size()) == n - 1) {
    cur.push_back(k);
    out.push_back(cur);
    cur.pop_back();
    return;
  }
  for (int e = k; e >= 0; --e) {
    cur.push_back(e);
    compositions(n, k - e, cur, out);
    cur.pop_back();
  }
}

// Partitions of w into parts of size <= max_part, as (part, multiplicity) lists.
void partitions(int w, int max_part, std::vector<std::pair<int, int>>& cur,
                std::vector<std::vector<std::pair<int, int>>>& out) {
  if (w == 0) {
    out.push_back(cur);
    return;
  }
  for (int p = std::min(w, max_part); p >= 1; --p) {
    for (int mult = w / p; mult >= 1; --mult) {
      cur.emplace_back(p, mult);
      partitions(w - p * mult, p - 1, cur, out);
      cur.pop_back();
    }
  }
}

}  // namespace

std::vector<Monomial> lazard_monomials_of_weight(const RingContext& ctx, int w) {
  std::vector<Monomial> out;
  if (w < 0 || w > ctx.max_w) return out;
  const std::vector<int> no_t(ctx.n_vars, 0);
  switch (ctx.kind) {
    case CoeffKind::rational:
      if (w == 0) out.push_back(Monomial{});
      break;
    case CoeffKind::multiplicative_beta: {
      std::vector<std::pair<int, int>> lz;
      if (w > 0) lz.emplace_back(1, w);
      out.push_back(Monomial::make(ctx, no_t, lz));
      break;
    }
    case CoeffKind::universal_rational: {
      std::vector<std::pair<int, int>> cur;
      std::vector<std::vector<std::pair<int, int>>> parts;
      partitions(w, ctx.generator_count(), cur, parts);
      for (const auto& p : parts) out.push_back(Monomial::make(ctx, no_t, p));
      break;
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<Monomial> bidegree_basis(const RingContext& ctx, int d, int k) {
  if (k < 0 || k > ctx.max_t) throw InvalidInput("bidegree_basis: t-order outside [0, max_t]");
  std::vector<Monomial> out;
  const int w = k - d;
  if (w < 0 || w > ctx.max_w) return out;
  std::vector<int> cur;
  std::vector<std::vector<int>> tparts;
  compositions(ctx.n_vars, k, cur, tparts);
  for (const Monomial& lz : lazard_monomials_of_weight(ctx, w))
    for (const auto& tp : tparts) out.push_back(Monomial::make(ctx, tp) * lz);
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace cobcalc
