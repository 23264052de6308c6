#include "cobcalc/selftest.hpp"

#include <functional>
#include <map>
#include <set>
#include <sstream>

#include <json.hpp>

#include "cobcalc/bundle.hpp"
#include "cobcalc/equivariant.hpp"
#include "cobcalc/fgl.hpp"
#include "cobcalc/linalg.hpp"
#include "cobcalc/parallel.hpp"
#include "cobcalc/random.hpp"
#include "cobcalc/series_io.hpp"
#include "cobcalc/tower.hpp"

namespace cobcalc {
namespace {

const FglKind kKinds[] = {FglKind::additive, FglKind::multiplicative, FglKind::universal_rational};

std::string pb_text(const ProjBundleElement& u) {
  std::string s = "[";
  for (std::size_t j = 0; j < u.coords().size(); ++j) s += (j ? ", " : "") + to_text(u.coords()[j]);
  return s + "]";
}

// Collects cases until the first failure, which becomes the counterexample.
class Probe {
 public:
  explicit Probe(std::string name) { r_.name = std::move(name); }

  bool failed() const { return !r_.counterexample.empty(); }

  bool zero(const TruncatedSeries& residual, const std::function<std::string()>& where) {
    return expect(residual.is_zero(), [&] { return where() + "; residual = " + to_text(residual); });
  }
  bool zero(const ProjBundleElement& residual, const std::function<std::string()>& where) {
    bool z = true;
    for (const auto& c : residual.coords()) z = z && c.is_zero();
    return expect(z, [&] { return where() + "; residual = " + pb_text(residual); });
  }
  bool expect(bool ok, const std::function<std::string()>& where) {
    if (failed()) return false;
    ++cases_;
    if (!ok) r_.counterexample = where();
    return ok;
  }

  CheckResult finish(const std::string& detail) {
    r_.passed = !failed();
    r_.detail = detail + " (" + std::to_string(cases_) + " cases)";
    return std::move(r_);
  }

 private:
  CheckResult r_;
  std::size_t cases_ = 0;
};

RingContext small_context(FglKind kind, int n_vars, int M, int W) {
  return RingContext::make(n_vars, coefficient_kind(kind), M, W);
}

// ---------------------------------------------------------------- series

CheckResult series_ring_axioms(SeriesSampler& rng) {
  Probe p("series.ring_axioms");
  const RingContext ctxs[] = {small_context(FglKind::universal_rational, 2, 4, 3),
                              small_context(FglKind::multiplicative, 2, 5, 3),
                              small_context(FglKind::additive, 3, 4, 0)};
  for (int trial = 0; trial < 1000 && !p.failed(); ++trial) {
    const RingContext& ctx = ctxs[trial % 3];
    const auto a = rng.series(ctx, 4), b = rng.series(ctx, 4), c = rng.series(ctx, 4);
    auto where = [&] { return "a = " + to_text(a) + ", b = " + to_text(b) + ", c = " + to_text(c); };
    p.zero((a * b) * c - a * (b * c), where);
    p.zero(a * (b + c) - (a * b + a * c), where);
    p.zero(a * b - b * a, where);
    p.zero((a + b) + c - (a + (b + c)), where);
    p.zero(a + b - (b + a), where);
  }
  return p.finish("associativity, distributivity, commutativity on 1000 random triples");
}

CheckResult series_substitute_homomorphism(SeriesSampler& rng) {
  Probe p("series.substitute_homomorphism");
  const RingContext ctx = small_context(FglKind::universal_rational, 3, 4, 3);
  for (int trial = 0; trial < 200 && !p.failed(); ++trial) {
    const std::map<int, TruncatedSeries> assign{{0, rng.series(ctx, 3, 1)}, {2, rng.series(ctx, 2, 1)}};
    const auto a = rng.series(ctx, 4), b = rng.series(ctx, 4);
    auto where = [&] {
      return "a = " + to_text(a) + ", b = " + to_text(b) + ", t1 -> " + to_text(assign.at(0)) + ", t3 -> " +
             to_text(assign.at(2));
    };
    p.zero(substitute(a * b, assign) - substitute(a, assign) * substitute(b, assign), where);
    p.zero(substitute(a + b, assign) - substitute(a, assign) - substitute(b, assign), where);
  }
  return p.finish("substitute(a b) = substitute(a) substitute(b) on 200 pairs");
}

CheckResult series_caps_roundtrip(SeriesSampler& rng) {
  Probe p("series.caps_and_roundtrip");
  for (int trial = 0; trial < 300 && !p.failed(); ++trial) {
    const FglKind kind = kKinds[trial % 3];
    const RingContext ctx = small_context(kind, 1 + trial % 3, 3 + trial % 4, trial % 5);
    const auto s = rng.series(ctx, 6) * rng.series(ctx, 3);
    for (const Term& t : s.terms())
      p.expect(t.mono.fits(ctx) && t.coeff != 0, [&] { return "term outside caps in " + to_text(s); });
    p.expect(parse_series(ctx, to_text(s)) == s, [&] { return "text round trip of " + to_text(s); });
    const std::string dumped = to_json(s).dump();
    p.expect(series_from_json(ctx, nlohmann::json::parse(dumped)) == s,
             [&] { return "JSON round trip of " + dumped; });
  }
  return p.finish("caps respected, text and JSON round trips on 300 products");
}

// Counts monomials by walking every exponent vector inside a box.
std::map<std::pair<int, int>, std::size_t> exhaustive_bidegree_counts(const RingContext& ctx) {
  std::map<std::pair<int, int>, std::size_t> counts;
  const int gens = ctx.generator_count();
  const int slots = ctx.n_vars + gens;
  std::vector<int> e(slots, 0);
  const int bound = std::max(ctx.max_t, ctx.max_w);
  for (;;) {
    int k = 0, w = 0;
    for (int j = 0; j < ctx.n_vars; ++j) k += e[j];
    for (int g = 1; g <= gens; ++g) w += ctx.generator_weight(g) * e[ctx.n_vars + g - 1];
    if (k <= ctx.max_t && w <= ctx.max_w) ++counts[{k - w, k}];
    int pos = 0;
    while (pos < slots && e[pos] == bound) e[pos++] = 0;
    if (pos == slots) break;
    ++e[pos];
  }
  return counts;
}

CheckResult series_bidegree_enumeration(SeriesSampler&) {
  Probe p("series.bidegree_enumeration");
  for (FglKind kind : kKinds)
    for (int n = 1; n <= 2; ++n)
      for (int M = 0; M <= 4; M += 2)
        for (int W = 0; W <= 4; W += 2) {
          const RingContext ctx = small_context(kind, n, M, W);
          const auto counts = exhaustive_bidegree_counts(ctx);
          for (int d = -W; d <= M; ++d)
            for (int k = 0; k <= M; ++k) {
              auto it = counts.find({d, k});
              const std::size_t expected = it == counts.end() ? 0 : it->second;
              const std::size_t got = bidegree_basis(ctx, d, k).size();
              p.expect(got == expected, [&] {
                return to_string(kind) + " n=" + std::to_string(n) + " M=" + std::to_string(M) +
                       " W=" + std::to_string(W) + " d=" + std::to_string(d) + " k=" + std::to_string(k) +
                       ": basis " + std::to_string(got) + ", enumerator " + std::to_string(expected);
              });
            }
        }
  {
    const RingContext ctx = small_context(FglKind::universal_rational, 1, 6, 6);
    const auto counts = exhaustive_bidegree_counts(ctx);
    for (int d = -6; d <= 6; ++d)
      for (int k = 0; k <= 6; ++k) {
        auto it = counts.find({d, k});
        p.expect(bidegree_basis(ctx, d, k).size() == (it == counts.end() ? 0 : it->second),
                 [&] { return "universal n=1 M=6 W=6 d=" + std::to_string(d) + " k=" + std::to_string(k); });
      }
  }
  return p.finish("bidegree_basis sizes against an exhaustive enumerator, caps <= 6");
}

// ---------------------------------------------------------------- fgl

CheckResult fgl_axioms(SeriesSampler&) {
  Probe p("fgl.axioms");
  for (FglKind kind : kKinds) {
    const auto F = FormalGroupLaw::build(kind, 8, 7);
    const AxiomReport r = verify_fgl_axioms(F);
    auto where = [&](const char* axiom) { return [&, axiom] { return to_string(kind) + " " + axiom; }; };
    p.zero(r.unit_left, where("F(x,0) - x"));
    p.zero(r.unit_right, where("F(0,y) - y"));
    p.zero(r.commutativity, where("F(x,y) - F(y,x)"));
    p.zero(r.associativity, where("F(F(x,y),z) - F(x,F(y,z))"));
  }
  return p.finish("unit, commutativity, associativity for all kinds at M=8, W=7");
}

CheckResult fgl_exp_log(SeriesSampler&) {
  Probe p("fgl.exp_log");
  const auto F = FormalGroupLaw::build(FglKind::universal_rational, 8, 7);
  const TruncatedSeries& log = *F.logarithm();
  const TruncatedSeries& exp = *F.exponential();
  const RingContext c1 = log.context();
  const TruncatedSeries x = TruncatedSeries::variable(c1, 0);
  p.zero(compose(exp, std::span(&log, 1)) - x, [] { return "exp(log x) - x"; });
  p.zero(compose(log, std::span(&exp, 1)) - x, [] { return "log(exp x) - x"; });
  return p.finish("exp o log = log o exp = id for the universal law at M=8, W=7");
}

CheckResult fgl_n_series(SeriesSampler& rng) {
  Probe p("fgl.n_series_additive");
  for (FglKind kind : kKinds) {
    const auto F = FormalGroupLaw::build(kind, 6, 5);
    const RingContext ctx = F.ring(2);
    for (int trial = 0; trial < 3 && !p.failed(); ++trial) {
      const auto a = rng.series(ctx, 3, 1);
      std::map<long, TruncatedSeries> cache;
      auto ns = [&](long n) -> const TruncatedSeries& {
        auto it = cache.find(n);
        if (it == cache.end()) it = cache.emplace(n, n_series(F, n, a)).first;
        return it->second;
      };
      for (long m = -3; m <= 3; ++m)
        for (long n = -3; n <= 3; ++n)
          p.zero(fgl_sum(F, ns(m), ns(n)) - ns(m + n), [&] {
            return to_string(kind) + " m=" + std::to_string(m) + " n=" + std::to_string(n) + " a = " + to_text(a);
          });
    }
  }
  return p.finish("F([m](a), [n](a)) = [m+n](a) for m, n in -3..3, all kinds at M=6, W=5");
}

CheckResult fgl_inverse(SeriesSampler& rng) {
  Probe p("fgl.inverse");
  for (FglKind kind : kKinds) {
    const auto F = FormalGroupLaw::build(kind, 6, 5);
    const RingContext ctx = F.ring(3);
    for (int trial = 0; trial < 20; ++trial) {
      const auto a = rng.series(ctx, 4, 1);
      p.zero(fgl_sum(F, a, fgl_inverse(F, a)),
             [&] { return to_string(kind) + " F(a, chi(a)) with a = " + to_text(a); });
    }
  }
  return p.finish("F(a, chi(a)) = 0 on random a, all kinds");
}

CheckResult fgl_specialization(SeriesSampler&) {
  Probe p("fgl.specialization");
  for (auto [M, W] : {std::pair{4, 3}, std::pair{6, 5}, std::pair{8, 7}}) {
    const auto U = FormalGroupLaw::build(FglKind::universal_rational, M, W);
    const auto A = FormalGroupLaw::build(FglKind::additive, M, W);
    p.zero(specialize_generators_to_zero(U.law()) - A.law(),
           [&, M = M, W = W] { return "m_i -> 0 at M=" + std::to_string(M) + ", W=" + std::to_string(W); });
  }
  return p.finish("universal law with every m_i -> 0 is the additive law");
}

// ---------------------------------------------------------------- weyl

std::vector<GroupPreset> action_presets() {
  return {GroupPreset::gl(2), GroupPreset::gl(3), GroupPreset::sl2(), GroupPreset::torus(2)};
}

CheckResult weyl_action(SeriesSampler& rng) {
  Probe p("weyl.action");
  for (FglKind kind : kKinds) {
    const auto F = FormalGroupLaw::build(kind, 4, 3);
    for (const GroupPreset& G : action_presets()) {
      const RingContext ctx = F.ring(G.rank);
      const auto elements = G.weyl.enumerate();
      p.expect(elements.size() == G.order, [&] { return G.name + " enumerates the wrong number of elements"; });
      for (int trial = 0; trial < 4 && !p.failed(); ++trial) {
        const auto a = rng.series(ctx, 3), b = rng.series(ctx, 3);
        auto where = [&] { return to_string(kind) + " " + G.name + " a = " + to_text(a) + ", b = " + to_text(b); };
        for (const IntMatrix& g : G.weyl.generators) {
          p.zero(weyl_apply(g, a * b, F) - weyl_apply(g, a, F) * weyl_apply(g, b, F), where);
          p.zero(weyl_apply(g, a + b, F) - weyl_apply(g, a, F) - weyl_apply(g, b, F), where);
        }
        p.zero(weyl_apply(IntMatrix::identity(G.rank), a, F) - a, where);
        const IntMatrix& w1 = elements[rng.below(elements.size())];
        const IntMatrix& w2 = elements[rng.below(elements.size())];
        p.zero(weyl_apply(w1, weyl_apply(w2, a, F), F) - weyl_apply(w1 * w2, a, F), where);
      }
    }
  }
  return p.finish("ring homomorphism and left action for GL(2), GL(3), SL(2), torus(2), all kinds");
}

CheckResult weyl_character_additive(SeriesSampler& rng) {
  Probe p("weyl.character_additive");
  for (FglKind kind : kKinds) {
    const auto F = FormalGroupLaw::build(kind, 5, 4);
    const RingContext ctx = F.ring(2);
    for (int trial = 0; trial < 10; ++trial) {
      CharacterVector c{{rng.between(-2, 2), rng.between(-2, 2)}};
      CharacterVector d{{rng.between(-2, 2), rng.between(-2, 2)}};
      p.zero(character_class(F, ctx, c + d) -
                 fgl_sum(F, character_class(F, ctx, c), character_class(F, ctx, d)),
             [&] {
               return to_string(kind) + " c = (" + std::to_string(c.coords[0]) + "," +
                      std::to_string(c.coords[1]) + "), c' = (" + std::to_string(d.coords[0]) + "," +
                      std::to_string(d.coords[1]) + ")";
             });
    }
  }
  return p.finish("class(c + c') = F(class(c), class(c')) on random characters, all kinds");
}

std::vector<Rational> coordinates(const TruncatedSeries& s, const std::vector<Monomial>& ambient, bool& outside) {
  std::vector<Rational> v;
  for (const Monomial& m : ambient) v.push_back(s.coefficient(m));
  std::set<Monomial> in(ambient.begin(), ambient.end());
  outside = false;
  for (const Term& t : s.terms()) outside = outside || !in.count(t.mono);
  return v;
}

// (1/|W|) sum_w w(s), read in the window S / I^{k+1}.
TruncatedSeries symmetrize(const TruncatedSeries& s, const std::vector<IntMatrix>& elements,
                           const FormalGroupLaw& F, int k_max) {
  TruncatedSeries acc = TruncatedSeries::zero(s.context());
  for (const IntMatrix& w : elements) acc += weyl_apply(w, s, F);
  return (acc * Rational(1, static_cast<long>(elements.size()))).truncated_t(k_max);
}

CheckResult weyl_invariant_basis(SeriesSampler&) {
  Probe p("weyl.invariant_basis");
  for (FglKind kind : kKinds) {
    const auto F = FormalGroupLaw::build(kind, 4, 3);
    for (const GroupPreset& G : {GroupPreset::gl(2), GroupPreset::sl2(), GroupPreset::gl(3)}) {
      const auto elements = G.weyl.enumerate();
      for (int d = 0; d <= 2; ++d) {
        const int k_max = 3;
        const InvariantSpace inv = invariant_basis(G.weyl, F, d, k_max);
        auto where = [&] { return to_string(kind) + " " + G.name + " degree " + std::to_string(d); };
        for (const auto& b : inv.basis)
          for (const IntMatrix& g : G.weyl.generators)
            p.zero(weyl_apply(g, b, F).truncated_t(k_max) - b, [&] { return where() + " basis " + to_text(b); });
        QMatrix basis_rows(0, inv.ambient.size());
        for (const auto& b : inv.basis) {
          bool outside = false;
          const auto v = coordinates(b, inv.ambient, outside);
          QMatrix row(1, v.size());
          for (std::size_t c = 0; c < v.size(); ++c) row(0, c) = v[c];
          basis_rows.stack_below(row);
        }
        const std::size_t r0 = basis_rows.rank();
        for (const Monomial& m : inv.ambient) {
          const auto sym = symmetrize(TruncatedSeries::monomial(F.ring(G.rank), m), elements, F, k_max);
          bool outside = false;
          const auto v = coordinates(sym, inv.ambient, outside);
          QMatrix ext = basis_rows;
          QMatrix row(1, v.size());
          for (std::size_t c = 0; c < v.size(); ++c) row(0, c) = v[c];
          ext.stack_below(row);
          p.expect(!outside && ext.rank() == r0,
                   [&] { return where() + " symmetrization of " + to_text(m, F.ring(G.rank)) + " = " + to_text(sym); });
        }
      }
    }
  }
  return p.finish("basis fixed by generators; span contains every symmetrized monomial");
}

CheckResult weyl_gl_additive_counts(SeriesSampler&) {
  Probe p("weyl.gl_additive_counts");
  const auto F = FormalGroupLaw::build(FglKind::additive, 4, 0);
  for (int n = 1; n <= 3; ++n) {
    const auto dims = bg_dimensions(GroupPreset::gl(n), F, 0, 4, 4);
    for (const auto& [d, dim] : dims)
      p.expect(dim == elementary_monomial_count(n, d), [&, d = d, dim = dim] {
        return "GL(" + std::to_string(n) + ") degree " + std::to_string(d) + ": " + std::to_string(dim) +
               " invariants, " + std::to_string(elementary_monomial_count(n, d)) + " monomials in c_i";
      });
  }
  return p.finish("GL(n) additive invariant dimensions equal monomial counts in c_1..c_n, n <= 3, degrees 0..4");
}

CheckResult weyl_universal_bruteforce(SeriesSampler&) {
  Probe p("weyl.universal_bruteforce");
  const auto F = FormalGroupLaw::build(FglKind::universal_rational, 4, 3);
  for (const GroupPreset& G : {GroupPreset::gl(2), GroupPreset::gl(3), GroupPreset::sl2()}) {
    const auto elements = G.weyl.enumerate();
    const RingContext ctx = F.ring(G.rank);
    for (int d = -3; d <= 4; ++d) {
      const int k_max = 4;
      const InvariantSpace inv = invariant_basis(G.weyl, F, d, k_max);
      // The image of the averaging projector is the fixed space.
      QMatrix rows(0, inv.ambient.size());
      for (const Monomial& m : inv.ambient) {
        bool outside = false;
        const auto v = coordinates(symmetrize(TruncatedSeries::monomial(ctx, m), elements, F, k_max), inv.ambient,
                                   outside);
        QMatrix row(1, v.size());
        for (std::size_t c = 0; c < v.size(); ++c) row(0, c) = v[c];
        rows.stack_below(row);
      }
      const std::size_t brute = rows.rank();
      p.expect(brute == inv.dimension(), [&] {
        return G.name + " degree " + std::to_string(d) + ": kernel " + std::to_string(inv.dimension()) +
               ", averaging " + std::to_string(brute);
      });
    }
  }
  return p.finish("universal invariant dimensions at M=4, W=3 against averaging-projector rank");
}

// ---------------------------------------------------------------- bundle

SplitBundle random_bundle(SeriesSampler& rng, const RingContext& ctx, int rank) {
  std::vector<TruncatedSeries> roots;
  for (int j = 0; j < rank; ++j) roots.push_back(rng.series(ctx, 2, 1, 2));
  return SplitBundle::make(std::move(roots));
}

std::string roots_text(const SplitBundle& E) {
  std::string s = "roots {";
  for (std::size_t j = 0; j < E.roots.size(); ++j) s += (j ? ", " : "") + to_text(E.roots[j]);
  return s + "}";
}

CheckResult bundle_whitney(SeriesSampler& rng) {
  Probe p("bundle.whitney");
  for (FglKind kind : kKinds) {
    const RingContext ctx = small_context(kind, 3, 6, 4);
    for (int trial = 0; trial < 20; ++trial) {
      const auto E = random_bundle(rng, ctx, 1 + trial % 2), E2 = random_bundle(rng, ctx, 1 + trial % 3);
      const auto lhs = chern_classes(E.direct_sum(E2));
      const auto rhs = multiply_chern_polynomials(chern_classes(E), chern_classes(E2));
      for (std::size_t i = 0; i < lhs.size(); ++i)
        p.zero(lhs[i] - rhs[i], [&] { return "c_" + std::to_string(i + 1) + " of " + roots_text(E) + " + " + roots_text(E2); });
    }
  }
  return p.finish("c(E + E') = c(E) c(E') on random roots, all kinds");
}

CheckResult bundle_self_intersection(SeriesSampler& rng) {
  Probe p("bundle.self_intersection");
  for (FglKind kind : kKinds) {
    const auto F = FormalGroupLaw::build(kind, 6, 4);
    const RingContext ctx = F.ring(3);
    for (int rank = 1; rank <= 3; ++rank) {
      const auto E = random_bundle(rng, ctx, rank);
      const auto R = ProjBundleRing::projective_completion(E);
      const auto th = thom_class(E, R, F);
      const auto cn = chern_classes(E).back();
      p.zero(zero_section_pushforward(TruncatedSeries::one(ctx), th) - th,
             [&] { return to_string(kind) + " s_*(1) - th, " + roots_text(E); });
      for (int trial = 0; trial < 100 && !p.failed(); ++trial) {
        const auto a = rng.series(ctx, 3);
        p.zero(zero_section_restriction(zero_section_pushforward(a, th)) - a * cn,
               [&] { return to_string(kind) + " " + roots_text(E) + ", a = " + to_text(a); });
      }
    }
  }
  return p.finish("s^* s_*(a) = a c_n(E) for ranks 1..3, 100 base elements each, all kinds at M=6, W=4");
}

// top Chern class of the roots twisted by y, computed inside R
ProjBundleElement twisted_top(const SplitBundle& E, const ProjBundleRing::Ptr& R, const ProjBundleElement& y,
                              const FormalGroupLaw& F) {
  ProjBundleElement acc = ProjBundleElement::lift(R, TruncatedSeries::one(R->base()));
  for (const auto& x : E.roots) acc = acc * fgl_sum(F, ProjBundleElement::lift(R, x), y);
  return acc;
}

CheckResult bundle_thom_multiplicative(SeriesSampler& rng) {
  Probe p("bundle.thom_multiplicative");
  for (FglKind kind : kKinds) {
    const auto F = FormalGroupLaw::build(kind, 6, 4);
    const RingContext ctx = F.ring(3);
    for (int trial = 0; trial < 4; ++trial) {
      const auto E1 = random_bundle(rng, ctx, 1), E2 = random_bundle(rng, ctx, 1 + trial % 2);
      const auto E = E1.direct_sum(E2);
      const auto R = ProjBundleRing::projective_completion(E);
      const auto eta = hyperplane_class_by_solving(R, F);
      p.zero(thom_class(E, R, F) - twisted_top(E1, R, eta, F) * twisted_top(E2, R, eta, F),
             [&] { return to_string(kind) + " " + roots_text(E1) + " + " + roots_text(E2); });
    }
  }
  return p.finish("th(E1 + E2) = th(E1) th(E2) in P(1 + E1 + E2), all kinds");
}

CheckResult bundle_projective_formula(SeriesSampler& rng) {
  Probe p("bundle.projective_bundle_formula");
  for (FglKind kind : kKinds) {
    const RingContext ctx = small_context(kind, 2, 6, 4);
    for (int n = 1; n <= 4; ++n) {
      const auto T = ProjBundleRing::trivial(ctx, n);
      const auto top = ProjBundleElement::xi_power(T, n);
      p.zero(top, [&] { return to_string(kind) + " xi^" + std::to_string(n) + " on the trivial rank " + std::to_string(n); });

      std::vector<TruncatedSeries> chern;
      for (const auto& c : chern_classes(random_bundle(rng, ctx, n))) chern.push_back(c);
      const auto R = ProjBundleRing::make(ctx, chern);
      for (int k = 0; k <= 2 * n + 2; ++k) {
        std::vector<TruncatedSeries> poly(k + 1, TruncatedSeries::zero(ctx));
        poly[k] = TruncatedSeries::one(ctx);
        const auto a = R->reduce(poly), b = R->reduce_by_table(poly);
        const auto c = R->power_coordinates(k);
        p.expect(a.size() == static_cast<std::size_t>(n) && a == b && a == c, [&] {
          return to_string(kind) + " rank " + std::to_string(n) + ": xi^" + std::to_string(k) +
                 " reduces differently stepwise and by table";
        });
      }
      for (int trial = 0; trial < 5 && !p.failed(); ++trial) {
        auto rand_elem = [&] {
          std::vector<TruncatedSeries> coords;
          for (int j = 0; j < n; ++j) coords.push_back(rng.series(ctx, 2, 0, 3));
          return ProjBundleElement(R, coords);
        };
        const auto u = rand_elem(), v = rand_elem(), w = rand_elem();
        auto where = [&] { return to_string(kind) + " rank " + std::to_string(n) + " u = " + pb_text(u) + ", v = " + pb_text(v); };
        p.zero(u * v - v * u, where);
        p.zero((u * v) * w - u * (v * w), where);
        p.expect((u * v).coords().size() == static_cast<std::size_t>(n), where);
      }
    }
  }
  return p.finish("xi^n = 0 for trivial bundles, confluent reduction, commutative associative products, ranks 1..4");
}

CheckResult bundle_smooth_divisor(SeriesSampler& rng) {
  Probe p("bundle.smooth_divisor");
  for (FglKind kind : kKinds) {
    const auto F = FormalGroupLaw::build(kind, 6, 4);
    const RingContext ctx = F.ring(3);
    for (int trial = 0; trial < 5; ++trial) {
      const auto L = random_bundle(rng, ctx, 1);
      const auto R = ProjBundleRing::projective_completion(L);
      p.zero(hyperplane_class(R, F) - hyperplane_class_by_solving(R, F),
             [&] { return to_string(kind) + " chi(xi) against the solved class, " + roots_text(L); });
      p.zero(zero_section_pushforward(TruncatedSeries::one(ctx), L, R, F) - zero_section_divisor_class(L, R, F),
             [&] { return to_string(kind) + " s_*(1) against c_1(L(1)), " + roots_text(L); });
    }
  }
  return p.finish("s_*(1) = c_1(p*L (x) O(1)) for lines, all kinds");
}

CheckResult bundle_flag_restriction(SeriesSampler& rng) {
  Probe p("bundle.flag_restriction");
  for (FglKind kind : kKinds) {
    const auto F = FormalGroupLaw::build(kind, 4, 3);
    for (const GroupPreset& G : {GroupPreset::gl(2), GroupPreset::gl(3)}) {
      const RingContext ctx = F.ring(G.rank);
      const int trials = G.rank == 2 ? 20 : 4;
      for (int trial = 0; trial < trials && !p.failed(); ++trial) {
        const auto a = rng.series(ctx, 2), b = rng.series(ctx, 2), a2 = rng.series(ctx, 2), b2 = rng.series(ctx, 2);
        const auto x = flag_restriction(a, b, G.weyl, F), y = flag_restriction(a2, b2, G.weyl, F);
        const auto xy = flag_restriction(a * a2, b * b2, G.weyl, F);
        for (std::size_t w = 0; w < xy.components.size(); ++w)
          p.zero(xy.components[w] - x.components[w] * y.components[w], [&] {
            return to_string(kind) + " " + G.name + " a = " + to_text(a) + ", b = " + to_text(b) +
                   ", a' = " + to_text(a2) + ", b' = " + to_text(b2);
          });
        const std::pair<TruncatedSeries, TruncatedSeries> sum[] = {{a, b}, {a2, b2}};
        const auto image = flag_restriction(sum, G.weyl, F);
        for (const auto& v : gkm_congruences(image))
          p.expect(v.holds, [&] {
            return to_string(kind) + " " + G.name + " congruence t" + std::to_string(v.i + 1) + " ~ t" +
                   std::to_string(v.j + 1) + " fails; difference = " +
                   to_text(image.components[v.from] - image.components[v.to]);
          });
      }
    }
  }
  return p.finish("componentwise multiplicativity and transposition congruences, GL(2) and GL(3), all kinds");
}

// ---------------------------------------------------------------- tower

// Literal search: the smallest lag r with im(V_{i+r} -> V_i) = im(V_j -> V_i)
// for every j > i + r and every i with i + r + 1 <= k.
std::optional<std::size_t> brute_stabilization(const TowerSlice& s) {
  const std::size_t k = s.levels() - 1;
  for (std::size_t r = 0; r < k; ++r) {
    bool ok = true;
    for (std::size_t i = 0; i + r + 1 <= k; ++i)
      for (std::size_t j = i + r + 1; j <= k; ++j) ok = ok && same_column_space(s.composite(i + r, i), s.composite(j, i));
    if (ok) return r;
  }
  return std::nullopt;
}

TowerSlice random_slice(SeriesSampler& rng) {
  TowerSlice s;
  const std::size_t levels = 3 + rng.below(5);
  for (std::size_t i = 0; i < levels; ++i) s.dims.push_back(rng.below(4));
  for (std::size_t i = 0; i + 1 < levels; ++i) {
    QMatrix m(s.dims[i], s.dims[i + 1]);
    const bool zero = rng.below(4) == 0;
    for (std::size_t r = 0; r < m.rows(); ++r)
      for (std::size_t c = 0; c < m.cols(); ++c) m(r, c) = zero ? 0 : rng.between(-1, 1);
    s.maps.push_back(std::move(m));
  }
  return s;
}

QMatrix random_invertible(SeriesSampler& rng, std::size_t n) {
  QMatrix lower = QMatrix::identity(n), upper = QMatrix::identity(n);
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t c = 0; c < n; ++c) {
      if (r > c) lower(r, c) = rng.between(-2, 2);
      if (r < c) upper(r, c) = rng.between(-2, 2);
      if (r == c) upper(r, c) = rng.below(2) ? 1 : -1;
    }
  return lower * upper;
}

std::string slice_text(const TowerSlice& s) {
  std::string out = "dims";
  for (auto d : s.dims) out += " " + std::to_string(d);
  return out;
}

CheckResult tower_stabilization(SeriesSampler& rng) {
  Probe p("tower.stabilization");
  for (int trial = 0; trial < 200 && !p.failed(); ++trial) {
    Tower T;
    T.degrees.emplace(0, random_slice(rng));
    const auto got = stabilization_index(T, 0);
    const auto want = brute_stabilization(T.at(0));
    p.expect(got == want, [&] { return "random tower " + slice_text(T.at(0)); });
  }
  // Known shapes: identities, surjections, zero maps.
  Tower T;
  TowerSlice id{{2, 2, 2, 2}, {QMatrix::identity(2), QMatrix::identity(2), QMatrix::identity(2)}};
  TowerSlice zero{{1, 1, 1, 1}, {QMatrix(1, 1), QMatrix(1, 1), QMatrix(1, 1)}};
  T.degrees.emplace(0, id);
  T.degrees.emplace(1, zero);
  p.expect(stabilization_index(T, 0) == std::optional<std::size_t>(0) && inverse_limit_dim(T, 0) == 2,
           [] { return "identity tower"; });
  p.expect(stabilization_index(T, 1) == std::optional<std::size_t>(1) && inverse_limit_dim(T, 1) == 0,
           [] { return "zero tower"; });
  return p.finish("stabilization index against a literal search on 200 random towers, plus fixed shapes");
}

CheckResult tower_projective_space(SeriesSampler&) {
  Probe p("tower.projective_space");
  for (FglKind kind : kKinds) {
    const auto F = FormalGroupLaw::build(kind, 6, 4);
    const RingContext ctx = F.ring(1);
    const int d_min = -ctx.max_w * (ctx.generator_count() > 0);
    const Tower T = projective_space_tower(F, 5, ctx.max_t + 2, d_min);
    for (int d = d_min; d <= 5; ++d) {
      std::size_t count = 0;
      for (int k = 0; k <= ctx.max_t; ++k) count += bidegree_basis(ctx, d, k).size();
      const auto lag = stabilization_index(T, d);
      p.expect(lag && *lag <= static_cast<std::size_t>(std::max(d, 0)) && inverse_limit_dim(T, d) == count, [&] {
        return to_string(kind) + " degree " + std::to_string(d) + ": lim " +
               (lag ? std::to_string(inverse_limit_dim(T, d)) : std::string("refused")) + ", bidegree count " +
               std::to_string(count);
      });
    }
  }
  return p.finish("P^i tower limits equal torus(1) bidegree counts with index <= degree, all kinds");
}

CheckResult tower_functoriality(SeriesSampler& rng) {
  Probe p("tower.functoriality");
  const auto F = FormalGroupLaw::build(FglKind::universal_rational, 4, 3);
  const Tower P = projective_space_tower(F, 3, 6, -3);
  for (int trial = 0; trial < 60 && !p.failed(); ++trial) {
    Tower T;
    T.degrees.emplace(0, trial % 2 ? random_slice(rng) : P.at(static_cast<int>(rng.between(-3, 3))));
    std::vector<QMatrix> bases;
    for (auto d : T.at(0).dims) bases.push_back(random_invertible(rng, d));
    Tower U;
    U.degrees.emplace(0, change_basis(T.at(0), bases));
    const auto a = stabilization_index(T, 0), b = stabilization_index(U, 0);
    bool same = a == b;
    if (same && a) same = inverse_limit_dim(T, 0) == inverse_limit_dim(U, 0);
    p.expect(same, [&] { return "levelwise change of basis moves the outputs, " + slice_text(T.at(0)); });
  }
  return p.finish("index and limit unchanged under levelwise isomorphisms");
}

struct Check {
  const char* name;
  CheckResult (*fn)(SeriesSampler&);
};

const Check kChecks[] = {
    {"series.ring_axioms", series_ring_axioms},
    {"series.substitute_homomorphism", series_substitute_homomorphism},
    {"series.caps_and_roundtrip", series_caps_roundtrip},
    {"series.bidegree_enumeration", series_bidegree_enumeration},
    {"fgl.axioms", fgl_axioms},
    {"fgl.exp_log", fgl_exp_log},
    {"fgl.n_series_additive", fgl_n_series},
    {"fgl.inverse", fgl_inverse},
    {"fgl.specialization", fgl_specialization},
    {"weyl.action", weyl_action},
    {"weyl.character_additive", weyl_character_additive},
    {"weyl.invariant_basis", weyl_invariant_basis},
    {"weyl.gl_additive_counts", weyl_gl_additive_counts},
    {"weyl.universal_bruteforce", weyl_universal_bruteforce},
    {"bundle.whitney", bundle_whitney},
    {"bundle.self_intersection", bundle_self_intersection},
    {"bundle.thom_multiplicative", bundle_thom_multiplicative},
    {"bundle.projective_bundle_formula", bundle_projective_formula},
    {"bundle.smooth_divisor", bundle_smooth_divisor},
    {"bundle.flag_restriction", bundle_flag_restriction},
    {"tower.stabilization", tower_stabilization},
    {"tower.projective_space", tower_projective_space},
    {"tower.functoriality", tower_functoriality},
};

std::uint64_t check_seed(std::uint64_t seed, std::string_view name) {
  std::uint64_t h = 1469598103934665603ull ^ seed;
  for (char c : name) h = (h ^ static_cast<unsigned char>(c)) * 1099511628211ull;
  return h;
}

}  // namespace

std::vector<std::string> selftest_check_names() {
  std::vector<std::string> out;
  for (const Check& c : kChecks) out.emplace_back(c.name);
  return out;
}

std::vector<CheckResult> run_selftest(std::uint64_t seed, unsigned threads) {
  const std::size_t n = std::size(kChecks);
  return parallel_map<CheckResult>(n, threads, [seed](std::size_t i) {
    SeriesSampler rng(check_seed(seed, kChecks[i].name));
    CheckResult r;
    try {
      r = kChecks[i].fn(rng);
    } catch (const std::exception& e) {
      r.passed = false;
      r.detail = "threw";
      r.counterexample = e.what();
    }
    r.name = kChecks[i].name;
    return r;
  });
}

}  // namespace cobcalc
