#include <doctest.h>

#include "cobcalc/bundle.hpp"
#include "cobcalc/error.hpp"
#include "cobcalc/random.hpp"
#include "cobcalc/series_io.hpp"
#include "pb_oracle.hpp"

using namespace cobcalc;

namespace {

const FglKind kKinds[] = {FglKind::additive, FglKind::multiplicative, FglKind::universal_rational};

TruncatedSeries t(const RingContext& c, int j) { return TruncatedSeries::variable(c, j); }

SplitBundle random_bundle(SeriesSampler& rng, const RingContext& c, int rank) {
  std::vector<TruncatedSeries> roots;
  for (int j = 0; j < rank; ++j) roots.push_back(rng.series(c, 2, 1, 2));
  return SplitBundle::make(roots);
}

ProjBundleElement random_element(SeriesSampler& rng, const ProjBundleRing::Ptr& R) {
  std::vector<TruncatedSeries> coords;
  for (int j = 0; j < R->rank(); ++j) coords.push_back(rng.series(R->base(), 2, 0, 3));
  return ProjBundleElement(R, coords);
}

}  // namespace

TEST_SUITE("bundle") {
  TEST_CASE("split bundles") {
    const auto c = RingContext::make(2, CoeffKind::rational, 4, 0);
    CHECK_THROWS_AS(SplitBundle::make({}), InvalidInput);
    CHECK_THROWS_AS(SplitBundle::make({TruncatedSeries::one(c)}), InvalidInput);
    CHECK_THROWS_AS(SplitBundle::make({t(c, 0), t(RingContext::make(2, CoeffKind::rational, 3, 0), 0)}), InvalidInput);
    CHECK_THROWS_AS(SplitBundle::trivial(c, 0), InvalidInput);
    CHECK(SplitBundle::trivial(c, 3).rank() == 3);
  }

  TEST_CASE("chern classes") {
    const auto c = RingContext::make(2, CoeffKind::rational, 4, 0);
    const auto ch = chern_classes(SplitBundle::make({t(c, 0), t(c, 1)}));
    CHECK(ch[0] == t(c, 0) + t(c, 1));
    CHECK(ch[1] == t(c, 0) * t(c, 1));
    for (const auto& x : chern_classes(SplitBundle::trivial(c, 2))) CHECK(x.is_zero());
  }

  TEST_CASE("Whitney formula") {
    SeriesSampler rng(21);
    for (FglKind kind : kKinds) {
      const auto c = RingContext::make(3, coefficient_kind(kind), 6, 4);
      for (int i = 0; i < 10; ++i) {
        const auto E = random_bundle(rng, c, 1 + i % 3), E2 = random_bundle(rng, c, 1 + i % 2);
        CHECK(chern_classes(E.direct_sum(E2)) == multiply_chern_polynomials(chern_classes(E), chern_classes(E2)));
      }
    }
  }

  TEST_CASE("twisting by a line") {
    const auto A = FormalGroupLaw::build(FglKind::additive, 4, 0);
    const auto ca = A.ring(2);
    CHECK(twist_by_line(SplitBundle::make({t(ca, 0)}), t(ca, 1), A).roots[0] == t(ca, 0) + t(ca, 1));
    const auto M = FormalGroupLaw::build(FglKind::multiplicative, 4, 2);
    const auto cm = M.ring(2);
    CHECK(to_text(twist_by_line(SplitBundle::make({t(cm, 0)}), t(cm, 1), M).roots[0]) ==
          "1 * t1 + 1 * t2 - 1 * beta*t1*t2");
    const auto U = FormalGroupLaw::build(FglKind::universal_rational, 5, 4);
    SeriesSampler rng(22);
    const auto cu = U.ring(3);
    const auto E = random_bundle(rng, cu, 2);
    const auto y = rng.series(cu, 2, 1);
    CHECK(twist_by_line(twist_by_line(E, y, U), fgl_inverse(U, y), U).roots == E.roots);
    CHECK_THROWS_AS(twist_by_line(E, TruncatedSeries::one(cu), U), InvalidInput);
  }

  TEST_CASE("one reduction step") {
    const auto c = RingContext::make(2, CoeffKind::rational, 4, 0);
    const auto c1 = t(c, 0), c2 = t(c, 0) * t(c, 1);
    const auto R = pb_ring(c, {c1, c2});
    const auto xi = ProjBundleElement::xi(R);
    CHECK(pb_mul(xi, xi).coords() == std::vector<TruncatedSeries>{-c2, c1});
  }

  TEST_CASE("products on P^2") {
    const auto c = RingContext::make(1, CoeffKind::rational, 4, 0);
    const auto R = ProjBundleRing::trivial(c, 3);
    const auto one = ProjBundleElement::lift(R, TruncatedSeries::one(c));
    const auto xi = ProjBundleElement::xi(R);
    const auto p = (one + xi) * xi;
    CHECK(p == xi + xi * xi);
    CHECK(p * xi == ProjBundleElement::xi_power(R, 2));
    CHECK((xi * xi * xi) == ProjBundleElement(R, {TruncatedSeries::zero(c), TruncatedSeries::zero(c), TruncatedSeries::zero(c)}));
  }

  TEST_CASE("trivial bundles: xi^n vanishes") {
    const auto c = RingContext::make(2, CoeffKind::universal_rational, 6, 4);
    for (int n = 1; n <= 4; ++n) {
      const auto R = ProjBundleRing::trivial(c, n);
      for (const auto& x : ProjBundleElement::xi_power(R, n).coords()) CHECK(x.is_zero());
      for (const auto& x : ProjBundleElement::xi_power(R, n + 3).coords()) CHECK(x.is_zero());
    }
  }

  TEST_CASE("products agree with polynomial division") {
    SeriesSampler rng(23);
    for (FglKind kind : kKinds) {
      const auto c = RingContext::make(2, coefficient_kind(kind), 6, 4);
      for (int n = 1; n <= 4; ++n) {
        const auto T = ProjBundleRing::trivial(c, n);
        const auto R = pb_ring(c, chern_classes(random_bundle(rng, c, n)));
        for (int i = 0; i < 6; ++i) {
          for (const auto& ring : {T, R}) {
            const auto u = random_element(rng, ring), v = random_element(rng, ring);
            CHECK((u * v).coords() == oracle::divide_product(u, v));
          }
        }
      }
    }
  }

  TEST_CASE("reduction is confluent") {
    SeriesSampler rng(24);
    const auto c = RingContext::make(3, CoeffKind::universal_rational, 6, 4);
    for (int n = 1; n <= 4; ++n) {
      const auto R = pb_ring(c, chern_classes(random_bundle(rng, c, n)));
      for (int k = 0; k <= 2 * n + 3; ++k) {
        std::vector<TruncatedSeries> poly(k + 1, TruncatedSeries::zero(c));
        poly[k] = TruncatedSeries::one(c);
        CHECK(R->reduce(poly) == R->reduce_by_table(poly));
        CHECK(R->reduce(poly) == R->power_coordinates(k));
      }
    }
  }

  TEST_CASE("ring validation") {
    const auto c = RingContext::make(2, CoeffKind::rational, 4, 0);
    CHECK_THROWS_AS(pb_ring(c, {}), InvalidInput);
    CHECK_THROWS_AS(pb_ring(c, {TruncatedSeries::one(c)}), InvalidInput);
    CHECK_THROWS_AS(pb_ring(c, {t(c, 0), t(c, 1)}), InvalidInput);  // c2 of t-order 1
    const auto R = ProjBundleRing::trivial(c, 2);
    CHECK_THROWS_AS(ProjBundleElement(R, {TruncatedSeries::zero(c)}), InvalidInput);
    const auto S = ProjBundleRing::trivial(c, 2);
    CHECK_THROWS_AS(ProjBundleElement::xi(R) * ProjBundleElement::xi(S), InvalidInput);
    CHECK_THROWS_AS(ProjBundleElement::xi_power(R, -1), InvalidInput);
  }

  TEST_CASE("Thom class of a line, additive law") {
    const auto F = FormalGroupLaw::build(FglKind::additive, 4, 0);
    const auto c = F.ring(1);
    const auto L = SplitBundle::make({t(c, 0)});
    const auto R = ProjBundleRing::projective_completion(L);
    const auto th = thom_class(L, R, F);
    CHECK(th.coords() == std::vector<TruncatedSeries>{t(c, 0), -TruncatedSeries::one(c)});
  }

  TEST_CASE("restriction to the zero section") {
    const auto F = FormalGroupLaw::build(FglKind::universal_rational, 5, 4);
    const auto c = F.ring(2);
    const auto R = ProjBundleRing::trivial(c, 3);
    CHECK(zero_section_restriction(ProjBundleElement::lift(R, TruncatedSeries::one(c))) == TruncatedSeries::one(c));
    CHECK(zero_section_restriction(ProjBundleElement::xi(R)).is_zero());
    SeriesSampler rng(25);
    for (FglKind kind : kKinds) {
      const auto G = FormalGroupLaw::build(kind, 5, 4);
      const auto E = random_bundle(rng, G.ring(2), 2);
      const auto P = ProjBundleRing::projective_completion(E);
      CHECK(zero_section_restriction(thom_class(E, P, G)) == chern_classes(E).back());
      const auto u = random_element(rng, P), v = random_element(rng, P);
      CHECK(zero_section_restriction(u * v) == zero_section_restriction(u) * zero_section_restriction(v));
    }
  }

  TEST_CASE("self-intersection formula") {
    SeriesSampler rng(26);
    for (FglKind kind : kKinds) {
      const auto F = FormalGroupLaw::build(kind, 6, 4);
      const auto c = F.ring(3);
      for (int rank = 1; rank <= 3; ++rank) {
        const auto E = random_bundle(rng, c, rank);
        const auto R = ProjBundleRing::projective_completion(E);
        const auto th = thom_class(E, R, F);
        CHECK(zero_section_pushforward(TruncatedSeries::one(c), E, R, F) == th);
        const auto cn = chern_classes(E).back();
        int failures = 0;
        for (int i = 0; i < 30; ++i) {
          const auto a = rng.series(c, 3);
          failures += !(zero_section_restriction(zero_section_pushforward(a, th)) == a * cn);
        }
        CHECK(failures == 0);
      }
    }
  }

  TEST_CASE("projection formula") {
    SeriesSampler rng(27);
    const auto F = FormalGroupLaw::build(FglKind::universal_rational, 6, 4);
    const auto c = F.ring(2);
    const auto E = random_bundle(rng, c, 2);
    const auto R = ProjBundleRing::projective_completion(E);
    const auto a = rng.series(c, 3), b = rng.series(c, 3);
    CHECK(zero_section_pushforward(a + b, E, R, F) ==
          zero_section_pushforward(a, E, R, F) + zero_section_pushforward(b, E, R, F));
  }

  TEST_CASE("Thom classes multiply and match the divisor class") {
    SeriesSampler rng(28);
    for (FglKind kind : kKinds) {
      const auto F = FormalGroupLaw::build(kind, 6, 4);
      const auto c = F.ring(3);
      for (int r2 = 1; r2 <= 2; ++r2) {
        const auto E1 = random_bundle(rng, c, 1), E2 = random_bundle(rng, c, r2);
        const auto E = E1.direct_sum(E2);
        const auto R = ProjBundleRing::projective_completion(E);
        const auto eta = hyperplane_class_by_solving(R, F);
        CHECK(eta == hyperplane_class(R, F));
        auto part = [&](const SplitBundle& B) {
          auto acc = ProjBundleElement::lift(R, TruncatedSeries::one(c));
          for (const auto& x : B.roots) acc = acc * fgl_sum(F, ProjBundleElement::lift(R, x), eta);
          return acc;
        };
        CHECK(thom_class(E, R, F) == part(E1) * part(E2));
      }
      const auto L = random_bundle(rng, c, 1);
      const auto P = ProjBundleRing::projective_completion(L);
      CHECK(zero_section_pushforward(TruncatedSeries::one(c), L, P, F) == zero_section_divisor_class(L, P, F));
      CHECK_THROWS_AS(zero_section_divisor_class(random_bundle(rng, c, 2), P, F), InvalidInput);
      CHECK_THROWS_AS(thom_class(random_bundle(rng, c, 2), P, F), InvalidInput);
    }
  }

  TEST_CASE("flag restriction examples") {
    const auto F = FormalGroupLaw::build(FglKind::universal_rational, 4, 3);
    const auto c = F.ring(2);
    const auto W = WeylGroupSpec::symmetric(2);
    const auto one = TruncatedSeries::one(c);
    const auto im = flag_restriction(one, t(c, 0), W, F);
    CHECK(im.components == std::vector<TruncatedSeries>{t(c, 0), t(c, 1)});
    CHECK(flag_restriction(one, one, W, F).components == std::vector<TruncatedSeries>{one, one});
    const auto v = gkm_congruences(im);
    REQUIRE(v.size() == 1);
    CHECK(v[0].holds);
    CHECK_THROWS_AS(flag_restriction(one, one, WeylGroupSpec::symmetric(3), F), InvalidInput);
  }

  TEST_CASE("flag restriction is multiplicative and congruent") {
    SeriesSampler rng(29);
    for (FglKind kind : kKinds) {
      const auto F = FormalGroupLaw::build(kind, 5, 4);
      const auto c = F.ring(2);
      const auto W = WeylGroupSpec::symmetric(2);
      for (int i = 0; i < 25; ++i) {
        const auto a = rng.series(c, 2), b = rng.series(c, 2), a2 = rng.series(c, 2), b2 = rng.series(c, 2);
        const auto x = flag_restriction(a, b, W, F), y = flag_restriction(a2, b2, W, F);
        const auto xy = flag_restriction(a * a2, b * b2, W, F);
        for (std::size_t k = 0; k < 2; ++k) CHECK(xy.components[k] == x.components[k] * y.components[k]);
        const std::pair<TruncatedSeries, TruncatedSeries> sum[] = {{a, b}, {a2, b2}};
        for (const auto& verdict : gkm_congruences(flag_restriction(sum, W, F))) CHECK(verdict.holds);
      }
    }
  }

  TEST_CASE("congruence detects a non-image tuple") {
    // (t1, 0) is not congruent: t1 does not vanish on t1 = t2.
    const auto F = FormalGroupLaw::build(FglKind::additive, 3, 0);
    const auto c = F.ring(2);
    FlagImage fake;
    fake.elements = WeylGroupSpec::symmetric(2).enumerate();
    fake.components = {t(c, 0), TruncatedSeries::zero(c)};
    const auto v = gkm_congruences(fake);
    REQUIRE(v.size() == 1);
    CHECK_FALSE(v[0].holds);
  }
}
