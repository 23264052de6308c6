#include <doctest.h>

#include "cobcalc/error.hpp"
#include "cobcalc/random.hpp"
#include "cobcalc/series.hpp"
#include "cobcalc/series_io.hpp"
#include "oracles.hpp"

using namespace cobcalc;

namespace {
RingContext uni(int n, int M, int W) { return RingContext::make(n, CoeffKind::universal_rational, M, W); }
TruncatedSeries t(const RingContext& c, int j) { return TruncatedSeries::variable(c, j); }
TruncatedSeries m(const RingContext& c, int g) { return TruncatedSeries::generator(c, g); }
}  // namespace

TEST_SUITE("series") {
  TEST_CASE("context validation") {
    CHECK_THROWS_AS(RingContext::make(0, CoeffKind::rational, 3, 0), InvalidInput);
    CHECK_THROWS_AS(RingContext::make(9, CoeffKind::rational, 3, 0), InvalidInput);
    CHECK_THROWS_AS(RingContext::make(1, CoeffKind::rational, -1, 0), InvalidInput);
    CHECK_THROWS_AS(RingContext::make(1, CoeffKind::rational, 3, -2), InvalidInput);
    CHECK_THROWS_AS(RingContext::make(1, CoeffKind::universal_rational, 3, 17), InvalidInput);
    CHECK_NOTHROW(RingContext::make(1, CoeffKind::rational, 0, 0));
  }

  TEST_CASE("generators per coefficient kind") {
    CHECK(RingContext::make(2, CoeffKind::rational, 4, 3).generator_count() == 0);
    CHECK(RingContext::make(2, CoeffKind::multiplicative_beta, 4, 3).generator_count() == 1);
    // beta stays addressable at W = 0; its terms just fall outside the window
    CHECK(RingContext::make(2, CoeffKind::multiplicative_beta, 4, 0).generator_count() == 1);
    CHECK(TruncatedSeries::generator(RingContext::make(2, CoeffKind::multiplicative_beta, 4, 0), 1).is_zero());
    const auto u = uni(2, 4, 3);
    CHECK(u.generator_count() == 3);
    CHECK(u.generator_weight(2) == 2);
    CHECK(u.generator_name(3) == "m3");
    CHECK(RingContext::make(1, CoeffKind::multiplicative_beta, 4, 3).generator_name(1) == "beta");
  }

  TEST_CASE("monomial order puts lower t-degree first") {
    const auto c = uni(2, 4, 3);
    const auto s = m(c, 1) * t(c, 0) * t(c, 1) + t(c, 0) + m(c, 2) + TruncatedSeries::one(c);
    REQUIRE(s.size() == 4);
    CHECK(s.terms()[0].mono.t_degree() == 0);
    CHECK(s.terms()[0].mono.weight() == 0);
    CHECK(s.terms()[1].mono.t_degree() == 0);
    CHECK(s.terms()[2].mono.t_degree() == 1);
    CHECK(s.terms()[3].mono.t_degree() == 2);
  }

  TEST_CASE("from_terms collects, drops zeros and out-of-cap terms") {
    const auto c = uni(1, 2, 1);
    const Monomial x = Monomial::variable(0);
    std::vector<Term> terms{{x, 2}, {x, -2}, {x * x * x, 1}, {Monomial::generator(c, 1) * x, 3}};
    const auto s = TruncatedSeries::from_terms(c, terms);
    CHECK(s.size() == 1);
    CHECK(s.coefficient(Monomial::generator(c, 1) * x) == 3);
    CHECK(TruncatedSeries::from_terms(c, {{x, 0}}).is_zero());
  }

  TEST_CASE("truncation drops silently") {
    const auto c = uni(2, 3, 2);
    CHECK(t(c, 0).pow(4).is_zero());
    CHECK(t(c, 0).pow(3) == TruncatedSeries::monomial(c, Monomial::make(c, std::vector<int>{3, 0})));
    CHECK((m(c, 1) * m(c, 2)).is_zero());
    CHECK(t(c, 0).pow(0) == TruncatedSeries::one(c));
  }

  TEST_CASE("t_order and truncated_t") {
    const auto c = uni(2, 5, 2);
    const auto s = t(c, 0) * t(c, 1) + t(c, 0).pow(4);
    CHECK(s.t_order() == 2);
    CHECK(TruncatedSeries::zero(c).t_order() == 6);
    CHECK(s.truncated_t(3) == t(c, 0) * t(c, 1));
    CHECK(s.has_constant_term() == false);
    CHECK((s + m(c, 1)).has_constant_term());
  }

  TEST_CASE("mixing contexts is rejected") {
    const auto a = t(uni(2, 3, 2), 0), b = t(uni(2, 4, 2), 0);
    CHECK_THROWS_AS(a + b, InvalidInput);
    CHECK_THROWS_AS(a * b, InvalidInput);
    CHECK_THROWS_AS(TruncatedSeries::variable(uni(2, 3, 2), 2), InvalidInput);
  }

  TEST_CASE("substitute and compose") {
    const auto c = uni(2, 4, 2);
    const auto s = t(c, 0) * t(c, 1) + t(c, 0);
    const auto r = substitute(s, {{0, t(c, 1) + m(c, 1) * t(c, 1).pow(2)}});
    CHECK(r == (t(c, 1) + m(c, 1) * t(c, 1).pow(2)) * t(c, 1) + t(c, 1) + m(c, 1) * t(c, 1).pow(2));
    CHECK_THROWS_AS(substitute(s, {{0, TruncatedSeries::one(c)}}), InvalidInput);
    CHECK_THROWS_AS(substitute(s, {{2, t(c, 1)}}), InvalidInput);

    const auto c3 = c.with_vars(3);
    const std::vector<TruncatedSeries> images{t(c3, 2), t(c3, 0) + t(c3, 1)};
    CHECK(compose(s, images) == t(c3, 2) * (t(c3, 0) + t(c3, 1)) + t(c3, 2));
    CHECK_THROWS_AS(compose(s, std::span(images.data(), 1)), InvalidInput);
  }

  TEST_CASE("in_context widens the variable set") {
    const auto c = uni(1, 3, 2);
    const auto s = t(c, 0) + m(c, 2);
    const auto w = s.in_context(c.with_vars(3));
    CHECK(w.context().n_vars == 3);
    CHECK(to_text(w) == to_text(s));
    CHECK_THROWS_AS(s.in_context(uni(1, 2, 2)), InvalidInput);
  }

  TEST_CASE("ring axioms on random triples") {
    SeriesSampler rng(1);
    const RingContext ctxs[] = {uni(2, 4, 3), RingContext::make(2, CoeffKind::multiplicative_beta, 5, 3),
                                RingContext::make(3, CoeffKind::rational, 4, 0)};
    int failures = 0;
    for (int i = 0; i < 1200; ++i) {
      const auto& c = ctxs[i % 3];
      const auto a = rng.series(c, 4), b = rng.series(c, 4), d = rng.series(c, 4);
      failures += !((a * b) * d == a * (b * d));
      failures += !(a * (b + d) == a * b + a * d);
      failures += !(a * b == b * a);
      failures += !((a + b) + d == a + (b + d));
      failures += !(a - a == TruncatedSeries::zero(c));
      failures += !(a * TruncatedSeries::one(c) == a);
    }
    CHECK(failures == 0);
  }

  TEST_CASE("substitute is a ring homomorphism") {
    SeriesSampler rng(2);
    const auto c = uni(3, 4, 3);
    int failures = 0;
    for (int i = 0; i < 200; ++i) {
      const std::map<int, TruncatedSeries> sub{{1, rng.series(c, 3, 1)}, {2, rng.series(c, 2, 1)}};
      const auto a = rng.series(c, 4), b = rng.series(c, 4);
      failures += !(substitute(a * b, sub) == substitute(a, sub) * substitute(b, sub));
      failures += !(substitute(a + b, sub) == substitute(a, sub) + substitute(b, sub));
    }
    CHECK(failures == 0);
  }

  TEST_CASE("every stored monomial respects the caps") {
    SeriesSampler rng(3);
    for (int i = 0; i < 200; ++i) {
      const auto c = uni(1 + i % 3, 2 + i % 4, i % 4);
      const auto s = rng.series(c, 5) * rng.series(c, 5) + rng.series(c, 3);
      for (const Term& term : s.terms()) {
        REQUIRE(term.mono.fits(c));
        REQUIRE(term.coeff != 0);
      }
    }
  }

  TEST_CASE("bidegree_basis agrees with an exhaustive enumerator") {
    for (auto kind : {CoeffKind::rational, CoeffKind::multiplicative_beta, CoeffKind::universal_rational})
      for (int n = 1; n <= 3; ++n)
        for (int M = 0; M <= 6; M += 3)
          for (int W = 0; W <= 6; W += 2) {
            if (n == 3 && M == 6 && W == 6) continue;  // keep the odometer small
            const auto c = RingContext::make(n, kind, M, W);
            std::vector<int> weights;
            for (int g = 1; g <= c.generator_count(); ++g) weights.push_back(c.generator_weight(g));
            for (int d = -W; d <= M; ++d)
              for (int k = 0; k <= M; ++k) {
                CAPTURE(n);
                CAPTURE(M);
                CAPTURE(W);
                CAPTURE(d);
                CAPTURE(k);
                REQUIRE(bidegree_basis(c, d, k).size() == oracle::bidegree_count(n, weights, M, W, d, k));
              }
          }
  }

  TEST_CASE("bidegree_basis content and bounds") {
    const auto c = uni(1, 3, 2);
    const auto basis = bidegree_basis(c, 0, 1);  // m1 t1
    REQUIRE(basis.size() == 1);
    CHECK(to_text(basis[0], c) == "m1*t1");
    CHECK_THROWS_AS(bidegree_basis(c, 0, 4), InvalidInput);
    CHECK_THROWS_AS(bidegree_basis(c, 0, -1), InvalidInput);
    CHECK(bidegree_basis(c, 9, 3).empty());
  }

  TEST_CASE("Lazard monomials of a weight are partitions") {
    const auto c = uni(1, 2, 8);
    const std::size_t partitions[] = {1, 1, 2, 3, 5, 7, 11, 15, 22};
    for (int w = 0; w <= 8; ++w) CHECK(lazard_monomials_of_weight(c, w).size() == partitions[w]);
  }
}
