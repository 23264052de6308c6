#include <doctest.h>

#include "cobcalc/error.hpp"
#include "cobcalc/random.hpp"
#include "cobcalc/rational.hpp"
#include "cobcalc/series_io.hpp"

using namespace cobcalc;

TEST_SUITE("io") {
  TEST_CASE("rationals") {
    CHECK(to_string(parse_rational("6/4")) == "3/2");
    CHECK(to_string(parse_rational("-7")) == "-7");
    CHECK(to_string(parse_rational("+2/1")) == "2");
    CHECK_THROWS_AS(parse_rational("1/0"), InvalidInput);
    CHECK_THROWS_AS(parse_rational("x"), InvalidInput);
    CHECK_THROWS_AS(parse_rational(""), InvalidInput);
    CHECK_THROWS_AS(parse_rational("1.5"), InvalidInput);
  }

  TEST_CASE("canonical text form") {
    const auto c = RingContext::make(2, CoeffKind::universal_rational, 4, 3);
    const auto x = TruncatedSeries::variable(c, 0), y = TruncatedSeries::variable(c, 1);
    const auto m1 = TruncatedSeries::generator(c, 1);
    CHECK(to_text(TruncatedSeries::zero(c)) == "0");
    CHECK(to_text(TruncatedSeries::constant(c, Rational(-1, 2))) == "-1/2");
    CHECK(to_text(x + y - 2 * m1 * x * y) == "1 * t1 + 1 * t2 - 2 * m1*t1*t2");
    CHECK(to_text(x.pow(2) * m1.pow(2)) == "1 * m1^2*t1^2");
    const auto b = RingContext::make(1, CoeffKind::multiplicative_beta, 3, 1);
    CHECK(to_text(TruncatedSeries::generator(b, 1) * TruncatedSeries::variable(b, 0)) == "1 * beta*t1");
  }

  TEST_CASE("parser accepts loose input") {
    const auto c = RingContext::make(2, CoeffKind::universal_rational, 4, 3);
    const auto x = TruncatedSeries::variable(c, 0), y = TruncatedSeries::variable(c, 1);
    CHECK(parse_series(c, "t1*t2") == x * y);
    CHECK(parse_series(c, "  3/2*m1 * t1 -t2+ t2 ") == Rational(3, 2) * TruncatedSeries::generator(c, 1) * x);
    CHECK(parse_series(c, "-t1") == -x);
    CHECK(parse_series(c, "0").is_zero());
    CHECK(parse_series(c, "t1^2*t1") == x.pow(3));
  }

  TEST_CASE("parser rejects bad input") {
    const auto c = RingContext::make(2, CoeffKind::universal_rational, 4, 3);
    CHECK_THROWS_AS(parse_series(c, "t3"), InvalidInput);
    CHECK_THROWS_AS(parse_series(c, "t1^5"), InvalidInput);
    CHECK_THROWS_AS(parse_series(c, "m4"), InvalidInput);
    CHECK_THROWS_AS(parse_series(c, "beta"), InvalidInput);
    CHECK_THROWS_AS(parse_series(c, "1/0 * t1"), InvalidInput);
    CHECK_THROWS_AS(parse_series(c, "t1 +"), InvalidInput);
    CHECK_THROWS_AS(parse_series(c, "t1 ** t2"), InvalidInput);
    CHECK_THROWS_AS(parse_series(c, ""), InvalidInput);
  }

  TEST_CASE("JSON form") {
    const auto c = RingContext::make(2, CoeffKind::universal_rational, 4, 3);
    const auto s = parse_series(c, "-2/3 * m1^2*t1*t2");
    const auto j = to_json(s);
    CHECK(j.dump() == R"([{"coeff":"-2/3","lazard":[[1,2]],"t":[1,1]}])");
    CHECK(series_from_json(c, j) == s);
    CHECK_THROWS_AS(series_from_json(c, nlohmann::json::object()), InvalidInput);
    CHECK_THROWS_AS(series_from_json(c, nlohmann::json::parse(R"([{"coeff":"1","lazard":[],"t":[1]}])")),
                    InvalidInput);
    CHECK_THROWS_AS(series_from_json(c, nlohmann::json::parse(R"([{"coeff":"1","lazard":[],"t":[5,0]}])")),
                    InvalidInput);
    CHECK_THROWS_AS(series_from_json(c, nlohmann::json::parse(R"([{"coeff":"1/0","lazard":[],"t":[1,0]}])")),
                    InvalidInput);
  }

  TEST_CASE("text and JSON round trips are exact") {
    SeriesSampler rng(11);
    for (int i = 0; i < 500; ++i) {
      const auto kind = static_cast<CoeffKind>(i % 3);
      const auto c = RingContext::make(1 + i % 4, kind, 2 + i % 5, i % 6);
      const auto s = rng.series(c, 6) * rng.series(c, 2);
      const std::string text = to_text(s);
      const auto back = parse_series(c, text);
      REQUIRE(back == s);
      REQUIRE(to_text(back) == text);
      const auto dumped = to_json(s).dump();
      const auto again = series_from_json(c, nlohmann::json::parse(dumped));
      REQUIRE(again == s);
      REQUIRE(to_json(again).dump() == dumped);
    }
  }
}
