#include <doctest.h>

#include "cobcalc/error.hpp"
#include "cobcalc/linalg.hpp"

using namespace cobcalc;

namespace {
QMatrix from(std::vector<std::vector<long>> rows) {
  QMatrix m(rows.size(), rows.empty() ? 0 : rows[0].size());
  for (std::size_t r = 0; r < rows.size(); ++r)
    for (std::size_t c = 0; c < rows[r].size(); ++c) m(r, c) = rows[r][c];
  return m;
}
}  // namespace

TEST_SUITE("linalg") {
  TEST_CASE("rank and rref") {
    CHECK(from({{1, 2}, {2, 4}}).rank() == 1);
    CHECK(from({{1, 2}, {3, 4}}).rank() == 2);
    CHECK(QMatrix(3, 0).rank() == 0);
    auto m = from({{0, 2, 4}, {1, 1, 1}});
    const auto pivots = m.rref();
    CHECK(pivots == std::vector<std::size_t>{0, 1});
    CHECK(m(0, 2) == -1);
    CHECK(m(1, 2) == 2);
  }

  TEST_CASE("kernel vectors are annihilated") {
    const auto m = from({{1, 1, 0, 2}, {0, 0, 1, -1}});
    const auto ker = m.kernel();
    CHECK(ker.size() == 2);
    for (const auto& v : ker)
      for (std::size_t r = 0; r < m.rows(); ++r) {
        Rational s = 0;
        for (std::size_t c = 0; c < m.cols(); ++c) s += m(r, c) * v[c];
        CHECK(s == 0);
      }
  }

  TEST_CASE("inverse") {
    const auto m = from({{2, 1}, {1, 1}});
    CHECK(m * m.inverse() == QMatrix::identity(2));
    CHECK_THROWS_AS(from({{1, 2}, {2, 4}}).inverse(), InvalidInput);
    CHECK_THROWS_AS(from({{1, 2, 3}}).inverse(), InvalidInput);
  }

  TEST_CASE("stacking and column spaces") {
    QMatrix a(0, 0);
    a.stack_below(from({{1, 0}}));
    CHECK(a.rows() == 1);
    CHECK(same_column_space(from({{1, 0}, {0, 1}}), from({{2, 1}, {1, 1}})));
    CHECK_FALSE(same_column_space(from({{1}, {0}}), from({{0}, {1}})));
    CHECK(same_column_space(QMatrix(2, 0), QMatrix(2, 3)));
    CHECK(QMatrix::hconcat(from({{1}}), from({{2, 3}})) == from({{1, 2, 3}}));
  }
}
