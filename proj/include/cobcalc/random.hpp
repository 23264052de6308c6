#pragma once

#include <cstdint>
#include <random>

#include "cobcalc/series.hpp"

namespace cobcalc {

// mt19937_64's output sequence is fixed by the standard; bounded draws use
// plain modulo so that a seed yields identical series on every platform.
class SeriesSampler {
 public:
  explicit SeriesSampler(std::uint64_t seed) : rng_(seed) {}

  std::uint64_t below(std::uint64_t n) { return n == 0 ? 0 : rng_() % n; }
  long between(long lo, long hi) { return lo + static_cast<long>(below(static_cast<std::uint64_t>(hi - lo + 1))); }

  /// Nonzero rational p/q with |p| <= max_num, 1 <= q <= max_den.
  Rational coefficient(long max_num = 5, long max_den = 3);

  /// Random monomial of t-degree in [min_t, max_t] (clamped to the caps)
  /// with a random Lazard part inside the weight cap.
  Monomial monomial(const RingContext& ctx, int min_t, int max_t);

  /// Sum of `terms` random terms; min_t = 1 gives an element of the
  /// augmentation ideal (zero constant term).
  TruncatedSeries series(const RingContext& ctx, int terms, int min_t = 0, int max_t = -1);

 private:
  std::mt19937_64 rng_;
};

}  // namespace cobcalc
