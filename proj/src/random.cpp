#include "cobcalc/random.hpp"

#include <algorithm>
#include <vector>

namespace cobcalc {

Rational SeriesSampler::coefficient(long max_num, long max_den) {
  long p = 0;
  while (p == 0) p = between(-max_num, max_num);
  Rational q(p, between(1, max_den));
  q.canonicalize();
  return q;
}

Monomial SeriesSampler::monomial(const RingContext& ctx, int min_t, int max_t) {
  if (max_t < 0 || max_t > ctx.max_t) max_t = ctx.max_t;
  min_t = std::clamp(min_t, 0, max_t);
  int k = static_cast<int>(between(min_t, max_t));
  std::vector<int> t(ctx.n_vars, 0);
  for (int s = 0; s < k; ++s) ++t[below(ctx.n_vars)];
  Monomial m = Monomial::make(ctx, t);
  const int w = static_cast<int>(between(0, ctx.generator_count() == 0 ? 0 : ctx.max_w));
  const auto lazard = lazard_monomials_of_weight(ctx, w);
  if (!lazard.empty()) m = m * lazard[below(lazard.size())];
  return m;
}

TruncatedSeries SeriesSampler::series(const RingContext& ctx, int terms, int min_t, int max_t) {
  std::vector<Term> out;
  for (int i = 0; i < terms; ++i) out.push_back({monomial(ctx, min_t, max_t), coefficient()});
  return TruncatedSeries::from_terms(ctx, std::move(out));
}

}  // namespace cobcalc
