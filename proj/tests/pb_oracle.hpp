#pragma once

#include <vector>

#include "cobcalc/bundle.hpp"

namespace oracle {

// Schoolbook product of the two coordinate polynomials, long division by
// xi^n - c1 xi^{n-1} + ... + (-1)^n cn, then the xi-filtration cut.
inline std::vector<cobcalc::TruncatedSeries> divide_product(const cobcalc::ProjBundleElement& u, const cobcalc::ProjBundleElement& v) {
  const auto& R = *u.ring();
  const int n = R.rank();
  const cobcalc::RingContext& c = R.base();
  std::vector<cobcalc::TruncatedSeries> p(2 * n - 1, cobcalc::TruncatedSeries::zero(c));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) p[i + j] += u.coords()[i] * v.coords()[j];
  for (int k = 2 * n - 2; k >= n; --k) {
    const cobcalc::TruncatedSeries lead = p[k];
    p[k] = cobcalc::TruncatedSeries::zero(c);
    for (int i = 1; i <= n; ++i) {
      const cobcalc::TruncatedSeries term = lead * R.chern()[i - 1];
      if (i % 2 == 1)
        p[k - i] += term;
      else
        p[k - i] -= term;
    }
  }
  p.erase(p.begin() + n, p.end());
  for (int j = 0; j < n; ++j) p[j] = p[j].truncated_t(c.max_t - j);
  return p;
}

}  // namespace oracle
