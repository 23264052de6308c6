#pragma once

#include <concepts>
#include <optional>
#include <span>
#include <vector>

#include "cobcalc/error.hpp"
#include "cobcalc/series.hpp"

namespace cobcalc {

// A commutative algebra over some truncated base ring: TruncatedSeries
// itself, or ProjBundleElement over a base. Base coefficients act via
// scale(); constants come from unit_like().
template <class A>
concept SeriesAlgebra = requires(const A& a, const TruncatedSeries& c) {
  { a + a } -> std::convertible_to<A>;
  { a * a } -> std::convertible_to<A>;
  { scale(a, c) } -> std::convertible_to<A>;
  { unit_like(a) } -> std::convertible_to<A>;
  { zero_like(a) } -> std::convertible_to<A>;
  { base_context(a) } -> std::convertible_to<const RingContext&>;
  { has_constant_term(a) } -> std::convertible_to<bool>;
};

/// Evaluates s(args[0], ..., args[n-1]). The Lazard part of every
/// coefficient is carried over into the base ring of the arguments, which
/// must share s's coefficient ring and caps.
template <SeriesAlgebra A>
A evaluate(const TruncatedSeries& s, std::span<const A> args) {
  const RingContext& src = s.context();
  if (args.size() != static_cast<std::size_t>(src.n_vars) || args.empty())
    throw InvalidInput("evaluate: need one argument per variable");
  const RingContext& base = base_context(args[0]);
  if (!base.same_coefficients(src))
    throw InvalidInput("evaluate: arguments live over a different coefficient ring");

  bool augmented = true;
  for (const A& a : args) augmented = augmented && !has_constant_term(a);

  std::vector<std::vector<A>> powers(args.size());
  for (std::size_t j = 0; j < args.size(); ++j) powers[j].push_back(unit_like(args[j]));
  auto power = [&](std::size_t j, int e) {
    while (static_cast<int>(powers[j].size()) <= e) powers[j].push_back(powers[j].back() * args[j]);
    return powers[j][e];
  };

  A result = zero_like(args[0]);
  auto terms = s.terms();
  std::size_t i = 0;
  while (i < terms.size()) {
    // Terms sharing a t-part are contiguous in canonical order.
    const Monomial tpart = terms[i].mono.t_part();
    std::vector<Term> coeff_terms;
    std::size_t k = i;
    for (; k < terms.size() && terms[k].mono.t_part() == tpart; ++k)
      coeff_terms.push_back({terms[k].mono.coefficient_part(), terms[k].coeff});
    i = k;
    if (augmented && tpart.t_degree() > base.max_t) continue;

    TruncatedSeries c = TruncatedSeries::from_terms(base, std::move(coeff_terms));
    std::optional<A> prod;
    for (std::size_t j = 0; j < args.size(); ++j) {
      int e = tpart.t_exp(static_cast<int>(j));
      if (e == 0) continue;
      prod = prod ? A(*prod * power(j, e)) : power(j, e);
    }
    result = result + scale(prod ? *prod : unit_like(args[0]), c);
  }
  return result;
}

template <SeriesAlgebra A>
A evaluate(const TruncatedSeries& s, std::initializer_list<A> args) {
  std::vector<A> v(args);
  return evaluate<A>(s, std::span<const A>(v));
}

}  // namespace cobcalc
