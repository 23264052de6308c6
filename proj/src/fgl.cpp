#include "cobcalc/fgl.hpp"

#include <vector>

namespace cobcalc {

std::string to_string(FglKind kind) {
  switch (kind) {
    case FglKind::additive: return "additive";
    case FglKind::multiplicative: return "multiplicative";
    case FglKind::universal_rational: return "universal-rational";
  }
  return "?";
}

FglKind parse_fgl_kind(std::string_view name) {
  if (name == "additive") return FglKind::additive;
  if (name == "multiplicative") return FglKind::multiplicative;
  if (name == "universal" || name == "universal-rational") return FglKind::universal_rational;
  throw InvalidInput("unknown formal group law kind '" + std::string(name) +
                     "' (expected additive, multiplicative or universal)");
}

CoeffKind coefficient_kind(FglKind kind) {
  switch (kind) {
    case FglKind::additive: return CoeffKind::rational;
    case FglKind::multiplicative: return CoeffKind::multiplicative_beta;
    case FglKind::universal_rational: return CoeffKind::universal_rational;
  }
  return CoeffKind::rational;
}

TruncatedSeries universal_logarithm(const RingContext& ctx) {
  if (ctx.kind != CoeffKind::universal_rational || ctx.n_vars != 1)
    throw InvalidInput("universal_logarithm: needs a one-variable universal-rational context");
  const TruncatedSeries x = TruncatedSeries::variable(ctx, 0);
  TruncatedSeries log = x;
  for (int i = 1; i <= ctx.generator_count() && i + 1 <= ctx.max_t; ++i)
    log += TruncatedSeries::generator(ctx, i) * x.pow(i + 1);
  return log;
}

TruncatedSeries compositional_inverse(const TruncatedSeries& g) {
  const RingContext& ctx = g.context();
  if (ctx.n_vars != 1) throw InvalidInput("compositional_inverse: needs a one-variable series");
  const TruncatedSeries y = TruncatedSeries::variable(ctx, 0);
  if (g.has_constant_term() || (g - y).t_order() < 2)
    throw InvalidInput("compositional_inverse: series must be x + O(x^2)");
  // e <- e - (g(e) - y) gains one order of accuracy per round.
  TruncatedSeries e = y;
  for (int round = 0; round <= ctx.max_t + 1; ++round) {
    TruncatedSeries err = compose(g, std::span<const TruncatedSeries>(&e, 1)) - y;
    if (err.is_zero()) return e;
    e -= err;
  }
  throw InternalError("compositional_inverse: iteration did not converge inside the caps");
}

TruncatedSeries specialize_generators_to_zero(const TruncatedSeries& s) {
  RingContext target = RingContext::make(s.context().n_vars, CoeffKind::rational, s.context().max_t,
                                         s.context().max_w);
  std::vector<Term> kept;
  for (const Term& t : s.terms())
    if (t.mono.weight() == 0) kept.push_back(t);
  return TruncatedSeries::from_terms(target, std::move(kept));
}

namespace {

TruncatedSeries solve_inverse(const TruncatedSeries& law) {
  const RingContext one = law.context().with_vars(1);
  const TruncatedSeries x = TruncatedSeries::variable(one, 0);
  // chi <- chi - F(x, chi); F(x, y) = x + y + O(xy) so each round fixes one order.
  TruncatedSeries chi = -x;
  for (int round = 0; round <= one.max_t + 1; ++round) {
    std::vector<TruncatedSeries> args{x, chi};
    TruncatedSeries err = compose(law, args);
    if (err.is_zero()) return chi;
    chi -= err;
  }
  throw InternalError("formal inverse: iteration did not converge inside the caps");
}

}  // namespace

FormalGroupLaw FormalGroupLaw::build(FglKind kind, int max_t, int max_w) {
  return build(kind, RingContext::make(2, coefficient_kind(kind), max_t, max_w));
}

FormalGroupLaw FormalGroupLaw::build(FglKind kind, const RingContext& in) {
  if (in.kind != coefficient_kind(kind))
    throw InvalidInput("build_fgl: context coefficients do not match the " + to_string(kind) + " law");
  if (in.max_t < 2) throw InvalidInput("build_fgl: t-order cap must admit degree 2");
  const RingContext two = in.with_vars(2);
  const RingContext one = in.with_vars(1);
  const TruncatedSeries x = TruncatedSeries::variable(two, 0);
  const TruncatedSeries y = TruncatedSeries::variable(two, 1);

  std::optional<TruncatedSeries> log, exp;
  TruncatedSeries law(two);
  switch (kind) {
    case FglKind::additive:
      law = x + y;
      break;
    case FglKind::multiplicative:
      law = x + y - TruncatedSeries::generator(two, 1) * x * y;
      break;
    case FglKind::universal_rational: {
      log = universal_logarithm(one);
      exp = compositional_inverse(*log);
      std::vector<TruncatedSeries> at_x{x}, at_y{y};
      TruncatedSeries sum = compose(*log, at_x) + compose(*log, at_y);
      law = compose(*exp, std::span<const TruncatedSeries>(&sum, 1));
      break;
    }
  }

  FormalGroupLaw F(kind, std::move(law));
  F.log_ = std::move(log);
  F.exp_ = std::move(exp);
  F.inverse_ = solve_inverse(F.law_);

  const AxiomReport report = verify_fgl_axioms(F);
  if (!report.ok())
    throw InternalError("build_fgl: " + to_string(kind) + " law fails its axiom check (unit=" +
                        std::to_string(report.unit()) + " comm=" + std::to_string(report.comm()) +
                        " assoc=" + std::to_string(report.assoc()) + ")");
  return F;
}

AxiomReport verify_fgl_axioms(const FormalGroupLaw& F) {
  const RingContext two = F.context();
  const TruncatedSeries& law = F.law();
  const TruncatedSeries x = TruncatedSeries::variable(two, 0);
  const TruncatedSeries y = TruncatedSeries::variable(two, 1);
  const TruncatedSeries zero = TruncatedSeries::zero(two);

  auto at = [&](std::vector<TruncatedSeries> args) { return compose(law, args); };

  AxiomReport r{at({x, zero}) - x, at({zero, y}) - y, at({y, x}) - law, TruncatedSeries(two)};

  const RingContext three = two.with_vars(3);
  const TruncatedSeries a = TruncatedSeries::variable(three, 0);
  const TruncatedSeries b = TruncatedSeries::variable(three, 1);
  const TruncatedSeries c = TruncatedSeries::variable(three, 2);
  std::vector<TruncatedSeries> ab{a, b}, bc{b, c};
  const TruncatedSeries fab = compose(law, ab);
  const TruncatedSeries fbc = compose(law, bc);
  std::vector<TruncatedSeries> left{fab, c}, right{a, fbc};
  r.associativity = compose(law, left) - compose(law, right);
  return r;
}

}  // namespace cobcalc
