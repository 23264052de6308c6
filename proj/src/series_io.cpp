#include "cobcalc/series_io.hpp"

#include <cctype>
#include <string>
#include <vector>

#include "cobcalc/error.hpp"

namespace cobcalc {

namespace {

void append_factor(std::string& out, const std::string& name, int e) {
  if (!out.empty()) out += '*';
  out += name;
  if (e > 1) out += '^' + std::to_string(e);
}

}  // namespace

std::string to_text(const Monomial& m, const RingContext& ctx) {
  std::string out;
  for (int g = 1; g <= ctx.generator_count(); ++g)
    if (int e = m.lazard_exp(g)) append_factor(out, ctx.generator_name(g), e);
  for (int j = 0; j < ctx.n_vars; ++j)
    if (int e = m.t_exp(j)) append_factor(out, "t" + std::to_string(j + 1), e);
  return out;
}

std::string to_text(const TruncatedSeries& s) {
  if (s.is_zero()) return "0";
  std::string out;
  bool first = true;
  for (const Term& t : s.terms()) {
    Rational c = t.coeff;
    if (!first) {
      out += c < 0 ? " - " : " + ";
      if (c < 0) c = -c;
    }
    first = false;
    out += to_string(c);
    std::string mono = to_text(t.mono, s.context());
    if (!mono.empty()) out += " * " + mono;
  }
  return out;
}

namespace {

class SeriesParser {
 public:
  SeriesParser(const RingContext& ctx, std::string_view text) : ctx_(ctx) {
    for (char ch : text)
      if (!std::isspace(static_cast<unsigned char>(ch))) src_ += ch;
  }

  TruncatedSeries run() {
    if (src_.empty()) fail("empty input");
    std::vector<Term> terms;
    bool negate = false;
    if (peek() == '-' || peek() == '+') negate = get() == '-';
    terms.push_back(term(negate));
    while (pos_ < src_.size()) {
      char op = get();
      if (op != '+' && op != '-') fail("expected '+' or '-'");
      terms.push_back(term(op == '-'));
    }
    for (const Term& t : terms)
      if (!t.mono.fits(ctx_)) fail("term exceeds the context caps");
    return TruncatedSeries::from_terms(ctx_, std::move(terms));
  }

 private:
  char peek() const { return pos_ < src_.size() ? src_[pos_] : '\0'; }
  char get() {
    if (pos_ >= src_.size()) fail("unexpected end of input");
    return src_[pos_++];
  }
  [[noreturn]] void fail(const std::string& what) const {
    throw InvalidInput("series parse error at offset " + std::to_string(pos_) + ": " + what);
  }

  std::string digits() {
    std::size_t start = pos_;
    while (std::isdigit(static_cast<unsigned char>(peek()))) ++pos_;
    if (start == pos_) fail("expected digits");
    return src_.substr(start, pos_ - start);
  }

  Term term(bool negate) {
    Rational c = 1;
    std::vector<int> t(ctx_.n_vars, 0);
    std::vector<std::pair<int, int>> lz;
    bool need_factor = true;
    if (std::isdigit(static_cast<unsigned char>(peek()))) {
      std::string num = digits();
      if (peek() == '/') {
        ++pos_;
        num += '/' + digits();
      }
      c = parse_rational(num);
      need_factor = false;
      if (peek() == '*') {
        ++pos_;
        need_factor = true;
      } else {
        return {Monomial{}, negate ? Rational(-c) : c};
      }
    }
    if (need_factor) {
      factor(t, lz);
      while (peek() == '*') {
        ++pos_;
        factor(t, lz);
      }
    }
    return {Monomial::make(ctx_, t, lz), negate ? Rational(-c) : c};
  }

  void factor(std::vector<int>& t, std::vector<std::pair<int, int>>& lz) {
    std::size_t start = pos_;
    while (std::isalpha(static_cast<unsigned char>(peek()))) ++pos_;
    std::string name = src_.substr(start, pos_ - start);
    int index = 1;
    if (name != "beta") index = std::stoi(digits());
    int e = 1;
    if (peek() == '^') {
      ++pos_;
      e = std::stoi(digits());
    }
    if (name == "t") {
      if (index < 1 || index > ctx_.n_vars) fail("variable t" + std::to_string(index) + " not in context");
      t[index - 1] += e;
    } else if ((name == "m" && ctx_.kind == CoeffKind::universal_rational) ||
               (name == "beta" && ctx_.kind == CoeffKind::multiplicative_beta)) {
      if (index < 1 || index > ctx_.generator_count()) fail("generator index out of range");
      bool merged = false;
      for (auto& [g, ge] : lz)
        if (g == index) ge += e, merged = true;
      if (!merged) lz.emplace_back(index, e);
    } else {
      fail("unknown factor '" + name + "'");
    }
  }

  const RingContext& ctx_;
  std::string src_;
  std::size_t pos_ = 0;
};

}  // namespace

TruncatedSeries parse_series(const RingContext& ctx, std::string_view text) {
  std::string_view trimmed = text;
  while (!trimmed.empty() && std::isspace(static_cast<unsigned char>(trimmed.front()))) trimmed.remove_prefix(1);
  while (!trimmed.empty() && std::isspace(static_cast<unsigned char>(trimmed.back()))) trimmed.remove_suffix(1);
  if (trimmed == "0") return TruncatedSeries::zero(ctx);
  return SeriesParser(ctx, trimmed).run();
}

nlohmann::json to_json(const TruncatedSeries& s) {
  nlohmann::json arr = nlohmann::json::array();
  for (const Term& t : s.terms()) {
    nlohmann::json lz = nlohmann::json::array();
    for (auto [g, e] : t.mono.lazard_exps()) lz.push_back({g, e});
    arr.push_back({{"coeff", to_string(t.coeff)}, {"lazard", lz}, {"t", t.mono.t_exps(s.context())}});
  }
  return arr;
}

TruncatedSeries series_from_json(const RingContext& ctx, const nlohmann::json& j) {
  if (!j.is_array()) throw InvalidInput("series JSON must be an array of terms");
  std::vector<Term> terms;
  try {
    for (const auto& item : j) {
      Rational c = parse_rational(item.at("coeff").get<std::string>());
      auto t = item.at("t").get<std::vector<int>>();
      auto lz = item.at("lazard").get<std::vector<std::pair<int, int>>>();
      Monomial m = Monomial::make(ctx, t, lz);
      if (!m.fits(ctx)) throw InvalidInput("series JSON: term exceeds the context caps");
      terms.push_back({m, std::move(c)});
    }
  } catch (const nlohmann::json::exception& e) {
    throw InvalidInput(std::string("series JSON: ") + e.what());
  }
  return TruncatedSeries::from_terms(ctx, std::move(terms));
}

nlohmann::json context_to_json(const RingContext& ctx) {
  return {{"coeff_kind", to_string(ctx.kind)},
          {"n_vars", ctx.n_vars},
          {"max_t", ctx.max_t},
          {"max_w", ctx.max_w}};
}

}  // namespace cobcalc
