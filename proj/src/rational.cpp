#include "cobcalc/rational.hpp"

#include <cctype>
#include <string>

#include "cobcalc/error.hpp"

namespace cobcalc {

std::string to_string(const Rational& q) { return q.get_str(); }

Rational parse_rational(std::string_view text) {
  auto bad = [&] { return InvalidInput("not a rational number: '" + std::string(text) + "'"); };
  std::size_t i = 0;
  if (i < text.size() && (text[i] == '-' || text[i] == '+')) ++i;
  const std::size_t num_start = i;
  while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) ++i;
  if (i == num_start) throw bad();
  if (i < text.size()) {
    if (text[i] != '/') throw bad();
    const std::size_t den_start = ++i;
    while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) ++i;
    if (i == den_start || i != text.size()) throw bad();
    if (text.find_first_not_of('0', den_start) == std::string_view::npos)
      throw InvalidInput("rational with zero denominator: '" + std::string(text) + "'");
  }
  std::string s(text[0] == '+' ? text.substr(1) : text);
  Rational q(s, 10);
  q.canonicalize();
  return q;
}

}  // namespace cobcalc
