#pragma once

#include <string>
#include <string_view>

#include <json.hpp>

#include "cobcalc/series.hpp"

namespace cobcalc {

// Canonical text form: terms in canonical order joined by " + " / " - ",
// each written "c * m1^a*...*t1^b*..." (a bare "c" for constants, "0" for
// the zero series). Generators are m1, m2, ... or beta; variables t1..tn.
std::string to_text(const TruncatedSeries& s);
std::string to_text(const Monomial& m, const RingContext& ctx);

/// Inverse of to_text. Also accepts bare monomials ("t1*t2") and arbitrary
/// spacing. Terms outside the caps are rejected, not dropped.
TruncatedSeries parse_series(const RingContext& ctx, std::string_view text);

// JSON form: [{"coeff": "p/q", "lazard": [[i, a_i], ...], "t": [b_1, ..., b_n]}, ...]
nlohmann::json to_json(const TruncatedSeries& s);
TruncatedSeries series_from_json(const RingContext& ctx, const nlohmann::json& j);

nlohmann::json context_to_json(const RingContext& ctx);

}  // namespace cobcalc
