#include "cobcalc/cli.hpp"

#include <algorithm>
#include <charconv>
#include <map>
#include <thread>

#include <json.hpp>

#include "cobcalc/bundle.hpp"
#include "cobcalc/error.hpp"
#include "cobcalc/random.hpp"
#include "cobcalc/selftest.hpp"
#include "cobcalc/series_io.hpp"
#include "cobcalc/tower.hpp"

namespace cobcalc::cli {
namespace {

using nlohmann::json;

constexpr int kDefaultMaxT = 6;
constexpr int kDefaultMaxW = 5;
constexpr int kCapLimit = 12;

int parse_int(std::string_view text, std::string_view what) {
  int v = 0;
  const char* end = text.data() + text.size();
  auto [ptr, ec] = std::from_chars(text.data(), end, v);
  if (text.empty() || ec != std::errc() || ptr != end)
    throw InvalidInput(std::string(what) + ": expected an integer, got '" + std::string(text) + "'");
  return v;
}

void require(bool ok, const std::string& message) {
  if (!ok) throw InvalidInput(message);
}

json caps_json(const RingContext& ctx) { return {{"max_t", ctx.max_t}, {"max_w", ctx.max_w}}; }

json matrix_json(const IntMatrix& m) { return m.rows(); }

// Flattens a report to "path = value" lines.
void flatten(const json& j, const std::string& path, std::ostream& out) {
  if (j.is_object()) {
    for (auto it = j.begin(); it != j.end(); ++it) flatten(it.value(), path.empty() ? it.key() : path + "." + it.key(), out);
  } else if (j.is_array() && !j.empty() && (j.front().is_object() || j.front().is_array())) {
    for (std::size_t i = 0; i < j.size(); ++i) flatten(j[i], path + "[" + std::to_string(i) + "]", out);
  } else if (j.is_string()) {
    out << path << " = " << j.get<std::string>() << "\n";
  } else {
    out << path << " = " << j.dump() << "\n";
  }
}

void emit(const json& report, OutputFormat format, std::ostream& out) {
  if (format == OutputFormat::json)
    out << report.dump(2) << "\n";
  else
    flatten(report, "", out);
}

WeylGroupSpec weyl_of(const JobConfig& c, std::string& name, int& rank) {
  if (!c.weyl.empty()) {
    rank = c.weyl.front().size();
    name = "custom";
    return WeylGroupSpec::make(rank, c.weyl);
  }
  const GroupPreset G = GroupPreset::parse(c.group);
  name = G.name;
  rank = G.rank;
  return G.weyl;
}

// ------------------------------------------------------------ subcommands

int run_fgl_check(const JobConfig& c, std::ostream& out) {
  const auto F = FormalGroupLaw::build(c.fgl, *c.max_t, *c.max_w);
  const AxiomReport r = verify_fgl_axioms(F);
  json report = {{"schema", "cobcalc.fgl-check/1"},
                 {"kind", to_string(c.fgl)},
                 {"caps", caps_json(F.context())},
                 {"unit", r.unit()},
                 {"comm", r.comm()},
                 {"assoc", r.assoc()},
                 {"residuals",
                  {{"unit_left", to_text(r.unit_left)},
                   {"unit_right", to_text(r.unit_right)},
                   {"comm", to_text(r.commutativity)},
                   {"assoc", to_text(r.associativity)}}},
                 {"law_terms", F.law().size()}};
  emit(report, c.format, out);
  return r.ok() ? kExitOk : kExitCheckFailed;
}

int run_bg(const JobConfig& c, std::ostream& out) {
  const auto F = FormalGroupLaw::build(c.fgl, *c.max_t, *c.max_w);
  std::string name;
  int rank = 0;
  const WeylGroupSpec W = weyl_of(c, name, rank);
  const auto [lo, hi] = *c.degrees;
  json dims = json::object(), basis = json::object();
  if (c.emit_basis) {
    for (int d = lo; d <= hi; ++d) {
      const InvariantSpace inv = invariant_basis(W, F, d, *c.torder);
      dims[std::to_string(d)] = inv.dimension();
      json list = json::array();
      for (const auto& b : inv.basis) list.push_back(to_text(b));
      basis[std::to_string(d)] = list;
    }
  } else {
    GroupPreset G{name, rank, W, W.enumerate().size()};
    for (const auto& [d, n] : bg_dimensions(G, F, lo, hi, *c.torder, c.threads)) dims[std::to_string(d)] = n;
  }
  json report = {{"schema", "cobcalc.bg/1"},
                 {"group", name},
                 {"fgl", to_string(c.fgl)},
                 {"caps", caps_json(F.context())},
                 {"torder", *c.torder},
                 {"dims", dims}};
  if (c.emit_basis) report["basis"] = basis;
  emit(report, c.format, out);
  return kExitOk;
}

int run_flag(const JobConfig& c, std::ostream& out) {
  const auto F = FormalGroupLaw::build(c.fgl, *c.max_t, *c.max_w);
  std::string name;
  int rank = 0;
  const WeylGroupSpec W = weyl_of(c, name, rank);
  const RingContext ctx = F.ring(rank);
  const TruncatedSeries a = parse_series(ctx, c.a), b = parse_series(ctx, c.b);

  const FlagImage image = flag_restriction(a, b, W, F);
  json elements = json::array(), images = json::array(), congruences = json::array();
  for (const auto& w : image.elements) elements.push_back(matrix_json(w));
  for (const auto& s : image.components) images.push_back(to_text(s));
  bool congruent = true;
  for (const auto& v : gkm_congruences(image)) {
    congruences.push_back({{"from", v.from}, {"to", v.to}, {"i", v.i + 1}, {"j", v.j + 1}, {"holds", v.holds}});
    congruent = congruent && v.holds;
  }

  // Random pure tensors: multiplicativity, and congruences on their sums.
  SeriesSampler rng(c.seed);
  bool multiplicative = true, random_congruent = true;
  std::string first_failure;
  for (int t = 0; t < c.trials; ++t) {
    const auto a1 = rng.series(ctx, 2), b1 = rng.series(ctx, 2), a2 = rng.series(ctx, 2), b2 = rng.series(ctx, 2);
    const auto x = flag_restriction(a1, b1, W, F), y = flag_restriction(a2, b2, W, F);
    const auto xy = flag_restriction(a1 * a2, b1 * b2, W, F);
    for (std::size_t k = 0; k < xy.components.size(); ++k) {
      const auto residual = xy.components[k] - x.components[k] * y.components[k];
      if (!residual.is_zero() && multiplicative) {
        multiplicative = false;
        if (first_failure.empty()) first_failure = "multiplicativity residual " + to_text(residual);
      }
    }
    const std::pair<TruncatedSeries, TruncatedSeries> sum[] = {{a1, b1}, {a2, b2}};
    const auto s = flag_restriction(sum, W, F);
    for (const auto& v : gkm_congruences(s))
      if (!v.holds && random_congruent) {
        random_congruent = false;
        if (first_failure.empty())
          first_failure = "congruence difference " + to_text(s.components[v.from] - s.components[v.to]);
      }
  }

  const bool passed = congruent && multiplicative && random_congruent;
  json report = {{"schema", "cobcalc.flag/1"},
                 {"group", name},
                 {"fgl", to_string(c.fgl)},
                 {"caps", caps_json(ctx)},
                 {"a", to_text(a)},
                 {"b", to_text(b)},
                 {"elements", elements},
                 {"images", images},
                 {"congruences", congruences},
                 {"random", {{"trials", c.trials}, {"seed", c.seed}, {"multiplicative", multiplicative},
                             {"congruences", random_congruent}}},
                 {"passed", passed}};
  if (!first_failure.empty()) report["counterexample"] = first_failure;
  emit(report, c.format, out);
  return passed ? kExitOk : kExitCheckFailed;
}

SplitBundle sample_bundle(SeriesSampler& rng, const RingContext& ctx, int rank) {
  std::vector<TruncatedSeries> roots;
  for (int j = 0; j < rank; ++j) roots.push_back(rng.series(ctx, 2, 1, 2));
  return SplitBundle::make(std::move(roots));
}

int run_sif(const JobConfig& c, std::ostream& out) {
  const auto F = FormalGroupLaw::build(c.fgl, *c.max_t, *c.max_w);
  const RingContext ctx = F.ring(c.vars);
  SeriesSampler rng(c.seed);
  const SplitBundle E = sample_bundle(rng, ctx, *c.rank);
  const auto R = ProjBundleRing::projective_completion(E);
  const auto th = thom_class(E, R, F);
  const auto cn = chern_classes(E).back();

  std::size_t nonzero = 0;
  std::string first;
  for (int t = 0; t < c.trials; ++t) {
    const auto a = rng.series(ctx, 3);
    const auto residual = zero_section_restriction(zero_section_pushforward(a, th)) - a * cn;
    if (!residual.is_zero()) {
      if (nonzero++ == 0) first = "a = " + to_text(a) + "; residual = " + to_text(residual);
    }
  }
  const auto unit = zero_section_pushforward(TruncatedSeries::one(ctx), th);
  bool unit_ok = zero_section_restriction(unit) == cn;
  json roots = json::array();
  for (const auto& x : E.roots) roots.push_back(to_text(x));
  json report = {{"schema", "cobcalc.sif/1"},
                 {"fgl", to_string(c.fgl)},
                 {"caps", caps_json(ctx)},
                 {"rank", *c.rank},
                 {"vars", c.vars},
                 {"seed", c.seed},
                 {"trials", c.trials},
                 {"roots", roots},
                 {"top_chern", to_text(cn)},
                 {"nonzero_residuals", nonzero},
                 {"residual", nonzero ? first : std::string("0")},
                 {"unit_restriction", unit_ok}};
  if (*c.rank == 1) {
    const bool divisor = unit == zero_section_divisor_class(E, R, F);
    report["divisor_identity"] = divisor;
    unit_ok = unit_ok && divisor;
  }
  const bool passed = nonzero == 0 && unit_ok;
  report["passed"] = passed;
  emit(report, c.format, out);
  return passed ? kExitOk : kExitCheckFailed;
}

int run_pbf(const JobConfig& c, std::ostream& out) {
  const RingContext ctx = RingContext::make(2, coefficient_kind(c.fgl), *c.max_t, *c.max_w);
  SeriesSampler rng(c.seed);
  json ranks = json::object();
  bool passed = true;
  for (int n = 1; n <= *c.rank; ++n) {
    const auto T = ProjBundleRing::trivial(ctx, n);
    bool top_zero = true;
    for (const auto& x : ProjBundleElement::xi_power(T, n).coords()) top_zero = top_zero && x.is_zero();

    const auto R = ProjBundleRing::make(ctx, chern_classes(sample_bundle(rng, ctx, n)));
    bool confluent = true;
    for (int k = 0; k <= 2 * n + 2; ++k) {
      std::vector<TruncatedSeries> poly(k + 1, TruncatedSeries::zero(ctx));
      poly[k] = TruncatedSeries::one(ctx);
      const auto a = R->reduce(poly);
      confluent = confluent && a == R->reduce_by_table(poly) && a == R->power_coordinates(k);
    }
    bool ring_laws = true;
    for (int t = 0; t < std::min(c.trials, 20); ++t) {
      auto element = [&] {
        std::vector<TruncatedSeries> coords;
        for (int j = 0; j < n; ++j) coords.push_back(rng.series(ctx, 2, 0, 3));
        return ProjBundleElement(R, coords);
      };
      const auto u = element(), v = element(), w = element();
      ring_laws = ring_laws && u * v == v * u && (u * v) * w == u * (v * w) && (u * v).coords().size() == std::size_t(n);
    }
    ranks[std::to_string(n)] = {{"trivial_top_power_zero", top_zero}, {"confluent", confluent}, {"ring_laws", ring_laws}};
    passed = passed && top_zero && confluent && ring_laws;
  }
  json report = {{"schema", "cobcalc.pbf/1"},
                 {"fgl", to_string(c.fgl)},
                 {"caps", caps_json(ctx)},
                 {"seed", c.seed},
                 {"ranks", ranks},
                 {"passed", passed}};
  emit(report, c.format, out);
  return passed ? kExitOk : kExitCheckFailed;
}

int run_tower(const JobConfig& c, std::ostream& out) {
  const auto F = FormalGroupLaw::build(c.fgl, *c.max_t, *c.max_w);
  const auto [lo, hi] = *c.degrees;
  const Tower T = projective_space_tower(F, hi, *c.levels, lo);
  json degrees = json::object();
  bool all = true;
  for (int d = lo; d <= hi; ++d) {
    const auto lag = stabilization_index(T, d);
    json entry = {{"stab_index", nullptr}, {"lim_dim", nullptr}};
    if (lag) {
      entry["stab_index"] = *lag;
      entry["lim_dim"] = inverse_limit_dim(T, d);
    } else {
      entry["refused"] = "images still shrinking at the end of the window";
      all = false;
    }
    degrees[std::to_string(d)] = entry;
  }
  json report = {{"schema", "cobcalc.tower-bgm/1"},
                 {"fgl", to_string(c.fgl)},
                 {"caps", caps_json(F.context())},
                 {"levels", *c.levels},
                 {"degrees", degrees}};
  emit(report, c.format, out);
  return all ? kExitOk : kExitRefused;
}

int run_selftest_job(const JobConfig& c, std::ostream& out) {
  const auto results = run_selftest(c.seed, c.threads);
  const bool passed = std::all_of(results.begin(), results.end(), [](const CheckResult& r) { return r.passed; });
  const auto first = std::find_if(results.begin(), results.end(), [](const CheckResult& r) { return !r.passed; });
  if (c.format == OutputFormat::text) {
    std::size_t ok = 0;
    for (const auto& r : results) {
      out << (r.passed ? "PASS " : "FAIL ") << r.name << ": " << r.detail << "\n";
      ok += r.passed;
    }
    out << "selftest seed " << c.seed << ": " << ok << "/" << results.size() << " passed\n";
    if (first != results.end()) out << "first counterexample (" << first->name << "): " << first->counterexample << "\n";
  } else {
    json checks = json::array();
    for (const auto& r : results) {
      json entry = {{"name", r.name}, {"passed", r.passed}, {"detail", r.detail}};
      if (!r.passed) entry["counterexample"] = r.counterexample;
      checks.push_back(entry);
    }
    json report = {{"schema", "cobcalc.selftest/1"}, {"seed", c.seed}, {"checks", checks}, {"passed", passed}};
    if (first != results.end()) report["first_counterexample"] = {{"check", first->name}, {"terms", first->counterexample}};
    emit(report, c.format, out);
  }
  return passed ? kExitOk : kExitCheckFailed;
}

}  // namespace

std::pair<int, int> parse_degree_range(std::string_view text) {
  const auto dots = text.find("..");
  if (dots == std::string_view::npos) {
    const int d = parse_int(text, "degree");
    return {d, d};
  }
  const int lo = parse_int(text.substr(0, dots), "degree range start");
  const int hi = parse_int(text.substr(dots + 2), "degree range end");
  require(lo <= hi, "degree range '" + std::string(text) + "' is empty (start > end)");
  return {lo, hi};
}

IntMatrix parse_weyl_matrix(std::string_view text) {
  std::vector<std::vector<long>> rows;
  std::size_t start = 0;
  while (start <= text.size()) {
    const auto stop = std::min(text.find(';', start), text.size());
    std::vector<long> row;
    std::string_view r = text.substr(start, stop - start);
    std::size_t s = 0;
    while (s <= r.size()) {
      const auto e = std::min(r.find(',', s), r.size());
      std::string_view cell = r.substr(s, e - s);
      while (!cell.empty() && cell.front() == ' ') cell.remove_prefix(1);
      while (!cell.empty() && cell.back() == ' ') cell.remove_suffix(1);
      row.push_back(parse_int(cell, "Weyl matrix entry"));
      s = e + 1;
    }
    rows.push_back(std::move(row));
    start = stop + 1;
  }
  return IntMatrix::from_rows(rows);
}

unsigned threads_from_env(const char* value) {
  const unsigned hw = std::max(1u, std::thread::hardware_concurrency());
  if (value == nullptr || *value == '\0') return hw;
  const int cap = parse_int(value, "COBCALC_THREADS");
  require(cap >= 1, "COBCALC_THREADS must be a positive integer");
  return std::min(hw, static_cast<unsigned>(cap));
}

JobConfig resolve(const JobConfig& config) {
  JobConfig c = config;
  static const std::vector<std::string> known = {"fgl check", "bg", "flag", "sif", "pbf", "tower bgm", "selftest"};
  require(std::find(known.begin(), known.end(), c.subcommand) != known.end(),
          "unknown subcommand '" + c.subcommand + "'; expected one of: fgl check, bg, flag, sif, pbf, tower bgm, selftest");
  require(c.threads >= 1, "threads must be at least 1");

  const bool torder_is_cap = c.subcommand == "sif" || c.subcommand == "pbf";
  if (torder_is_cap && c.torder) {
    require(!c.max_t || *c.max_t == *c.torder,
            "--torder and --max-t disagree; for " + c.subcommand + " they both set the t-order cap");
    c.max_t = c.torder;
  }
  if (c.degrees) {
    require(c.degrees->first >= -kCapLimit && c.degrees->second <= kCapLimit,
            "degree range must lie within -" + std::to_string(kCapLimit) + ".." + std::to_string(kCapLimit));
  }
  if (!c.degrees) c.degrees = std::pair{0, 3};
  const auto [lo, hi] = *c.degrees;

  if (c.subcommand == "bg") {
    if (!c.torder) c.torder = std::max(hi, 0);
    require(*c.torder >= 0, "--torder must be non-negative");
    if (!c.max_t) c.max_t = std::max({kDefaultMaxT, *c.torder, hi});
    require(*c.torder <= *c.max_t, "--torder " + std::to_string(*c.torder) + " exceeds the t-order cap --max-t " +
                                       std::to_string(*c.max_t));
  }
  if (c.subcommand == "tower bgm" && !c.max_t) c.max_t = std::max(kDefaultMaxT, hi);
  if (!c.max_t) c.max_t = kDefaultMaxT;
  if (!c.max_w) c.max_w = std::max(kDefaultMaxW, -lo);
  require(*c.max_t >= 2 && *c.max_t <= kCapLimit,
          "t-order cap must be in 2.." + std::to_string(kCapLimit) + ", got " + std::to_string(*c.max_t));
  require(*c.max_w >= 0 && *c.max_w <= kCapLimit,
          "weight cap must be in 0.." + std::to_string(kCapLimit) + ", got " + std::to_string(*c.max_w));

  if (c.subcommand == "bg" || c.subcommand == "tower bgm") {
    require(hi <= *c.max_t, "degree " + std::to_string(hi) + " exceeds the t-order cap " + std::to_string(*c.max_t) +
                                "; raise --max-t");
    const int floor = coefficient_kind(c.fgl) == CoeffKind::rational ? 0 : -*c.max_w;
    require(lo >= floor, "degree " + std::to_string(lo) + " is below " + std::to_string(floor) +
                             ", the lowest degree the coefficient ring reaches under the weight cap");
  }
  if (c.subcommand == "tower bgm") {
    if (!c.levels) c.levels = *c.max_t + 2;
    require(*c.levels >= 2 && *c.levels <= 64, "--levels must be in 2..64");
  }
  if (c.subcommand == "sif") {
    if (!c.rank) c.rank = 2;
    require(*c.rank >= 1 && *c.rank <= 4, "--rank must be in 1..4 for sif");
    require(c.vars >= 1 && c.vars <= RingContext::kMaxVars, "--vars must be in 1..8");
  }
  if (c.subcommand == "pbf") {
    if (!c.rank) c.rank = 4;
    require(*c.rank >= 1 && *c.rank <= 6, "--rank must be in 1..6 for pbf");
  }
  require(c.trials >= 0 && c.trials <= 100000, "--trials must be in 0..100000");
  if (c.subcommand == "bg" || c.subcommand == "flag") {
    if (c.weyl.empty()) {
      const GroupPreset G = GroupPreset::parse(c.group);
      require(G.rank <= 4, "group rank must be at most 4");
    } else {
      WeylGroupSpec::make(c.weyl.front().size(), c.weyl);
    }
  }
  return c;
}

int report_error(std::string_view kind, std::string_view message, OutputFormat format, std::ostream& out) {
  const int status = kind == "invalid-input" ? kExitInvalidConfig : kind == "internal" ? kExitInternal : kExitRefused;
  const json report = {{"schema", "cobcalc.error/1"},
                       {"error", {{"kind", kind}, {"message", message}, {"exit_status", status}}}};
  emit(report, format, out);
  return status;
}

int run(const JobConfig& config, std::ostream& out) {
  try {
    const JobConfig c = resolve(config);
    if (c.subcommand == "fgl check") return run_fgl_check(c, out);
    if (c.subcommand == "bg") return run_bg(c, out);
    if (c.subcommand == "flag") return run_flag(c, out);
    if (c.subcommand == "sif") return run_sif(c, out);
    if (c.subcommand == "pbf") return run_pbf(c, out);
    if (c.subcommand == "tower bgm") return run_tower(c, out);
    return run_selftest_job(c, out);
  } catch (const InvalidInput& e) {
    return report_error("invalid-input", e.what(), config.format, out);
  } catch (const std::invalid_argument& e) {
    return report_error("invalid-input", e.what(), config.format, out);
  } catch (const std::out_of_range& e) {
    return report_error("invalid-input", e.what(), config.format, out);
  } catch (const CapExceeded& e) {
    return report_error("cap-exceeded", e.what(), config.format, out);
  } catch (const NotStabilized& e) {
    return report_error("not-stabilized", e.what(), config.format, out);
  } catch (const std::exception& e) {
    return report_error("internal", e.what(), config.format, out);
  }
}

}  // namespace cobcalc::cli
