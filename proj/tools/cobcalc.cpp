#include <cstdlib>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "cobcalc/cli.hpp"
#include "cobcalc/error.hpp"

namespace {

using cobcalc::cli::JobConfig;
using cobcalc::cli::OutputFormat;

// Raw option values; converted into a JobConfig after parsing so that bad
// values produce the same error object as any other invalid config.
struct RawOptions {
  std::string format = "json";
  std::string fgl = "universal";
  int max_t = 0, max_w = 0, torder = 0, rank = 0, levels = 0;
  std::string deg;
  std::vector<std::string> weyl;
  CLI::Option* max_t_opt = nullptr;
  CLI::Option* max_w_opt = nullptr;
};

void add_caps(CLI::App* cmd, RawOptions& raw) {
  raw.max_t_opt = cmd->add_option("--max-t", raw.max_t, "t-order cap M (default 6)");
  raw.max_w_opt = cmd->add_option("--max-w", raw.max_w, "Lazard weight cap W (default 5)");
}

void add_fgl(CLI::App* cmd, RawOptions& raw, const char* flag = "--fgl") {
  cmd->add_option(flag, raw.fgl, "formal group law: additive, multiplicative, universal");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"cobcalc: exact computations with formal group laws and oriented cohomology rings"};
  app.require_subcommand(1);
  app.fallthrough();

  JobConfig cfg;
  RawOptions raw;
  app.add_option("--format", raw.format, "output format: json (default) or text");

  auto* fgl = app.add_subcommand("fgl", "formal group law commands");
  fgl->require_subcommand(1);
  auto* fgl_check = fgl->add_subcommand("check", "verify unit, commutativity, associativity within the caps");
  add_fgl(fgl_check, raw, "--kind");
  add_caps(fgl_check, raw);

  auto* bg = app.add_subcommand("bg", "Weyl-invariant dimensions of the classifying-space ring per degree");
  bg->add_option("--group", cfg.group, "group preset: GL2, GL(3), SL2, torus2, ...");
  bg->add_option("--weyl", raw.weyl, "explicit Weyl generator, rows ';' entries ',' (repeatable)");
  add_fgl(bg, raw);
  bg->add_option("--deg", raw.deg, "degree range lo..hi");
  auto* bg_torder = bg->add_option("--torder", raw.torder, "t-order window k_max");
  bg->add_flag("--emit-basis", cfg.emit_basis, "also print an invariant basis per degree");
  add_caps(bg, raw);
  auto* bg_max_t = raw.max_t_opt;
  auto* bg_max_w = raw.max_w_opt;

  auto* flag = app.add_subcommand("flag", "fixed-point restriction of the flag variety and congruence checks");
  flag->add_option("--group", cfg.group, "group preset");
  flag->add_option("--weyl", raw.weyl, "explicit Weyl generator (repeatable)");
  add_fgl(flag, raw);
  flag->add_option("--a", cfg.a, "left tensor factor, canonical text form");
  flag->add_option("--b", cfg.b, "right tensor factor, canonical text form");
  flag->add_option("--trials", cfg.trials, "random pure-tensor pairs (default 100)");
  flag->add_option("--seed", cfg.seed, "random seed (default 42)");
  add_caps(flag, raw);
  auto* flag_max_t = raw.max_t_opt;
  auto* flag_max_w = raw.max_w_opt;

  auto* sif = app.add_subcommand("sif", "self-intersection residuals for a random split bundle");
  add_fgl(sif, raw);
  auto* sif_rank = sif->add_option("--rank", raw.rank, "bundle rank (default 2)");
  auto* sif_torder = sif->add_option("--torder", raw.torder, "t-order cap M");
  sif->add_option("--vars", cfg.vars, "base variables (default 3)");
  sif->add_option("--trials", cfg.trials, "random base elements (default 100)");
  sif->add_option("--seed", cfg.seed, "random seed (default 42)");
  add_caps(sif, raw);
  auto* sif_max_t = raw.max_t_opt;
  auto* sif_max_w = raw.max_w_opt;

  auto* pbf = app.add_subcommand("pbf", "projective bundle formula checks for ranks 1..r");
  add_fgl(pbf, raw);
  auto* pbf_rank = pbf->add_option("--rank", raw.rank, "largest rank (default 4)");
  auto* pbf_torder = pbf->add_option("--torder", raw.torder, "t-order cap M");
  pbf->add_option("--trials", cfg.trials, "random products per rank (at most 20 used)");
  pbf->add_option("--seed", cfg.seed, "random seed (default 42)");
  add_caps(pbf, raw);
  auto* pbf_max_t = raw.max_t_opt;
  auto* pbf_max_w = raw.max_w_opt;

  auto* tower = app.add_subcommand("tower", "inverse-limit diagnostics");
  tower->require_subcommand(1);
  auto* bgm = tower->add_subcommand("bgm", "the P^i tower approximating the classifying space of G_m");
  add_fgl(bgm, raw);
  bgm->add_option("--deg", raw.deg, "degree range lo..hi");
  auto* bgm_levels = bgm->add_option("--levels", raw.levels, "deepest level I (default M + 2)");
  add_caps(bgm, raw);
  auto* bgm_max_t = raw.max_t_opt;
  auto* bgm_max_w = raw.max_w_opt;

  auto* selftest = app.add_subcommand("selftest", "run every invariant check");
  selftest->add_option("--seed", cfg.seed, "random seed (default 42)");

  auto* fgl_max_t = fgl_check->get_option("--max-t");
  auto* fgl_max_w = fgl_check->get_option("--max-w");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    const auto format = raw.format == "text" ? OutputFormat::text : OutputFormat::json;
    return cobcalc::cli::report_error("invalid-input", e.what(), format, std::cout);
  }

  const auto format = raw.format == "text" ? OutputFormat::text : OutputFormat::json;
  try {
    if (raw.format != "json" && raw.format != "text")
      throw cobcalc::InvalidInput("--format must be json or text, got '" + raw.format + "'");
    cfg.format = format;
    cfg.fgl = cobcalc::parse_fgl_kind(raw.fgl);
    if (!raw.deg.empty()) cfg.degrees = cobcalc::cli::parse_degree_range(raw.deg);
    for (const auto& w : raw.weyl) cfg.weyl.push_back(cobcalc::cli::parse_weyl_matrix(w));
    cfg.threads = cobcalc::cli::threads_from_env(std::getenv("COBCALC_THREADS"));

    CLI::Option* max_t = nullptr;
    CLI::Option* max_w = nullptr;
    if (fgl_check->parsed()) {
      cfg.subcommand = "fgl check";
      max_t = fgl_max_t, max_w = fgl_max_w;
    } else if (bg->parsed()) {
      cfg.subcommand = "bg";
      max_t = bg_max_t, max_w = bg_max_w;
      if (bg_torder->count()) cfg.torder = raw.torder;
    } else if (flag->parsed()) {
      cfg.subcommand = "flag";
      max_t = flag_max_t, max_w = flag_max_w;
    } else if (sif->parsed()) {
      cfg.subcommand = "sif";
      max_t = sif_max_t, max_w = sif_max_w;
      if (sif_torder->count()) cfg.torder = raw.torder;
      if (sif_rank->count()) cfg.rank = raw.rank;
    } else if (pbf->parsed()) {
      cfg.subcommand = "pbf";
      max_t = pbf_max_t, max_w = pbf_max_w;
      if (pbf_torder->count()) cfg.torder = raw.torder;
      if (pbf_rank->count()) cfg.rank = raw.rank;
    } else if (bgm->parsed()) {
      cfg.subcommand = "tower bgm";
      max_t = bgm_max_t, max_w = bgm_max_w;
      if (bgm_levels->count()) cfg.levels = raw.levels;
    } else {
      cfg.subcommand = "selftest";
    }
    if (max_t && max_t->count()) cfg.max_t = raw.max_t;
    if (max_w && max_w->count()) cfg.max_w = raw.max_w;
  } catch (const std::exception& e) {
    return cobcalc::cli::report_error("invalid-input", e.what(), format, std::cout);
  }
  return cobcalc::cli::run(cfg, std::cout);
}
