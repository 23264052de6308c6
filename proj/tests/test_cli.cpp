#include <doctest.h>

#include <sstream>

#include <json.hpp>

#include "cobcalc/cli.hpp"
#include "cobcalc/error.hpp"
#include "cobcalc/selftest.hpp"

using namespace cobcalc;
using cobcalc::cli::JobConfig;
using nlohmann::json;

namespace {

struct Outcome {
  int status;
  std::string text;
  json report() const { return json::parse(text); }
};

Outcome run(const JobConfig& c) {
  std::ostringstream out;
  const int status = cli::run(c, out);
  return {status, out.str()};
}

JobConfig job(std::string sub) {
  JobConfig c;
  c.subcommand = std::move(sub);
  return c;
}

}  // namespace

TEST_SUITE("cli") {
  TEST_CASE("degree ranges") {
    CHECK(cli::parse_degree_range("0..4") == std::pair{0, 4});
    CHECK(cli::parse_degree_range("-2..3") == std::pair{-2, 3});
    CHECK(cli::parse_degree_range("5") == std::pair{5, 5});
    CHECK_THROWS_AS(cli::parse_degree_range("4..1"), InvalidInput);
    CHECK_THROWS_AS(cli::parse_degree_range("a..b"), InvalidInput);
    CHECK_THROWS_AS(cli::parse_degree_range("1..."), InvalidInput);
    CHECK_THROWS_AS(cli::parse_degree_range(""), InvalidInput);
  }

  TEST_CASE("Weyl matrices from text") {
    CHECK(cli::parse_weyl_matrix("0,1;1,0") == IntMatrix::permutation({1, 0}));
    CHECK(cli::parse_weyl_matrix("-1") == IntMatrix::from_rows({{-1}}));
    CHECK_THROWS_AS(cli::parse_weyl_matrix("1,0;1"), InvalidInput);
    CHECK_THROWS_AS(cli::parse_weyl_matrix("1,x"), InvalidInput);
  }

  TEST_CASE("thread cap from the environment") {
    CHECK(cli::threads_from_env("1") == 1);
    CHECK(cli::threads_from_env(nullptr) >= 1);
    CHECK(cli::threads_from_env("100000") >= 1);
    CHECK_THROWS_AS(cli::threads_from_env("0"), InvalidInput);
    CHECK_THROWS_AS(cli::threads_from_env("two"), InvalidInput);
  }

  TEST_CASE("config resolution") {
    auto c = cli::resolve(job("fgl check"));
    CHECK(*c.max_t == 6);
    CHECK(*c.max_w == 5);
    auto bg = job("bg");
    bg.degrees = std::pair{0, 8};
    c = cli::resolve(bg);
    CHECK(*c.max_t == 8);
    CHECK(*c.torder == 8);
    auto t = job("tower bgm");
    CHECK(*cli::resolve(t).levels == 8);

    auto bad = job("bg");
    bad.max_t = 4;
    bad.degrees = std::pair{0, 5};
    CHECK_THROWS_AS(cli::resolve(bad), InvalidInput);
    bad = job("bg");
    bad.torder = 7;
    bad.max_t = 6;
    CHECK_THROWS_AS(cli::resolve(bad), InvalidInput);
    bad = job("tower bgm");
    bad.levels = 1;
    CHECK_THROWS_AS(cli::resolve(bad), InvalidInput);
    bad = job("sif");
    bad.torder = 5;
    bad.max_t = 6;
    CHECK_THROWS_AS(cli::resolve(bad), InvalidInput);
    bad = job("sif");
    bad.rank = 0;
    CHECK_THROWS_AS(cli::resolve(bad), InvalidInput);
    bad = job("frobnicate");
    CHECK_THROWS_AS(cli::resolve(bad), InvalidInput);
    bad = job("fgl check");
    bad.max_t = 1;
    CHECK_THROWS_AS(cli::resolve(bad), InvalidInput);
    bad = job("bg");
    bad.fgl = FglKind::additive;
    bad.degrees = std::pair{-1, 2};
    CHECK_THROWS_AS(cli::resolve(bad), InvalidInput);
  }

  TEST_CASE("fgl check") {
    auto c = job("fgl check");
    c.fgl = FglKind::additive;
    const auto o = run(c);
    CHECK(o.status == 0);
    const auto r = o.report();
    CHECK(r["schema"] == "cobcalc.fgl-check/1");
    CHECK(r["unit"] == true);
    CHECK(r["comm"] == true);
    CHECK(r["assoc"] == true);
    CHECK(r["caps"]["max_t"] == 6);
    CHECK(r["caps"]["max_w"] == 5);
  }

  TEST_CASE("keys come out sorted") {
    const auto o = run(job("fgl check"));
    const auto assoc = o.text.find("\"assoc\"");
    const auto schema = o.text.find("\"schema\"");
    const auto unit = o.text.find("\"unit\"");
    CHECK(assoc < schema);
    CHECK(schema < unit);
  }

  TEST_CASE("bg example") {
    auto c = job("bg");
    c.fgl = FglKind::additive;
    c.degrees = std::pair{0, 3};
    c.torder = 3;
    const auto o = run(c);
    CHECK(o.status == 0);
    CHECK(o.report()["dims"] == json{{"0", 1}, {"1", 1}, {"2", 2}, {"3", 2}});
    c.emit_basis = true;
    const auto r = run(c).report();
    CHECK(r["basis"]["2"].size() == 2);
    CHECK(r["basis"]["1"][0] == "1 * t1 + 1 * t2");
  }

  TEST_CASE("bg with explicit generators") {
    auto c = job("bg");
    c.fgl = FglKind::additive;
    c.weyl = {IntMatrix::from_rows({{-1}})};
    c.degrees = std::pair{0, 4};
    const auto r = run(c).report();
    CHECK(r["group"] == "custom");
    CHECK(r["dims"] == json{{"0", 1}, {"1", 0}, {"2", 1}, {"3", 0}, {"4", 1}});
  }

  TEST_CASE("flag") {
    auto c = job("flag");
    c.trials = 10;
    const auto o = run(c);
    CHECK(o.status == 0);
    const auto r = o.report();
    CHECK(r["images"] == json{"1 * t1", "1 * t2"});
    CHECK(r["congruences"][0]["holds"] == true);
    CHECK(r["random"]["multiplicative"] == true);
    c.a = "t3";
    CHECK(run(c).status == cli::kExitInvalidConfig);
  }

  TEST_CASE("sif example") {
    auto c = job("sif");
    c.rank = 2;
    c.torder = 6;
    const auto o = run(c);
    CHECK(o.status == 0);
    const auto r = o.report();
    CHECK(r["residual"] == "0");
    CHECK(r["nonzero_residuals"] == 0);
    CHECK(r["passed"] == true);
    c.rank = 1;
    CHECK(run(c).report()["divisor_identity"] == true);
  }

  TEST_CASE("pbf") {
    auto c = job("pbf");
    c.fgl = FglKind::multiplicative;
    const auto o = run(c);
    CHECK(o.status == 0);
    CHECK(o.report()["ranks"].size() == 4);
  }

  TEST_CASE("tower bgm") {
    auto c = job("tower bgm");
    c.degrees = std::pair{0, 5};
    const auto o = run(c);
    CHECK(o.status == 0);
    const auto r = o.report();
    CHECK(r["degrees"]["0"]["lim_dim"] == 19);
    CHECK(r["degrees"]["5"]["stab_index"] == 0);
  }

  TEST_CASE("text format") {
    auto c = job("fgl check");
    c.format = cli::OutputFormat::text;
    const auto o = run(c);
    CHECK(o.text.find("assoc = true\n") != std::string::npos);
    CHECK(o.text.find("schema = cobcalc.fgl-check/1\n") != std::string::npos);
  }

  TEST_CASE("invalid config gives an error object") {
    auto c = job("bg");
    c.group = "E8";
    const auto o = run(c);
    CHECK(o.status == cli::kExitInvalidConfig);
    const auto r = o.report();
    CHECK(r["schema"] == "cobcalc.error/1");
    CHECK(r["error"]["kind"] == "invalid-input");
    CHECK(r["error"]["exit_status"] == 2);
    CHECK_FALSE(r["error"]["message"].get<std::string>().empty());
  }

  TEST_CASE("identical config gives identical output") {
    auto c = job("flag");
    c.trials = 5;
    c.seed = 9;
    CHECK(run(c).text == run(c).text);
    auto s = job("sif");
    s.seed = 3;
    CHECK(run(s).text == run(s).text);
  }

  TEST_CASE("selftest report does not depend on thread count") {
    auto c = job("selftest");
    c.seed = 5;
    c.threads = 1;
    const auto one = run(c);
    c.threads = 3;
    const auto three = run(c);
    CHECK(one.status == 0);
    CHECK(one.text == three.text);
    CHECK(one.report()["checks"].size() == selftest_check_names().size());
  }

  TEST_CASE("selftest text report") {
    auto c = job("selftest");
    c.format = cli::OutputFormat::text;
    const auto o = run(c);
    CHECK(o.status == 0);
    CHECK(o.text.find("selftest seed 42: 23/23 passed") != std::string::npos);
    CHECK(o.text.find("FAIL") == std::string::npos);
  }
}
