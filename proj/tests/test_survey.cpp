#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <fstream>

#include "zetarel/error.hpp"
#include "zetarel/survey.hpp"

using namespace zetarel;

namespace {

SurveyConfig small_config() {
  SurveyConfig cfg;
  cfg.f = {Int(1), Int(1), Int(1)};  // x^2 + x + 1, disc -3
  cfg.p = 5;
  cfg.e = 1;
  cfg.k = 1;
  cfg.ell_budget = 100;
  cfg.bits = 192;
  cfg.seed = 42;
  return cfg;
}

}  // namespace

TEST_CASE("config validation") {
  auto cfg = small_config();
  CHECK_NOTHROW(validate_config(cfg));

  auto bad = cfg;
  bad.f = {Int(-1), Int(6), Int(1)};  // disc 40 vanishes mod 5
  try {
    validate_config(bad);
    CHECK(false);
  } catch (const Error& e) {
    CHECK(e.code() == Err::ConfigInvalid);
  }

  auto cap = cfg;
  cap.e = 14;  // 5^14 far beyond the counting cap
  try {
    validate_config(cap);
    CHECK(false);
  } catch (const Error& e) {
    CHECK(e.code() == Err::CapExceeded);
  }
}

TEST_CASE("config file parsing") {
  std::string path = "/tmp/zetarel_test_config.txt";
  {
    std::ofstream f(path);
    f << "# comment\n"
      << "f = 1, 1, 1\n"
      << "p = 7\n"
      << "e = 1\n"
      << "seed = 99\n"
      << "format = json\n"
      << "cross_check = true\n";
  }
  auto cfg = parse_config_file(path);
  CHECK(cfg.f == ZPoly({Int(1), Int(1), Int(1)}));
  CHECK(cfg.p == 7);
  CHECK(cfg.seed == 99);
  CHECK(cfg.format == "json");
  CHECK(cfg.cross_check);
  std::remove(path.c_str());
}

TEST_CASE("small survey: record count and invariants") {
  auto cfg = small_config();
  auto res = run_survey(cfg);
  // record count = q minus number of roots of f in F_q
  // x^2 + x + 1 mod 5 has no roots (disc -3 = 2 is a non-square mod 5)
  CHECK(res.records.size() == 5);
  CHECK_FALSE(res.agg.invariant_violated);
  for (const auto& rec : res.records) {
    CHECK(rec.coeffs.size() == 3);
    CHECK((rec.cert == "proven" || rec.cert == "undetermined"));
    CHECK((rec.rel_verdict == "independent" || rec.rel_verdict == "has-relations" ||
           rec.rel_verdict == "undetermined"));
  }
}

TEST_CASE("export determinism and round trip") {
  auto cfg = small_config();
  auto r1 = run_survey(cfg);
  auto r2 = run_survey(cfg);
  CHECK(export_csv(r1) == export_csv(r2));
  CHECK(export_json(r1) == export_json(r2));

  auto parsed = parse_records_json(export_json(r1));
  REQUIRE(parsed.size() == r1.records.size());
  for (size_t i = 0; i < parsed.size(); ++i) {
    CHECK(parsed[i].t == r1.records[i].t);
    CHECK(parsed[i].coeffs == r1.records[i].coeffs);
    CHECK(parsed[i].cert == r1.records[i].cert);
    CHECK(parsed[i].rel_verdict == r1.records[i].rel_verdict);
  }

  // csv header shape
  auto csv = export_csv(r1);
  CHECK(csv.rfind("t,c_0,c_1,c_2,cert,trace_zero,rel_verdict,nontrivial_rank,"
                  "ms_count,ms_cert,ms_rel\n", 0) == 0);
}

TEST_CASE("parallel jobs give identical records") {
  auto cfg = small_config();
  cfg.p = 7;
  auto seq = run_survey(cfg);
  cfg.jobs = 4;
  auto par = run_survey(cfg);
  CHECK(export_csv(seq) == export_csv(par));
}

TEST_CASE("pair survey with diagonal exclusion") {
  auto cfg = small_config();
  cfg.k = 2;
  auto res = run_survey(cfg);
  CHECK(res.records.size() == 5 * 4);  // ordered pairs, distinct coordinates
  for (const auto& rec : res.records) {
    REQUIRE(rec.t.size() == 2);
    CHECK(rec.t[0] != rec.t[1]);
    CHECK(rec.coeffs.size() == 5);  // product of two degree-2 polynomials
  }
  CHECK_FALSE(res.agg.invariant_violated);
}

TEST_CASE("monotone certificates in the budget") {
  auto cfg = small_config();
  cfg.ell_budget = 30;
  auto small = run_survey(cfg);
  cfg.ell_budget = 150;
  auto large = run_survey(cfg);
  REQUIRE(small.records.size() == large.records.size());
  for (size_t i = 0; i < small.records.size(); ++i) {
    if (small.records[i].cert == "proven") CHECK(large.records[i].cert == "proven");
  }
}
