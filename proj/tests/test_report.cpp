#include <set>

#include "cremona/errors.hpp"
#include "cremona/report/report.hpp"
#include "doctest.h"

using namespace cremona;

TEST_CASE("registered checks and aliases") {
  const auto& list = verifications();
  CHECK(list.size() == 5);
  std::set<std::string> ids;
  for (const auto& v : list) {
    ids.insert(v.id);
    CHECK(resolve_verification(v.id) == v.id);
    CHECK(resolve_verification(v.alias) == v.id);
  }
  CHECK(ids.size() == 5);
  CHECK(resolve_verification("1.4.1") == std::string("torus-orbits"));
  CHECK_FALSE(resolve_verification("bogus-id").has_value());
  CHECK_THROWS_AS(run_verification("bogus-id", default_link_table(), {}), PreconditionViolation);
}

TEST_CASE("verify report layout") {
  const ReportConfig config;
  const auto r = run_verification("conic-bundle-dead-end", default_link_table(), config);
  CHECK(r.pass());
  CHECK(r.first_failure().empty());
  const auto j = report_json(r, config);
  CHECK(j["schema_version"] == kReportSchemaVersion);
  CHECK(j["command"] == "verify");
  CHECK(j["id"] == "conic-bundle-dead-end");
  CHECK_FALSE(j.contains("first_failure"));
  for (const auto& c : j["checks"]) CHECK(c.contains("origin"));
  const auto md = render_markdown(r, config);
  CHECK(md.find("**PASS**") != std::string::npos);
  CHECK(md.find("| check | expected | observed | origin | result |") != std::string::npos);
}

TEST_CASE("a failing check names itself") {
  VerifyReport r;
  r.checks.push_back({"first", "1", "1", true, "computed"});
  r.checks.push_back({"second", "2", "3", false, "reference"});
  CHECK_FALSE(r.pass());
  CHECK(r.first_failure() == "second: expected 2, got 3");
  CHECK(report_json(r, {})["first_failure"] == "second: expected 2, got 3");
  CHECK_FALSE(VerifyReport{}.pass());
}

TEST_CASE("prove report") {
  ReportConfig config;
  config.seed = 5;
  const auto golden = load_golden_tree(CREMONA_GOLDEN_TREE);
  const auto r = run_prove(default_link_table(), config, golden);
  CHECK(r.pass());
  CHECK(r.golden_match);
  const auto summary = report_json(r, config);
  CHECK(summary["seed"] == "5");
  CHECK(summary["verdict"]["verdict"] == "unreachable");
  CHECK_FALSE(summary["verdict"]["tree"].contains("witnesses"));

  config.verbosity = Verbosity::FullTree;
  const auto full = report_json(r, config);
  CHECK(full["verdict"]["tree"].contains("witnesses"));
  const auto md = render_markdown(r, config);
  CHECK(md.find("verdict: unreachable") != std::string::npos);
  CHECK(md.find("via PHI_8_6") != std::string::npos);

  const auto wrong = run_prove(default_link_table(), config, nlohmann::json::object());
  CHECK_FALSE(wrong.pass());
  CHECK(wrong.failures == std::vector<std::string>{"case tree differs from the golden tree"});
}
