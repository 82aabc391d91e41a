#include <doctest.h>

#include <json.hpp>

#include "weakcomm/cli.hpp"

using namespace weakcomm;
using nlohmann::json;

namespace {

RunConfig small_verify() {
  RunConfig c;
  c.command = "verify";
  c.seed = 11;
  c.dims = {2, 3};
  c.samples = 3;
  return c;
}

}  // namespace

TEST_SUITE("cli") {
  TEST_CASE("example report") {
    RunConfig c;
    c.command = "example";
    c.example = "SEX_V_PQ";
    const RunResult r = run(c);
    CHECK(r.exit_code == 0);
    const json j = json::parse(r.report);
    CHECK(j["schema_version"] == kReportSchemaVersion);
    const json& ex = j["examples"][0];
    CHECK(ex["id"] == "SEX_V_PQ");
    CHECK(ex["matrices"][0]["name"] == "P");
    CHECK(ex["matrices"][0]["literal"] == "0, 0, 0; 1/2, 0, 0; 0, 1/3, 0");
    CHECK(ex["relations"]["comm_w"] == true);
    CHECK(ex["relations"]["comm"] == false);
    CHECK(ex["relations"]["residuals"]["ab_in_comm_a"] == 0.0);

    c.format = ReportFormat::markdown;
    const RunResult md = run(c);
    CHECK(md.exit_code == 0);
    CHECK(md.report.find("| comm\\_w | yes |") != std::string::npos);
  }

  TEST_CASE("all examples") {
    RunConfig c;
    c.command = "example";
    const RunResult r = run(c);
    CHECK(r.exit_code == 0);
    CHECK(json::parse(r.report)["examples"].size() == 12);
  }

  TEST_CASE("configuration errors exit 2") {
    RunConfig c;
    c.command = "prove";
    CHECK(run(c).exit_code == 2);

    c = small_verify();
    c.seed.reset();
    CHECK(run(c).exit_code == 2);

    c = small_verify();
    c.dims = {1};
    CHECK(run(c).exit_code == 2);

    c = small_verify();
    c.identities = {"L7"};
    CHECK(run(c).exit_code == 2);

    c = small_verify();
    c.classes = {"comm_x"};
    CHECK(run(c).exit_code == 2);

    c = RunConfig{};
    c.command = "example";
    c.example = "SEX_VI";
    CHECK(run(c).exit_code == 2);

    c = RunConfig{};
    c.command = "search";
    c.predicate = "comm";
    CHECK(run(c).exit_code == 2);
    c.seed = 1;
    c.predicate = "commish";
    CHECK(run(c).exit_code == 2);

    c = RunConfig{};
    c.command = "truncate";
    c.op = "T+X";
    CHECK(run(c).exit_code == 2);
    c.op = "T+N";
    c.sizes = {20, 10};
    CHECK(run(c).exit_code == 2);
    const json j = json::parse(run(c).report);
    CHECK(j.contains("error"));
  }

  TEST_CASE("verify: pass, determinism, mutant") {
    const RunResult a = run(small_verify());
    CHECK(a.exit_code == 0);
    const json j = json::parse(a.report);
    CHECK(j["summary"]["fail"] == 0);
    CHECK(j["summary"]["vacuous"].get<int>() > 0);
    CHECK(j["config"]["seed"] == 11);
    CHECK(j["identities"]["NEWTON_R"]["first_failure"].is_null());

    CHECK(run(small_verify()).report == a.report);
    RunConfig threaded = small_verify();
    threaded.threads = 3;
    CHECK(run(threaded).report == a.report);

    RunConfig m = small_verify();
    m.mutate = "BINOM";
    const RunResult mut = run(m);
    CHECK(mut.exit_code == 1);
    const json mj = json::parse(mut.report);
    CHECK(mj["summary"]["fail"].get<int>() > 0);
    CHECK(!mj["identities"]["BINOM"]["first_failure"].is_null());
  }

  TEST_CASE("search report") {
    RunConfig c;
    c.command = "search";
    c.seed = 1;
    c.predicate = "comm_w_not_comm";
    c.search_dim = 3;
    c.budget = 10000;
    const RunResult r = run(c);
    CHECK(r.exit_code == 0);
    const json j = json::parse(r.report);
    CHECK(j["found"] == true);
    CHECK(j["witness"]["relations"]["comm_w"] == true);
    CHECK(j["witness"]["relations"]["comm"] == false);

    c.predicate = "comm_and_not_comm";
    c.budget = 100;
    const RunResult none = run(c);
    CHECK(none.exit_code == 0);
    CHECK(json::parse(none.report)["found"] == false);
  }

  TEST_CASE("truncate report") {
    RunConfig c;
    c.command = "truncate";
    c.op = "T+N";
    const RunResult r = run(c);
    CHECK(r.exit_code == 0);
    const json j = json::parse(r.report);
    CHECK(j["kernel_stable"] == true);
    REQUIRE(j["rows"].size() == 3);
    CHECK(j["rows"][0]["charpoly"] == "x^10");
    CHECK(j["rows"][2]["charpoly"] == "x^40");
    CHECK(j["rows"][1]["finite_support_kernel"][0] == "1");

    c.op = "T+Q";
    c.sizes = {10, 20};
    const json q = json::parse(run(c).report);
    CHECK(q["rows"][0]["square_zero"] == true);

    c.spec_text = "shift down cycle=1\n";
    c.sizes = {4};
    const json s = json::parse(run(c).report);
    CHECK(s["rows"][0]["nilpotency_degree"] == 4);
  }
}
