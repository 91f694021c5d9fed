#include <doctest.h>

#include <cstdlib>
#include <sstream>

#include <json.hpp>

#include "leflab/harness.hpp"

using namespace leflab;

namespace {

struct CliResult {
  int code;
  std::string out;
  std::string err;
};

CliResult run_cli(std::vector<std::string> args) {
  args.insert(args.begin(), "leflab");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = cli_main(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

}  // namespace

TEST_CASE("sweep_specs enumerates multisets") {
  SweepConfig cfg;
  cfg.s_min = 4;
  cfg.s_max = 6;
  cfg.a_min = 2;
  cfg.a_max = 6;
  const auto specs = sweep_specs(cfg);
  CHECK(specs.size() == 406);
  CHECK(std::is_sorted(specs.begin(), specs.end()));

  cfg.random_count = 50;
  const auto drawn = sweep_specs(cfg);
  CHECK(drawn.size() == 50);
  CHECK(drawn == sweep_specs(cfg));

  cfg.random_count = 5000;
  CHECK(sweep_specs(cfg).size() == 406);
}

TEST_CASE("empty range gives an empty report") {
  SweepConfig cfg;
  const VerificationReport r = run_verification(cfg);
  CHECK(r.rows.empty());
  CHECK(r.summary.rows == 0);
}

TEST_CASE("invalid configurations are rejected") {
  SweepConfig cfg;
  cfg.trials = 0;
  CHECK_THROWS_AS(run_verification(cfg), precondition_error);
  cfg = SweepConfig{};
  cfg.primes.clear();
  CHECK_THROWS_AS(run_verification(cfg), precondition_error);
  cfg = SweepConfig{};
  cfg.primes = {12};
  CHECK_THROWS_AS(run_verification(cfg), precondition_error);
  cfg = SweepConfig{};
  cfg.ks = {0};
  CHECK_THROWS_AS(run_verification(cfg), precondition_error);
}

TEST_CASE("single spec verification") {
  SweepConfig cfg;
  cfg.specs = {ExponentSpec::make(3, {3, 3, 3, 3})};
  const VerificationReport r = run_verification(cfg);
  REQUIRE(r.rows.size() == 1);
  const auto& row = r.rows[0];
  REQUIRE(row.theory.has_value());
  CHECK(row.theory->failing_degrees() == std::vector<int>{4});
  REQUIRE(row.oracle.size() == 1);
  CHECK(row.oracle[0].degree == 4);
  CHECK(row.agree);
  CHECK_FALSE(row.rerun);
  CHECK(r.summary.agreements == 1);
}

TEST_CASE("failures_agree compares degrees and deficiencies") {
  const std::vector<TheoryFailure> t{{4, 1, 1, 1}};
  CHECK(failures_agree(t, {{4, 1, 1, 1}}));
  CHECK_FALSE(failures_agree(t, {{5, 1, 1, 1}}));
  CHECK_FALSE(failures_agree(t, {{4, 2, 2, 2}}));
  CHECK_FALSE(failures_agree(t, {}));
  CHECK(failures_agree({{4, std::nullopt, 1, 1}}, {{4, 1, 3, 1}}));
  CHECK(failures_agree({}, {}));
}

TEST_CASE("sweep is deterministic across thread counts") {
  SweepConfig cfg;
  cfg.s_min = 4;
  cfg.s_max = 5;
  cfg.a_min = 2;
  cfg.a_max = 5;
  cfg.ks = {2, 3};
  cfg.threads = 1;
  const auto a = run_verification(cfg);
  cfg.threads = 4;
  const auto b = run_verification(cfg);
  REQUIRE(a.rows.size() == b.rows.size());
  for (std::size_t i = 0; i < a.rows.size(); ++i) {
    CHECK(a.rows[i].spec == b.rows[i].spec);
    CHECK(a.rows[i].k == b.rows[i].k);
    CHECK(a.rows[i].oracle == b.rows[i].oracle);
    CHECK(a.rows[i].agree == b.rows[i].agree);
  }
  CHECK(a.summary.disagreements == 0);
}

TEST_CASE("cli hilbert, classify and linsys outputs") {
  auto h = run_cli({"hilbert", "--vars", "3", "--powers", "3,3,3,3"});
  CHECK(h.code == 0);
  CHECK(h.out == "{\"hf\":[1,3,6,6,3],\"reg\":4}\n");

  auto c = run_cli({"classify", "--powers", "5,5,5,5,5,5", "--k", "3"});
  CHECK(c.code == 0);
  const auto cj = nlohmann::json::parse(c.out);
  CHECK(cj["status"] == "fails");
  CHECK(cj["degrees"] == nlohmann::json::array({6}));

  auto l = run_cli({"linsys", "--degree", "4", "--mults", "2,2,2,2,2"});
  CHECK(l.code == 0);
  const auto lj = nlohmann::json::parse(l.out);
  CHECK(lj["dim"] == 1);
  CHECK(lj["trace"].is_array());
  CHECK(l.out.rfind("{\"dim\":1,\"trace\":[", 0) == 0);
}

TEST_CASE("cli rank, scan and slp") {
  auto r = run_cli({"rank", "--powers", "3,3,3,3", "--k", "3", "--degree", "4"});
  CHECK(r.code == 0);
  const auto rj = nlohmann::json::parse(r.out);
  CHECK(rj["rank"] == 2);
  CHECK(rj["kernel"] == 1);
  CHECK(rj["cokernel"] == 1);

  auto s = run_cli({"scan", "--powers", "3,3,3,3", "--k", "3", "--format", "csv"});
  CHECK(s.code == 0);
  CHECK(s.out == "degree;deficiency;kernel;cokernel\n4;1;1;1\n");

  auto slp = run_cli({"slp", "--mode", "cube", "--powers", "5,5,5,5,5"});
  CHECK(slp.code == 0);
  const auto sj = nlohmann::json::parse(slp.out);
  CHECK(sj["slp"] == false);
  CHECK(sj["uniform_slp"] == false);

  auto four = run_cli({"slp", "--mode", "cube", "--vars", "4", "--powers", "3,3,3,3"});
  CHECK(four.code == 0);
  CHECK(nlohmann::json::parse(four.out)["degrees"] == nlohmann::json::array({4}));
}

TEST_CASE("cli verify csv is byte-stable") {
  const std::vector<std::string> args{"verify", "--s-range", "4:5", "--a-range", "2:4",
                                      "--k", "3", "--format", "csv"};
  auto a = run_cli(args);
  auto b = run_cli(args);
  CHECK(a.code == 0);
  CHECK(a.out == b.out);
  CHECK(a.out.rfind("spec;k;theory_fail_degrees;oracle_fail_degrees;agree;millis\n", 0) == 0);
  CHECK(a.out.find("3,3,3,3;3;4;4;true;0\n") != std::string::npos);
}

TEST_CASE("cli exit codes") {
  CHECK(run_cli({}).code == 2);
  CHECK(run_cli({"hilbert"}).code == 2);
  CHECK(run_cli({"hilbert", "--powers", "3,x"}).code == 2);
  CHECK(run_cli({"hilbert", "--powers", "3,3"}).code == 2);
  CHECK(run_cli({"classify", "--powers", "3,3,3,3", "--k", "4"}).code == 2);
  CHECK(run_cli({"hilbert", "--powers", "3,3,3", "--format", "xml"}).code == 2);
  CHECK(run_cli({"hilbert", "--powers", "3,3,3", "--prime", "100"}).code == 2);
  CHECK(run_cli({"--help"}).code == 0);
}

TEST_CASE("LEFLAB_PRIME overrides the default modulus") {
  ::setenv("LEFLAB_PRIME", "1000003", 1);
  auto h = run_cli({"hilbert", "--powers", "3,3,3,3"});
  auto bad = [] {
    ::setenv("LEFLAB_PRIME", "not-a-number", 1);
    return run_cli({"hilbert", "--powers", "3,3,3,3"});
  }();
  ::setenv("LEFLAB_PRIME", "12", 1);
  auto composite = run_cli({"hilbert", "--powers", "3,3,3,3"});
  ::unsetenv("LEFLAB_PRIME");
  CHECK(h.code == 0);
  CHECK(h.out == "{\"hf\":[1,3,6,6,3],\"reg\":4}\n");
  CHECK(bad.code == 2);
  CHECK(composite.code == 2);
}
