#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <sys/wait.h>

#include <cstdio>
#include <cstdlib>
#include <string>

#include "covacap/config.hpp"
#include "covacap/errors.hpp"

using namespace covacap;

namespace {

std::string config_path(const char* name) {
  return std::string(COVACAP_CONFIG_DIR) + "/" + name;
}

struct CliRun {
  std::string output;
  int exit_code = -1;
};

CliRun run_cli(const std::string& args) {
  const std::string cmd = std::string(COVACAP_CLI_PATH) + " " + args + " 2>/dev/null";
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  CliRun run;
  char buf[4096];
  while (std::size_t got = std::fread(buf, 1, sizeof(buf), pipe))
    run.output.append(buf, got);
  const int status = pclose(pipe);
  run.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return run;
}

const char* kInlinePauli = R"({
  "family": "pauli",
  "distribution": {"weights": [
    {"element": [0,0], "weight": "7/10"},
    {"element": [0,1], "weight": "1/10"},
    {"element": [1,0], "weight": "1/10"},
    {"element": [1,1], "weight": "1/10"}
  ]},
  "options": {"seed": 11, "restarts": 6, "samples": 50}
})";

}  // namespace

TEST_CASE("config parsing validates the schema") {
  const ChannelConfig cfg = parse_config_json(ordered_json::parse(kInlinePauli));
  CHECK(cfg.family == "pauli");
  CHECK(cfg.dist_kind == ChannelConfig::DistKind::kExplicit);
  CHECK(cfg.entries.size() == 4);
  CHECK(cfg.entries[0].second == Rational(7, 10));
  CHECK(cfg.options.seed == 11);
  CHECK(cfg.options.restarts == 6);
  CHECK(cfg.options.log_base == 2.0);

  // unknown family
  CHECK_THROWS_AS(
      parse_config_json(ordered_json::parse(
          R"({"family":"nope","distribution":"uniform"})")),
      ValidationError);
  // missing required fields
  CHECK_THROWS_AS(parse_config_json(ordered_json::parse(R"({"family":"pauli"})")),
                  ParseError);
  CHECK_THROWS_AS(
      parse_config_json(ordered_json::parse(R"({"distribution":"uniform"})")),
      ParseError);
  // duplicate distribution element
  CHECK_THROWS_AS(
      parse_config_json(ordered_json::parse(R"({
        "family": "pauli",
        "distribution": {"weights": [
          {"element": [0,0], "weight": "1/2"},
          {"element": [0,0], "weight": "1/2"}
        ]}
      })")),
      ValidationError);
  // weights must be exact strings
  CHECK_THROWS_AS(
      parse_config_json(ordered_json::parse(R"({
        "family": "pauli",
        "distribution": {"weights": [{"element": [0,0], "weight": 0.5}]}
      })")),
      ParseError);
  // malformed rational text
  CHECK_THROWS_AS(
      parse_config_json(ordered_json::parse(R"({
        "family": "pauli",
        "distribution": {"weights": [{"element": [0,0], "weight": "0.5"}]}
      })")),
      ParseError);
  // bad log base
  CHECK_THROWS_AS(
      parse_config_json(ordered_json::parse(R"({
        "family": "pauli", "distribution": "uniform",
        "options": {"log_base": "ten"}
      })")),
      ParseError);
  // tensor_level out of range
  CHECK_THROWS_AS(
      parse_config_json(ordered_json::parse(R"({
        "family": "pauli", "distribution": "uniform",
        "options": {"tensor_level": 3}
      })")),
      ValidationError);
}

TEST_CASE("configs round-trip through serialization") {
  for (const char* name :
       {"pauli.json", "example2.json", "klein_z4.json", "dihedral_z2n_4.json"}) {
    CAPTURE(name);
    const ChannelConfig cfg = parse_config(config_path(name));
    const ordered_json first = serialize_config(cfg);
    const ChannelConfig reparsed = parse_config_json(first);
    const ordered_json second = serialize_config(reparsed);
    CHECK(first == second);
    CHECK(first.dump() == second.dump());
  }

  // uniform and point-mass shapes survive the trip too
  for (const char* text :
       {R"({"family":"heisenberg_weyl","n":3,"distribution":"uniform"})",
        R"({"family":"klein_z4","distribution":{"point_mass":[1,2]}})"}) {
    const ChannelConfig cfg = parse_config_json(ordered_json::parse(text));
    const ordered_json first = serialize_config(cfg);
    CHECK(serialize_config(parse_config_json(first)) == first);
  }
}

TEST_CASE("build_channel rejects out-of-range coordinates and bad sums") {
  ChannelConfig cfg = parse_config_json(ordered_json::parse(kInlinePauli));
  cfg.entries[0].first = {2, 0};  // S = Z2 has no element 2
  CHECK_THROWS_AS(build_channel(cfg), ValidationError);

  ChannelConfig bad_sum = parse_config_json(ordered_json::parse(kInlinePauli));
  bad_sum.entries[0].second = Rational(1, 10);
  CHECK_THROWS_AS(build_channel(bad_sum), InvalidDistribution);

  const BuiltChannel built =
      build_channel(parse_config_json(ordered_json::parse(kInlinePauli)));
  CHECK(built.channel.dim() == 2);
  CHECK(built.setup.family == "pauli");
}

TEST_CASE("custom configs build working channels") {
  const char* text = R"({
    "family": "custom",
    "s_cayley": [[0,1],[1,0]],
    "t_cayley": [[0,1],[1,0]],
    "characters": [[[1,0],[1,0]], [[1,0],[-1,0]]],
    "action": [[0,1],[1,0]],
    "distribution": {"weights": [
      {"element": [0,0], "weight": "7/10"},
      {"element": [0,1], "weight": "1/10"},
      {"element": [1,0], "weight": "1/10"},
      {"element": [1,1], "weight": "1/10"}
    ]},
    "options": {"restarts": 6}
  })";
  const ChannelConfig cfg = parse_config_json(ordered_json::parse(text));
  const RunResult res = run_capacity(cfg);
  CHECK(res.exit_code == 0);
  CHECK(res.report["capacity"].get<double>() ==
        doctest::Approx(0.2780719051126377).epsilon(1e-10));
}

TEST_CASE("run_describe reports the example facts") {
  const ChannelConfig cfg = parse_config(config_path("example2.json"));
  const RunResult res = run_describe(cfg);
  CHECK(res.exit_code == 0);
  CHECK(res.report["group"]["order"] == 9);
  CHECK(res.report["group"]["dimension"] == 3);
  CHECK(res.report["representation"]["irreducible"] == true);
  CHECK(res.report["representation"]["spanning"] == true);
  CHECK(res.report["representation"]["cocycle_identity_ok"] == true);
  CHECK(res.report["representation"]["cocycle_root_ok"] == true);
  CHECK(res.report["subgroup_candidates"].size() == 4);
}

TEST_CASE("run_capacity and run_verify agree with the frozen example") {
  ChannelConfig cfg = parse_config(config_path("example2.json"));
  cfg.options.samples = 60;
  cfg.options.restarts = 8;

  const RunResult cap = run_capacity(cfg);
  CHECK(cap.exit_code == 0);
  CHECK(cap.report["theorem_applies"] == true);
  CHECK(cap.report["capacity"].get<double>() ==
        doctest::Approx(0.125814583693911).epsilon(1e-12));
  CHECK(cap.report["p"]["values"][0] == "1/2");

  const RunResult ver = run_verify(cfg, 1);
  CHECK(ver.exit_code == 0);
  CHECK(ver.report["violations_total"] == 0);
  CHECK(ver.report["eigenbasis_equality_gap"].get<double>() <= 1e-10);

  // vacuous suite
  cfg.options.samples = 0;
  const RunResult vac = run_verify(cfg, 1);
  CHECK(vac.exit_code == 0);
  CHECK(vac.report.contains("warning"));
}

TEST_CASE("cli: json reports are byte-identical across runs") {
  const std::string args =
      "verify " + config_path("example2.json") + " --level 1 --samples 40";
  const CliRun a = run_cli(args);
  const CliRun b = run_cli(args);
  CHECK(a.exit_code == 0);
  CHECK(a.output == b.output);
  CHECK(!a.output.empty());

  // a different seed changes the sampled content
  const CliRun c = run_cli(args + " --seed 9");
  CHECK(c.exit_code == 0);
  CHECK(c.output != a.output);
}

TEST_CASE("cli: exit codes follow the contract") {
  CHECK(run_cli("capacity " + config_path("pauli.json")).exit_code == 0);
  CHECK(run_cli("capacity /no/such/file.json").exit_code == 1);
  CHECK(run_cli("describe " + config_path("klein_z4.json")).exit_code == 0);

  // text format renders something human-shaped
  const CliRun text =
      run_cli("capacity " + config_path("pauli.json") + " --format text");
  CHECK(text.exit_code == 0);
  CHECK(text.output.find("capacity C = C1") != std::string::npos);
}
