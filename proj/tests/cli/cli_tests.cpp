#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "doctest.h"
#include "json.hpp"

namespace fs = std::filesystem;

namespace {

struct Run {
  int code;
  std::string out, err;
};

struct Scratch {
  fs::path dir = fs::temp_directory_path() / ("invtool_cli_" + std::to_string(::getpid()));
  Scratch() { fs::create_directories(dir); }
  ~Scratch() {
    std::error_code ec;
    fs::remove_all(dir, ec);
  }
};

fs::path scratch() {
  static Scratch s;
  return s.dir;
}

std::string read(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

void write(const fs::path& p, const std::string& s) { std::ofstream(p, std::ios::binary) << s; }

/// Runs the CLI with INVTOOL_DATA unset unless env is given.
Run invtool(const std::string& args, const std::string& env = "") {
  auto out = scratch() / "stdout", err = scratch() / "stderr";
  std::string cmd = (env.empty() ? std::string("env -u INVTOOL_DATA ") : "env " + env + " ") + INVTOOL_BIN + " " +
                    args + " >" + out.string() + " 2>" + err.string();
  int status = std::system(cmd.c_str());
  return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, read(out), read(err)};
}

std::string scenario(const std::string& name) { return std::string(INVTOOL_SCENARIOS) + "/" + name + ".json"; }

const char* kBundled[] = {"example_1_1", "s2_omnibus", "cyclic4_csp", "s2_csp", "gf3_scalar_springer",
                          "z4_nonregular_remark"};

}  // namespace

TEST_CASE("hypersurface odd module report") {
  auto r = invtool("run " + scenario("example_1_1"));
  CHECK(r.code == 0);
  CHECK(r.out.find("class 1a: (2*t) / (1 + t^2); at t=1: 1") != std::string::npos);
  CHECK(r.out.find("overall: PASS") != std::string::npos);
  auto csv = invtool("run example_1_1 --format csv");
  CHECK(csv.code == 0);
  for (const char* row : {"\n0,1,2,", "\n1,3,2,", "\n2,5,2,", "\n5,11,2,"}) CHECK(csv.out.find(row) != std::string::npos);
  CHECK(csv.out.find("\n1,2,") == std::string::npos);
}

TEST_CASE("csp report for the cyclic group of order 4") {
  auto r = invtool("run cyclic4_csp --format json");
  REQUIRE(r.code == 0);
  auto j = nlohmann::json::parse(r.out);
  std::vector<long long> fixed;
  for (auto& row : j["tasks"][0]["data"]["table"]) fixed.push_back(row["fixed_points"].get<long long>());
  CHECK(fixed == std::vector<long long>{2, 0, 2, 0});
  CHECK(j["overall"] == "PASS");
}

TEST_CASE("exit codes") {
  for (auto name : kBundled) {
    CAPTURE(name);
    CHECK(invtool("run " + std::string(name)).code == 0);
  }
  SUBCASE("malformed JSON reports line and column") {
    auto p = scratch() / "broken.json";
    write(p, "{\n  \"schema\": 1,\n  \"name\": \"broken\",\n  \"field\": {\"characteristic\": 0}\n  \"truncation\": 4\n}\n");
    auto r = invtool("run " + p.string());
    CHECK(r.code == 1);
    CHECK(r.err.find("line 5, column 14: parse error") != std::string::npos);
  }
  SUBCASE("missing block is named") {
    auto p = scratch() / "missing.json";
    write(p, R"J({"schema": 1, "name": "m", "field": {"characteristic": 0}, "truncation": 4,
      "groups": {"G": {"named": "symmetric(2)"}},
      "tasks": [{"type": "tor", "module": "nowhere"}]})J");
    auto r = invtool("run " + p.string());
    CHECK(r.code == 1);
    CHECK(r.err.find("modules.nowhere") != std::string::npos);
  }
  SUBCASE("string literals are required") {
    auto p = scratch() / "ints.json";
    write(p, R"J({"schema": 1, "name": "i", "field": {"characteristic": 0}, "truncation": 4,
      "groups": {"G": {"generators": [[[0, 1], [1, 0]]]}}, "tasks": []})J");
    auto r = invtool("run " + p.string());
    CHECK(r.code == 1);
    CHECK(r.err.find("groups.G.generators[0][0][0]: expected a string") != std::string::npos);
  }
  SUBCASE("hypothesis failure exits 2") {
    auto p = scratch() / "hyp.json";
    write(p, R"J({"schema": 1, "name": "h", "field": {"characteristic": 0}, "truncation": 6,
      "groups": {"G": {"named": "symmetric(2)"}, "H": {"named": "trivial(2)"}},
      "tasks": [{"type": "csp", "subgroup": "H", "c": {"generator": 0}, "omega": "1"}]})J");
    auto r = invtool("run " + p.string());
    CHECK(r.code == 2);
    CHECK(r.out.find("HYPOTHESIS-FAILURE") != std::string::npos);
  }
  SUBCASE("a failed verdict exits 1") {
    auto p = scratch() / "fail.json";
    auto doc = nlohmann::json::parse(read(scenario("z4_nonregular_remark")));
    doc["tasks"][0].erase("expect_pole");
    write(p, doc.dump());
    auto r = invtool("run " + p.string());
    CHECK(r.code == 1);
    CHECK(r.out.find("overall: FAIL") != std::string::npos);
  }
  SUBCASE("task errors exit 1 and later tasks still run") {
    auto p = scratch() / "taskerr.json";
    write(p, R"J({"schema": 1, "name": "e", "field": {"characteristic": 3}, "truncation": 4,
      "groups": {"G": {"generators": [[["1", "1"], ["0", "1"]]]}},
      "tasks": [{"type": "molien"}, {"type": "invariants"}]})J");
    auto r = invtool("run " + p.string());
    CHECK(r.code == 1);
    CHECK(r.out.find("status: ERROR") != std::string::npos);
    CHECK(r.out.find("status: PASS") != std::string::npos);
  }
  SUBCASE("usage errors exit 1") {
    CHECK(invtool("run").code == 1);
    CHECK(invtool("frobnicate").code == 1);
    CHECK(invtool("run example_1_1 --format xml").code == 1);
    CHECK(invtool("run /nonexistent.json").code == 1);
  }
}

TEST_CASE("empty task list gives a header-only report") {
  auto p = scratch() / "empty.json";
  write(p, R"J({"schema": 1, "name": "empty", "field": {"characteristic": 0}, "truncation": 2, "tasks": []})J");
  auto r = invtool("run " + p.string());
  CHECK(r.code == 0);
  CHECK(r.out == "scenario: empty\nfield: Q\ntruncation: 2\n\noverall: PASS\n");
}

TEST_CASE("determinism and JSON round trip") {
  for (auto name : kBundled)
    for (auto fmt : {"text", "json", "csv"}) {
      CAPTURE(name);
      CAPTURE(fmt);
      auto a = invtool("run " + std::string(name) + " --format " + fmt);
      auto b = invtool("run " + std::string(name) + " --format " + fmt + " --jobs 3");
      CHECK(a.out == b.out);
      if (std::string(fmt) == "json") CHECK(nlohmann::ordered_json::parse(a.out).dump(2) + "\n" == a.out);
    }
}

TEST_CASE("output directory and truncation override") {
  auto dir = scratch() / "out";
  auto r = invtool("run s2_csp --out " + dir.string() + " --format json --truncation 6");
  CHECK(r.code == 0);
  CHECK(r.out.empty());
  auto j = nlohmann::json::parse(read(dir / "s2_csp.json"));
  CHECK(j["truncation"] == 6);
  CHECK(j["tasks"][0]["data"]["truncation"] == 6);
}

TEST_CASE("list-scenarios and the gated data file") {
  auto r = invtool("list-scenarios");
  CHECK(r.code == 0);
  for (auto name : kBundled) CHECK(r.out.find(name) != std::string::npos);
  CHECK(r.out.find("g168") != std::string::npos);
  auto g = invtool("run g168");
  CHECK(g.code == 0);
  CHECK(g.err.find("skipped: data file g168.json not available") != std::string::npos);
  CHECK(g.out.find("overall: NOT-CHECKABLE") != std::string::npos);
  auto missing = invtool("run g168", "INVTOOL_DATA=/nonexistent");
  CHECK(missing.code == 0);
  CHECK(missing.err.find("not found at /nonexistent") != std::string::npos);
}
