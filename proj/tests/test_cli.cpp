#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <array>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "doctest.h"
#include "json.hpp"

using nlohmann::json;

namespace {

struct RunResult {
  int exit_code;
  std::string out;
};

RunResult run(const std::string& args, const std::string& env = "") {
  const std::string cmd = env + " " + std::string(LT_CLI_PATH) + " " + args + " 2>/dev/null";
  std::array<char, 4096> buf{};
  RunResult r{};
  FILE* p = popen(cmd.c_str(), "r");
  REQUIRE(p != nullptr);
  while (std::fgets(buf.data(), buf.size(), p)) r.out += buf.data();
  const int status = pclose(p);
  r.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> parts;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, sep)) parts.push_back(item);
  return parts;
}

}  // namespace

TEST_CASE("asym subcommand emits the closed-form constants") {
  const RunResult r = run(
      "asym --family weibull-like --alpha 0 --beta 2 --c 1 --d 2 --n 3 --x 6");
  REQUIRE(r.exit_code == 0);
  const json j = json::parse(r.out);
  CHECK(j["result"]["c_n"].get<double>() == doctest::Approx(1.0 / 3.0));
  CHECK(j["result"]["p"].get<double>() == doctest::Approx(2.0));
  CHECK(j["result"].contains("log10_tail"));
  CHECK(j["config"]["n"] == 3);
  CHECK(j["config"]["beta"].get<double>() == 2.0);
}

TEST_CASE("estimate output is byte-identical across runs") {
  const std::string args =
      "estimate --method is --n 4 --x 14 --beta 2 --c 1 --samples 100000 "
      "--seed 7 --chunks 3";
  const RunResult a = run(args);
  const RunResult b = run(args);
  REQUIRE(a.exit_code == 0);
  CHECK(a.out == b.out);
  const json j = json::parse(a.out);
  CHECK(j["result"]["n_samples"] == 100000);
  CHECK(j["result"]["seed"] == 7);
}

TEST_CASE("environment seed override") {
  const RunResult r = run(
      "estimate --method crude --n 1 --x 1 --beta 2 --c 1 --samples 1000 "
      "--seed 7 --chunks 2",
      "LTTAIL_SEED=99");
  REQUIRE(r.exit_code == 0);
  const json j = json::parse(r.out);
  CHECK(j["result"]["seed"] == 99);
}

TEST_CASE("bounds and oracle subcommands") {
  const RunResult b = run("bounds --beta 2 --c 1 --n 2 --x 4");
  REQUIRE(b.exit_code == 0);
  const json jb = json::parse(b.out);
  const double lo = jb["result"]["log10_lower"].get<double>();
  const double hi = jb["result"]["log10_upper"].get<double>();
  CHECK(lo <= hi);
  const RunResult o = run("oracle --beta 2 --c 1 --n 2 --x 4");
  REQUIRE(o.exit_code == 0);
  const double oracle = json::parse(o.out)["result"]["log10_tail"].get<double>();
  CHECK(lo <= oracle);
  CHECK(oracle <= hi);
}

TEST_CASE("compound subcommand") {
  const RunResult r = run("compound --method esscher --mu 2 --beta 2 --c 1 --x 8");
  REQUIRE(r.exit_code == 0);
  const json j = json::parse(r.out);
  CHECK(j["result"]["log10_tail"].get<double>() < 0.0);
  CHECK(j["result"]["theta"].get<double>() > 0.0);
}

TEST_CASE("compare emits versioned CSV with the sandwich invariant") {
  const RunResult r = run(
      "compare --beta 2 --c 1 --n 2 --x 3:9:7 --samples 100000 --seed 1 "
      "--chunks 4");
  REQUIRE(r.exit_code == 0);
  const std::vector<std::string> lines = split(r.out, '\n');
  REQUIRE(lines.size() >= 10);
  CHECK(lines[0] == "# lttail-compare-csv v1");
  CHECK(lines[1].rfind("# config ", 0) == 0);
  CHECK(lines[2] == "x,asym,lower,upper,crude,is,cond,ak,oracle,flags");
  for (std::size_t i = 3; i < lines.size(); ++i) {
    if (lines[i].empty()) continue;
    const auto cells = split(lines[i] + "#", ',');  // sentinel keeps empty flags cell
    REQUIRE(cells.size() == 10);
    const double lower = std::strtod(cells[2].c_str(), nullptr);
    const double upper = std::strtod(cells[3].c_str(), nullptr);
    const double oracle = std::strtod(cells[8].c_str(), nullptr);
    CHECK(lower <= oracle);
    CHECK(oracle <= upper);
  }
}

TEST_CASE("compare flags crude estimates below resolution") {
  const RunResult r = run(
      "compare --beta 2 --c 1 --n 2 --x 12:12:1 --samples 10000 --seed 1 --chunks 2");
  REQUIRE(r.exit_code == 0);
  const std::vector<std::string> lines = split(r.out, '\n');
  bool found = false;
  for (const auto& ln : lines)
    if (ln.find("crude_below_resolution") != std::string::npos) found = true;
  CHECK(found);
}

TEST_CASE("config round trip reproduces identical output") {
  const RunResult a = run(
      "estimate --method cond --n 2 --x 5 --beta 2 --c 1 --samples 20000 "
      "--seed 3 --chunks 2");
  REQUIRE(a.exit_code == 0);
  const std::string path = "/tmp/lttail_cli_roundtrip.json";
  {
    std::ofstream out(path);
    out << a.out;
  }
  const RunResult b = run("estimate --config " + path);
  REQUIRE(b.exit_code == 0);
  CHECK(a.out == b.out);
  std::remove(path.c_str());
}

TEST_CASE("usage and precondition errors exit with code 2") {
  CHECK(run("estimate --method warp --n 1 --x 1").exit_code == 2);
  CHECK(run("asym --n 3").exit_code == 2);           // missing required --x
  CHECK(run("oracle --n 7 --x 3").exit_code == 2);   // n outside {2,3,4}
  CHECK(run("frobnicate --x 1").exit_code == 2);
  CHECK(run("bounds --beta 2 --c 1 --d 1 --n 2 --x 4").exit_code == 2);  // inexact law
}
