#include <sys/wait.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "doctest.h"
#include "salat/json_io.hpp"

using namespace salat;

namespace {

struct Run {
  int code = -1;
  std::string out;
};

Run run(const std::string& args) {
  const std::string cmd = std::string(SALAT_CLI) + " " + args + " 2>/dev/null";
  Run r;
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  char buf[4096];
  std::size_t got;
  while ((got = fread(buf, 1, sizeof buf, pipe)) > 0) r.out.append(buf, got);
  const int status = pclose(pipe);
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

std::filesystem::path scratch(const std::string& name) {
  const auto dir = std::filesystem::temp_directory_path() / "salat_cli_test";
  std::filesystem::create_directories(dir);
  return dir / name;
}

void write(const std::filesystem::path& p, const std::string& text) { std::ofstream(p) << text; }

}  // namespace

TEST_CASE("gen is deterministic in the seed") {
  const Run a = run("gen --n 5 --k 3 --seed 11 --with-target");
  const Run b = run("gen --n 5 --k 3 --seed 11 --with-target");
  const Run c = run("gen --n 5 --k 3 --seed 12 --with-target");
  CHECK(a.code == 0);
  CHECK(a.out == b.out);
  CHECK(a.out != c.out);
  CHECK(parse_json_text(a.out).contains("target"));
}

TEST_CASE("approx then verify round-trips through a file") {
  const auto doc = scratch("approx.json");
  CHECK(run("approx --n 8 --k 2 --seed 3 --out " + doc.string()).code == 0);
  const Run v = run("verify --in " + doc.string());
  CHECK(v.code == 0);
  std::istringstream lines(v.out);
  std::string line;
  int reports = 0;
  while (std::getline(lines, line)) {
    if (line.empty()) continue;
    const Json j = parse_json_text(line);
    CHECK(j["pass"] == true);
    CHECK(j.contains("config"));
    ++reports;
  }
  CHECK(reports >= 5);
}

TEST_CASE("verify exits 1 on a tampered document") {
  const auto doc = scratch("tampered.json");
  const Run a = run("approx --n 8 --k 2 --seed 5");
  REQUIRE(a.code == 0);
  Json j = parse_json_text(a.out);
  j["trace"][2]["max_entry"] = "1" + std::string(400, '0');
  write(doc, j.dump());
  CHECK(run("verify --in " + doc.string()).code == 1);
}

TEST_CASE("bad input exits 2") {
  const auto doc = scratch("broken.json");
  write(doc, "{\"n\": ");
  CHECK(run("verify --in " + doc.string()).code == 2);
  CHECK(run("approx --n 4 --mode strict").code == 2);  // strict needs n >= 8
  CHECK(run("gen --norm l7").code == 2);
  CHECK(run("frobnicate").code != 0);
}

TEST_CASE("reduce svp agrees with the reference oracle") {
  for (const char* norm : {"l1", "l2", "linf"}) {
    const std::string common = std::string(" --n 3 --k 3 --seed 2 --norm ") + norm;
    const Run r = run("reduce svp --mode small_n" + common);
    const Run o = run("oracle svp" + common);
    REQUIRE(r.code == 0);
    REQUIRE(o.code == 0);
    CHECK(parse_json_text(r.out)["achieved"] == parse_json_text(o.out)["achieved"]);
  }
}

TEST_CASE("stats commands report histograms") {
  const Run g = run("stats coprime-gap --samples 2000 --bits 16 --seed 1");
  REQUIRE(g.code == 0);
  CHECK(parse_json_text(g.out)["histogram"]["samples"] == 2000);
  const Run p = run("stats perturbation --runs 3 --n 8 --k 1 --seed 1");
  REQUIRE(p.code == 0);
  CHECK(parse_json_text(p.out)["histogram"]["samples"] == 21);  // 3 runs, 7 shifts each
}
