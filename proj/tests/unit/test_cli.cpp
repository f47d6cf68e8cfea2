#include <doctest.h>

#include <cstdio>
#include <fstream>
#include <json.hpp>
#include <sstream>

#include "gridslice/cli.hpp"

using namespace gridslice;

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run run_cli(std::vector<std::string> args) {
  std::ostringstream out, err;
  int code = run(args, out, err);
  return {code, out.str(), err.str()};
}

std::string write_grid(const std::string& name, const std::string& text) {
  std::string path = "gridslice_test_" + name + ".grid";
  std::ofstream(path, std::ios::binary) << text;
  return path;
}

}  // namespace

TEST_CASE("parsing grid files") {
  auto d = parse_grid("grid v1\nn = 2\nx = 1 2\no = 2 1\n");
  CHECK(d == validate_planar(2, {1, 2}, {2, 1}));
  CHECK(parse_grid("grid v1\nn = 1\nx = 1\no = 1\n") == validate_planar(1, {1}, {1}));
  CHECK(parse_grid("# comment\r\n\r\ngrid v1\r\nn=3  # size\r\nx = [1, 3, 2]\r\no = 2 1 3\r\n") ==
        validate_planar(3, {1, 3, 2}, {2, 1, 3}));
  CHECK(parse_grid(format_grid(d)) == d);
}

TEST_CASE("parse errors carry line numbers") {
  try {
    parse_grid("grid v1\nn = 2\nx = 1 1\no = 2 1\n");
    FAIL("expected a parse error");
  } catch (const ParseError& e) {
    CHECK(e.line() == 3);
    CHECK(std::string(e.what()).find("x") != std::string::npos);
  }
  CHECK_THROWS_AS(parse_grid("grid v2\nn = 1\nx = 1\no = 1\n"), ParseError);
  CHECK_THROWS_AS(parse_grid("grid v1\nn = 2\nx = 1 2\n"), ParseError);
  CHECK_THROWS_AS(parse_grid("grid v1\nn = 2\nx = 1 two\no = 1 2\n"), ParseError);
  CHECK_THROWS_AS(parse_grid("grid v1\nn = 2\ny = 1 2\n"), ParseError);
  CHECK_THROWS_AS(parse_grid("grid v1\nn = 2\nx = 1 2 3\no = 1 2\n"), ParseError);
  CHECK_THROWS_AS(parse_grid(""), ParseError);
}

TEST_CASE("random diagrams are deterministic and valid") {
  auto a = random_diagram(6, 42);
  CHECK(a == random_diagram(6, 42));
  CHECK_NOTHROW(validate_planar(a.n, a.sigma_x, a.sigma_o));
  bool differs = false;
  for (std::uint64_t s = 0; s < 10; ++s) differs |= !(random_diagram(6, s) == a);
  CHECK(differs);
}

TEST_CASE("complex command prints the differential table") {
  auto path = write_grid("ex2", "grid v1\nn = 2\nx = 1 2\no = 2 1\n");
  auto r = run_cli({"complex", path});
  CHECK(r.code == 0);
  CHECK(r.out.find("d[2,3,1] = U1*[3,2,1]") != std::string::npos);
  CHECK(r.out.find("d[3,1,2] = U2*[3,2,1]") != std::string::npos);
  CHECK(r.out.find("d[1,2,3] = 0") != std::string::npos);
  std::remove(path.c_str());
}

TEST_CASE("pair --verify reports an exact match") {
  auto path = write_grid("pair", "grid v1\nn = 3\nx = 2 3 1\no = 3 1 2\n");
  auto r = run_cli({"pair", path, "--cut", "1", "--verify"});
  CHECK(r.code == 0);
  CHECK(r.out.find("pairing: EXACT MATCH") != std::string::npos);
  auto r2 = run_cli({"pair", path, "--cuts", "1,2", "--verify"});
  CHECK(r2.code == 0);
  std::remove(path.c_str());
}

TEST_CASE("json reports are byte-identical across runs") {
  auto a = run_cli({"--json", "check", "--random", "3", "--count", "5", "--seed", "7"});
  auto b = run_cli({"--json", "check", "--random", "3", "--count", "5", "--seed", "7"});
  CHECK(a.code == 0);
  CHECK(a.out == b.out);
  auto doc = nlohmann::json::parse(a.out);
  CHECK(doc["command"] == "check");
  CHECK(doc["n"] == 3);
  CHECK(doc["verdict"] == "pass");
  CHECK(doc["timings_ms"].empty());
  CHECK(doc.contains("results"));
}

TEST_CASE("homology command and algebra listing") {
  auto path = write_grid("hom", "grid v1\nn = 1\nx = 1\no = 1\n");
  auto r = run_cli({"--json", "homology", path, "--amin", "-1", "--amax", "0", "--mumin", "-3", "--mumax", "0"});
  CHECK(r.code == 0);
  auto doc = nlohmann::json::parse(r.out);
  CHECK(doc["results"]["total"] == 4);
  std::remove(path.c_str());

  auto a = run_cli({"--json", "algebra", "--n", "2", "--k", "2", "basis"});
  CHECK(nlohmann::json::parse(a.out)["results"]["basis_size"] == 7);
  auto dd = run_cli({"dd", "--n", "2", "--k", "1"});
  CHECK(dd.code == 0);
}

TEST_CASE("usage and input errors exit with status 2") {
  CHECK(run_cli({}).code == 2);
  CHECK(run_cli({"frobnicate"}).code == 2);
  CHECK(run_cli({"complex", "does-not-exist.grid"}).code == 2);
  auto bad = write_grid("bad", "grid v1\nn = 2\nx = 1 1\no = 2 1\n");
  auto r = run_cli({"complex", bad});
  CHECK(r.code == 2);
  CHECK(r.err.find("line 3") != std::string::npos);
  CHECK(run_cli({"pair", bad}).code == 2);
  std::remove(bad.c_str());
  CHECK(run_cli({"check", "--random", "3", "--exhaustive", "2"}).code == 2);
  CHECK(run_cli({"--help"}).code == 0);
}
