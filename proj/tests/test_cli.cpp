#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>

#include <unistd.h>

#include "gapbasis/cli.hpp"
#include "gapbasis/json_io.hpp"

using namespace gapbasis;
namespace fs = std::filesystem;

namespace {

struct Result {
  int code = 0;
  std::string out;
  std::string err;
  Json json() const { return Json::parse(out); }
};

Result cli(std::vector<std::string> args) {
  args.insert(args.begin(), "gapbasis");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out;
  std::ostringstream err;
  Result r;
  r.code = run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
  r.out = out.str();
  r.err = err.str();
  return r;
}

fs::path scratch() {
  const fs::path dir = fs::temp_directory_path() / ("gapbasis_cli_test_" + std::to_string(::getpid()));
  fs::create_directories(dir);
  return dir;
}

std::string write_json(const std::string& name, const Json& j) {
  const fs::path p = scratch() / name;
  std::ofstream(p) << j.dump();
  return p.string();
}

const Color I = kInf;
Color c(int v) { return Color(v); }

GapFunction three_point_gap() {
  std::vector<Color> cells;
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) cells.push_back(Color(i == j ? 3 : 3 - i - j));
  }
  return GapFunction(3, 4, cells);
}

}  // namespace

TEST_CASE("types") {
  const auto r = cli({"types", "--n", "2"});
  CHECK(r.code == kExitOk);
  const auto j = r.json();
  CHECK(j["count"] == 6);
  REQUIRE(j["types"].size() == 6);
  const auto types = enumerate_types(2);
  for (std::size_t t = 0; t < types.size(); ++t) CHECK(ntype_from_json(j["types"][t]) == types[t]);

  CHECK(cli({"types", "--n", "3"}).json()["count"] == 31);
  CHECK(cli({"types", "--n", "3", "--up-to-perm"}).json()["count"] == 9);
}

TEST_CASE("basis table and csv") {
  const auto table = cli({"basis", "--n", "2", "--format", "table"});
  CHECK(table.code == kExitOk);
  std::istringstream lines(table.out);
  std::string line;
  std::vector<std::string> rows;
  while (std::getline(lines, line)) rows.push_back(line);
  REQUIRE(rows.size() == 8);  // header, rule, six entries
  CHECK(rows[0].rfind("index", 0) == 0);
  CHECK(rows[0].find("orbit") != std::string::npos);
  std::set<std::string> orbit_ids;
  for (std::size_t i = 2; i < rows.size(); ++i) {
    std::istringstream cells(rows[i]);
    std::string index;
    std::string orbit;
    cells >> index >> orbit;
    orbit_ids.insert(orbit);
  }
  CHECK(orbit_ids.size() == 4);

  const auto csv = cli({"basis", "--n", "2", "--format", "csv"});
  CHECK(csv.code == kExitOk);
  CHECK(csv.out.rfind("index,orbit,m,A,B,C,D,E,psi,P,gamma,f\n", 0) == 0);

  const auto json = cli({"basis", "--n", "3", "--up-to-perm"}).json();
  CHECK(json["entries"].size() == 9);
  CHECK(json["orbit_count"] == 9);
}

TEST_CASE("basis agrees with the library catalog") {
  const auto j = cli({"basis", "--n", "3"}).json();
  const auto cat = minimal_basis(3);
  REQUIRE(j["entries"].size() == cat.entries.size());
  for (std::size_t t = 0; t < cat.entries.size(); ++t) {
    CHECK(gap_function_from_json(j["entries"][t]["f"]) == cat.entries[t].representative.f);
    CHECK(j["entries"][t]["orbit_id"] == cat.entries[t].orbit_id);
  }
}

TEST_CASE("orbits") {
  const auto j = cli({"orbits", "--n", "3"}).json();
  CHECK(j["count"] == 9);
  std::multiset<int> sizes;
  for (const auto& o : j["orbits"]) sizes.insert(o["size"].get<int>());
  CHECK(sizes == std::multiset<int>{1, 3, 3, 3, 3, 3, 3, 6, 6});
}

TEST_CASE("leq and equiv") {
  const auto f = GapFunction::from_rows(2, {{c(0), I}, {I, c(1)}});
  const auto path = write_json("f.json", to_json(f));
  const auto r = cli({"leq", "--f", path, "--g", path});
  CHECK(r.code == kExitOk);
  const auto j = r.json();
  CHECK(j["leq"] == true);
  CHECK(j["witness"]["k"] == 1);
  CHECK(reduction_from_json(j["witness"], 2) == ReductionMap::identity(2));

  const auto other = write_json("g.json", to_json(GapFunction::from_rows(2, {{c(0), I}, {c(1), c(1)}})));
  CHECK(cli({"leq", "--f", path, "--g", other, "--engine", "brute"}).json()["leq"] == false);
  const auto e = cli({"equiv", "--f", path, "--g", other}).json();
  CHECK(e["equivalent"] == false);
  CHECK(e["forward"].is_null());
}

TEST_CASE("invariants, derive and classify") {
  const auto path = write_json("three_point.json", to_json(three_point_gap()));
  const auto inv = cli({"invariants", "--f", path}).json();
  CHECK(inv["n_gap"] == true);
  CHECK(inv["pbranch"] == Json::array({3}));
  CHECK(inv["condition1"].is_null());

  const auto d = cli({"derive", "--f", path});
  CHECK(d.code == kExitOk);
  const auto dj = d.json();
  const auto alpha = ntype_from_json(dj["type"]);
  CHECK(alpha.A == std::vector<int>{3});
  CHECK(alpha.P == std::vector<std::vector<int>>{{0}, {1}, {2}});
  CHECK(dj["normalized"].is_null());
  const auto w = reduction_from_json(dj["witness"], 3);
  CHECK(is_witness(w, build_f_alpha(alpha).f, three_point_gap()));

  const auto cl = cli({"classify", "--f", path}).json();
  CHECK(cl["minimal"] == false);
  CHECK(cl["types_below"].size() == 1);

  const auto fa = write_json("fa.json", to_json(minimal_basis(3).entries[4].representative.f));
  const auto min = cli({"classify", "--f", fa}).json();
  CHECK(min["minimal"] == true);
  CHECK(min["catalog_index"] == 4);
}

TEST_CASE("derive normalizes empty pbranch inputs") {
  // Color 1 lacks a distinct attached partner, so Condition 1 fails.
  const auto g = GapFunction::from_rows(2, {{c(0), c(0), c(1)}, {c(1), c(0), c(1)}, {c(1), c(1), c(0)}});
  const auto path = write_json("cond1.json", to_json(g));
  const auto r = cli({"derive", "--f", path});
  REQUIRE(r.code == kExitOk);
  const auto j = r.json();
  CHECK_FALSE(j["normalized"].is_null());
  const auto alpha = ntype_from_json(j["type"]);
  const auto w = reduction_from_json(j["witness"], 3);
  CHECK(is_witness(w, build_f_alpha(alpha).f, g));
}

TEST_CASE("clover and verify") {
  const auto cl = cli({"clover", "--n", "3"});
  CHECK(cl.code == kExitOk);
  CHECK(cl.json()["all_consistent"] == true);
  CHECK(cli({"clover", "--n", "2"}).code == kExitInvalidInput);

  const auto v = cli({"verify", "--n", "3"});
  CHECK(v.code == kExitOk);
  const auto j = v.json();
  CHECK(j["summary"] == "930/930 pairs passed");
  CHECK(j["ok"] == true);
  CHECK(j["derivation"]["passed"] == 31);
}

TEST_CASE("comb") {
  const auto made = cli({"comb", "make", "--m", "2", "--u", "0", "--v", "1", "--length", "3"}).json();
  CHECK(made["kind"] == Json::array({0, 1}));
  CHECK(made["nodes"] == Json::parse("[[1],[0,0,1],[0,0,0,0,1]]"));

  const auto nodes = write_json("nodes.json", made["nodes"]);
  CHECK(cli({"comb", "classify", "--nodes", nodes}).json()["kind"] == Json::array({0, 1}));
  const auto ex = cli({"comb", "extract", "--nodes", nodes}).json();
  CHECK(ex["nodes"].size() == 3);
  CHECK(ex["no_two_comb"] == false);

  const auto pair = write_json("pair.json", Json::parse("[[0],[1]]"));
  CHECK(cli({"comb", "extract", "--nodes", pair}).json()["no_two_comb"] == true);
  CHECK(cli({"comb", "make", "--m", "2", "--u", "2"}).code == kExitInvalidInput);
}

TEST_CASE("exit codes") {
  CHECK(cli({}).code == kExitUsage);
  CHECK(cli({"types"}).code == kExitUsage);
  CHECK(cli({"types", "--n", "9"}).code == kExitUsage);
  CHECK(cli({"types", "--n", "2", "--format", "xml"}).code == kExitUsage);
  CHECK(cli({"bogus"}).code == kExitUsage);
  CHECK(cli({"--help"}).code == kExitOk);
  CHECK(cli({"comb", "frobnicate"}).code == kExitUsage);
  CHECK(cli({"clover", "--n", "3", "--depth", "40"}).code == kExitUsage);

  CHECK(cli({"leq", "--f", "/nonexistent.json", "--g", "/nonexistent.json"}).code == kExitInvalidInput);
  const auto bad = write_json("bad.json", Json::parse(R"({"m":2,"n":2,"table":[[0,0],[0,0]]})"));
  const auto r = cli({"leq", "--f", bad, "--g", bad});
  CHECK(r.code == kExitInvalidInput);
  CHECK(r.err.find("NotAnNGap") != std::string::npos);
}
