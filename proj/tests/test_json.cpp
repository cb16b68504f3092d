#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <random>

#include <unistd.h>

#include "gapbasis/catalog_store.hpp"
#include "gapbasis/json_io.hpp"
#include "oracles.hpp"

using namespace gapbasis;
namespace fs = std::filesystem;

namespace {

struct TempDir {
  fs::path path;
  TempDir() {
    static int counter = 0;
    path = fs::temp_directory_path() / ("gapbasis_json_test_" + std::to_string(::getpid()) + "_" + std::to_string(counter++));
    fs::remove_all(path);
    fs::create_directories(path);
  }
  ~TempDir() {
    std::error_code ec;
    fs::remove_all(path, ec);
  }
};

void write_file(const fs::path& p, const std::string& text) {
  std::ofstream out(p, std::ios::binary | std::ios::trunc);
  out << text;
}

}  // namespace

TEST_CASE("gap function encoding") {
  const auto f = GapFunction::from_rows(2, {{Color(0), kInf}, {Color(1), Color(1)}});
  const Json j = to_json(f);
  CHECK(j.dump() == R"({"m":2,"n":2,"table":[[0,"inf"],[1,1]]})");
  CHECK(gap_function_from_json(j) == f);
  CHECK_THROWS_AS(gap_function_from_json(Json::parse(R"({"m":2,"n":2,"table":[[0,"x"],[1,1]]})")), GapError);
  CHECK_THROWS_AS(gap_function_from_json(Json::parse(R"({"m":2,"n":2,"table":[[0,1]]})")), GapError);
  CHECK_THROWS_AS(gap_function_from_json(Json::parse(R"({"m":1,"n":1,"table":[[3]]})")), GapError);
  CHECK_THROWS_AS(color_from_json(Json(-1)), GapError);
}

TEST_CASE("random round trips") {
  std::mt19937_64 rng(53);
  for (int trial = 0; trial < 100; ++trial) {
    const auto f = oracle::random_gap(rng, 2 + trial % 3, 1 + trial % 3);
    CHECK(gap_function_from_json(Json::parse(to_json(f).dump())) == f);
    const auto r = oracle::random_reduction(rng, 2, 3, 3);
    CHECK(reduction_from_json(Json::parse(to_json(r).dump()), 3) == r);
  }
  for (int n = 1; n <= 3; ++n) {
    for (const auto& alpha : enumerate_types(n)) CHECK(ntype_from_json(Json::parse(to_json(alpha).dump())) == alpha);
  }
  const auto comb = make_comb(3, 1, 2, 4, 5);
  const auto back = comb_from_json(to_json(comb));
  CHECK(back.nodes == comb.nodes);
  CHECK(back.kind == comb.kind);
}

TEST_CASE("reduction alphabet defaults to the largest letter") {
  const auto r = reduction_from_json(Json::parse(R"({"k":2,"x":[1],"e":[[0,1],[2,0]]})"));
  CHECK(r.m1 == 3);
  CHECK(r.m0 == 2);
  CHECK_THROWS_AS(reduction_from_json(Json::parse(R"({"k":2,"x":[1],"e":[[0,1],[0,1]]})")), GapError);
}

TEST_CASE("type decoding is structural") {
  Json j = to_json(enumerate_types(2).front());
  j["C"] = Json::array({0});
  CHECK_FALSE(validate_type(ntype_from_json(j)).valid());
  j.erase("gamma");
  CHECK_THROWS_AS(ntype_from_json(j), GapError);
}

TEST_CASE("catalog encoding") {
  const auto cat = minimal_basis(2);
  const Json j = to_json(cat);
  CHECK(j["count"] == 6);
  CHECK(j["entries"].size() == 6);
  CHECK(j["entries"][0].contains("orbit_id"));
  CHECK(j["entries"][0].contains("f"));
  CHECK(j["entries"][0].contains("j"));
  CHECK(catalog_from_json(j) == cat);

  Json tampered = j;
  tampered["entries"][0]["f"]["table"][0][0] = 1;
  try {
    catalog_from_json(tampered);
    FAIL("expected CorruptCache");
  } catch (const GapError& e) {
    CHECK(e.code() == ErrorCode::CorruptCache);
  }
}

TEST_CASE("catalog cache") {
  TempDir dir;
  const auto first = load_or_build_catalog(3, dir.path);
  CHECK(first.source == CatalogSource::Computed);
  CHECK(fs::exists(catalog_path(dir.path, 3)));
  const auto second = load_or_build_catalog(3, dir.path);
  CHECK(second.source == CatalogSource::Cache);
  CHECK(second.catalog == first.catalog);
  CHECK(second.catalog == minimal_basis(3));

  write_file(catalog_path(dir.path, 3), R"({"version":"gapbasis-catalog-0","catalog":{}})");
  CHECK_FALSE(load_catalog(dir.path, 3));
  const auto stale = load_or_build_catalog(3, dir.path);
  CHECK(stale.source == CatalogSource::RecomputedStale);
  CHECK(load_catalog(dir.path, 3) == stale.catalog);

  write_file(catalog_path(dir.path, 3), "{not json");
  CHECK_THROWS_AS(load_catalog(dir.path, 3), GapError);
  const auto corrupt = load_or_build_catalog(3, dir.path);
  CHECK(corrupt.source == CatalogSource::RecomputedCorrupt);
  CHECK(corrupt.catalog == first.catalog);
  CHECK(load_or_build_catalog(3, dir.path).source == CatalogSource::Cache);

  // A file for n=2 stored under the n=3 name.
  fs::copy_file(save_catalog(dir.path, minimal_basis(2)), catalog_path(dir.path, 3), fs::copy_options::overwrite_existing);
  CHECK_THROWS_AS(load_catalog(dir.path, 3), GapError);

  const auto none = load_or_build_catalog(2, std::nullopt);
  CHECK(none.source == CatalogSource::Computed);
}
