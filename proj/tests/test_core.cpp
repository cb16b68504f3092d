#include <doctest.h>

#include <random>

#include "gapbasis/core.hpp"
#include "oracles.hpp"

using namespace gapbasis;

namespace {

GapFunction three_point_gap() {
  std::vector<Color> cells;
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) cells.push_back(Color(i == j ? 3 : 3 - i - j));
  }
  return GapFunction(3, 4, cells);
}

}  // namespace

TEST_CASE("meet") {
  CHECK(meet({0, 1, 0}, {0, 2}) == TreeNode{0});
  CHECK(meet({1}, {2}) == TreeNode{});
  CHECK(meet({0, 1}, {0, 1, 1}) == TreeNode{0, 1});
}

TEST_CASE("inc") {
  CHECK(inc({0, 1}, {0}) == DirectionPair{1, 1});
  CHECK(inc({0}, {0, 1}) == DirectionPair{1, 1});
  CHECK(inc({0, 1, 0}, {0, 2}) == DirectionPair{1, 2});
  CHECK(inc({1}, {2}) == DirectionPair{1, 2});
  CHECK(inc({2}, {1}) == DirectionPair{2, 1});
  try {
    inc({0}, {0});
    FAIL("expected EqualNodes");
  } catch (const GapError& e) {
    CHECK(e.code() == ErrorCode::EqualNodes);
  }
}

TEST_CASE("inc against the literal definition on random nodes") {
  std::mt19937_64 rng(11);
  std::uniform_int_distribution<int> len(0, 5);
  std::uniform_int_distribution<int> letter(0, 2);
  for (int trial = 0; trial < 2000; ++trial) {
    TreeNode s;
    TreeNode t;
    for (int i = len(rng); i > 0; --i) s.push_back(letter(rng));
    for (int i = len(rng); i > 0; --i) t.push_back(letter(rng));
    if (s == t) continue;
    const auto p = inc(s, t);
    CHECK(p == oracle::inc(s, t));
    CHECK(p.first < 3);
    CHECK(p.second < 3);
    if (s.size() == t.size()) CHECK(p.first != p.second);
    if (p.is_diagonal()) {
      CHECK(inc(t, s) == p);
    } else {
      CHECK(inc(t, s) == p.swapped());
    }
  }
}

TEST_CASE("gap function validity") {
  const auto a = GapFunction::from_rows(2, {{Color(0), kInf}, {kInf, Color(1)}});
  CHECK(validate_gap_function(a).total);
  CHECK(is_n_gap(a));
  const auto b = GapFunction::from_rows(2, {{Color(0), Color(0)}, {Color(0), Color(0)}});
  CHECK_FALSE(is_n_gap(b));
  CHECK(validate_gap_function(b).missing_colors == std::vector<int>{1});
  CHECK(is_n_gap(three_point_gap()));
  CHECK_THROWS_AS(GapFunction(2, 2, {Color(0), Color(2), Color(0), Color(0)}), GapError);
  CHECK_THROWS_AS(GapFunction(2, 2, {Color(0)}), GapError);
  try {
    require_n_gap(b, "b");
    FAIL("expected NotAnNGap");
  } catch (const GapError& e) {
    CHECK(e.code() == ErrorCode::NotAnNGap);
  }
}

TEST_CASE("color permutations") {
  const auto f = GapFunction::from_rows(2, {{Color(0), kInf}, {kInf, Color(1)}});
  CHECK(apply_color_permutation({0, 1}, f) == f);
  const auto swapped = apply_color_permutation({1, 0}, f);
  CHECK(swapped == GapFunction::from_rows(2, {{Color(1), kInf}, {kInf, Color(0)}}));
  CHECK(apply_color_permutation(inverse({1, 0}), swapped) == f);
  CHECK_THROWS_AS(apply_color_permutation({0, 0}, f), GapError);
  CHECK_THROWS_AS(require_permutation({0, 2}, 2), GapError);

  CHECK(all_permutations(3).size() == 6);
  const auto g = three_point_gap();
  for (const auto& p1 : all_permutations(4)) {
    CHECK(is_n_gap(apply_color_permutation(p1, g)));
    for (const auto& p2 : all_permutations(4)) {
      CHECK(apply_color_permutation(p2, apply_color_permutation(p1, g)) ==
            apply_color_permutation(compose(p2, p1), g));
    }
  }
}

TEST_CASE("tree node helpers") {
  const TreeNode s{0, 1};
  CHECK(s.appended(2) == TreeNode{0, 1, 2});
  CHECK(s.concatenated({3}) == TreeNode{0, 1, 3});
  CHECK(s.prefix(1) == TreeNode{0});
  CHECK(s.is_strict_prefix_of({0, 1, 0}));
  CHECK_FALSE(s.is_strict_prefix_of(s));
  CHECK(s.alphabet_bound() == 2);
  CHECK(TreeNode{}.alphabet_bound() == 0);
  CHECK(ShortlexLess{}({5}, {0, 0}));
}
