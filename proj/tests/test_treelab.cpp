#include <doctest.h>

#include <random>

#include "gapbasis/classify.hpp"
#include "gapbasis/treelab.hpp"
#include "oracles.hpp"

using namespace gapbasis;

namespace {

std::vector<TreeNode> random_nodes(std::mt19937_64& rng, int m, int count, int max_len) {
  std::uniform_int_distribution<int> len(0, max_len);
  std::uniform_int_distribution<int> letter(0, m - 1);
  std::vector<TreeNode> out;
  for (int i = 0; i < count; ++i) {
    TreeNode s;
    for (int p = len(rng); p > 0; --p) s.push_back(letter(rng));
    out.push_back(s);
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

NType type_of(int n, std::vector<int> A, std::vector<int> B, PsiTable psi, std::vector<std::vector<int>> P, std::vector<int> C,
              std::vector<int> D, std::vector<GammaEntry> gamma) {
  return canonicalize(NType{n, std::move(A), std::move(B), std::move(C), std::move(D), {}, std::move(psi), std::move(P),
                            std::move(gamma)});
}

}  // namespace

TEST_CASE("make_comb examples") {
  const auto chain = make_comb(2, 0, 0, 3, 0);
  CHECK(chain.nodes == std::vector<TreeNode>{{0}, {0, 0}, {0, 0, 0}});
  CHECK(chain.kind == DirectionPair{0, 0});
  CHECK(chain.spine.empty());

  const auto comb = make_comb(2, 0, 1, 3, 0);
  CHECK(comb.nodes == std::vector<TreeNode>{{1}, {0, 0, 1}, {0, 0, 0, 0, 1}});
  CHECK(comb.spine == std::vector<TreeNode>{{}, {0, 0}, {0, 0, 0, 0}});
  CHECK(comb.kind == DirectionPair{0, 1});

  CHECK_THROWS_AS(make_comb(2, 0, 2, 3, 0), GapError);
  CHECK_THROWS_AS(make_comb(2, -1, 0, 3, 0), GapError);
}

TEST_CASE("make_comb and comb_type_of round trip") {
  for (int m = 1; m <= 4; ++m) {
    for (int u = 0; u < m; ++u) {
      for (int v = 0; v < m; ++v) {
        for (int len = 2; len <= 8; ++len) {
          for (std::uint64_t seed : {0ull, 1ull, 7ull, 99ull}) {
            const auto comb = make_comb(m, u, v, len, seed);
            CHECK(comb.nodes.size() == static_cast<std::size_t>(len));
            CHECK(comb_type_of(comb.nodes) == DirectionPair{u, v});
            CHECK(oracle::is_comb(comb.nodes, {u, v}));
            CHECK(make_comb(m, u, v, len, seed) == comb);
          }
        }
      }
    }
  }
}

TEST_CASE("comb_type_of examples") {
  CHECK(comb_type_of({{0}, {0, 0}}) == DirectionPair{0, 0});
  CHECK(comb_type_of({{1}, {0, 0, 1}}) == DirectionPair{0, 1});
  CHECK_FALSE(comb_type_of({{0}, {1, 1}}));
  try {
    comb_type_of({{0}});
    FAIL("expected TooSmall");
  } catch (const GapError& e) {
    CHECK(e.code() == ErrorCode::TooSmall);
  }
}

TEST_CASE("kind classification agrees with the spine oracle and kinds are exclusive") {
  std::mt19937_64 rng(41);
  for (int trial = 0; trial < 3000; ++trial) {
    const int m = 2 + trial % 2;
    auto nodes = random_nodes(rng, m, 2 + trial % 3, 5);
    if (nodes.size() < 2) continue;
    const auto kind = comb_type_of(nodes);
    int matching = 0;
    for (int u = 0; u < m; ++u) {
      for (int v = 0; v < m; ++v) {
        const bool oracle_says = oracle::is_comb(nodes, {u, v});
        CHECK(matches_kind(nodes, {u, v}) == oracle_says);
        matching += oracle_says;
        if (oracle_says) CHECK(kind == DirectionPair{u, v});
      }
    }
    CHECK(matching <= 1);
    CHECK(kind.has_value() == (matching == 1));
    if (nodes.size() == 2) CHECK(pair_kind(nodes[0], nodes[1]) == kind);
  }
}

TEST_CASE("extract_comb") {
  const auto comb = make_comb(2, 0, 1, 4, 0);
  const auto ex = extract_comb(comb.nodes);
  REQUIRE(ex.comb);
  CHECK(ex.nodes == comb.nodes);
  CHECK(ex.comb->kind == DirectionPair{0, 1});

  const auto none = extract_comb({{0}, {1}});
  CHECK(none.no_two_comb());
  CHECK(none.nodes == std::vector<TreeNode>{{0}});

  CHECK_THROWS_AS(extract_comb({{0}}), GapError);

  // Full binary tree to depth d: the root-to-leaf chain is optimal. Regression values.
  for (int d = 2; d <= 7; ++d) {
    const auto full = extract_comb(SubtreeDescriptor::full(2).nodes(2, d));
    CHECK(full.exact_length == d + 1);
    CHECK(static_cast<int>(full.nodes.size()) >= d / 2);
    CHECK(full.greedy_length >= d / 2);
  }
  CHECK(extract_comb(SubtreeDescriptor::full(2).nodes(2, 6)).greedy_length == 4);
}

TEST_CASE("extract_comb output validity and monotonicity") {
  std::mt19937_64 rng(43);
  for (int family = 0; family < 60; ++family) {
    const int m = 2 + family % 2;
    auto pool = random_nodes(rng, m, 40, 6);
    std::shuffle(pool.begin(), pool.end(), rng);
    int previous = 0;
    for (std::size_t size = 2; size <= pool.size(); size += 3) {
      std::vector<TreeNode> subset(pool.begin(), pool.begin() + static_cast<std::ptrdiff_t>(size));
      const auto ex = extract_comb(subset);
      const int got = ex.comb ? static_cast<int>(ex.nodes.size()) : 0;
      CHECK(got >= previous);
      previous = got;
      if (ex.comb) {
        CHECK(comb_type_of(ex.nodes) == ex.comb->kind);
        for (const auto& s : ex.nodes) CHECK(std::find(subset.begin(), subset.end(), s) != subset.end());
      }
    }
  }
}

TEST_CASE("phi_map") {
  const auto id = ReductionMap::identity(3);
  CHECK(phi_map(id, {2, 0, 1}) == TreeNode{2, 0, 1});
  const auto r = make_reduction(2, {{0, 1}, {1, 0}}, {1});
  CHECK(phi_map(r, {0, 1}) == TreeNode{0, 1, 1, 0, 1});
  CHECK_THROWS_AS(phi_map(r, {2}), GapError);

  std::mt19937_64 rng(47);
  for (int trial = 0; trial < 200; ++trial) {
    const auto red = oracle::random_reduction(rng, 2 + trial % 2, 2 + trial % 3, 3);
    std::uniform_int_distribution<int> dir(0, red.m0 - 1);
    const int u = dir(rng);
    const int v = dir(rng);
    const auto comb = make_comb(red.m0, u, v, 2 + trial % 4, static_cast<std::uint64_t>(trial));
    std::vector<TreeNode> image;
    for (const auto& s : comb.nodes) image.push_back(phi_map(red, s));
    CHECK(comb_type_of(image) == epsilon(red, u, v));
  }
}

TEST_CASE("subtree comb colors") {
  // n=3, A={0,1}, B={2}, psi symmetric 2; restricted to the A indices.
  const auto ab = type_of(3, {0, 1}, {2}, {{0, 1, Color(2)}, {1, 0, Color(2)}}, {}, {}, {}, {});
  const auto fab = build_f_alpha(ab);
  CHECK(subtree_comb_colors(fab.f, SubtreeDescriptor::index_subset({0, 1}), 6) == std::vector<int>{0, 1, 2});

  // n=4, A empty, P={{0,1},{2,3}}: indices {placeholder, block 01}.
  const auto pp = type_of(4, {}, {}, {}, {{0, 1}, {2, 3}}, {0, 1, 2, 3}, {}, {});
  const auto fpp = build_f_alpha(pp);
  CHECK(subtree_comb_colors(fpp.f, SubtreeDescriptor::index_subset({0, 1}), 6) == std::vector<int>{0, 1});

  // Full tree realizes every kind.
  for (const auto& alpha : enumerate_types(3)) {
    const auto f = build_f_alpha(alpha).f;
    std::set<int> range;
    for (Color c : f.cells()) {
      if (c.is_finite()) range.insert(c.value());
    }
    CHECK(subtree_comb_colors(f, SubtreeDescriptor::full(f.m()), 6) == std::vector<int>(range.begin(), range.end()));
  }
}

TEST_CASE("subtree descriptors") {
  const auto parity = SubtreeDescriptor::parity(1);
  CHECK(parity.contains({}));
  CHECK(parity.contains({0, 1}));
  CHECK_FALSE(parity.contains({1, 0}));
  CHECK_FALSE(parity.contains({0}));
  for (const auto& s : parity.nodes(3, 4)) CHECK(parity.contains(s));
  CHECK(parity.nodes(3, 4).size() == 1 + 6 + 36);
  CHECK(SubtreeDescriptor::index_subset({0, 2}).nodes(3, 2).size() == 7);
}
