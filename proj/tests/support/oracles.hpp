#pragma once

// Naive reference implementations used to cross-check the library. They
// follow the definitions literally and make no attempt at speed.

#include <algorithm>
#include <functional>
#include <optional>
#include <random>
#include <set>
#include <vector>

#include "gapbasis/core.hpp"
#include "gapbasis/reduction.hpp"

namespace oracle {

using gapbasis::Color;
using gapbasis::DirectionPair;
using gapbasis::GapFunction;
using gapbasis::ReductionMap;
using gapbasis::TreeNode;

inline std::vector<int> letters(const TreeNode& s) { return {s.letters().begin(), s.letters().end()}; }

inline bool prefix(const TreeNode& a, const TreeNode& b) {
  if (a.size() > b.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] != b[i]) return false;
  }
  return true;
}

// inc straight from the definition: comparable gives (u,u), otherwise the
// letters right after the longest common prefix.
inline DirectionPair inc(const TreeNode& s, const TreeNode& t) {
  if (prefix(s, t)) return {t[s.size()], t[s.size()]};
  if (prefix(t, s)) return {s[t.size()], s[t.size()]};
  std::size_t r = 0;
  while (s[r] == t[r]) ++r;
  return {s[r], t[r]};
}

inline DirectionPair epsilon(const ReductionMap& r, int u, int v) {
  return u == v ? oracle::inc(r.e[u], r.x) : oracle::inc(r.e[u], r.e[v]);
}

inline bool is_witness(const ReductionMap& r, const GapFunction& f, const GapFunction& g) {
  for (int u = 0; u < f.m(); ++u) {
    for (int v = 0; v < f.m(); ++v) {
      const auto p = oracle::epsilon(r, u, v);
      if (f.at(u, v) != g.at(p.first, p.second)) return false;
    }
  }
  return true;
}

inline std::set<int> pbranch(const GapFunction& f) {
  std::set<int> out;
  for (int c = 0; c < f.n(); ++c) {
    bool only_diagonal = true;
    for (int i = 0; i < f.m(); ++i) {
      for (int j = 0; j < f.m(); ++j) {
        if (i != j && f.at(i, j) == Color(c)) only_diagonal = false;
      }
    }
    if (only_diagonal) out.insert(c);
  }
  return out;
}

inline bool attached(const GapFunction& f, Color k, Color l) {
  for (int i = 0; i < f.m(); ++i) {
    for (int j = 0; j < f.m(); ++j) {
      if (i == j || f.at(i, j) != k) continue;
      if (f.at(j, i) != l) return false;
    }
  }
  return true;
}

// Comb definition checked by trying every choice of spine among prefixes of
// the nodes: s_i <= t_i with s_i^v <= t_i, s_i^u <= s_{i+1}, |t_i| < |s_{i+1}|.
inline bool is_comb(std::vector<TreeNode> t, DirectionPair kind) {
  std::stable_sort(t.begin(), t.end(), [](const TreeNode& a, const TreeNode& b) { return a.size() < b.size(); });
  for (std::size_t i = 0; i + 1 < t.size(); ++i) {
    if (t[i].size() == t[i + 1].size()) return false;
  }
  const auto [u, v] = kind;
  if (u == v) {
    for (std::size_t i = 0; i + 1 < t.size(); ++i) {
      if (!prefix(t[i].appended(u), t[i + 1])) return false;
    }
    return true;
  }
  std::function<bool(std::size_t, const TreeNode*)> place = [&](std::size_t i, const TreeNode* prev) -> bool {
    if (i == t.size()) return true;
    for (std::size_t len = 0; len < t[i].size(); ++len) {
      const TreeNode s = t[i].prefix(len);
      if (t[i][len] != v) continue;
      if (prev != nullptr) {
        if (!prefix(prev->appended(u), s)) continue;
        if (t[i - 1].size() >= s.size()) continue;
      }
      if (place(i + 1, &s)) return true;
    }
    return false;
  };
  return place(0, nullptr);
}

inline GapFunction random_gap(std::mt19937_64& rng, int m, int n, double inf_rate = 0.2) {
  std::uniform_real_distribution<double> coin(0.0, 1.0);
  std::uniform_int_distribution<int> color(0, n - 1);
  while (true) {
    std::vector<Color> cells;
    for (int i = 0; i < m * m; ++i) cells.push_back(coin(rng) < inf_rate ? gapbasis::kInf : Color(color(rng)));
    GapFunction f(m, n, std::move(cells));
    if (gapbasis::is_n_gap(f)) return f;
  }
}

inline ReductionMap random_reduction(std::mt19937_64& rng, int m0, int m1, int k_max) {
  std::uniform_int_distribution<int> letter(0, m1 - 1);
  while (true) {
    const int k = std::uniform_int_distribution<int>(1, k_max)(rng);
    std::vector<TreeNode> e;
    std::set<TreeNode> seen;
    bool ok = true;
    for (int u = 0; u < m0; ++u) {
      TreeNode node;
      for (int p = 0; p < k; ++p) node.push_back(letter(rng));
      ok = ok && seen.insert(node).second;
      e.push_back(node);
    }
    if (!ok) continue;
    TreeNode x;
    const int xl = std::uniform_int_distribution<int>(0, k - 1)(rng);
    for (int p = 0; p < xl; ++p) x.push_back(letter(rng));
    return gapbasis::make_reduction(m1, std::move(e), std::move(x));
  }
}

}  // namespace oracle
