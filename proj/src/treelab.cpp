#include "gapbasis/treelab.hpp"

#include <algorithm>
#include <map>
#include <random>
#include <set>

namespace gapbasis {

namespace {

std::size_t meet_length(const TreeNode& a, const TreeNode& b) {
  const std::size_t limit = std::min(a.size(), b.size());
  std::size_t l = 0;
  while (l < limit && a[l] == b[l]) ++l;
  return l;
}

std::vector<TreeNode> by_length(std::vector<TreeNode> nodes) {
  std::sort(nodes.begin(), nodes.end(), ShortlexLess{});
  nodes.erase(std::unique(nodes.begin(), nodes.end()), nodes.end());
  return nodes;
}

// Least p with lo < p < |t| and t[p] == v, if any.
std::optional<std::size_t> last_split(const TreeNode& t, std::size_t lo, int v) {
  for (std::size_t p = lo + 1; p < t.size(); ++p) {
    if (t[p] == v) return p;
  }
  return std::nullopt;
}

// Spine for nodes sorted by strictly increasing length, or nullopt when the
// (u,v)-comb conditions fail. Chains get an empty spine.
std::optional<std::vector<TreeNode>> spine_for(const std::vector<TreeNode>& t, DirectionPair kind) {
  const auto [u, v] = kind;
  for (std::size_t i = 0; i + 1 < t.size(); ++i) {
    if (t[i].size() >= t[i + 1].size()) return std::nullopt;
  }
  if (u == v) {
    for (std::size_t i = 0; i + 1 < t.size(); ++i) {
      if (!t[i].is_strict_prefix_of(t[i + 1]) || t[i + 1][t[i].size()] != u) return std::nullopt;
    }
    return std::vector<TreeNode>{};
  }

  std::vector<std::size_t> s;
  for (std::size_t i = 0; i + 1 < t.size(); ++i) {
    if (t[i].is_prefix_of(t[i + 1])) return std::nullopt;
    const std::size_t l = meet_length(t[i], t[i + 1]);
    if (t[i][l] != v || t[i + 1][l] != u) return std::nullopt;
    if (i > 0 && (l <= s.back() || t[i - 1].size() >= l)) return std::nullopt;
    s.push_back(l);
  }
  const TreeNode& last = t.back();
  const std::size_t lo = t.size() >= 2 ? t[t.size() - 2].size() : 0;
  std::optional<std::size_t> p;
  if (t.size() == 1) {
    for (std::size_t q = 0; q < last.size() && !p; ++q) {
      if (last[q] == v) p = q;
    }
  } else {
    p = last_split(last, lo, v);
  }
  if (!p) return std::nullopt;
  s.push_back(*p);

  std::vector<TreeNode> spine;
  for (std::size_t i = 0; i < t.size(); ++i) spine.push_back(t[i].prefix(s[i]));
  return spine;
}

}  // namespace

SubtreeDescriptor SubtreeDescriptor::index_subset(std::vector<int> letters) {
  std::sort(letters.begin(), letters.end());
  letters.erase(std::unique(letters.begin(), letters.end()), letters.end());
  SubtreeDescriptor d;
  d.kind = Kind::IndexSubset;
  d.allowed = std::move(letters);
  return d;
}

SubtreeDescriptor SubtreeDescriptor::parity(int forbidden_letter) {
  SubtreeDescriptor d;
  d.kind = Kind::Parity;
  d.forbidden = forbidden_letter;
  return d;
}

SubtreeDescriptor SubtreeDescriptor::full(int m) {
  std::vector<int> all(static_cast<std::size_t>(m));
  for (int i = 0; i < m; ++i) all[static_cast<std::size_t>(i)] = i;
  return index_subset(std::move(all));
}

bool SubtreeDescriptor::contains(const TreeNode& s) const {
  if (kind == Kind::IndexSubset) {
    for (int letter : s.letters()) {
      if (!std::binary_search(allowed.begin(), allowed.end(), letter)) return false;
    }
    return true;
  }
  if (s.size() % 2 != 0) return false;
  for (std::size_t p = 0; p < s.size(); p += 2) {
    if (s[p] == forbidden) return false;
  }
  return true;
}

std::vector<TreeNode> SubtreeDescriptor::nodes(int m, int depth) const {
  std::vector<TreeNode> out;
  std::vector<TreeNode> level{TreeNode{}};
  for (int len = 0; len <= depth; ++len) {
    for (const auto& s : level) {
      if (contains(s)) out.push_back(s);
    }
    if (len == depth) break;
    std::vector<TreeNode> next;
    for (const auto& s : level) {
      for (int a = 0; a < m; ++a) {
        if (kind == Kind::IndexSubset && !std::binary_search(allowed.begin(), allowed.end(), a)) continue;
        if (kind == Kind::Parity && s.size() % 2 == 0 && a == forbidden) continue;
        next.push_back(s.appended(a));
      }
    }
    level = std::move(next);
  }
  return out;
}

FiniteComb make_comb(int m, int u, int v, int length, std::uint64_t seed) {
  if (u < 0 || v < 0 || u >= m || v >= m) throw GapError(ErrorCode::BadDirection, "direction outside m");
  if (length < 1) throw GapError(ErrorCode::InvalidInput, "comb length must be at least 1");

  std::mt19937_64 rng(seed);
  auto filler = [&](int max_len) {
    TreeNode out;
    if (seed == 0) return out;
    const int len = std::uniform_int_distribution<int>(0, max_len)(rng);
    for (int i = 0; i < len; ++i) out.push_back(std::uniform_int_distribution<int>(0, m - 1)(rng));
    return out;
  };

  FiniteComb comb;
  comb.kind = {u, v};
  if (u == v) {
    TreeNode t = filler(2);
    for (int i = 0; i < length; ++i) {
      t = t.appended(u).concatenated(i == 0 ? TreeNode{} : filler(2));
      comb.nodes.push_back(t);
    }
    return comb;
  }

  TreeNode s = filler(2);
  for (int i = 0; i < length; ++i) {
    // |t| < |next s| needs the t filler strictly shorter than the spine one.
    TreeNode spine_fill = seed == 0 ? TreeNode{u} : TreeNode{u}.concatenated(filler(3));
    const std::size_t t_fill_max = spine_fill.size() - 1;
    TreeNode t_fill = filler(static_cast<int>(t_fill_max));
    while (t_fill.size() > t_fill_max) t_fill = t_fill.prefix(t_fill_max);
    comb.spine.push_back(s);
    comb.nodes.push_back(s.appended(v).concatenated(t_fill));
    s = s.concatenated(seed == 0 ? TreeNode{u, u} : spine_fill.appended(u));
  }
  return comb;
}

bool matches_kind(const std::vector<TreeNode>& nodes, DirectionPair kind) {
  std::vector<TreeNode> t = nodes;
  std::stable_sort(t.begin(), t.end(), [](const TreeNode& a, const TreeNode& b) { return a.size() < b.size(); });
  return spine_for(t, kind).has_value();
}

std::optional<DirectionPair> pair_kind(const TreeNode& a, const TreeNode& b) {
  if (a.size() == b.size()) return std::nullopt;
  const TreeNode& t0 = a.size() < b.size() ? a : b;
  const TreeNode& t1 = a.size() < b.size() ? b : a;
  const std::size_t l = meet_length(t0, t1);
  if (l == t0.size()) {
    const int u = t1[l];
    return DirectionPair{u, u};
  }
  const int v = t0[l];
  const int u = t1[l];
  for (std::size_t p = t0.size() + 1; p < t1.size(); ++p) {
    if (t1[p] == v) return DirectionPair{u, v};
  }
  return std::nullopt;
}

std::optional<DirectionPair> comb_type_of(const std::vector<TreeNode>& nodes) {
  if (nodes.size() < 2) throw GapError(ErrorCode::TooSmall, "comb classification needs at least 2 nodes");
  std::vector<TreeNode> t = nodes;
  std::stable_sort(t.begin(), t.end(), [](const TreeNode& a, const TreeNode& b) { return a.size() < b.size(); });
  if (t[0].size() == t[1].size()) return std::nullopt;
  DirectionPair candidate;
  if (t[0].is_prefix_of(t[1])) {
    const int u = t[1][t[0].size()];
    candidate = {u, u};
  } else {
    candidate = inc(t[0], t[1]).swapped();
  }
  if (spine_for(t, candidate)) return candidate;
  return std::nullopt;
}

namespace {

std::optional<FiniteComb> as_comb(std::vector<TreeNode> nodes, DirectionPair kind) {
  if (nodes.size() < 2) return std::nullopt;
  auto spine = spine_for(nodes, kind);
  if (!spine) return std::nullopt;
  FiniteComb comb;
  comb.nodes = std::move(nodes);
  comb.kind = kind;
  if (!kind.is_diagonal()) comb.spine = std::move(*spine);
  return comb;
}

std::optional<FiniteComb> greedy_extraction(const std::vector<TreeNode>& x) {
  std::vector<TreeNode> t{x.front()};
  std::vector<TreeNode> s_next;
  std::vector<TreeNode> remaining(x.begin() + 1, x.end());
  TreeNode s;
  while (true) {
    const std::size_t k = t.back().size() + 1;
    std::map<TreeNode, std::size_t> counts;
    for (const auto& node : remaining) {
      if (node.size() > k && s.is_strict_prefix_of(node)) ++counts[node.prefix(k)];
    }
    if (counts.empty()) break;
    // std::map iterates lexicographically, so the first maximum is the least.
    auto best = counts.begin();
    for (auto it = counts.begin(); it != counts.end(); ++it) {
      if (it->second > best->second) best = it;
    }
    s = best->first;
    s_next.push_back(s);
    std::vector<TreeNode> above;
    for (const auto& node : remaining) {
      if (s.is_strict_prefix_of(node)) above.push_back(node);
    }
    remaining = std::move(above);
    t.push_back(remaining.front());  // remaining is shortlex sorted
    remaining.erase(remaining.begin());
  }
  if (t.size() < 2) return std::nullopt;

  std::map<DirectionPair, std::vector<std::size_t>> groups;
  for (std::size_t i = 0; i + 1 < t.size(); ++i) {
    const TreeNode& next = s_next[i];
    const std::size_t l = meet_length(t[i], next);
    const DirectionPair kind = l == t[i].size() ? DirectionPair{next[l], next[l]} : DirectionPair{next[l], t[i][l]};
    groups[kind].push_back(i);
  }
  auto best = groups.begin();
  for (auto it = groups.begin(); it != groups.end(); ++it) {
    if (it->second.size() > best->second.size()) best = it;
  }
  std::vector<TreeNode> chosen;
  for (std::size_t i : best->second) chosen.push_back(t[i]);
  std::vector<TreeNode> with_last = chosen;
  with_last.push_back(t.back());
  if (auto comb = as_comb(with_last, best->first)) return comb;
  return as_comb(chosen, best->first);
}

std::optional<FiniteComb> exact_extraction(const std::vector<TreeNode>& x) {
  const std::size_t n = x.size();
  std::optional<FiniteComb> best;
  auto consider = [&](std::vector<TreeNode> nodes, DirectionPair kind) {
    if (best && best->nodes.size() >= nodes.size()) return;
    if (auto comb = as_comb(std::move(nodes), kind)) best = std::move(comb);
  };

  // Chains: longest path along "t_i followed by u is a prefix of t_j".
  {
    std::vector<std::map<int, std::pair<int, int>>> dp(n);  // u -> (length, predecessor)
    for (std::size_t j = 0; j < n; ++j) {
      for (std::size_t i = 0; i < j; ++i) {
        if (!x[i].is_strict_prefix_of(x[j])) continue;
        const int u = x[j][x[i].size()];
        const auto it = dp[i].find(u);
        const int through = (it == dp[i].end() ? 1 : it->second.first) + 1;
        auto& slot = dp[j][u];
        if (through > slot.first) slot = {through, static_cast<int>(i)};
      }
    }
    for (std::size_t j = 0; j < n; ++j) {
      for (const auto& [u, entry] : dp[j]) {
        std::vector<TreeNode> nodes{x[j]};
        int cur = static_cast<int>(j);
        while (true) {
          const auto it = dp[static_cast<std::size_t>(cur)].find(u);
          if (it == dp[static_cast<std::size_t>(cur)].end()) break;
          cur = it->second.second;
          nodes.push_back(x[static_cast<std::size_t>(cur)]);
        }
        std::reverse(nodes.begin(), nodes.end());
        consider(std::move(nodes), {u, u});
      }
    }
  }

  // Combs: dp over consecutive pairs (i, j).
  struct Cell {
    int length = 0;
    int prev = -1;
    int split = 0;
    DirectionPair kind;
  };
  std::vector<std::vector<Cell>> dp(n, std::vector<Cell>(n));
  for (std::size_t j = 0; j < n; ++j) {
    for (std::size_t i = 0; i < j; ++i) {
      if (x[i].size() >= x[j].size() || x[i].is_prefix_of(x[j])) continue;
      const std::size_t l = meet_length(x[i], x[j]);
      Cell cell{2, -1, static_cast<int>(l), {x[j][l], x[i][l]}};
      for (std::size_t h = 0; h < i; ++h) {
        const Cell& before = dp[h][i];
        if (before.length == 0 || before.kind != cell.kind) continue;
        if (static_cast<int>(l) <= before.split || x[h].size() >= l) continue;
        if (before.length + 1 > cell.length) cell = {before.length + 1, static_cast<int>(h), cell.split, cell.kind};
      }
      dp[i][j] = cell;
    }
  }
  for (std::size_t j = 0; j < n; ++j) {
    for (std::size_t i = 0; i < j; ++i) {
      const Cell& cell = dp[i][j];
      if (cell.length == 0 || !last_split(x[j], x[i].size(), cell.kind.second)) continue;
      if (best && static_cast<int>(best->nodes.size()) >= cell.length) continue;
      std::vector<TreeNode> nodes{x[j], x[i]};
      std::size_t a = i;
      int h = cell.prev;
      while (h >= 0) {
        nodes.push_back(x[static_cast<std::size_t>(h)]);
        const int next = dp[static_cast<std::size_t>(h)][a].prev;
        a = static_cast<std::size_t>(h);
        h = next;
      }
      std::reverse(nodes.begin(), nodes.end());
      consider(std::move(nodes), cell.kind);
    }
  }
  return best;
}

}  // namespace

Extraction extract_comb(const std::vector<TreeNode>& nodes) {
  if (nodes.size() < 2) throw GapError(ErrorCode::TooSmall, "extraction needs at least 2 nodes");
  const auto x = by_length(nodes);
  if (x.size() < 2) throw GapError(ErrorCode::TooSmall, "extraction needs at least 2 distinct nodes");

  Extraction result;
  auto greedy = greedy_extraction(x);
  result.greedy_length = greedy ? static_cast<int>(greedy->nodes.size()) : 0;
  std::optional<FiniteComb> exact;
  if (x.size() <= kExactExtractionLimit) {
    exact = exact_extraction(x);
    result.exact_length = exact ? static_cast<int>(exact->nodes.size()) : 0;
  } else {
    result.exact_length = -1;
  }
  result.comb = result.exact_length > result.greedy_length ? exact : greedy;
  if (result.comb) {
    result.nodes = result.comb->nodes;
  } else {
    result.nodes = {x.front()};
  }
  return result;
}

TreeNode phi_map(const ReductionMap& r, const TreeNode& s) {
  TreeNode out;
  for (int letter : s.letters()) {
    if (letter < 0 || letter >= r.m0) throw GapError(ErrorCode::BadAlphabet, "node letter outside the reduction domain");
    out.append(r.e[static_cast<std::size_t>(letter)]);
  }
  out.append(r.x);
  return out;
}

std::vector<DirectionPair> subtree_comb_kinds(int m, const SubtreeDescriptor& d, int depth) {
  const auto nodes = d.nodes(m, depth);
  const std::size_t total = static_cast<std::size_t>(m) * static_cast<std::size_t>(m);
  std::vector<bool> seen(total, false);
  std::size_t found = 0;
  for (std::size_t i = 0; i < nodes.size() && found < total; ++i) {
    for (std::size_t j = i + 1; j < nodes.size() && found < total; ++j) {
      const auto kind = pair_kind(nodes[i], nodes[j]);
      if (!kind) continue;
      const std::size_t slot = static_cast<std::size_t>(kind->first) * static_cast<std::size_t>(m) + kind->second;
      if (!seen[slot]) {
        seen[slot] = true;
        ++found;
      }
    }
  }
  std::vector<DirectionPair> out;
  for (std::size_t slot = 0; slot < total; ++slot) {
    if (seen[slot]) out.push_back({static_cast<int>(slot) / m, static_cast<int>(slot) % m});
  }
  return out;
}

std::vector<int> subtree_comb_colors(const GapFunction& f, const SubtreeDescriptor& d, int depth) {
  std::set<int> colors;
  for (const auto kind : subtree_comb_kinds(f.m(), d, depth)) {
    const Color c = f.at(kind);
    if (c.is_finite()) colors.insert(c.value());
  }
  return {colors.begin(), colors.end()};
}

}  // namespace gapbasis
