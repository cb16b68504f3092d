#include "gapbasis/reduction.hpp"

#include <algorithm>
#include <bit>
#include <cstdint>
#include <limits>
#include <set>
#include <unordered_map>

namespace gapbasis {

ReductionMap ReductionMap::identity(int m) {
  ReductionMap r;
  r.m0 = m;
  r.m1 = m;
  r.k = 1;
  for (int u = 0; u < m; ++u) r.e.push_back(TreeNode{u});
  return r;
}

ReductionMap make_reduction(int m1, std::vector<TreeNode> e, TreeNode x) {
  if (e.empty()) throw GapError(ErrorCode::InvalidReduction, "e has empty domain");
  const std::size_t k = e.front().size();
  if (k < 1) throw GapError(ErrorCode::InvalidReduction, "k must be at least 1");
  std::set<TreeNode> distinct;
  for (const auto& node : e) {
    if (node.size() != k) throw GapError(ErrorCode::InvalidReduction, "e(u) lengths differ");
    for (int letter : node.letters()) {
      if (letter < 0 || letter >= m1) throw GapError(ErrorCode::InvalidReduction, "letter outside m1");
    }
    distinct.insert(node);
  }
  if (distinct.size() != e.size()) throw GapError(ErrorCode::InvalidReduction, "e is not injective");
  if (x.size() >= k) throw GapError(ErrorCode::InvalidReduction, "|x| must be < k");
  for (int letter : x.letters()) {
    if (letter < 0 || letter >= m1) throw GapError(ErrorCode::InvalidReduction, "letter of x outside m1");
  }
  ReductionMap r;
  r.m0 = static_cast<int>(e.size());
  r.m1 = m1;
  r.k = static_cast<int>(k);
  r.e = std::move(e);
  r.x = std::move(x);
  return r;
}

DirectionPair epsilon(const ReductionMap& r, int u, int v) {
  const auto& eu = r.e[static_cast<std::size_t>(u)];
  return u == v ? inc(eu, r.x) : inc(eu, r.e[static_cast<std::size_t>(v)]);
}

EpsilonTable epsilon_table(const ReductionMap& r) {
  EpsilonTable t;
  t.m0 = r.m0;
  t.cells.reserve(static_cast<std::size_t>(r.m0) * r.m0);
  for (int u = 0; u < r.m0; ++u) {
    for (int v = 0; v < r.m0; ++v) t.cells.push_back(epsilon(r, u, v));
  }
  return t;
}

namespace {

void require_dimensions(const ReductionMap& r, const GapFunction& f, const GapFunction& g) {
  if (r.m0 != f.m() || r.m1 != g.m() || f.n() != g.n()) {
    throw GapError(ErrorCode::DimensionMismatch, "reduction map does not fit f and g");
  }
}

void require_search_inputs(const GapFunction& f, const GapFunction& g) {
  if (f.n() != g.n()) throw GapError(ErrorCode::DimensionMismatch, "f and g have different n");
  require_n_gap(f, "f");
  require_n_gap(g, "g");
}

}  // namespace

bool is_witness(const ReductionMap& r, const GapFunction& f, const GapFunction& g) {
  require_dimensions(r, f, g);
  for (int u = 0; u < r.m0; ++u) {
    for (int v = 0; v < r.m0; ++v) {
      if (f.at(u, v) != g.at(epsilon(r, u, v))) return false;
    }
  }
  return true;
}

GapFunction pull_back(const GapFunction& g, const ReductionMap& r) {
  if (r.m1 != g.m()) throw GapError(ErrorCode::DimensionMismatch, "reduction target differs from g");
  std::vector<Color> cells;
  cells.reserve(static_cast<std::size_t>(r.m0) * r.m0);
  for (int u = 0; u < r.m0; ++u) {
    for (int v = 0; v < r.m0; ++v) cells.push_back(g.at(epsilon(r, u, v)));
  }
  return GapFunction(r.m0, g.n(), std::move(cells));
}

namespace {

class TrieSearch {
 public:
  TrieSearch(const GapFunction& f, const GapFunction& g) : f_(f), g_(g), m0_(f.m()), m1_(g.m()) {}

  std::optional<ReductionMap> run() {
    const std::uint32_t all = m0_ == 32 ? ~0u : ((1u << m0_) - 1u);
    // Each level strictly shrinks some group, so height m0 + 1 always suffices.
    int height = 1;
    while (height <= m0_ + 1 && !solve(all, true, height)) ++height;
    if (height > m0_ + 1) return std::nullopt;

    std::vector<TreeNode> e(static_cast<std::size_t>(m0_));
    TreeNode x;
    emit(all, true, height, TreeNode{}, e, x);

    std::size_t k = x.size() + 1;
    for (const auto& node : e) k = std::max(k, node.size());
    for (auto& node : e) {
      while (node.size() < k) node.push_back(0);
    }
    return make_reduction(m1_, std::move(e), std::move(x));
  }

 private:
  // How one group is split on its next level. x_letter < 0 means x is not in
  // the group; `terminate` means x ends exactly at the group's prefix.
  struct Plan {
    bool terminate = false;
    int x_letter = -1;
    std::vector<int> letters;  // one per member, ascending member index
  };

  static std::uint64_t key(std::uint32_t mask, bool x_in, int height) {
    return (((static_cast<std::uint64_t>(mask) << 1) | (x_in ? 1u : 0u)) << 6) | static_cast<std::uint64_t>(height);
  }

  static bool is_leaf(std::uint32_t mask, bool x_in) {
    return (!x_in && std::popcount(mask) == 1) || (x_in && mask == 0);
  }

  // height bounds the levels below this group; x needs one more letter in
  // every e(u) than its own length, so a lone x counts as height 1.
  const Plan* solve(std::uint32_t mask, bool x_in, int height) {
    if (is_leaf(mask, x_in)) return height >= (x_in ? 1 : 0) ? &leaf_ : nullptr;
    if (height < 1) return nullptr;
    const auto k = key(mask, x_in, height);
    if (auto it = memo_.find(k); it != memo_.end()) return it->second ? &*it->second : nullptr;

    std::vector<int> members;
    for (int u = 0; u < m0_; ++u) {
      if (mask & (1u << u)) members.push_back(u);
    }

    std::optional<Plan> found;
    Plan plan;
    plan.letters.assign(members.size(), 0);
    if (x_in) {
      plan.terminate = true;
      plan.x_letter = -1;
      if (assign(members, 0, plan, true, height)) found = plan;
      for (int c = 0; !found && c < m1_; ++c) {
        plan.terminate = false;
        plan.x_letter = c;
        if (assign(members, 0, plan, true, height)) found = plan;
      }
    } else {
      plan.terminate = false;
      plan.x_letter = -1;
      if (assign(members, 0, plan, false, height)) found = plan;
    }

    auto [it, inserted] = memo_.emplace(k, std::move(found));
    return it->second ? &*it->second : nullptr;
  }

  bool assign(const std::vector<int>& members, std::size_t pos, Plan& plan, bool x_in, int height) {
    if (pos == members.size()) return finish(members, plan, x_in, height);
    const int u = members[pos];
    for (int a = 0; a < m1_; ++a) {
      if (x_in) {
        if (plan.terminate) {
          if (g_.at(a, a) != f_.at(u, u)) continue;
        } else if (a != plan.x_letter && g_.at(a, plan.x_letter) != f_.at(u, u)) {
          continue;
        }
      }
      bool ok = true;
      for (std::size_t q = 0; q < pos && ok; ++q) {
        const int w = members[q];
        const int b = plan.letters[q];
        if (b == a) continue;
        ok = g_.at(b, a) == f_.at(w, u) && g_.at(a, b) == f_.at(u, w);
      }
      if (!ok) continue;
      plan.letters[pos] = a;
      if (assign(members, pos + 1, plan, x_in, height)) return true;
    }
    return false;
  }

  bool finish(const std::vector<int>& members, const Plan& plan, bool x_in, int height) {
    if (!plan.terminate) {
      bool separates = false;
      const int first = x_in ? plan.x_letter : plan.letters.front();
      for (int a : plan.letters) separates = separates || a != first;
      if (!separates) return false;
    }
    for (int letter = 0; letter < m1_; ++letter) {
      std::uint32_t sub = 0;
      for (std::size_t q = 0; q < members.size(); ++q) {
        if (plan.letters[q] == letter) sub |= 1u << members[q];
      }
      const bool sub_x = x_in && !plan.terminate && plan.x_letter == letter;
      if (sub == 0 && !sub_x) continue;
      if (!solve(sub, sub_x, height - 1)) return false;
    }
    return true;
  }

  void emit(std::uint32_t mask, bool x_in, int height, const TreeNode& prefix, std::vector<TreeNode>& e, TreeNode& x) {
    if (x_in && mask == 0) {
      x = prefix;
      return;
    }
    if (!x_in && std::popcount(mask) == 1) {
      e[static_cast<std::size_t>(std::countr_zero(mask))] = prefix;
      return;
    }
    const Plan& plan = *memo_.at(key(mask, x_in, height));
    if (x_in && plan.terminate) x = prefix;
    std::vector<int> members;
    for (int u = 0; u < m0_; ++u) {
      if (mask & (1u << u)) members.push_back(u);
    }
    for (int letter = 0; letter < m1_; ++letter) {
      std::uint32_t sub = 0;
      for (std::size_t q = 0; q < members.size(); ++q) {
        if (plan.letters[q] == letter) sub |= 1u << members[q];
      }
      const bool sub_x = x_in && !plan.terminate && plan.x_letter == letter;
      if (sub == 0 && !sub_x) continue;
      emit(sub, sub_x, height - 1, prefix.appended(letter), e, x);
    }
  }

  const GapFunction& f_;
  const GapFunction& g_;
  int m0_;
  int m1_;
  Plan leaf_;
  std::unordered_map<std::uint64_t, std::optional<Plan>> memo_;
};

}  // namespace

std::optional<ReductionMap> search_reduction(const GapFunction& f, const GapFunction& g) {
  require_search_inputs(f, g);
  if (f.m() > 32) throw GapError(ErrorCode::DimensionMismatch, "search supports m0 <= 32");
  return TrieSearch(f, g).run();
}

namespace {

class BruteSearch {
 public:
  BruteSearch(const GapFunction& f, const GapFunction& g, int k)
      : f_(f), g_(g), m0_(f.m()), m1_(g.m()), k_(k) {
    std::size_t count = 1;
    for (int i = 0; i < k; ++i) {
      if (count > std::numeric_limits<std::size_t>::max() / static_cast<std::size_t>(m1_) / 4) {
        throw GapError(ErrorCode::DimensionMismatch, "brute search space too large");
      }
      count *= static_cast<std::size_t>(m1_);
    }
    nodes_.resize(count * static_cast<std::size_t>(k));
    for (std::size_t idx = 0; idx < count; ++idx) {
      std::size_t rest = idx;
      for (int pos = k - 1; pos >= 0; --pos) {
        letter(idx, pos) = static_cast<int>(rest % static_cast<std::size_t>(m1_));
        rest /= static_cast<std::size_t>(m1_);
      }
    }
    node_count_ = count;
    diag_.resize(count);
    chosen_.resize(static_cast<std::size_t>(m0_));
  }

  std::optional<ReductionMap> run() {
    for (int len = 0; len < k_; ++len) {
      std::vector<int> x(static_cast<std::size_t>(len), 0);
      while (true) {
        if (try_x(x)) {
          std::vector<TreeNode> e;
          for (std::size_t idx : chosen_) e.push_back(node(idx));
          return make_reduction(m1_, std::move(e), TreeNode(x));
        }
        if (!advance(x)) break;
      }
    }
    return std::nullopt;
  }

 private:
  int& letter(std::size_t idx, int pos) { return nodes_[idx * static_cast<std::size_t>(k_) + static_cast<std::size_t>(pos)]; }
  int letter(std::size_t idx, int pos) const { return nodes_[idx * static_cast<std::size_t>(k_) + static_cast<std::size_t>(pos)]; }

  TreeNode node(std::size_t idx) const {
    std::vector<int> letters(static_cast<std::size_t>(k_));
    for (int pos = 0; pos < k_; ++pos) letters[static_cast<std::size_t>(pos)] = letter(idx, pos);
    return TreeNode(std::move(letters));
  }

  bool advance(std::vector<int>& x) const {
    for (std::size_t pos = x.size(); pos-- > 0;) {
      if (++x[pos] < m1_) return true;
      x[pos] = 0;
    }
    return false;
  }

  bool try_x(const std::vector<int>& x) {
    const int len = static_cast<int>(x.size());
    for (std::size_t idx = 0; idx < node_count_; ++idx) {
      int pos = 0;
      while (pos < len && letter(idx, pos) == x[static_cast<std::size_t>(pos)]) ++pos;
      const DirectionPair p = pos == len ? DirectionPair{letter(idx, pos), letter(idx, pos)}
                                         : DirectionPair{letter(idx, pos), x[static_cast<std::size_t>(pos)]};
      diag_[idx] = g_.at(p);
    }
    return place(0);
  }

  DirectionPair pair_inc(std::size_t a, std::size_t b) const {
    int pos = 0;
    while (letter(a, pos) == letter(b, pos)) ++pos;
    return {letter(a, pos), letter(b, pos)};
  }

  bool place(int u) {
    if (u == m0_) return true;
    for (std::size_t idx = 0; idx < node_count_; ++idx) {
      if (diag_[idx] != f_.at(u, u)) continue;
      bool ok = true;
      for (int w = 0; w < u && ok; ++w) {
        const std::size_t other = chosen_[static_cast<std::size_t>(w)];
        if (other == idx) {
          ok = false;
          break;
        }
        const DirectionPair p = pair_inc(other, idx);
        ok = g_.at(p) == f_.at(w, u) && g_.at(p.swapped()) == f_.at(u, w);
      }
      if (!ok) continue;
      chosen_[static_cast<std::size_t>(u)] = idx;
      if (place(u + 1)) return true;
    }
    return false;
  }

  const GapFunction& f_;
  const GapFunction& g_;
  int m0_;
  int m1_;
  int k_;
  std::size_t node_count_ = 0;
  std::vector<int> nodes_;
  std::vector<Color> diag_;
  std::vector<std::size_t> chosen_;
};

}  // namespace

std::optional<ReductionMap> brute_search_reduction(const GapFunction& f, const GapFunction& g, int k_max) {
  require_search_inputs(f, g);
  for (int k = 1; k <= k_max; ++k) {
    if (auto found = BruteSearch(f, g, k).run()) return found;
  }
  return std::nullopt;
}

ReductionMap compose(const ReductionMap& r1, const ReductionMap& r2) {
  if (r1.m1 != r2.m0) throw GapError(ErrorCode::DimensionMismatch, "r1 target differs from r2 source");
  auto image = [&](const TreeNode& s) {
    TreeNode out;
    for (int w : s.letters()) out.append(r2.e[static_cast<std::size_t>(w)]);
    return out;
  };
  std::vector<TreeNode> e;
  e.reserve(r1.e.size());
  for (const auto& node : r1.e) e.push_back(image(node));
  TreeNode x = image(r1.x);
  x.append(r2.x);
  return make_reduction(r2.m1, std::move(e), std::move(x));
}

}  // namespace gapbasis
