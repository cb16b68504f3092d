#pragma once

// Reduction maps (k, e, x) between alphabets m0 and m1, the induced map
// epsilon on direction pairs, and the decision procedure for f = g o epsilon.

#include <optional>
#include <vector>

#include "gapbasis/core.hpp"

namespace gapbasis {

/// e : m0 -> m1^k injective and x in m1^{<k}.
struct ReductionMap {
  int m0 = 0;
  int m1 = 0;
  int k = 0;
  std::vector<TreeNode> e;
  TreeNode x;

  bool operator==(const ReductionMap&) const = default;

  /// k = 1, e(u) = (u), x = ().
  static ReductionMap identity(int m);
};

/// Builds a reduction map and checks its invariants: k >= 1, every e(u) of
/// length k over m1, e injective, |x| < k. Throws InvalidReduction.
ReductionMap make_reduction(int m1, std::vector<TreeNode> e, TreeNode x);

/// inc(e(u), e(v)) for u != v, inc(e(u), x) for u == v.
DirectionPair epsilon(const ReductionMap& r, int u, int v);

struct EpsilonTable {
  int m0 = 0;
  std::vector<DirectionPair> cells;

  DirectionPair at(int u, int v) const { return cells[static_cast<std::size_t>(u) * m0 + v]; }
  bool operator==(const EpsilonTable&) const = default;
};

EpsilonTable epsilon_table(const ReductionMap& r);

/// f(u,v) == g(epsilon(u,v)) for all (u,v). Throws DimensionMismatch.
bool is_witness(const ReductionMap& r, const GapFunction& f, const GapFunction& g);

/// The gap function g o epsilon over alphabet r.m0.
GapFunction pull_back(const GapFunction& g, const ReductionMap& r);

/// Decides whether some reduction map witnesses f = g o epsilon.
///
/// The search builds the trie spanned by {e(u)} and x level by level. A group
/// of elements sharing a prefix (optionally together with x) is assigned one
/// letter per member at the next level, plus either "x ends here" or a letter
/// for x; every pair that separates at that level fixes its epsilon value and
/// is checked against f and g immediately. Levels on which nothing separates
/// and x does not end are never generated. A group's subproblem depends only
/// on (members, x present), so solved groups are memoized.
///
/// Trie heights are tried in increasing order (iterative deepening), so the
/// result has the least k available; f against itself yields the identity.
/// Within a height: x ending is tried before x continuing, x letters and
/// member letters ascend, members are assigned in ascending index order. Tails
/// of separated nodes are padded with letter 0.
///
/// Throws NotAnNGap / DimensionMismatch on bad inputs.
std::optional<ReductionMap> search_reduction(const GapFunction& f, const GapFunction& g);

/// Exhaustive oracle over (k <= k_max, x, injective e) in lexicographic order:
/// k ascending, x by length then lexicographically, then e(0), e(1), ...
/// lexicographically. Partial assignments violating f = g o epsilon on
/// already fixed entries are skipped, which does not change which witness is
/// first. Intended for m1^(k*m0) small.
std::optional<ReductionMap> brute_search_reduction(const GapFunction& f, const GapFunction& g, int k_max);

/// Concatenation composite: if r1 witnesses f <= g and r2 witnesses g <= h,
/// the result witnesses f <= h. Throws DimensionMismatch unless r1.m1 == r2.m0.
ReductionMap compose(const ReductionMap& r1, const ReductionMap& r2);

}  // namespace gapbasis
