#pragma once

// Finite-depth work on m^{<omega}: chains and combs, their classification,
// comb extraction, the tree map induced by a reduction, and the colors that
// combs inside a restricted subtree can carry.

#include <cstdint>
#include <optional>
#include <vector>

#include "gapbasis/core.hpp"
#include "gapbasis/reduction.hpp"

namespace gapbasis {

/// nodes in increasing length. For u == v the nodes form a u-chain and the
/// spine is empty; otherwise spine[i] is the u-chain node below nodes[i].
struct FiniteComb {
  std::vector<TreeNode> nodes;
  DirectionPair kind;
  std::vector<TreeNode> spine;

  bool operator==(const FiniteComb&) const = default;
};

/// Either every letter lies in `allowed`, or (parity) the node has even
/// length and no even position carries `forbidden`.
struct SubtreeDescriptor {
  enum class Kind { IndexSubset, Parity };

  Kind kind = Kind::IndexSubset;
  std::vector<int> allowed;
  int forbidden = -1;

  static SubtreeDescriptor index_subset(std::vector<int> letters);
  static SubtreeDescriptor parity(int forbidden_letter);
  static SubtreeDescriptor full(int m);

  bool contains(const TreeNode& s) const;
  /// Nodes of the subtree over alphabet m with length <= depth, shortlex.
  std::vector<TreeNode> nodes(int m, int depth) const;

  bool operator==(const SubtreeDescriptor&) const = default;
};

/// Seed 0 gives the shortest pattern: u^{i+1} for chains, spine u^{2i} with
/// nodes u^{2i} v for combs. Other seeds insert random fillers. Throws
/// BadDirection unless u, v < m; InvalidInput if length < 1.
FiniteComb make_comb(int m, int u, int v, int length, std::uint64_t seed);

/// True iff the nodes, ordered by length, satisfy the conditions for `kind`.
/// Two nodes of equal length never do.
bool matches_kind(const std::vector<TreeNode>& nodes, DirectionPair kind);

/// The unique kind the set instantiates, if any. Throws TooSmall below 2 nodes.
std::optional<DirectionPair> comb_type_of(const std::vector<TreeNode>& nodes);

/// comb_type_of for exactly two distinct nodes, without allocation.
std::optional<DirectionPair> pair_kind(const TreeNode& a, const TreeNode& b);

struct Extraction {
  std::optional<FiniteComb> comb;  // nullopt when no two input nodes form a comb
  std::vector<TreeNode> nodes;     // comb nodes, or the single shortlex-least node
  int greedy_length = 0;
  int exact_length = 0;  // -1 when the input was too large for the exact pass

  bool no_two_comb() const { return !comb.has_value(); }
};

/// Inputs above this size skip the exact longest-comb pass.
inline constexpr std::size_t kExactExtractionLimit = 300;

/// Runs the level-by-level comb construction (next spine
/// node of length |t_i|+1 chosen to keep the most remaining nodes above it,
/// ties to the lexicographically least), groups the t_i by the kind they make
/// with the following spine node and keeps the largest group. An exact
/// longest-comb search runs alongside; the longer result wins and ties go to
/// the greedy one. Throws TooSmall below 2 nodes.
Extraction extract_comb(const std::vector<TreeNode>& nodes);

/// e(s_0) e(s_1) ... e(s_last) x. Throws BadAlphabet.
TreeNode phi_map(const ReductionMap& r, const TreeNode& s);

/// Finite colors f(u,v) over kinds (u,v) realized by some two nodes of the
/// subtree with length <= depth. Sorted.
std::vector<int> subtree_comb_colors(const GapFunction& f, const SubtreeDescriptor& d, int depth);

/// The kinds behind subtree_comb_colors, sorted.
std::vector<DirectionPair> subtree_comb_kinds(int m, const SubtreeDescriptor& d, int depth);

}  // namespace gapbasis
