#pragma once

// Classification: catalogs of minimal types, the reduction order between gap
// functions, deriving a type below a given gap, and clover witnesses.

#include <optional>
#include <string_view>
#include <vector>

#include "gapbasis/core.hpp"
#include "gapbasis/reduction.hpp"
#include "gapbasis/treelab.hpp"
#include "gapbasis/types.hpp"

namespace gapbasis {

enum class SearchEngine { Pruned, Brute };

std::string_view to_string(SearchEngine engine);
/// "pruned" or "brute"; throws InvalidInput otherwise.
SearchEngine parse_engine(std::string_view name);

struct CatalogEntry {
  NType type;
  FAlphaResult representative;
  JNotation j;
  int orbit_id = 0;

  bool operator==(const CatalogEntry&) const = default;
};

struct Catalog {
  int n = 0;
  std::vector<CatalogEntry> entries;
  std::vector<std::size_t> orbit_sizes;  // indexed by orbit id

  bool operator==(const Catalog&) const = default;
};

/// Every n-type with its f^alpha and orbit id, in enumeration order.
Catalog minimal_basis(int n);

/// Witness for f <= g, or nullopt. The brute engine searches k <= f.m() + 1,
/// which is enough since the pruned search never needs longer nodes.
std::optional<ReductionMap> gap_leq(const GapFunction& f, const GapFunction& g,
                                    SearchEngine engine = SearchEngine::Pruned);

bool gap_equivalent(const GapFunction& f, const GapFunction& g, SearchEngine engine = SearchEngine::Pruned);

struct PairViolation {
  std::size_t below = 0;  // catalog index of f
  std::size_t above = 0;  // catalog index of g
  ReductionMap witness;
};

struct IncomparabilityReport {
  int n = 0;
  SearchEngine engine = SearchEngine::Pruned;
  std::size_t ordered_pairs = 0;
  std::size_t pairs_passed = 0;
  std::vector<PairViolation> violations;
  std::size_t self_pairs = 0;
  std::size_t self_passed = 0;
  std::vector<std::size_t> self_failures;

  bool ok() const { return violations.empty() && self_failures.empty(); }
};

/// gap_leq must fail for every ordered pair of distinct catalog entries and
/// return exactly the identity map for every entry against itself.
IncomparabilityReport verify_pairwise_incomparable(const Catalog& catalog, SearchEngine engine);

struct DeriveTrace {
  std::vector<int> A;
  std::vector<std::pair<int, int>> u;  // (i, u(i)) for i in A
  PsiTable psi;
  std::vector<int> B;
  std::vector<int> F;
  std::vector<DirectionPair> phi;                 // symmetric, sorted
  std::vector<std::pair<Color, Color>> approx;  // (k, l) with k ~ l, sorted
  std::vector<int> E;
  std::vector<int> C;
  std::vector<int> D;
  std::vector<std::vector<int>> P;
  std::vector<GammaEntry> gamma;

  bool operator==(const DeriveTrace&) const = default;
};

struct Derivation {
  NType type;
  DeriveTrace trace;
};

/// Reads a type off g. Phi is chosen greedily: unordered off-diagonal pairs
/// are scanned in row-major order and kept when they add an uncovered F
/// color, then one pruning pass drops every pair whose colors stay covered.
/// Throws NotAnNGap, Condition1Violated (empty pbranch without Condition 1).
Derivation derive_type(const GapFunction& g);

/// A reduction map witnessing f^alpha <= g built from the trace.
/// Throws TraceMismatch when the trace does not fit g and alpha.
ReductionMap build_claim1_witness(const GapFunction& g, const NType& alpha, const DeriveTrace& trace);

/// Catalog entries whose representative lies below g, as catalog indices.
/// Throws NotAnNGap, DimensionMismatch (catalog for a different n).
std::vector<std::size_t> minimal_types_below(const GapFunction& g, const Catalog& catalog);

/// Index of the catalog entry equivalent to f, if f is a minimal gap.
std::optional<std::size_t> classify_gap(const GapFunction& f, const Catalog& catalog);

struct CloverWitness {
  std::vector<int> X;
  std::vector<int> Y;
  SubtreeDescriptor subtree;  // over the index set of build_f_alpha(alpha)
};

/// With A nonempty: i = min A, Y = {i}, subtree of even-length nodes whose
/// even positions avoid the index of i. With A empty: the block holding 0,
/// X = that block, subtree over the indices {placeholder, block}.
/// Throws TooSmallN below n = 3, InvalidType.
CloverWitness clover_witness(const NType& alpha);

}  // namespace gapbasis
