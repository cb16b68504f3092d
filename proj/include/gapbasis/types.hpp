#pragma once

// n-types (A, B, C, D, E, psi, P, gamma), their enumeration, the canonical
// representative gap function f^alpha, and the color-permutation action.

#include <optional>
#include <string>
#include <vector>

#include "gapbasis/core.hpp"
#include "gapbasis/invariants.hpp"

namespace gapbasis {

struct GammaEntry {
  int from = 0;
  Color value;

  auto operator<=>(const GammaEntry&) const = default;
};

/// One n-type. All sets are sorted; psi is sorted by (from, to); blocks of P
/// are sorted internally and ordered by their least element; gamma is sorted
/// by `from`. The defaulted ordering is the canonical enumeration order.
struct NType {
  int n = 0;
  std::vector<int> A;
  std::vector<int> B;
  std::vector<int> C;
  std::vector<int> D;
  std::vector<int> E;
  PsiTable psi;
  std::vector<std::vector<int>> P;
  std::vector<GammaEntry> gamma;

  auto operator<=>(const NType&) const = default;
  bool operator==(const NType&) const = default;
};

/// Sorts every component into canonical form.
NType canonicalize(NType alpha);

std::string describe(const NType& alpha);

struct TypeValidity {
  std::vector<std::string> violations;

  bool valid() const { return violations.empty(); }
};

TypeValidity validate_type(const NType& alpha);

/// All valid n-types, each once, in canonical order. Candidates come from
/// assigning each color to one of A..E, then every psi, P and gamma over that
/// assignment; each candidate is kept iff validate_type accepts it.
std::vector<NType> enumerate_types(int n);

/// Independent generator: chooses A, then psi (whose range defines B), then
/// C with its pairing, then D (E is the rest) and gamma with the preimage
/// constraint built in. Same output as enumerate_types.
std::vector<NType> enumerate_types_constraint_first(int n);

enum class SlotKind { AStar, Placeholder, Block, DColor };

/// One index of M = A* u P u D. `colors` is {a} for A*, {} for the
/// placeholder, the block for P, {d} for D.
struct MSlot {
  SlotKind kind = SlotKind::AStar;
  std::vector<int> colors;

  auto operator<=>(const MSlot&) const = default;
  bool operator==(const MSlot&) const = default;
};

struct FAlphaResult {
  GapFunction f;
  std::vector<MSlot> slots;
  std::vector<int> sigma;
  std::vector<std::optional<Color>> tau;  // nullopt on A* slots

  bool operator==(const FAlphaResult&) const = default;
};

/// M is enumerated as A* ascending, then P blocks by least element, then D
/// ascending. The placeholder used when A is empty has sigma = 0.
/// Throws InvalidType.
FAlphaResult build_f_alpha(const NType& alpha);

/// The four structural properties of f^alpha: (1) pbranch(f) = A,
/// (2) f is psi-branch-reduced over A, (3) both colors of each P block are
/// attached to each other, (4) every k in D is attached to gamma(k).
struct FAlphaProperties {
  bool pbranch_is_A = false;
  bool branch_reduced = false;
  bool blocks_attached = false;
  bool gamma_attached = false;

  bool all() const { return pbranch_is_A && branch_reduced && blocks_attached && gamma_attached; }
};

FAlphaProperties check_f_alpha_properties(const NType& alpha, const GapFunction& f);

/// Relabels every color of alpha by pi (inf fixed). Throws BadPermutation.
NType permute_type(const ColorPermutation& pi, const NType& alpha);

struct TypeOrbits {
  std::vector<NType> types;
  std::vector<int> orbit_of;                   // per type index
  std::vector<std::vector<std::size_t>> orbits;  // members ascending; orbit id = position
};

/// Orbits of enumerate_types(n) under S_n. Orbit ids follow the least member.
TypeOrbits type_orbits(int n);
TypeOrbits type_orbits(std::vector<NType> types, int n);

/// For each color c < n, the pairs (i,j) with f(i,j) = c, sorted.
using JNotation = std::vector<std::vector<DirectionPair>>;

JNotation j_notation(const GapFunction& f);

std::string format_j_notation(const JNotation& j, int m);

}  // namespace gapbasis
