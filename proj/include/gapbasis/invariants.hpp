#pragma once

// Structural invariants of gap functions that are monotone along the
// reduction order: pbranch, attachment and branch-reducedness.

#include <map>
#include <optional>
#include <variant>
#include <vector>

#include "gapbasis/core.hpp"
#include "gapbasis/reduction.hpp"

namespace gapbasis {

/// Finite colors whose preimage lies on the diagonal. Sorted.
std::vector<int> pbranch(const GapFunction& f);

/// k is f-attached to l: every off-diagonal f(i,j) = k has f(j,i) = l.
/// Vacuously true when k has no off-diagonal occurrence.
bool is_attached(const GapFunction& f, Color k, Color l);

/// For every color k in n u {inf}, the colors l (in n u {inf}) with
/// is_attached(f, k, l).
using AttachmentProfile = std::map<Color, std::vector<Color>>;

AttachmentProfile attachment_profile(const GapFunction& f);

/// One value of psi on an ordered pair of distinct colors.
struct PsiEntry {
  int from = 0;
  int to = 0;
  Color value;

  auto operator<=>(const PsiEntry&) const = default;
};

/// Sorted by (from, to).
using PsiTable = std::vector<PsiEntry>;

/// Looks up psi(i, j); throws PsiDomain if absent.
Color psi_at(const PsiTable& psi, int i, int j);

/// f(i,j) = psi(f(i,i), f(j,j)) whenever f(i,i), f(j,j) are distinct colors of
/// `A`. Throws PsiDomain unless psi is total on <A>^2 with values outside A.
bool is_branch_reduced(const GapFunction& f, const std::vector<int>& A, const PsiTable& psi);

/// pbranch(g) is empty and every color k has some l != k attached to it.
/// `attachments` lists one pair [k, l] per color, with the least such l.
struct Condition1Report {
  std::vector<std::pair<int, int>> attachments;

  bool operator==(const Condition1Report&) const = default;
};

/// f <= g with nonempty pbranch(f), together with the witness.
struct PbranchWitness {
  GapFunction f;
  ReductionMap r;
};

using PbranchOutcome = std::variant<Condition1Report, PbranchWitness>;

/// Exactly one of: Condition 1 holds for g, or a gap f <= g with nonempty
/// pbranch exists. In the second case with pbranch(g) = {} the color without
/// a distinct attached partner (least such) is the one that lands in
/// pbranch(f). Throws NotAnNGap.
PbranchOutcome ensure_pbranch(const GapFunction& g);

/// The Condition 1 check alone; nullopt when it fails.
std::optional<Condition1Report> condition1(const GapFunction& g);

}  // namespace gapbasis
