#include "gapbasis/invariants.hpp"

#include <algorithm>
#include <limits>
#include <optional>

namespace gapbasis {

std::vector<int> pbranch(const GapFunction& f) {
  std::vector<bool> off_diagonal(static_cast<std::size_t>(f.n()), false);
  for (int i = 0; i < f.m(); ++i) {
    for (int j = 0; j < f.m(); ++j) {
      const Color c = f.at(i, j);
      if (c.is_inf()) continue;
      if (i != j) off_diagonal[static_cast<std::size_t>(c.value())] = true;
    }
  }
  std::vector<int> out;
  for (int c = 0; c < f.n(); ++c) {
    if (!off_diagonal[static_cast<std::size_t>(c)]) out.push_back(c);
  }
  return out;
}

bool is_attached(const GapFunction& f, Color k, Color l) {
  for (int i = 0; i < f.m(); ++i) {
    for (int j = 0; j < f.m(); ++j) {
      if (i != j && f.at(i, j) == k && f.at(j, i) != l) return false;
    }
  }
  return true;
}

AttachmentProfile attachment_profile(const GapFunction& f) {
  std::vector<Color> colors;
  for (int c = 0; c < f.n(); ++c) colors.emplace_back(c);
  colors.push_back(kInf);

  AttachmentProfile profile;
  for (Color k : colors) {
    auto& partners = profile[k];
    for (Color l : colors) {
      if (is_attached(f, k, l)) partners.push_back(l);
    }
  }
  return profile;
}

Color psi_at(const PsiTable& psi, int i, int j) {
  const auto it = std::lower_bound(psi.begin(), psi.end(), PsiEntry{i, j, Color(std::numeric_limits<int>::min())});
  if (it == psi.end() || it->from != i || it->to != j) {
    throw GapError(ErrorCode::PsiDomain, "psi undefined at (" + std::to_string(i) + "," + std::to_string(j) + ")");
  }
  return it->value;
}

bool is_branch_reduced(const GapFunction& f, const std::vector<int>& A, const PsiTable& psi) {
  const auto in_A = [&](Color c) {
    return c.is_finite() && std::find(A.begin(), A.end(), c.value()) != A.end();
  };
  for (int i : A) {
    for (int j : A) {
      if (i == j) continue;
      if (in_A(psi_at(psi, i, j))) throw GapError(ErrorCode::PsiDomain, "psi takes a value inside A");
    }
  }
  if (psi.size() != A.size() * (A.size() - (A.empty() ? 0 : 1))) {
    throw GapError(ErrorCode::PsiDomain, "psi defined outside <A>^2");
  }
  for (int i = 0; i < f.m(); ++i) {
    for (int j = 0; j < f.m(); ++j) {
      const Color di = f.at(i, i);
      const Color dj = f.at(j, j);
      if (!in_A(di) || !in_A(dj) || di == dj) continue;
      if (f.at(i, j) != psi_at(psi, di.value(), dj.value())) return false;
    }
  }
  return true;
}

std::optional<Condition1Report> condition1(const GapFunction& g) {
  if (!pbranch(g).empty()) return std::nullopt;
  Condition1Report report;
  for (int k = 0; k < g.n(); ++k) {
    std::optional<int> partner;
    for (int l = 0; l < g.n() && !partner; ++l) {
      if (l != k && is_attached(g, Color(l), Color(k))) partner = l;
    }
    if (!partner) return std::nullopt;
    report.attachments.emplace_back(k, *partner);
  }
  return report;
}

PbranchOutcome ensure_pbranch(const GapFunction& g) {
  require_n_gap(g, "g");
  if (!pbranch(g).empty()) return PbranchWitness{g, ReductionMap::identity(g.m())};
  if (auto report = condition1(g)) return *report;

  const int n = g.n();
  int bad = 0;
  for (int k = 0; k < n; ++k) {
    bool has_partner = false;
    for (int l = 0; l < n && !has_partner; ++l) {
      has_partner = l != k && is_attached(g, Color(l), Color(k));
    }
    if (!has_partner) {
      bad = k;
      break;
    }
  }

  // Relabel so the bad color plays the role of 0.
  ColorPermutation swap = identity_permutation(n);
  std::swap(swap[0], swap[static_cast<std::size_t>(bad)]);
  const GapFunction relabeled = apply_color_permutation(swap, g);

  // (i_k, j_k): off-diagonal, relabeled color k, reverse color != 0 for k > 0.
  std::vector<int> first(static_cast<std::size_t>(n));
  std::vector<int> second(static_cast<std::size_t>(n));
  for (int k = 0; k < n; ++k) {
    bool found = false;
    for (int i = 0; i < g.m() && !found; ++i) {
      for (int j = 0; j < g.m() && !found; ++j) {
        if (i == j || relabeled.at(i, j) != Color(k)) continue;
        if (k > 0 && relabeled.at(j, i) == Color(0)) continue;
        first[static_cast<std::size_t>(k)] = i;
        second[static_cast<std::size_t>(k)] = j;
        found = true;
      }
    }
    if (!found) throw GapError(ErrorCode::InvalidInput, "no admissible pair for color " + std::to_string(k));
  }

  // x = (j_0); e(k) = (i_0..i_k, j_{k+1}, 0..0) for k <= n-2; e(n-1) = (i_0..i_{n-1}).
  // With n = 1 the nodes are padded to length 2 so that |x| < k.
  const std::size_t length = static_cast<std::size_t>(std::max(n, 2));
  std::vector<TreeNode> e;
  for (int k = 0; k < n; ++k) {
    TreeNode node;
    for (int p = 0; p <= k; ++p) node.push_back(first[static_cast<std::size_t>(p)]);
    if (k + 1 < n) node.push_back(second[static_cast<std::size_t>(k + 1)]);
    while (node.size() < length) node.push_back(0);
    e.push_back(std::move(node));
  }
  ReductionMap r = make_reduction(g.m(), std::move(e), TreeNode{second[0]});
  GapFunction f = pull_back(g, r);
  return PbranchWitness{std::move(f), std::move(r)};
}

}  // namespace gapbasis
