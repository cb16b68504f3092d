#include "gapbasis/types.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <sstream>

namespace gapbasis {

namespace {

bool contains(const std::vector<int>& set, int c) { return std::find(set.begin(), set.end(), c) != set.end(); }


std::vector<std::pair<int, int>> ordered_distinct_pairs(const std::vector<int>& A) {
  std::vector<std::pair<int, int>> out;
  for (int i : A) {
    for (int j : A) {
      if (i != j) out.emplace_back(i, j);
    }
  }
  return out;
}

// All partitions of `items` into blocks of size 1 or 2 (size 2 only when
// `pairs_only`), each block sorted, blocks ordered by least element.
void pairings(std::vector<int> items, bool pairs_only, std::vector<std::vector<int>>& current,
              std::vector<std::vector<std::vector<int>>>& out) {
  if (items.empty()) {
    out.push_back(current);
    return;
  }
  const int head = items.front();
  std::vector<int> rest(items.begin() + 1, items.end());
  if (!pairs_only) {
    current.push_back({head});
    pairings(rest, pairs_only, current, out);
    current.pop_back();
  }
  for (std::size_t q = 0; q < rest.size(); ++q) {
    std::vector<int> remaining = rest;
    remaining.erase(remaining.begin() + static_cast<std::ptrdiff_t>(q));
    current.push_back({head, rest[q]});
    pairings(remaining, pairs_only, current, out);
    current.pop_back();
  }
}

std::vector<std::vector<std::vector<int>>> all_pairings(const std::vector<int>& items, bool pairs_only) {
  std::vector<std::vector<std::vector<int>>> out;
  std::vector<std::vector<int>> current;
  pairings(items, pairs_only, current, out);
  return out;
}

// Calls visit(values) for every tuple in codomain^length, lexicographically.
template <typename Visit>
void for_each_tuple(const std::vector<Color>& codomain, std::size_t length, Visit&& visit) {
  std::vector<std::size_t> idx(length, 0);
  std::vector<Color> values(length);
  if (codomain.empty() && length > 0) return;
  while (true) {
    for (std::size_t p = 0; p < length; ++p) values[p] = codomain[idx[p]];
    visit(values);
    std::size_t p = length;
    while (p > 0) {
      --p;
      if (++idx[p] < codomain.size()) break;
      idx[p] = 0;
      if (p == 0) return;
    }
    if (length == 0) return;
  }
}

std::vector<Color> colors_of(const std::vector<int>& set, bool with_inf) {
  std::vector<Color> out;
  for (int c : set) out.emplace_back(c);
  if (with_inf) out.push_back(kInf);
  return out;
}

std::string set_string(const std::vector<int>& s) {
  std::ostringstream os;
  os << '{';
  for (std::size_t i = 0; i < s.size(); ++i) os << (i ? "," : "") << s[i];
  os << '}';
  return os.str();
}

}  // namespace

NType canonicalize(NType alpha) {
  for (auto* set : {&alpha.A, &alpha.B, &alpha.C, &alpha.D, &alpha.E}) std::sort(set->begin(), set->end());
  std::sort(alpha.psi.begin(), alpha.psi.end());
  for (auto& block : alpha.P) std::sort(block.begin(), block.end());
  std::sort(alpha.P.begin(), alpha.P.end());
  std::sort(alpha.gamma.begin(), alpha.gamma.end());
  return alpha;
}

std::string describe(const NType& alpha) {
  std::ostringstream os;
  os << "A=" << set_string(alpha.A) << " B=" << set_string(alpha.B) << " C=" << set_string(alpha.C)
     << " D=" << set_string(alpha.D) << " E=" << set_string(alpha.E) << " psi={";
  for (std::size_t i = 0; i < alpha.psi.size(); ++i) {
    const auto& p = alpha.psi[i];
    os << (i ? "," : "") << p.from << p.to << "->" << p.value;
  }
  os << "} P={";
  for (std::size_t i = 0; i < alpha.P.size(); ++i) os << (i ? "," : "") << set_string(alpha.P[i]);
  os << "} gamma={";
  for (std::size_t i = 0; i < alpha.gamma.size(); ++i) {
    os << (i ? "," : "") << alpha.gamma[i].from << "->" << alpha.gamma[i].value;
  }
  os << '}';
  return os.str();
}

TypeValidity validate_type(const NType& alpha) {
  TypeValidity report;
  auto fail = [&](std::string why) { report.violations.push_back(std::move(why)); };
  const int n = alpha.n;
  if (n < 1) {
    fail("n must be at least 1");
    return report;
  }

  std::vector<int> owner(static_cast<std::size_t>(n), -1);
  const std::vector<const std::vector<int>*> parts = {&alpha.A, &alpha.B, &alpha.C, &alpha.D, &alpha.E};
  for (std::size_t p = 0; p < parts.size(); ++p) {
    for (int c : *parts[p]) {
      if (c < 0 || c >= n) {
        fail("color " + std::to_string(c) + " outside n");
        continue;
      }
      if (owner[static_cast<std::size_t>(c)] != -1) fail("color " + std::to_string(c) + " in two parts");
      owner[static_cast<std::size_t>(c)] = static_cast<int>(p);
    }
  }
  for (int c = 0; c < n; ++c) {
    if (owner[static_cast<std::size_t>(c)] == -1) fail("color " + std::to_string(c) + " in no part");
  }

  // psi : <A>^2 -> B u {inf}, onto B.
  const auto domain = ordered_distinct_pairs(alpha.A);
  std::set<std::pair<int, int>> seen;
  std::set<int> psi_range;
  for (const auto& entry : alpha.psi) {
    if (!contains(alpha.A, entry.from) || !contains(alpha.A, entry.to) || entry.from == entry.to) {
      fail("psi defined outside <A>^2");
    }
    if (!seen.emplace(entry.from, entry.to).second) fail("psi defined twice on a pair");
    if (entry.value.is_finite()) {
      if (!contains(alpha.B, entry.value.value())) fail("psi value outside B u {inf}");
      psi_range.insert(entry.value.value());
    }
  }
  if (seen.size() != domain.size()) fail("psi not total on <A>^2");
  for (int b : alpha.B) {
    if (!psi_range.count(b)) fail("psi range misses " + std::to_string(b));
  }

  // P partitions C into blocks of size 1 or 2.
  std::vector<int> covered;
  for (const auto& block : alpha.P) {
    if (block.empty() || block.size() > 2) fail("block of size " + std::to_string(block.size()));
    covered.insert(covered.end(), block.begin(), block.end());
  }
  std::sort(covered.begin(), covered.end());
  std::vector<int> sorted_C = alpha.C;
  std::sort(sorted_C.begin(), sorted_C.end());
  if (covered != sorted_C) fail("P is not a partition of C");

  // gamma : D -> B u E u {inf}, |gamma^-1(k)| >= 2 for k in E.
  std::set<int> gamma_domain;
  std::map<int, int> preimage;
  for (const auto& entry : alpha.gamma) {
    if (!contains(alpha.D, entry.from)) fail("gamma defined outside D");
    if (!gamma_domain.insert(entry.from).second) fail("gamma defined twice");
    if (entry.value.is_finite()) {
      const int v = entry.value.value();
      if (!contains(alpha.B, v) && !contains(alpha.E, v)) fail("gamma value outside B u E u {inf}");
      ++preimage[v];
    }
  }
  if (gamma_domain.size() != alpha.D.size()) fail("gamma not total on D");
  for (int k : alpha.E) {
    if (preimage[k] < 2) fail("gamma preimage of " + std::to_string(k) + " has fewer than 2 elements");
  }

  if (alpha.A.empty()) {
    if (!alpha.B.empty() || !alpha.D.empty() || !alpha.E.empty()) fail("A empty requires B, D, E empty");
    for (const auto& block : alpha.P) {
      if (block.size() != 2) fail("A empty requires blocks of size 2");
    }
  }
  return report;
}

std::vector<NType> enumerate_types(int n) {
  std::vector<NType> out;
  std::vector<int> cls(static_cast<std::size_t>(n), 0);
  while (true) {
    NType base;
    base.n = n;
    std::vector<int>* parts[] = {&base.A, &base.B, &base.C, &base.D, &base.E};
    for (int c = 0; c < n; ++c) parts[cls[static_cast<std::size_t>(c)]]->push_back(c);

    const auto domain = ordered_distinct_pairs(base.A);
    const auto psi_codomain = colors_of(base.B, true);
    const auto gamma_codomain = [&] {
      std::vector<int> be = base.B;
      be.insert(be.end(), base.E.begin(), base.E.end());
      std::sort(be.begin(), be.end());
      return colors_of(be, true);
    }();

    for_each_tuple(psi_codomain, domain.size(), [&](const std::vector<Color>& psi_values) {
      for (const auto& pairing : all_pairings(base.C, false)) {
        for_each_tuple(gamma_codomain, base.D.size(), [&](const std::vector<Color>& gamma_values) {
          NType alpha = base;
          for (std::size_t q = 0; q < domain.size(); ++q) {
            alpha.psi.push_back({domain[q].first, domain[q].second, psi_values[q]});
          }
          alpha.P = pairing;
          for (std::size_t q = 0; q < base.D.size(); ++q) alpha.gamma.push_back({base.D[q], gamma_values[q]});
          alpha = canonicalize(std::move(alpha));
          if (validate_type(alpha).valid()) out.push_back(std::move(alpha));
        });
      }
    });

    std::size_t p = static_cast<std::size_t>(n);
    bool done = true;
    while (p > 0) {
      --p;
      if (++cls[p] < 5) {
        done = false;
        break;
      }
      cls[p] = 0;
    }
    if (done) break;
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<NType> enumerate_types_constraint_first(int n) {
  std::vector<NType> out;
  for (unsigned a_mask = 0; a_mask < (1u << n); ++a_mask) {
    std::vector<int> A;
    std::vector<int> others;
    for (int c = 0; c < n; ++c) (a_mask & (1u << c) ? A : others).push_back(c);

    if (A.empty()) {
      // All of n is paired off.
      for (const auto& pairing : all_pairings(others, true)) {
        NType alpha;
        alpha.n = n;
        alpha.C = others;
        alpha.P = pairing;
        out.push_back(canonicalize(std::move(alpha)));
      }
      continue;
    }

    const auto domain = ordered_distinct_pairs(A);
    for_each_tuple(colors_of(others, true), domain.size(), [&](const std::vector<Color>& psi_values) {
      std::set<int> range;
      for (Color c : psi_values) {
        if (c.is_finite()) range.insert(c.value());
      }
      const std::vector<int> B(range.begin(), range.end());
      std::vector<int> rest;
      for (int c : others) {
        if (!range.count(c)) rest.push_back(c);
      }

      // Each remaining color goes to C, D or E.
      std::vector<int> where(rest.size(), 0);
      while (true) {
        std::vector<int> C, D, E;
        for (std::size_t q = 0; q < rest.size(); ++q) {
          (where[q] == 0 ? C : where[q] == 1 ? D : E).push_back(rest[q]);
        }
        // gamma needs two preimages per E color.
        if (D.size() >= 2 * E.size()) {
          std::vector<int> targets = B;
          targets.insert(targets.end(), E.begin(), E.end());
          std::sort(targets.begin(), targets.end());
          for (const auto& pairing : all_pairings(C, false)) {
            for_each_tuple(colors_of(targets, true), D.size(), [&](const std::vector<Color>& gamma_values) {
              std::map<int, int> hits;
              for (Color c : gamma_values) {
                if (c.is_finite()) ++hits[c.value()];
              }
              for (int k : E) {
                if (hits[k] < 2) return;
              }
              NType alpha;
              alpha.n = n;
              alpha.A = A;
              alpha.B = B;
              alpha.C = C;
              alpha.D = D;
              alpha.E = E;
              for (std::size_t q = 0; q < domain.size(); ++q) {
                alpha.psi.push_back({domain[q].first, domain[q].second, psi_values[q]});
              }
              alpha.P = pairing;
              for (std::size_t q = 0; q < D.size(); ++q) alpha.gamma.push_back({D[q], gamma_values[q]});
              out.push_back(canonicalize(std::move(alpha)));
            });
          }
        }
        std::size_t p = rest.size();
        bool done = true;
        while (p > 0) {
          --p;
          if (++where[p] < 3) {
            done = false;
            break;
          }
          where[p] = 0;
        }
        if (done) break;
      }
    });
  }
  std::sort(out.begin(), out.end());
  return out;
}

FAlphaResult build_f_alpha(const NType& alpha) {
  const auto validity = validate_type(alpha);
  if (!validity.valid()) throw GapError(ErrorCode::InvalidType, validity.violations.front());

  std::vector<MSlot> slots;
  std::vector<int> sigma;
  std::vector<std::optional<Color>> tau;
  if (alpha.A.empty()) {
    slots.push_back({SlotKind::Placeholder, {}});
    sigma.push_back(0);
    tau.push_back(std::nullopt);
  }
  for (int a : alpha.A) {
    slots.push_back({SlotKind::AStar, {a}});
    sigma.push_back(a);
    tau.push_back(std::nullopt);
  }
  const std::size_t a_star = slots.size();
  for (const auto& block : canonicalize(alpha).P) {
    slots.push_back({SlotKind::Block, block});
    sigma.push_back(block.front());
    tau.push_back(Color(block.back()));
  }
  for (const auto& entry : canonicalize(alpha).gamma) {
    slots.push_back({SlotKind::DColor, {entry.from}});
    sigma.push_back(entry.from);
    tau.push_back(entry.value);
  }

  const std::size_t m = slots.size();
  std::vector<Color> cells(m * m, kInf);
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < m; ++j) {
      const bool i_star = i < a_star;
      const bool j_star = j < a_star;
      Color value;
      if (i == j) {
        value = Color(sigma[i]);
      } else if (i_star && j_star) {
        value = psi_at(alpha.psi, sigma[i], sigma[j]);
      } else if (!i_star && (j_star || sigma[i] < sigma[j])) {
        value = Color(sigma[i]);
      } else {
        value = *tau[j];
      }
      cells[i * m + j] = value;
    }
  }
  return FAlphaResult{GapFunction(static_cast<int>(m), alpha.n, std::move(cells)), std::move(slots), std::move(sigma),
                      std::move(tau)};
}

FAlphaProperties check_f_alpha_properties(const NType& alpha, const GapFunction& f) {
  FAlphaProperties out;
  out.pbranch_is_A = pbranch(f) == alpha.A;
  out.branch_reduced = is_branch_reduced(f, alpha.A, alpha.psi);
  out.blocks_attached = std::all_of(alpha.P.begin(), alpha.P.end(), [&](const std::vector<int>& block) {
    const Color k(block.front());
    const Color l(block.back());
    return is_attached(f, k, l) && is_attached(f, l, k);
  });
  out.gamma_attached = std::all_of(alpha.gamma.begin(), alpha.gamma.end(),
                                   [&](const GammaEntry& g) { return is_attached(f, Color(g.from), g.value); });
  return out;
}

NType permute_type(const ColorPermutation& pi, const NType& alpha) {
  require_permutation(pi, alpha.n);
  auto map_set = [&](const std::vector<int>& s) {
    std::vector<int> out;
    for (int c : s) out.push_back(pi[static_cast<std::size_t>(c)]);
    return out;
  };
  NType out;
  out.n = alpha.n;
  out.A = map_set(alpha.A);
  out.B = map_set(alpha.B);
  out.C = map_set(alpha.C);
  out.D = map_set(alpha.D);
  out.E = map_set(alpha.E);
  for (const auto& p : alpha.psi) {
    out.psi.push_back({pi[static_cast<std::size_t>(p.from)], pi[static_cast<std::size_t>(p.to)], permute_color(pi, p.value)});
  }
  for (const auto& block : alpha.P) out.P.push_back(map_set(block));
  for (const auto& g : alpha.gamma) out.gamma.push_back({pi[static_cast<std::size_t>(g.from)], permute_color(pi, g.value)});
  return canonicalize(std::move(out));
}

TypeOrbits type_orbits(int n) { return type_orbits(enumerate_types(n), n); }

TypeOrbits type_orbits(std::vector<NType> types, int n) {
  TypeOrbits result;
  result.types = std::move(types);
  result.orbit_of.assign(result.types.size(), -1);
  const auto perms = all_permutations(n);
  for (std::size_t t = 0; t < result.types.size(); ++t) {
    if (result.orbit_of[t] != -1) continue;
    const int id = static_cast<int>(result.orbits.size());
    std::set<std::size_t> members;
    for (const auto& pi : perms) {
      const NType image = permute_type(pi, result.types[t]);
      const auto it = std::lower_bound(result.types.begin(), result.types.end(), image);
      if (it == result.types.end() || *it != image) {
        throw GapError(ErrorCode::InvalidType, "type list not closed under permutation");
      }
      members.insert(static_cast<std::size_t>(it - result.types.begin()));
    }
    for (std::size_t member : members) result.orbit_of[member] = id;
    result.orbits.emplace_back(members.begin(), members.end());
  }
  return result;
}

JNotation j_notation(const GapFunction& f) {
  JNotation j(static_cast<std::size_t>(f.n()));
  for (int i = 0; i < f.m(); ++i) {
    for (int k = 0; k < f.m(); ++k) {
      const Color c = f.at(i, k);
      if (c.is_finite()) j[static_cast<std::size_t>(c.value())].push_back({i, k});
    }
  }
  return j;
}

std::string format_j_notation(const JNotation& j, int m) {
  std::ostringstream os;
  os << '{';
  for (std::size_t c = 0; c < j.size(); ++c) {
    os << (c ? ", " : "") << 'J' << m << '(';
    for (std::size_t q = 0; q < j[c].size(); ++q) os << (q ? "," : "") << j[c][q].first << j[c][q].second;
    os << ')';
  }
  os << '}';
  return os.str();
}

}  // namespace gapbasis
