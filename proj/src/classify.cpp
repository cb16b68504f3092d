#include "gapbasis/classify.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "gapbasis/invariants.hpp"
#include "gapbasis/parallel.hpp"

namespace gapbasis {

std::string_view to_string(SearchEngine engine) { return engine == SearchEngine::Pruned ? "pruned" : "brute"; }

SearchEngine parse_engine(std::string_view name) {
  if (name == "pruned") return SearchEngine::Pruned;
  if (name == "brute") return SearchEngine::Brute;
  throw GapError(ErrorCode::InvalidInput, "unknown engine '" + std::string(name) + "'");
}

Catalog minimal_basis(int n) {
  if (n < 1) throw GapError(ErrorCode::InvalidInput, "n must be at least 1");
  const TypeOrbits orbits = type_orbits(n);
  Catalog catalog;
  catalog.n = n;
  for (std::size_t t = 0; t < orbits.types.size(); ++t) {
    FAlphaResult rep = build_f_alpha(orbits.types[t]);
    JNotation j = j_notation(rep.f);
    catalog.entries.push_back({orbits.types[t], std::move(rep), std::move(j), orbits.orbit_of[t]});
  }
  for (const auto& orbit : orbits.orbits) catalog.orbit_sizes.push_back(orbit.size());
  return catalog;
}

std::optional<ReductionMap> gap_leq(const GapFunction& f, const GapFunction& g, SearchEngine engine) {
  if (engine == SearchEngine::Brute) return brute_search_reduction(f, g, f.m() + 1);
  return search_reduction(f, g);
}

bool gap_equivalent(const GapFunction& f, const GapFunction& g, SearchEngine engine) {
  return gap_leq(f, g, engine).has_value() && gap_leq(g, f, engine).has_value();
}

IncomparabilityReport verify_pairwise_incomparable(const Catalog& catalog, SearchEngine engine) {
  IncomparabilityReport report;
  report.n = catalog.n;
  report.engine = engine;
  const std::size_t count = catalog.entries.size();
  std::vector<std::optional<ReductionMap>> results(count * count);
  parallel_for(count * count, [&](std::size_t slot) {
    const auto& f = catalog.entries[slot / count].representative.f;
    const auto& g = catalog.entries[slot % count].representative.f;
    results[slot] = gap_leq(f, g, engine);
  });
  for (std::size_t a = 0; a < count; ++a) {
    for (std::size_t b = 0; b < count; ++b) {
      const auto& found = results[a * count + b];
      if (a == b) {
        ++report.self_pairs;
        const auto& f = catalog.entries[a].representative.f;
        if (found && *found == ReductionMap::identity(f.m())) {
          ++report.self_passed;
        } else {
          report.self_failures.push_back(a);
        }
        continue;
      }
      ++report.ordered_pairs;
      if (found) {
        report.violations.push_back({a, b, *found});
      } else {
        ++report.pairs_passed;
      }
    }
  }
  return report;
}

Derivation derive_type(const GapFunction& g) {
  require_n_gap(g, "g");
  const int n = g.n();
  const int m = g.m();
  DeriveTrace trace;
  trace.A = pbranch(g);
  if (trace.A.empty() && !condition1(g)) {
    throw GapError(ErrorCode::Condition1Violated, "pbranch(g) is empty and Condition 1 fails; normalize with ensure_pbranch");
  }

  for (int i : trace.A) {
    int chosen = -1;
    for (int u = 0; u < m && chosen < 0; ++u) {
      if (g.at(u, u) == Color(i)) chosen = u;
    }
    trace.u.emplace_back(i, chosen);
  }
  std::set<int> range;
  for (const auto& [i, ui] : trace.u) {
    for (const auto& [j, uj] : trace.u) {
      if (i == j) continue;
      const Color c = g.at(ui, uj);
      trace.psi.push_back({i, j, c});
      if (c.is_finite()) range.insert(c.value());
    }
  }
  std::sort(trace.psi.begin(), trace.psi.end());
  trace.B.assign(range.begin(), range.end());

  std::vector<bool> in_F(static_cast<std::size_t>(n), true);
  for (int a : trace.A) in_F[static_cast<std::size_t>(a)] = false;
  for (int b : trace.B) in_F[static_cast<std::size_t>(b)] = false;
  for (int c = 0; c < n; ++c) {
    if (in_F[static_cast<std::size_t>(c)]) trace.F.push_back(c);
  }
  auto is_F = [&](Color c) { return c.is_finite() && in_F[static_cast<std::size_t>(c.value())]; };

  // Phi over unordered pairs i < j, greedy then one pruning pass.
  std::vector<DirectionPair> chosen;
  std::set<int> covered;
  for (int i = 0; i < m; ++i) {
    for (int j = i + 1; j < m; ++j) {
      bool adds = false;
      for (Color c : {g.at(i, j), g.at(j, i)}) {
        if (is_F(c) && !covered.count(c.value())) adds = true;
      }
      if (!adds) continue;
      chosen.push_back({i, j});
      for (Color c : {g.at(i, j), g.at(j, i)}) {
        if (is_F(c)) covered.insert(c.value());
      }
    }
  }
  auto covers_F = [&](const std::vector<DirectionPair>& pairs) {
    std::set<int> got;
    for (const auto& p : pairs) {
      for (Color c : {g.at(p), g.at(p.swapped())}) {
        if (is_F(c)) got.insert(c.value());
      }
    }
    return got.size() == trace.F.size();
  };
  for (std::size_t q = 0; q < chosen.size();) {
    std::vector<DirectionPair> without = chosen;
    without.erase(without.begin() + static_cast<std::ptrdiff_t>(q));
    if (covers_F(without)) {
      chosen = std::move(without);
    } else {
      ++q;
    }
  }
  for (const auto& p : chosen) {
    trace.phi.push_back(p);
    trace.phi.push_back(p.swapped());
  }
  std::sort(trace.phi.begin(), trace.phi.end());

  std::set<std::pair<Color, Color>> approx;
  for (const auto& p : trace.phi) approx.emplace(g.at(p), g.at(p.swapped()));
  trace.approx.assign(approx.begin(), approx.end());
  auto partners = [&](int k) {
    std::vector<Color> out;
    for (const auto& [a, b] : trace.approx) {
      if (a == Color(k)) out.push_back(b);
    }
    return out;
  };

  std::vector<bool> in_E(static_cast<std::size_t>(n), false);
  for (int k : trace.F) {
    int f_partners = 0;
    for (Color l : partners(k)) f_partners += is_F(l) ? 1 : 0;
    if (f_partners >= 2) {
      trace.E.push_back(k);
      in_E[static_cast<std::size_t>(k)] = true;
    }
  }
  auto in_F_minus_E = [&](Color c) { return is_F(c) && !in_E[static_cast<std::size_t>(c.value())]; };
  std::set<std::vector<int>> blocks;
  for (int k : trace.F) {
    if (in_E[static_cast<std::size_t>(k)]) continue;
    std::optional<int> mate;
    for (Color l : partners(k)) {
      if (in_F_minus_E(l)) mate = l.value();
    }
    if (mate) {
      trace.C.push_back(k);
      blocks.insert(k == *mate ? std::vector<int>{k} : std::vector<int>{std::min(k, *mate), std::max(k, *mate)});
    } else {
      trace.D.push_back(k);
      const auto options = partners(k);
      if (options.size() != 1) throw GapError(ErrorCode::InvalidType, "gamma not determined by Phi");
      trace.gamma.push_back({k, options.front()});
    }
  }
  trace.P.assign(blocks.begin(), blocks.end());

  NType alpha;
  alpha.n = n;
  alpha.A = trace.A;
  alpha.B = trace.B;
  alpha.C = trace.C;
  alpha.D = trace.D;
  alpha.E = trace.E;
  alpha.psi = trace.psi;
  alpha.P = trace.P;
  alpha.gamma = trace.gamma;
  alpha = canonicalize(std::move(alpha));
  const auto validity = validate_type(alpha);
  if (!validity.valid()) throw GapError(ErrorCode::InvalidType, "derived type invalid: " + validity.violations.front());
  return {std::move(alpha), std::move(trace)};
}

ReductionMap build_claim1_witness(const GapFunction& g, const NType& alpha, const DeriveTrace& trace) {
  auto mismatch = [](const std::string& why) { return GapError(ErrorCode::TraceMismatch, why); };
  if (g.n() != alpha.n) throw mismatch("g and alpha disagree on n");
  if (trace.A != alpha.A || trace.B != alpha.B || trace.C != alpha.C || trace.D != alpha.D || trace.E != alpha.E ||
      trace.psi != alpha.psi || trace.P != alpha.P || trace.gamma != alpha.gamma) {
    throw mismatch("trace does not describe alpha");
  }
  for (const auto& [i, ui] : trace.u) {
    if (ui < 0 || ui >= g.m() || g.at(ui, ui) != Color(i)) throw mismatch("u(i) does not carry color i");
  }
  for (const auto& p : trace.phi) {
    if (p.first < 0 || p.second < 0 || p.first >= g.m() || p.second >= g.m() || p.is_diagonal()) {
      throw mismatch("Phi holds a pair outside <m>^2");
    }
  }

  const FAlphaResult fa = build_f_alpha(alpha);
  const std::size_t M = fa.slots.size();

  std::vector<std::size_t> z;
  for (std::size_t s = 0; s < M; ++s) {
    const SlotKind kind = fa.slots[s].kind;
    if (kind == SlotKind::Block || kind == SlotKind::DColor) z.push_back(s);
  }
  std::sort(z.begin(), z.end(), [&](std::size_t a, std::size_t b) { return fa.sigma[a] < fa.sigma[b]; });

  std::vector<DirectionPair> ij;
  for (std::size_t s : z) {
    std::optional<DirectionPair> found;
    for (const auto& p : trace.phi) {
      if (g.at(p) == Color(fa.sigma[s]) && g.at(p.swapped()) == *fa.tau[s]) {
        found = p;
        break;
      }
    }
    if (!found) throw mismatch("no pair in Phi realizes slot with sigma " + std::to_string(fa.sigma[s]));
    ij.push_back(*found);
  }

  const std::size_t q = z.size() + 1;
  TreeNode x;
  for (const auto& p : ij) x.push_back(p.second);

  // Placeholder without a diagonal 0: x gets j_0 once more and the placeholder
  // leaves it through i_0, so their incidence carries g(i_0, j_0) = 0.
  std::optional<int> placeholder_letter;
  bool extend = false;
  for (std::size_t s = 0; s < M; ++s) {
    if (fa.slots[s].kind != SlotKind::Placeholder) continue;
    for (int u = 0; u < g.m() && !placeholder_letter; ++u) {
      if (g.at(u, u) == Color(0)) placeholder_letter = u;
    }
    if (!placeholder_letter) {
      if (ij.empty() || fa.sigma[z.front()] != 0) throw mismatch("placeholder has no route to color 0");
      extend = true;
    }
  }
  const std::size_t k = extend ? q + 1 : q;

  std::vector<TreeNode> e(M);
  for (std::size_t xi = 0; xi < z.size(); ++xi) {
    TreeNode node = x.prefix(xi);
    node.push_back(ij[xi].first);
    while (node.size() < k) node.push_back(0);
    e[z[xi]] = std::move(node);
  }
  for (std::size_t s = 0; s < M; ++s) {
    if (fa.slots[s].kind == SlotKind::AStar) {
      const int color = fa.slots[s].colors.front();
      const auto it = std::find_if(trace.u.begin(), trace.u.end(), [&](const auto& p) { return p.first == color; });
      if (it == trace.u.end()) throw mismatch("u undefined on an A color");
      e[s] = x.appended(it->second);
    } else if (fa.slots[s].kind == SlotKind::Placeholder) {
      if (extend) {
        e[s] = x.appended(ij.front().first).appended(0);
      } else {
        e[s] = x.appended(*placeholder_letter);
      }
    }
  }
  if (extend) x.push_back(ij.front().second);

  ReductionMap r = make_reduction(g.m(), std::move(e), std::move(x));
  if (!is_witness(r, fa.f, g)) throw mismatch("constructed map is not a witness");
  return r;
}

std::vector<std::size_t> minimal_types_below(const GapFunction& g, const Catalog& catalog) {
  require_n_gap(g, "g");
  if (g.n() != catalog.n) throw GapError(ErrorCode::DimensionMismatch, "catalog built for a different n");
  std::vector<char> below(catalog.entries.size(), 0);
  parallel_for(catalog.entries.size(), [&](std::size_t t) {
    below[t] = gap_leq(catalog.entries[t].representative.f, g).has_value() ? 1 : 0;
  });
  std::vector<std::size_t> out;
  for (std::size_t t = 0; t < below.size(); ++t) {
    if (below[t]) out.push_back(t);
  }
  return out;
}

std::optional<std::size_t> classify_gap(const GapFunction& f, const Catalog& catalog) {
  for (std::size_t t : minimal_types_below(f, catalog)) {
    if (gap_leq(f, catalog.entries[t].representative.f)) return t;
  }
  return std::nullopt;
}

CloverWitness clover_witness(const NType& alpha) {
  if (alpha.n < 3) throw GapError(ErrorCode::TooSmallN, "clover witness needs n >= 3");
  const FAlphaResult fa = build_f_alpha(alpha);
  CloverWitness w;
  if (!alpha.A.empty()) {
    const int i = alpha.A.front();
    std::size_t index = 0;
    while (fa.slots[index].kind != SlotKind::AStar || fa.slots[index].colors.front() != i) ++index;
    for (int c = 0; c < alpha.n; ++c) {
      if (c != i) w.X.push_back(c);
    }
    w.Y = {i};
    w.subtree = SubtreeDescriptor::parity(static_cast<int>(index));
    return w;
  }
  std::size_t block = 0;
  while (fa.slots[block].kind != SlotKind::Block || fa.slots[block].colors.front() != 0) ++block;
  std::size_t placeholder = 0;
  while (fa.slots[placeholder].kind != SlotKind::Placeholder) ++placeholder;
  w.X = fa.slots[block].colors;
  for (int c = 0; c < alpha.n; ++c) {
    if (!std::binary_search(w.X.begin(), w.X.end(), c)) w.Y.push_back(c);
  }
  w.subtree = SubtreeDescriptor::index_subset({static_cast<int>(placeholder), static_cast<int>(block)});
  return w;
}

}  // namespace gapbasis
