#include "gapbasis/json_io.hpp"

#include <algorithm>

namespace gapbasis {

namespace {

[[noreturn]] void bad(const std::string& why) { throw GapError(ErrorCode::InvalidInput, why); }

const Json& field(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) bad(std::string("missing field '") + key + "'");
  return j.at(key);
}

int as_int(const Json& j, const char* what) {
  if (!j.is_number_integer()) bad(std::string(what) + " must be an integer");
  return j.get<int>();
}

std::vector<int> int_list(const Json& j, const char* what) {
  if (!j.is_array()) bad(std::string(what) + " must be an array");
  std::vector<int> out;
  for (const auto& item : j) out.push_back(as_int(item, what));
  return out;
}

Json int_array(const std::vector<int>& v) {
  Json out = Json::array();
  for (int x : v) out.push_back(x);
  return out;
}

}  // namespace

Json to_json(Color c) { return c.is_inf() ? Json("inf") : Json(c.value()); }

Color color_from_json(const Json& j) {
  if (j.is_string() && j.get<std::string>() == "inf") return kInf;
  if (j.is_number_integer() && j.get<long long>() >= 0) return Color(j.get<int>());
  bad("a cell must be a nonnegative integer or \"inf\"");
}

Json to_json(const TreeNode& s) {
  Json out = Json::array();
  for (int letter : s.letters()) out.push_back(letter);
  return out;
}

TreeNode node_from_json(const Json& j) {
  auto letters = int_list(j, "node letter");
  for (int letter : letters) {
    if (letter < 0) bad("node letters must be nonnegative");
  }
  return TreeNode(std::move(letters));
}

Json to_json(const GapFunction& f) {
  Json table = Json::array();
  for (int i = 0; i < f.m(); ++i) {
    Json row = Json::array();
    for (int k = 0; k < f.m(); ++k) row.push_back(to_json(f.at(i, k)));
    table.push_back(std::move(row));
  }
  return Json{{"m", f.m()}, {"n", f.n()}, {"table", std::move(table)}};
}

GapFunction gap_function_from_json(const Json& j) {
  const int m = as_int(field(j, "m"), "m");
  const int n = as_int(field(j, "n"), "n");
  const Json& table = field(j, "table");
  if (!table.is_array() || static_cast<int>(table.size()) != m) bad("table must have m rows");
  std::vector<Color> cells;
  for (const auto& row : table) {
    if (!row.is_array() || static_cast<int>(row.size()) != m) bad("every table row must have m cells");
    for (const auto& cell : row) cells.push_back(color_from_json(cell));
  }
  return GapFunction(m, n, std::move(cells));
}

Json to_json(const ReductionMap& r) {
  Json e = Json::array();
  for (const auto& node : r.e) e.push_back(to_json(node));
  return Json{{"k", r.k}, {"x", to_json(r.x)}, {"e", std::move(e)}};
}

ReductionMap reduction_from_json(const Json& j, std::optional<int> m1) {
  const int k = as_int(field(j, "k"), "k");
  TreeNode x = node_from_json(field(j, "x"));
  const Json& ej = field(j, "e");
  if (!ej.is_array()) bad("e must be an array");
  std::vector<TreeNode> e;
  int bound = x.alphabet_bound();
  for (const auto& node : ej) {
    e.push_back(node_from_json(node));
    bound = std::max(bound, e.back().alphabet_bound());
  }
  ReductionMap r = make_reduction(m1.value_or(std::max(bound, 1)), std::move(e), std::move(x));
  if (r.k != k) bad("k disagrees with the node lengths");
  return r;
}

Json to_json(const Condition1Report& report) {
  Json pairs = Json::array();
  for (const auto& [k, l] : report.attachments) pairs.push_back(Json::array({k, l}));
  return Json{{"condition", 1}, {"attachments", std::move(pairs)}};
}

Json to_json(const NType& alpha) {
  Json psi = Json::array();
  for (const auto& p : alpha.psi) psi.push_back(Json::array({p.from, p.to, to_json(p.value)}));
  Json P = Json::array();
  for (const auto& block : alpha.P) P.push_back(int_array(block));
  Json gamma = Json::array();
  for (const auto& g : alpha.gamma) gamma.push_back(Json::array({g.from, to_json(g.value)}));
  return Json{{"n", alpha.n},          {"A", int_array(alpha.A)}, {"B", int_array(alpha.B)},
              {"C", int_array(alpha.C)}, {"D", int_array(alpha.D)}, {"E", int_array(alpha.E)},
              {"psi", std::move(psi)},   {"P", std::move(P)},       {"gamma", std::move(gamma)}};
}

NType ntype_from_json(const Json& j) {
  NType alpha;
  alpha.n = as_int(field(j, "n"), "n");
  alpha.A = int_list(field(j, "A"), "A");
  alpha.B = int_list(field(j, "B"), "B");
  alpha.C = int_list(field(j, "C"), "C");
  alpha.D = int_list(field(j, "D"), "D");
  alpha.E = int_list(field(j, "E"), "E");
  for (const auto& p : field(j, "psi")) {
    if (!p.is_array() || p.size() != 3) bad("psi entries are [i, j, cell]");
    alpha.psi.push_back({as_int(p[0], "psi"), as_int(p[1], "psi"), color_from_json(p[2])});
  }
  for (const auto& block : field(j, "P")) alpha.P.push_back(int_list(block, "P block"));
  for (const auto& g : field(j, "gamma")) {
    if (!g.is_array() || g.size() != 2) bad("gamma entries are [k, cell]");
    alpha.gamma.push_back({as_int(g[0], "gamma"), color_from_json(g[1])});
  }
  return canonicalize(std::move(alpha));
}

Json to_json(const JNotation& j) {
  Json out = Json::array();
  for (const auto& pairs : j) {
    Json list = Json::array();
    for (const auto& p : pairs) list.push_back(Json::array({p.first, p.second}));
    out.push_back(std::move(list));
  }
  return out;
}

Json to_json(const FiniteComb& comb) {
  Json nodes = Json::array();
  for (const auto& s : comb.nodes) nodes.push_back(to_json(s));
  return Json{{"kind", Json::array({comb.kind.first, comb.kind.second})}, {"nodes", std::move(nodes)}};
}

FiniteComb comb_from_json(const Json& j) {
  const auto kind = int_list(field(j, "kind"), "kind");
  if (kind.size() != 2) bad("kind is [u, v]");
  std::vector<TreeNode> nodes;
  for (const auto& s : field(j, "nodes")) nodes.push_back(node_from_json(s));
  FiniteComb comb;
  comb.kind = {kind[0], kind[1]};
  comb.nodes = std::move(nodes);
  std::stable_sort(comb.nodes.begin(), comb.nodes.end(),
                   [](const TreeNode& a, const TreeNode& b) { return a.size() < b.size(); });
  if (!matches_kind(comb.nodes, comb.kind)) bad("nodes do not form a comb of the stated kind");
  if (!comb.kind.is_diagonal()) {
    // Spine: meets of consecutive nodes, and the least valid split for the last.
    for (std::size_t i = 0; i + 1 < comb.nodes.size(); ++i) comb.spine.push_back(meet(comb.nodes[i], comb.nodes[i + 1]));
    const TreeNode& last = comb.nodes.back();
    const std::size_t lo = comb.nodes.size() >= 2 ? comb.nodes[comb.nodes.size() - 2].size() + 1 : 0;
    for (std::size_t p = lo; p < last.size(); ++p) {
      if (last[p] == comb.kind.second) {
        comb.spine.push_back(last.prefix(p));
        break;
      }
    }
  }
  return comb;
}

Json to_json(const SubtreeDescriptor& d) {
  if (d.kind == SubtreeDescriptor::Kind::IndexSubset) {
    return Json{{"kind", "index_subset"}, {"allowed", int_array(d.allowed)}};
  }
  return Json{{"kind", "parity"}, {"forbidden_even", d.forbidden}};
}

Json to_json(const DeriveTrace& trace) {
  Json u = Json::array();
  for (const auto& [i, ui] : trace.u) u.push_back(Json::array({i, ui}));
  Json psi = Json::array();
  for (const auto& p : trace.psi) psi.push_back(Json::array({p.from, p.to, to_json(p.value)}));
  Json phi = Json::array();
  for (const auto& p : trace.phi) phi.push_back(Json::array({p.first, p.second}));
  Json approx = Json::array();
  for (const auto& [k, l] : trace.approx) approx.push_back(Json::array({to_json(k), to_json(l)}));
  Json P = Json::array();
  for (const auto& block : trace.P) P.push_back(int_array(block));
  Json gamma = Json::array();
  for (const auto& g : trace.gamma) gamma.push_back(Json::array({g.from, to_json(g.value)}));
  return Json{{"A", int_array(trace.A)}, {"u", std::move(u)},       {"psi", std::move(psi)},
              {"B", int_array(trace.B)}, {"F", int_array(trace.F)}, {"phi", std::move(phi)},
              {"approx", std::move(approx)}, {"E", int_array(trace.E)}, {"C", int_array(trace.C)},
              {"D", int_array(trace.D)}, {"P", std::move(P)},       {"gamma", std::move(gamma)}};
}

Json to_json(const IncomparabilityReport& report) {
  Json violations = Json::array();
  for (const auto& v : report.violations) {
    violations.push_back(Json{{"below", v.below}, {"above", v.above}, {"witness", to_json(v.witness)}});
  }
  return Json{{"n", report.n},
              {"engine", std::string(to_string(report.engine))},
              {"ordered_pairs", report.ordered_pairs},
              {"pairs_passed", report.pairs_passed},
              {"violations", std::move(violations)},
              {"self_pairs", report.self_pairs},
              {"self_passed", report.self_passed},
              {"self_failures", report.self_failures}};
}

Json to_json(const CatalogEntry& entry) {
  Json out = to_json(entry.type);
  out["orbit_id"] = entry.orbit_id;
  out["f"] = to_json(entry.representative.f);
  out["j"] = to_json(entry.j);
  return out;
}

Json to_json(const Catalog& catalog) {
  Json entries = Json::array();
  for (const auto& entry : catalog.entries) entries.push_back(to_json(entry));
  return Json{{"n", catalog.n}, {"count", catalog.entries.size()}, {"orbit_sizes", catalog.orbit_sizes},
              {"entries", std::move(entries)}};
}

Catalog catalog_from_json(const Json& j) {
  auto corrupt = [](const std::string& why) { return GapError(ErrorCode::CorruptCache, why); };
  try {
    Catalog catalog;
    catalog.n = as_int(field(j, "n"), "n");
    for (const auto& size : field(j, "orbit_sizes")) catalog.orbit_sizes.push_back(size.get<std::size_t>());
    const Json& entries = field(j, "entries");
    if (!entries.is_array()) throw corrupt("entries must be an array");
    for (const auto& e : entries) {
      NType type = ntype_from_json(e);
      if (!validate_type(type).valid()) throw corrupt("stored type is invalid");
      FAlphaResult rep = build_f_alpha(type);
      if (gap_function_from_json(field(e, "f")) != rep.f) throw corrupt("stored f disagrees with its type");
      JNotation jn = j_notation(rep.f);
      if (field(e, "j") != to_json(jn)) throw corrupt("stored J-notation disagrees with f");
      catalog.entries.push_back({std::move(type), std::move(rep), std::move(jn), as_int(field(e, "orbit_id"), "orbit_id")});
    }
    if (static_cast<std::size_t>(as_int(field(j, "count"), "count")) != catalog.entries.size()) {
      throw corrupt("count disagrees with entries");
    }
    return catalog;
  } catch (const GapError& e) {
    if (e.code() == ErrorCode::CorruptCache) throw;
    throw corrupt(e.what());
  } catch (const nlohmann::json::exception& e) {
    throw corrupt(e.what());
  }
}

}  // namespace gapbasis
