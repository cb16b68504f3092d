#include "gapbasis/cli.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

#include "gapbasis/catalog_store.hpp"
#include "gapbasis/classify.hpp"
#include "gapbasis/invariants.hpp"
#include "gapbasis/json_io.hpp"
#include "gapbasis/treelab.hpp"

namespace gapbasis {

namespace {

constexpr int kMaxN = 5;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Table {
  std::vector<std::string> headers;
  std::vector<std::vector<std::string>> rows;
};

// Cells in tables show inf as *.
std::string cell_text(const Json& j) {
  if (j.is_string()) return j.get<std::string>() == "inf" ? "*" : j.get<std::string>();
  std::string s = j.dump();
  std::string out;
  for (std::size_t p = 0; p < s.size(); ++p) {
    if (s.compare(p, 5, "\"inf\"") == 0) {
      out += '*';
      p += 4;
    } else {
      out += s[p];
    }
  }
  return out;
}

std::string csv_escape(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

void print_table(const Table& t, const std::string& format, std::ostream& out) {
  if (format == "csv") {
    for (std::size_t c = 0; c < t.headers.size(); ++c) out << (c ? "," : "") << csv_escape(t.headers[c]);
    out << '\n';
    for (const auto& row : t.rows) {
      for (std::size_t c = 0; c < row.size(); ++c) out << (c ? "," : "") << csv_escape(row[c]);
      out << '\n';
    }
    return;
  }
  std::vector<std::size_t> width(t.headers.size());
  for (std::size_t c = 0; c < t.headers.size(); ++c) width[c] = t.headers[c].size();
  for (const auto& row : t.rows) {
    for (std::size_t c = 0; c < row.size(); ++c) width[c] = std::max(width[c], row[c].size());
  }
  auto line = [&](const std::vector<std::string>& cells) {
    for (std::size_t c = 0; c < cells.size(); ++c) {
      out << (c ? "  " : "") << cells[c];
      if (c + 1 < cells.size()) out << std::string(width[c] - cells[c].size(), ' ');
    }
    out << '\n';
  };
  line(t.headers);
  std::vector<std::string> rule;
  for (std::size_t w : width) rule.push_back(std::string(w, '-'));
  line(rule);
  for (const auto& row : t.rows) line(row);
}

// Objects without a natural table become one row per top-level field.
Table field_table(const Json& j) {
  Table t{{"field", "value"}, {}};
  for (const auto& [key, value] : j.items()) t.rows.push_back({key, cell_text(value)});
  return t;
}

void emit(const Json& j, const std::optional<Table>& table, const std::string& format, std::ostream& out) {
  if (format == "json") {
    out << j.dump(2) << '\n';
    return;
  }
  print_table(table ? *table : field_table(j), format, out);
}

Json read_json_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw GapError(ErrorCode::InvalidInput, "cannot open " + path);
  std::ostringstream text;
  text << in.rdbuf();
  Json j = Json::parse(text.str(), nullptr, false);
  if (j.is_discarded()) throw GapError(ErrorCode::InvalidInput, path + " is not valid JSON");
  return j;
}

GapFunction load_gap(const std::optional<std::string>& path, const char* flag) {
  if (!path) throw UsageError(std::string("missing ") + flag);
  return gap_function_from_json(read_json_file(*path));
}

int require_n(const CommandRequest& r) {
  if (!r.n) throw UsageError("missing --n");
  if (*r.n < 1 || *r.n > kMaxN) throw UsageError("--n must be between 1 and " + std::to_string(kMaxN));
  return *r.n;
}

std::optional<std::filesystem::path> cache_dir(const CommandRequest& r) {
  if (r.cache_dir) return std::filesystem::path(*r.cache_dir);
  return cache_dir_from_env();
}

Catalog catalog_for(const CommandRequest& r, int n) { return load_or_build_catalog(n, cache_dir(r)).catalog; }

std::string set_text(const std::vector<int>& s) {
  std::string out = "{";
  for (std::size_t i = 0; i < s.size(); ++i) out += (i ? "," : "") + std::to_string(s[i]);
  return out + "}";
}

std::string color_text(Color c) { return c.is_inf() ? "*" : std::to_string(c.value()); }

std::vector<std::string> type_cells(const NType& a) {
  std::string psi;
  for (const auto& p : a.psi) {
    psi += (psi.empty() ? "" : " ") + std::to_string(p.from) + std::to_string(p.to) + ":" + color_text(p.value);
  }
  std::string P;
  for (const auto& block : a.P) P += set_text(block);
  std::string gamma;
  for (const auto& g : a.gamma) gamma += (gamma.empty() ? "" : " ") + std::to_string(g.from) + ":" + color_text(g.value);
  return {set_text(a.A), set_text(a.B), set_text(a.C), set_text(a.D), set_text(a.E), psi, P, gamma};
}

std::string f_text(const GapFunction& f) {
  std::string out;
  for (int i = 0; i < f.m(); ++i) {
    out += i ? "/" : "";
    for (int j = 0; j < f.m(); ++j) out += color_text(f.at(i, j));
  }
  return out;
}

const std::vector<std::string> kTypeHeaders = {"A", "B", "C", "D", "E", "psi", "P", "gamma"};

int cmd_types(const CommandRequest& r, std::ostream& out) {
  const int n = require_n(r);
  std::vector<NType> types;
  std::vector<std::size_t> index;
  if (r.up_to_perm) {
    const auto orbits = type_orbits(n);
    for (const auto& orbit : orbits.orbits) {
      types.push_back(orbits.types[orbit.front()]);
      index.push_back(orbit.front());
    }
  } else {
    types = enumerate_types(n);
    for (std::size_t t = 0; t < types.size(); ++t) index.push_back(t);
  }
  Json list = Json::array();
  Table table{{"index"}, {}};
  table.headers.insert(table.headers.end(), kTypeHeaders.begin(), kTypeHeaders.end());
  for (std::size_t t = 0; t < types.size(); ++t) {
    list.push_back(to_json(types[t]));
    std::vector<std::string> row{std::to_string(index[t])};
    const auto cells = type_cells(types[t]);
    row.insert(row.end(), cells.begin(), cells.end());
    table.rows.push_back(std::move(row));
  }
  emit(Json{{"n", n}, {"up_to_perm", r.up_to_perm}, {"count", types.size()}, {"types", std::move(list)}}, table,
       r.format, out);
  return kExitOk;
}

int cmd_basis(const CommandRequest& r, std::ostream& out) {
  const int n = require_n(r);
  const Catalog catalog = catalog_for(r, n);
  Json j = to_json(catalog);
  j["orbit_count"] = catalog.orbit_sizes.size();
  Table table{{"index", "orbit", "m"}, {}};
  table.headers.insert(table.headers.end(), kTypeHeaders.begin(), kTypeHeaders.end());
  table.headers.push_back("f");
  Json kept = Json::array();
  std::vector<bool> seen(catalog.orbit_sizes.size(), false);
  for (std::size_t t = 0; t < catalog.entries.size(); ++t) {
    const auto& e = catalog.entries[t];
    if (r.up_to_perm && seen[static_cast<std::size_t>(e.orbit_id)]) continue;
    seen[static_cast<std::size_t>(e.orbit_id)] = true;
    Json ej = to_json(e);
    ej["index"] = t;
    kept.push_back(std::move(ej));
    std::vector<std::string> row{std::to_string(t), std::to_string(e.orbit_id), std::to_string(e.representative.f.m())};
    const auto cells = type_cells(e.type);
    row.insert(row.end(), cells.begin(), cells.end());
    row.push_back(f_text(e.representative.f));
    table.rows.push_back(std::move(row));
  }
  j["up_to_perm"] = r.up_to_perm;
  j["entries"] = std::move(kept);
  emit(j, table, r.format, out);
  return kExitOk;
}

int cmd_orbits(const CommandRequest& r, std::ostream& out) {
  const int n = require_n(r);
  const TypeOrbits orbits = type_orbits(n);
  Json list = Json::array();
  Table table{{"orbit", "size", "representative", "members"}, {}};
  for (std::size_t id = 0; id < orbits.orbits.size(); ++id) {
    const auto& members = orbits.orbits[id];
    list.push_back(Json{{"id", id},
                        {"size", members.size()},
                        {"representative", members.front()},
                        {"members", members},
                        {"type", to_json(orbits.types[members.front()])}});
    std::string member_text;
    for (std::size_t m : members) member_text += (member_text.empty() ? "" : " ") + std::to_string(m);
    table.rows.push_back({std::to_string(id), std::to_string(members.size()), std::to_string(members.front()), member_text});
  }
  emit(Json{{"n", n}, {"count", orbits.orbits.size()}, {"orbits", std::move(list)}}, table, r.format, out);
  return kExitOk;
}

Json witness_json(const std::optional<ReductionMap>& w) { return w ? to_json(*w) : Json(nullptr); }

int cmd_leq(const CommandRequest& r, std::ostream& out) {
  const GapFunction f = load_gap(r.f_path, "--f");
  const GapFunction g = load_gap(r.g_path, "--g");
  const auto w = gap_leq(f, g, parse_engine(r.engine));
  emit(Json{{"leq", w.has_value()}, {"witness", witness_json(w)}}, std::nullopt, r.format, out);
  return kExitOk;
}

int cmd_equiv(const CommandRequest& r, std::ostream& out) {
  const GapFunction f = load_gap(r.f_path, "--f");
  const GapFunction g = load_gap(r.g_path, "--g");
  const SearchEngine engine = parse_engine(r.engine);
  const auto forward = gap_leq(f, g, engine);
  const auto backward = gap_leq(g, f, engine);
  emit(Json{{"equivalent", forward && backward}, {"forward", witness_json(forward)}, {"backward", witness_json(backward)}},
       std::nullopt, r.format, out);
  return kExitOk;
}

int cmd_invariants(const CommandRequest& r, std::ostream& out) {
  const GapFunction f = load_gap(r.f_path, "--f");
  const GapValidity validity = validate_gap_function(f);
  Json attachments = Json::array();
  for (const auto& [k, partners] : attachment_profile(f)) {
    Json list = Json::array();
    for (Color l : partners) list.push_back(to_json(l));
    attachments.push_back(Json{{"color", to_json(k)}, {"attached_to", std::move(list)}});
  }
  const auto report = condition1(f);
  Json pb = Json::array();
  for (int c : pbranch(f)) pb.push_back(c);
  emit(Json{{"n_gap", validity.n_gap},
            {"missing_colors", validity.missing_colors},
            {"pbranch", std::move(pb)},
            {"attachments", std::move(attachments)},
            {"condition1", report ? to_json(*report) : Json(nullptr)}},
       std::nullopt, r.format, out);
  return kExitOk;
}

int cmd_derive(const CommandRequest& r, std::ostream& out) {
  const GapFunction g = load_gap(r.f_path, "--f");
  require_n_gap(g, "--f");
  // Empty pbranch without Condition 1 goes through the explicit reduction.
  GapFunction target = g;
  std::optional<ReductionMap> normalization;
  if (pbranch(g).empty() && !condition1(g)) {
    auto outcome = ensure_pbranch(g);
    auto& witness = std::get<PbranchWitness>(outcome);
    target = witness.f;
    normalization = witness.r;
  }
  const Derivation d = derive_type(target);
  ReductionMap r1 = build_claim1_witness(target, d.type, d.trace);
  if (normalization) r1 = compose(r1, *normalization);
  Json normalized = nullptr;
  if (normalization) normalized = Json{{"f", to_json(target)}, {"reduction", to_json(*normalization)}};
  emit(Json{{"normalized", std::move(normalized)},
            {"type", to_json(d.type)},
            {"trace", to_json(d.trace)},
            {"f_alpha", to_json(build_f_alpha(d.type).f)},
            {"witness", to_json(r1)}},
       std::nullopt, r.format, out);
  return kExitOk;
}

int cmd_classify(const CommandRequest& r, std::ostream& out) {
  const GapFunction f = load_gap(r.f_path, "--f");
  require_n_gap(f, "--f");
  if (f.n() > kMaxN) throw UsageError("n of the input exceeds " + std::to_string(kMaxN));
  const Catalog catalog = catalog_for(r, f.n());
  const auto below = minimal_types_below(f, catalog);
  std::optional<std::size_t> match;
  for (std::size_t t : below) {
    if (gap_leq(f, catalog.entries[t].representative.f)) {
      match = t;
      break;
    }
  }
  Json types_below = Json::array();
  for (std::size_t t : below) types_below.push_back(Json{{"index", t}, {"type", to_json(catalog.entries[t].type)}});
  emit(Json{{"minimal", match.has_value()},
            {"catalog_index", match ? Json(*match) : Json(nullptr)},
            {"orbit_id", match ? Json(catalog.entries[*match].orbit_id) : Json(nullptr)},
            {"type", match ? to_json(catalog.entries[*match].type) : Json(nullptr)},
            {"types_below", std::move(types_below)}},
       std::nullopt, r.format, out);
  return kExitOk;
}

int cmd_clover(const CommandRequest& r, std::ostream& out) {
  const int n = require_n(r);
  if (n < 3) throw GapError(ErrorCode::TooSmallN, "clover witnesses need n >= 3");
  const Catalog catalog = catalog_for(r, n);
  Json results = Json::array();
  Table table{{"index", "X", "Y", "subtree", "colors", "consistent"}, {}};
  bool all = true;
  for (std::size_t t = 0; t < catalog.entries.size(); ++t) {
    const auto w = clover_witness(catalog.entries[t].type);
    const auto colors = subtree_comb_colors(catalog.entries[t].representative.f, w.subtree, r.depth);
    const bool ok = colors == w.X && w.X.size() >= 2;
    all = all && ok;
    results.push_back(Json{{"index", t},
                           {"X", w.X},
                           {"Y", w.Y},
                           {"subtree", to_json(w.subtree)},
                           {"colors", colors},
                           {"consistent", ok}});
    table.rows.push_back({std::to_string(t), set_text(w.X), set_text(w.Y), cell_text(to_json(w.subtree)), set_text(colors),
                          ok ? "yes" : "no"});
  }
  emit(Json{{"n", n}, {"depth", r.depth}, {"all_consistent", all}, {"results", std::move(results)}}, table, r.format,
       out);
  return all ? kExitOk : kExitVerificationFailed;
}

int cmd_verify(const CommandRequest& r, std::ostream& out) {
  const int n = require_n(r);
  const SearchEngine engine = parse_engine(r.engine);
  const Catalog catalog = catalog_for(r, n);
  const IncomparabilityReport pairs = verify_pairwise_incomparable(catalog, engine);

  std::vector<std::size_t> property_failures;
  std::vector<std::size_t> derive_failures;
  for (std::size_t t = 0; t < catalog.entries.size(); ++t) {
    const auto& e = catalog.entries[t];
    if (!check_f_alpha_properties(e.type, e.representative.f).all()) property_failures.push_back(t);
    try {
      const Derivation d = derive_type(e.representative.f);
      const ReductionMap w = build_claim1_witness(e.representative.f, d.type, d.trace);
      if (d.type != e.type || !is_witness(w, e.representative.f, e.representative.f)) derive_failures.push_back(t);
    } catch (const GapError&) {
      derive_failures.push_back(t);
    }
  }
  const std::size_t count = catalog.entries.size();
  const bool ok = pairs.ok() && property_failures.empty() && derive_failures.empty();
  Json j{{"n", n},
         {"ok", ok},
         {"pairwise", to_json(pairs)},
         {"properties", Json{{"checked", count}, {"passed", count - property_failures.size()}, {"failures", property_failures}}},
         {"derivation", Json{{"checked", count}, {"passed", count - derive_failures.size()}, {"failures", derive_failures}}},
         {"summary", std::to_string(pairs.pairs_passed) + "/" + std::to_string(pairs.ordered_pairs) + " pairs passed"}};
  Table table{{"suite", "passed", "total"}, {}};
  table.rows.push_back({"pairwise", std::to_string(pairs.pairs_passed), std::to_string(pairs.ordered_pairs)});
  table.rows.push_back({"self", std::to_string(pairs.self_passed), std::to_string(pairs.self_pairs)});
  table.rows.push_back({"P1-P4", std::to_string(count - property_failures.size()), std::to_string(count)});
  table.rows.push_back({"derive", std::to_string(count - derive_failures.size()), std::to_string(count)});
  emit(j, table, r.format, out);
  return ok ? kExitOk : kExitVerificationFailed;
}

std::vector<TreeNode> load_nodes(const CommandRequest& r) {
  if (!r.nodes_path) throw UsageError("missing --nodes");
  const Json j = read_json_file(*r.nodes_path);
  const Json& list = j.is_object() ? j.at("nodes") : j;
  if (!list.is_array()) throw GapError(ErrorCode::InvalidInput, "--nodes must hold an array of nodes");
  std::vector<TreeNode> nodes;
  for (const auto& s : list) nodes.push_back(node_from_json(s));
  return nodes;
}

int cmd_comb(const CommandRequest& r, std::ostream& out) {
  if (r.comb_action == "make") {
    const FiniteComb comb = make_comb(r.m, r.u, r.v, r.length, r.seed);
    Json j = to_json(comb);
    Json spine = Json::array();
    for (const auto& s : comb.spine) spine.push_back(to_json(s));
    j["spine"] = std::move(spine);
    emit(j, std::nullopt, r.format, out);
    return kExitOk;
  }
  if (r.comb_action == "classify") {
    const auto kind = comb_type_of(load_nodes(r));
    emit(Json{{"kind", kind ? Json::array({kind->first, kind->second}) : Json(nullptr)}}, std::nullopt, r.format, out);
    return kExitOk;
  }
  if (r.comb_action == "extract") {
    const Extraction ex = extract_comb(load_nodes(r));
    Json nodes = Json::array();
    for (const auto& s : ex.nodes) nodes.push_back(to_json(s));
    emit(Json{{"kind", ex.comb ? Json::array({ex.comb->kind.first, ex.comb->kind.second}) : Json(nullptr)},
              {"nodes", std::move(nodes)},
              {"no_two_comb", ex.no_two_comb()},
              {"greedy_length", ex.greedy_length},
              {"exact_length", ex.exact_length}},
         std::nullopt, r.format, out);
    return kExitOk;
  }
  throw UsageError("comb needs one of: make, classify, extract");
}

}  // namespace

int run(const CommandRequest& request, std::ostream& out, std::ostream& err) {
  try {
    if (request.format != "json" && request.format != "table" && request.format != "csv") {
      throw UsageError("--format must be json, table or csv");
    }
    if (request.depth < 0 || request.depth > 12) throw UsageError("--depth must be between 0 and 12");
    if (request.engine != "pruned" && request.engine != "brute") throw UsageError("--engine must be pruned or brute");
    const std::string& s = request.subcommand;
    if (s == "types") return cmd_types(request, out);
    if (s == "basis") return cmd_basis(request, out);
    if (s == "orbits") return cmd_orbits(request, out);
    if (s == "leq") return cmd_leq(request, out);
    if (s == "equiv") return cmd_equiv(request, out);
    if (s == "invariants") return cmd_invariants(request, out);
    if (s == "derive") return cmd_derive(request, out);
    if (s == "classify") return cmd_classify(request, out);
    if (s == "clover") return cmd_clover(request, out);
    if (s == "verify") return cmd_verify(request, out);
    if (s == "comb") return cmd_comb(request, out);
    throw UsageError("unknown subcommand '" + s + "'");
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const GapError& e) {
    err << "error [" << to_string(e.code()) << "]: " << e.what() << '\n';
    return kExitInvalidInput;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitInvalidInput;
  }
}

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Finite combinatorics of minimal analytic strong n-gaps"};
  app.require_subcommand(1, 1);
  CommandRequest req;

  auto common = [&](CLI::App* sub) {
    sub->add_option("--format", req.format, "json, table or csv")->check(CLI::IsMember({"json", "table", "csv"}));
    sub->add_option("--cache-dir", req.cache_dir, "catalog cache directory (default $GAPBASIS_CACHE)");
  };
  auto with_n = [&](CLI::App* sub) { sub->add_option("--n", req.n, "number of colors")->required(); };
  auto with_engine = [&](CLI::App* sub) {
    sub->add_option("--engine", req.engine, "pruned or brute")->check(CLI::IsMember({"pruned", "brute"}));
  };

  auto* types = app.add_subcommand("types", "list all n-types");
  with_n(types);
  types->add_flag("--up-to-perm", req.up_to_perm, "one type per orbit");
  common(types);

  auto* basis = app.add_subcommand("basis", "catalog of minimal gaps with representatives");
  with_n(basis);
  basis->add_flag("--up-to-perm", req.up_to_perm, "one entry per orbit");
  common(basis);

  auto* orbits = app.add_subcommand("orbits", "orbits of n-types under color permutations");
  with_n(orbits);
  common(orbits);

  auto* leq = app.add_subcommand("leq", "decide f <= g");
  leq->add_option("--f", req.f_path, "gap function JSON")->required();
  leq->add_option("--g", req.g_path, "gap function JSON")->required();
  with_engine(leq);
  common(leq);

  auto* equiv = app.add_subcommand("equiv", "decide f <= g and g <= f");
  equiv->add_option("--f", req.f_path, "gap function JSON")->required();
  equiv->add_option("--g", req.g_path, "gap function JSON")->required();
  with_engine(equiv);
  common(equiv);

  auto* inv = app.add_subcommand("invariants", "pbranch, attachment profile, Condition 1");
  inv->add_option("--f", req.f_path, "gap function JSON")->required();
  common(inv);

  auto* derive = app.add_subcommand("derive", "type below a gap, with trace and witness");
  derive->add_option("--f", req.f_path, "gap function JSON")->required();
  common(derive);

  auto* classify = app.add_subcommand("classify", "minimal types below f and whether f is minimal");
  classify->add_option("--f", req.f_path, "gap function JSON")->required();
  common(classify);

  auto* clover = app.add_subcommand("clover", "clover witnesses for every n-type");
  with_n(clover);
  clover->add_option("--depth", req.depth, "subtree depth")->capture_default_str();
  common(clover);

  auto* verify = app.add_subcommand("verify", "incomparability, f^alpha properties and self-derivation");
  with_n(verify);
  with_engine(verify);
  common(verify);

  auto* comb = app.add_subcommand("comb", "finite combs: make, classify, extract");
  comb->add_option("action", req.comb_action, "make | classify | extract")
      ->required()
      ->check(CLI::IsMember({"make", "classify", "extract"}));
  comb->add_option("--m", req.m, "alphabet size")->capture_default_str();
  comb->add_option("--u", req.u, "spine direction")->capture_default_str();
  comb->add_option("--v", req.v, "tooth direction")->capture_default_str();
  comb->add_option("--length", req.length, "number of nodes")->capture_default_str();
  comb->add_option("--seed", req.seed, "0 gives the shortest pattern")->capture_default_str();
  comb->add_option("--nodes", req.nodes_path, "JSON array of nodes");
  common(comb);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "usage error: " << e.what() << '\n';
    return kExitUsage;
  }
  for (auto* sub : app.get_subcommands()) req.subcommand = sub->get_name();
  return run(req, out, err);
}

}  // namespace gapbasis
