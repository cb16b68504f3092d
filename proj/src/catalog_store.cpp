#include "gapbasis/catalog_store.hpp"

#include <cstdlib>
#include <fstream>
#include <sstream>

#include "gapbasis/json_io.hpp"

namespace gapbasis {

namespace fs = std::filesystem;

fs::path catalog_path(const fs::path& dir, int n) { return dir / ("catalog_n" + std::to_string(n) + ".json"); }

std::optional<Catalog> load_catalog(const fs::path& dir, int n) {
  const fs::path path = catalog_path(dir, n);
  std::error_code ec;
  if (!fs::exists(path, ec)) return std::nullopt;
  std::ifstream in(path, std::ios::binary);
  if (!in) throw GapError(ErrorCode::CorruptCache, "cannot read " + path.string());
  std::ostringstream text;
  text << in.rdbuf();
  Json doc = Json::parse(text.str(), nullptr, false);
  if (doc.is_discarded() || !doc.is_object()) throw GapError(ErrorCode::CorruptCache, path.string() + " is not JSON");
  const auto version = doc.find("version");
  if (version == doc.end() || !version->is_string() || version->get<std::string>() != kCatalogVersion) {
    return std::nullopt;
  }
  const auto body = doc.find("catalog");
  if (body == doc.end()) throw GapError(ErrorCode::CorruptCache, path.string() + " has no catalog");
  Catalog catalog = catalog_from_json(*body);
  if (catalog.n != n) throw GapError(ErrorCode::CorruptCache, path.string() + " holds a catalog for another n");
  return catalog;
}

fs::path save_catalog(const fs::path& dir, const Catalog& catalog) {
  fs::create_directories(dir);
  const fs::path path = catalog_path(dir, catalog.n);
  const fs::path tmp = path.string() + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw GapError(ErrorCode::InvalidInput, "cannot write " + tmp.string());
    const Json doc{{"version", kCatalogVersion}, {"catalog", to_json(catalog)}};
    out << doc.dump() << '\n';
    if (!out) throw GapError(ErrorCode::InvalidInput, "short write to " + tmp.string());
  }
  fs::rename(tmp, path);
  return path;
}

CatalogLoad load_or_build_catalog(int n, const std::optional<fs::path>& dir) {
  CatalogLoad result;
  if (!dir) {
    result.catalog = minimal_basis(n);
    return result;
  }
  std::error_code ec;
  const bool existed = fs::exists(catalog_path(*dir, n), ec);
  try {
    if (auto cached = load_catalog(*dir, n)) {
      result.catalog = std::move(*cached);
      result.source = CatalogSource::Cache;
      return result;
    }
    result.source = existed ? CatalogSource::RecomputedStale : CatalogSource::Computed;
  } catch (const GapError& e) {
    if (e.code() != ErrorCode::CorruptCache) throw;
    result.source = CatalogSource::RecomputedCorrupt;
  }
  result.catalog = minimal_basis(n);
  try {
    save_catalog(*dir, result.catalog);
  } catch (const std::exception&) {
    // read-only cache directory: the computed catalog is still valid
  }
  return result;
}

std::optional<fs::path> cache_dir_from_env() {
  const char* value = std::getenv("GAPBASIS_CACHE");
  if (value == nullptr || *value == '\0') return std::nullopt;
  return fs::path(value);
}

}  // namespace gapbasis
