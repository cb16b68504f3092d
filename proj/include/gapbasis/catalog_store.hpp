#pragma once

// On-disk catalog cache: one file catalog_n<N>.json per n, stamped with the
// code version. Stale or unreadable files are recomputed and rewritten.

#include <filesystem>
#include <optional>
#include <string>

#include "gapbasis/classify.hpp"

namespace gapbasis {

/// Bump when the catalog contents or encoding change.
inline constexpr const char* kCatalogVersion = "gapbasis-catalog-1";

std::filesystem::path catalog_path(const std::filesystem::path& dir, int n);

/// nullopt when the file is missing or carries another version stamp.
/// Throws CorruptCache when the file exists but cannot be trusted.
std::optional<Catalog> load_catalog(const std::filesystem::path& dir, int n);

/// Writes atomically (temp file then rename). Returns the final path.
std::filesystem::path save_catalog(const std::filesystem::path& dir, const Catalog& catalog);

enum class CatalogSource { Cache, Computed, RecomputedStale, RecomputedCorrupt };

struct CatalogLoad {
  Catalog catalog;
  CatalogSource source = CatalogSource::Computed;
};

/// Uses the cache in `dir` when given, otherwise computes without touching
/// the disk. A failed write leaves the computed catalog usable.
CatalogLoad load_or_build_catalog(int n, const std::optional<std::filesystem::path>& dir);

/// $GAPBASIS_CACHE if set and nonempty.
std::optional<std::filesystem::path> cache_dir_from_env();

}  // namespace gapbasis
