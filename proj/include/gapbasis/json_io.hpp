#pragma once

// JSON encodings of the library objects. Cells are integers or "inf".
// Readers throw GapError(InvalidInput) on malformed documents.

#include <optional>

#include <json.hpp>

#include "gapbasis/classify.hpp"
#include "gapbasis/core.hpp"
#include "gapbasis/invariants.hpp"
#include "gapbasis/reduction.hpp"
#include "gapbasis/treelab.hpp"
#include "gapbasis/types.hpp"

namespace gapbasis {

using Json = nlohmann::ordered_json;

Json to_json(Color c);
Color color_from_json(const Json& j);

Json to_json(const TreeNode& s);
TreeNode node_from_json(const Json& j);

Json to_json(const GapFunction& f);
GapFunction gap_function_from_json(const Json& j);

Json to_json(const ReductionMap& r);
/// m1 is not part of the encoding; it defaults to the largest letter + 1.
ReductionMap reduction_from_json(const Json& j, std::optional<int> m1 = std::nullopt);

Json to_json(const Condition1Report& report);

Json to_json(const NType& alpha);
NType ntype_from_json(const Json& j);

Json to_json(const JNotation& j);

Json to_json(const FiniteComb& comb);
FiniteComb comb_from_json(const Json& j);

Json to_json(const SubtreeDescriptor& d);

Json to_json(const DeriveTrace& trace);

Json to_json(const IncomparabilityReport& report);

Json to_json(const CatalogEntry& entry);
Json to_json(const Catalog& catalog);
/// Rebuilds representatives from the stored types and checks them against
/// the stored tables; throws CorruptCache on any disagreement.
Catalog catalog_from_json(const Json& j);

}  // namespace gapbasis
