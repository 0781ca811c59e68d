#pragma once

#include <string>

#include <nlohmann/json.hpp>

#include "fusionkit/classifier.hpp"
#include "fusionkit/doubles.hpp"
#include "fusionkit/fusion_ring.hpp"
#include "fusionkit/grading.hpp"
#include "fusionkit/modular_data.hpp"
#include "fusionkit/ring_search.hpp"

namespace fusionkit {

using json = nlohmann::json;

/// Parses a JSON file; syntax errors become InputError with the byte offset.
json read_json_file(const std::string& path);

FusionRing ring_from_json(const json& j);
json ring_to_json(const FusionRing& ring);
FusionRing load_ring(const std::string& path);

PointedCochain cochain_from_json(const json& j);
PointedCochain load_cochain(const std::string& path);

/// Accepts the float form ({"re", "im"} objects) and the exact form with
/// "root_order" n, where each entry is a list of [coefficient, exponent]
/// meaning sum coefficient * exp(2 pi i exponent / n). Coefficients may be
/// numbers or "a/b" strings.
ModularData modular_from_json(const json& j);
json modular_to_json(const ModularData& md);
ModularData load_modular(const std::string& path);

/// {"order": n, "table": [[...]]} or {"permutation_generators": [[...]]}.
FiniteGroup group_from_json(const json& j);
FiniteGroup load_group(const std::string& path);

/// Fusion-ring layout plus "dims", optional "grading" ({"assignment",
/// "table"} or a plain assignment), "pointed_action", "commutative", "free",
/// "bounds" (a number or [[i, j, k, max]...]) and "relabel_group". A dual
/// entry of null or -1 is unknown.
SearchSpec search_spec_from_json(const json& j);
json search_spec_to_json(const SearchSpec& spec);
SearchSpec load_search_spec(const std::string& path);

/// {"profile", "cases": [{"pt_dim", "verdict", "rule", "witness", ...}], "overall", "survivors"}
json classification_to_json(const Classification& c);

/// 64-bit FNV-1a of a byte string, as 16 hex digits.
std::string fnv1a_hex(const std::string& bytes);

} // namespace fusionkit
