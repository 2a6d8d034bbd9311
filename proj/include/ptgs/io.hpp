#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "ptgs/classify.hpp"
#include "ptgs/constructions.hpp"
#include "ptgs/group_ring.hpp"
#include "ptgs/scheme.hpp"
#include "ptgs/search.hpp"

namespace ptgs::io {

using nlohmann::json;

/// {p, m, modulus: [c0, ..., cm]}
json field_to_json(const Field& F);
FieldPtr field_from_json(const json& j);

/// {field: {p, e, l, modulus}, D, X?, provenance, verified_by, label}
json scheme_to_json(const SchemeRecord& s);
/// Throws PreconditionError on malformed input, including D or X entries out
/// of range.
SchemeRecord scheme_from_json(const json& j);

struct DifferenceSetRecord {
  std::int64_t v = 0;
  Subset set;
  std::vector<std::int64_t> params;  // (v, k, lambda) or (m, n, k, lambda)
  std::string kind;                  // singer | relative_singer | adp | dual
};
json ds_to_json(const DifferenceSetRecord& d);
DifferenceSetRecord ds_from_json(const json& j);

/// {group: {kind, order, field?}, coeffs}
json group_ring_to_json(const GroupRingElement& a);
GroupRingElement group_ring_from_json(const json& j);

/// Difference-set fields of A plus {dual, origin, name}.
json adp_to_json(const AdpRecord& a);

/// {v, entries}
json weighing_to_json(std::int64_t v, const std::vector<std::int64_t>& entries);

json search_result_to_json(const search::Result& r);
/// Valid X sets with their tower.
struct SearchOutput {
  Tower tower;
  std::vector<Subset> found;
};
SearchOutput search_result_from_json(const json& j);

json fingerprint_to_json(const Fingerprint& f);

std::string read_file(const std::filesystem::path& p);
/// Write to a temporary sibling, then rename over p.
void write_file_atomic(const std::filesystem::path& p, const std::string& content);
json read_json(const std::filesystem::path& p);

}  // namespace ptgs::io
