#pragma once

#include <filesystem>
#include <string>
#include <string_view>

#include "orbitcensus/model.hpp"

namespace orbitcensus {

/// Parses the JSON model format:
///
///   { "k": 1,
///     "vertices": ["v"],
///     "edges": [ {"from": "v", "to": "v", "length": 1.0, "weight": [1]}, ... ] }
///
/// Unknown keys are rejected. Malformed documents raise StructuralError;
/// non-positive lengths raise DomainError.
MarkovFlowModel parse_model(std::string_view text);
MarkovFlowModel load_model(const std::filesystem::path& path);

/// Canonical JSON rendering (lengths with 17 significant digits).
std::string serialize_model(const MarkovFlowModel& model);

/// 16 hex digit FNV-1a hash of serialize_model().
std::string model_hash(const MarkovFlowModel& model);

std::string fnv1a_hex(std::string_view bytes);

}  // namespace orbitcensus
