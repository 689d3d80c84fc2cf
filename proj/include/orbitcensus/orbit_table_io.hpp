#pragma once

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>

#include "orbitcensus/census.hpp"

namespace orbitcensus {

/// Orbit table CSV:
///
///   # tmax=<cutoff>
///   length,weight_1,...,weight_k,count
///   1,1,1
///
/// Lengths carry 17 significant digits so the text round-trips exactly.
/// The comment line is optional on input.
void write_orbit_table(std::ostream& out, const OrbitTable& table);
std::string orbit_table_csv(const OrbitTable& table);

/// Parses the CSV above. The cutoff is tmax_override if given, otherwise the
/// "# tmax=" comment, otherwise +infinity (the caller vouches for completeness).
/// Rows are merged by (length, homology). Errors carry the offending line number.
OrbitTable read_orbit_table(std::istream& in, std::optional<double> tmax_override = std::nullopt);
OrbitTable ingest_orbit_table(const std::filesystem::path& path, std::optional<double> tmax_override = std::nullopt);

/// Writes via a temporary file in the same directory followed by a rename.
void write_file_atomically(const std::filesystem::path& path, const std::string& contents);

}  // namespace orbitcensus
