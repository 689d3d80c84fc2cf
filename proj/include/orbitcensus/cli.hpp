#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "orbitcensus/box.hpp"
#include "orbitcensus/homology.hpp"

namespace orbitcensus {

enum class Subcommand { Validate, Census, Thermo, Report, Clt };

struct RunConfig {
  Subcommand subcommand = Subcommand::Validate;
  std::filesystem::path model;
  std::optional<double> t_max;
  std::vector<double> t_grid;
  std::vector<HomologyClass> betas;
  std::vector<HomologyClass> alphas;
  std::vector<Box> boxes;
  std::optional<double> delta;
  unsigned workers = 1;
  std::filesystem::path out;  // empty: write to stdout
  std::uint64_t seed = 20240601;
  std::uint64_t budget = 50'000'000;
  std::filesystem::path table;    // ingest an orbit table instead of enumerating
  std::filesystem::path summary;  // thermo record file, required with --table
};

/// Exit statuses.
inline constexpr int kExitOk = 0;
inline constexpr int kExitFailure = 1;  // model, domain or ingestion errors
inline constexpr int kExitUsage = 2;
inline constexpr int kExitResource = 3;
inline constexpr int kExitNumeric = 4;

/// "start:stop:step", inclusive of stop up to rounding; or a single value.
std::vector<double> parse_t_grid(const std::string& spec);

/// Parses argv into a config. Throws UsageError; --help prints and returns nullopt.
std::optional<RunConfig> parse_command_line(int argc, const char* const* argv, std::ostream& out);

/// Runs one subcommand. Errors are caught and reported on err as a single line
///   error: <kind>: <message>
/// and mapped to the exit statuses above.
int run(const RunConfig& config, std::ostream& out, std::ostream& err);

/// parse_command_line + run.
int main_entry(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace orbitcensus
