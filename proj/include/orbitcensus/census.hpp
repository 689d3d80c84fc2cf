#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "orbitcensus/box.hpp"
#include "orbitcensus/homology.hpp"
#include "orbitcensus/model.hpp"

namespace orbitcensus {

/// A prime periodic orbit: a primitive closed edge walk in its lexicographically
/// minimal rotation (a Lyndon word over edge indices).
struct PrimeOrbit {
  std::vector<std::size_t> edge_cycle;
  double length = 0.0;
  HomologyClass homology;
};

struct OrbitEntry {
  double length = 0.0;
  HomologyClass homology;
  std::uint64_t count = 0;
};

/// Multiset of prime orbits up to a cutoff, merged by exact (length, homology).
/// Entries are sorted by length, ties broken lexicographically by homology.
class OrbitTable {
 public:
  OrbitTable(std::size_t k, double t_max, std::vector<OrbitEntry> entries, std::string source = {});

  std::size_t k() const noexcept { return k_; }
  double t_max() const noexcept { return t_max_; }
  const std::vector<OrbitEntry>& entries() const noexcept { return entries_; }
  /// Model hash (or file hash for ingested tables); empty if unknown.
  const std::string& source() const noexcept { return source_; }

  /// Number of leading entries with length <= t. Throws OutOfRangeError for t > t_max.
  std::size_t prefix_size(double t) const;
  /// Total count of the first n entries.
  std::uint64_t prefix_count(std::size_t n) const { return prefix_counts_[n]; }

  friend bool operator==(const OrbitTable& a, const OrbitTable& b);

 private:
  std::size_t k_;
  double t_max_;
  std::vector<OrbitEntry> entries_;
  std::vector<std::uint64_t> prefix_counts_;
  std::string source_;
};

bool operator==(const OrbitEntry& a, const OrbitEntry& b);

struct CensusOptions {
  unsigned workers = 1;
  // Maximum number of prime orbits; exceeding it raises ResourceError (--budget).
  std::uint64_t budget = 50'000'000;
};

/// Calls visit for every prime orbit with length <= t_max, grouped by the
/// first (minimal) edge index and in depth-first order within a group.
void for_each_prime_orbit(const MarkovFlowModel& model, double t_max,
                          const std::function<void(const PrimeOrbit&)>& visit);

OrbitTable enumerate_prime_orbits(const MarkovFlowModel& model, double t_max,
                                  const CensusOptions& options = {});

/// Sorts and merges entries with bit-identical length and equal homology.
std::vector<OrbitEntry> merge_entries(std::vector<OrbitEntry> entries);

// Counting functions. All throw OutOfRangeError when T exceeds the table cutoff
// and DomainError on dimension mismatches.

/// pi(T): prime orbits with length <= T.
std::uint64_t count_orbits(const OrbitTable& table, double T);

/// pi(T, alpha).
std::uint64_t count_orbits_in_class(const OrbitTable& table, double T, const HomologyClass& alpha);

/// pi(T, alpha + floor(phi0 T)).
std::uint64_t shifted_count(const OrbitTable& table, double T, const HomologyClass& alpha,
                            std::span<const double> phi0);

/// alpha -> pi(T, alpha + floor(phi0 T)) over every realized alpha.
std::map<HomologyClass, std::uint64_t> shifted_class_counts(const OrbitTable& table, double T,
                                                            std::span<const double> phi0);

/// Ordered pairs (g, g') with both lengths <= T and [g] - [g'] = beta, by
/// direct enumeration of entry pairs. The diagonal g = g' counts for beta = 0.
std::uint64_t pair_count_direct(const OrbitTable& table, double T, const HomologyClass& beta);

/// Same quantity through sum_alpha pi~_{alpha+beta}(T) pi~_alpha(T).
std::uint64_t pair_count_convolution(const OrbitTable& table, double T, const HomologyClass& beta,
                                     std::span<const double> phi0);

/// Fraction of orbits with length <= T whose ([g] - floor(phi0 T)) / sqrt(T) lies in box.
/// Throws UndefinedStatisticError when pi(T) = 0.
double empirical_clt(const OrbitTable& table, double T, std::span<const double> phi0, const Box& box);

/// max_alpha pi~_alpha(T) T^{1+k/2} e^{-hT}; 0 for an empty census.
double sup_normalized_count(const OrbitTable& table, double T, std::span<const double> phi0, double h);

}  // namespace orbitcensus
