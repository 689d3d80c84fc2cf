#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "orbitcensus/homology.hpp"

namespace orbitcensus {

struct Edge {
  std::size_t from = 0;
  std::size_t to = 0;
  double length = 0.0;
  HomologyClass weight;
};

/// Directed graph with positive edge lengths and integer homology weights: the
/// symbolic suspension model of a flow. Orbit length and homology are edge sums.
///
/// Construction checks the structural invariants (vertex references resolve,
/// weights have dimension k, at least two edges) and that every length is
/// finite and strictly positive. Strong connectivity is a separate check, see
/// validate_model().
class MarkovFlowModel {
 public:
  MarkovFlowModel(std::size_t k, std::vector<std::string> vertices, std::vector<Edge> edges);

  std::size_t k() const noexcept { return k_; }
  std::size_t vertex_count() const noexcept { return vertices_.size(); }
  std::size_t edge_count() const noexcept { return edges_.size(); }
  const std::vector<std::string>& vertices() const noexcept { return vertices_; }
  const std::vector<Edge>& edges() const noexcept { return edges_; }
  const Edge& edge(std::size_t i) const { return edges_.at(i); }

 private:
  std::size_t k_;
  std::vector<std::string> vertices_;
  std::vector<Edge> edges_;
};

struct ValidationReport {
  bool strongly_connected = false;
  // Set when all cycle-length generators look rationally related (possible
  // failure of weak mixing). A heuristic, never an error.
  bool lattice_warning = false;
  std::size_t k = 0;
  std::size_t edge_count = 0;
};

ValidationReport validate_model(const MarkovFlowModel& model);

bool is_strongly_connected(const MarkovFlowModel& model);

/// Throws ModelError unless the model is strongly connected.
void require_strongly_connected(const MarkovFlowModel& model);

/// True when x is within rel_tol (relative) of p/q for some q <= max_denominator.
bool looks_rational(double x, double rel_tol = 1e-9, long max_denominator = 1000);

/// Single-vertex model with one loop per (length, weight) pair.
MarkovFlowModel bouquet_model(std::size_t k, const std::vector<std::pair<double, HomologyClass>>& loops);

}  // namespace orbitcensus
