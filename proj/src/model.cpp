#include "orbitcensus/model.hpp"

#include <cmath>
#include <queue>
#include <unordered_set>

#include "orbitcensus/errors.hpp"

namespace orbitcensus {

MarkovFlowModel::MarkovFlowModel(std::size_t k, std::vector<std::string> vertices, std::vector<Edge> edges)
    : k_(k), vertices_(std::move(vertices)), edges_(std::move(edges)) {
  if (k_ == 0) throw StructuralError("model: k must be at least 1");
  if (vertices_.empty()) throw StructuralError("model: vertex set is empty");
  std::unordered_set<std::string> names;
  for (const auto& v : vertices_) {
    if (!names.insert(v).second) throw StructuralError("model: duplicate vertex '" + v + "'");
  }
  if (edges_.size() < 2) throw StructuralError("model: at least two edges are required");
  for (std::size_t i = 0; i < edges_.size(); ++i) {
    const Edge& e = edges_[i];
    const std::string where = "model: edge " + std::to_string(i);
    if (e.from >= vertices_.size() || e.to >= vertices_.size()) {
      throw StructuralError(where + " references an unknown vertex");
    }
    if (e.weight.dimension() != k_) {
      throw StructuralError(where + " weight has dimension " + std::to_string(e.weight.dimension()) +
                            ", expected " + std::to_string(k_));
    }
    if (!std::isfinite(e.length) || e.length <= 0.0) {
      throw DomainError(where + " length must be finite and strictly positive");
    }
  }
}

namespace {

std::vector<bool> reachable(const MarkovFlowModel& model, bool reversed) {
  std::vector<std::vector<std::size_t>> adj(model.vertex_count());
  for (const auto& e : model.edges()) {
    if (reversed) {
      adj[e.to].push_back(e.from);
    } else {
      adj[e.from].push_back(e.to);
    }
  }
  std::vector<bool> seen(model.vertex_count(), false);
  std::vector<std::size_t> stack{0};
  seen[0] = true;
  while (!stack.empty()) {
    const std::size_t v = stack.back();
    stack.pop_back();
    for (std::size_t w : adj[v]) {
      if (!seen[w]) {
        seen[w] = true;
        stack.push_back(w);
      }
    }
  }
  return seen;
}

// Generators of the additive group spanned by closed-walk lengths: with a
// spanning-tree potential d, every non-tree edge u->v contributes
// l + d(u) - d(v). For a bouquet these are just the loop lengths.
std::vector<double> cycle_length_generators(const MarkovFlowModel& model) {
  const std::size_t n = model.vertex_count();
  std::vector<std::vector<std::pair<std::size_t, std::size_t>>> incident(n);
  for (std::size_t i = 0; i < model.edge_count(); ++i) {
    const Edge& e = model.edge(i);
    incident[e.from].emplace_back(i, e.to);
    incident[e.to].emplace_back(i, e.from);
  }
  std::vector<double> potential(n, 0.0);
  std::vector<bool> seen(n, false);
  std::vector<bool> tree_edge(model.edge_count(), false);
  std::queue<std::size_t> queue;
  queue.push(0);
  seen[0] = true;
  while (!queue.empty()) {
    const std::size_t v = queue.front();
    queue.pop();
    for (auto [i, w] : incident[v]) {
      if (seen[w]) continue;
      const Edge& e = model.edge(i);
      // walking e forwards adds its length, backwards subtracts it
      potential[w] = potential[v] + (e.from == v ? e.length : -e.length);
      seen[w] = true;
      tree_edge[i] = true;
      queue.push(w);
    }
  }
  std::vector<double> generators;
  for (std::size_t i = 0; i < model.edge_count(); ++i) {
    if (tree_edge[i]) continue;
    const Edge& e = model.edge(i);
    const double g = e.length + potential[e.from] - potential[e.to];
    if (std::abs(g) > 1e-12 * e.length) generators.push_back(std::abs(g));
  }
  return generators;
}

}  // namespace

bool is_strongly_connected(const MarkovFlowModel& model) {
  for (bool reversed : {false, true}) {
    const auto seen = reachable(model, reversed);
    for (bool s : seen) {
      if (!s) return false;
    }
  }
  return true;
}

void require_strongly_connected(const MarkovFlowModel& model) {
  if (!is_strongly_connected(model)) {
    throw ModelError("model graph is not strongly connected (flow is not transitive)");
  }
}

bool looks_rational(double x, double rel_tol, long max_denominator) {
  if (!std::isfinite(x)) return false;
  if (x == 0.0) return true;
  const double target = std::abs(x);
  // Continued-fraction convergents give the best approximations.
  double rest = target;
  double p_prev = 1.0, q_prev = 0.0;
  double p = std::floor(rest), q = 1.0;
  for (int iter = 0; iter < 64; ++iter) {
    if (q > static_cast<double>(max_denominator)) return false;
    if (std::abs(target - p / q) <= rel_tol * target) return true;
    const double frac = rest - std::floor(rest);
    if (frac == 0.0) return true;
    rest = 1.0 / frac;
    const double a = std::floor(rest);
    const double p_next = a * p + p_prev;
    const double q_next = a * q + q_prev;
    p_prev = p;
    q_prev = q;
    p = p_next;
    q = q_next;
  }
  return false;
}

ValidationReport validate_model(const MarkovFlowModel& model) {
  ValidationReport report;
  report.k = model.k();
  report.edge_count = model.edge_count();
  report.strongly_connected = is_strongly_connected(model);

  const auto generators = cycle_length_generators(model);
  bool all_rational = true;
  for (std::size_t i = 1; i < generators.size() && all_rational; ++i) {
    all_rational = looks_rational(generators[i] / generators[0]);
  }
  report.lattice_warning = all_rational;
  return report;
}

MarkovFlowModel bouquet_model(std::size_t k, const std::vector<std::pair<double, HomologyClass>>& loops) {
  std::vector<Edge> edges;
  for (const auto& [length, weight] : loops) edges.push_back(Edge{0, 0, length, weight});
  return MarkovFlowModel(k, {"v"}, std::move(edges));
}

}  // namespace orbitcensus
