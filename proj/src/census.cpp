#include "orbitcensus/census.hpp"

#include <algorithm>
#include <atomic>
#include <bit>
#include <cmath>
#include <exception>
#include <limits>
#include <mutex>
#include <thread>
#include <unordered_map>

#include "orbitcensus/errors.hpp"
#include "orbitcensus/model_io.hpp"

namespace orbitcensus {

// ---------------------------------------------------------------------------
// OrbitTable

bool operator==(const OrbitEntry& a, const OrbitEntry& b) {
  return std::bit_cast<std::uint64_t>(a.length) == std::bit_cast<std::uint64_t>(b.length) &&
         a.homology == b.homology && a.count == b.count;
}

OrbitTable::OrbitTable(std::size_t k, double t_max, std::vector<OrbitEntry> entries, std::string source)
    : k_(k), t_max_(t_max), entries_(std::move(entries)), source_(std::move(source)) {
  if (k_ == 0) throw StructuralError("orbit table: k must be at least 1");
  if (!(t_max_ > 0.0)) throw DomainError("orbit table: T_max must be positive");
  prefix_counts_.reserve(entries_.size() + 1);
  prefix_counts_.push_back(0);
  for (std::size_t i = 0; i < entries_.size(); ++i) {
    const OrbitEntry& e = entries_[i];
    if (e.homology.dimension() != k_) throw StructuralError("orbit table: entry homology has wrong dimension");
    if (e.count == 0) throw StructuralError("orbit table: entry counts must be positive");
    if (!(e.length > 0.0) || e.length > t_max_) throw StructuralError("orbit table: entry length outside (0, T_max]");
    if (i > 0) {
      const OrbitEntry& prev = entries_[i - 1];
      if (prev.length > e.length || (prev.length == e.length && !(prev.homology < e.homology))) {
        throw StructuralError("orbit table: entries are not sorted and merged");
      }
    }
    prefix_counts_.push_back(prefix_counts_.back() + e.count);
  }
}

bool operator==(const OrbitTable& a, const OrbitTable& b) {
  return a.k_ == b.k_ && std::bit_cast<std::uint64_t>(a.t_max_) == std::bit_cast<std::uint64_t>(b.t_max_) &&
         a.entries_ == b.entries_;
}

std::size_t OrbitTable::prefix_size(double t) const {
  if (std::isnan(t) || t > t_max_) {
    throw OutOfRangeError("T = " + std::to_string(t) + " exceeds the census cutoff T_max = " + std::to_string(t_max_));
  }
  auto it = std::upper_bound(entries_.begin(), entries_.end(), t,
                             [](double value, const OrbitEntry& e) { return value < e.length; });
  return static_cast<std::size_t>(it - entries_.begin());
}

std::vector<OrbitEntry> merge_entries(std::vector<OrbitEntry> entries) {
  std::sort(entries.begin(), entries.end(), [](const OrbitEntry& a, const OrbitEntry& b) {
    if (a.length != b.length) return a.length < b.length;
    return a.homology < b.homology;
  });
  std::vector<OrbitEntry> merged;
  for (auto& e : entries) {
    if (!merged.empty() && std::bit_cast<std::uint64_t>(merged.back().length) == std::bit_cast<std::uint64_t>(e.length) &&
        merged.back().homology == e.homology) {
      merged.back().count += e.count;
    } else {
      merged.push_back(std::move(e));
    }
  }
  return merged;
}

// ---------------------------------------------------------------------------
// Enumeration

namespace {

struct Graph {
  std::vector<std::vector<std::size_t>> out_edges;  // sorted by edge index
  std::vector<std::vector<double>> dist;            // shortest path length u -> v
};

Graph prepare(const MarkovFlowModel& model) {
  const std::size_t n = model.vertex_count();
  Graph g;
  g.out_edges.resize(n);
  constexpr double inf = std::numeric_limits<double>::infinity();
  g.dist.assign(n, std::vector<double>(n, inf));
  for (std::size_t v = 0; v < n; ++v) g.dist[v][v] = 0.0;
  for (std::size_t i = 0; i < model.edge_count(); ++i) {
    const Edge& e = model.edge(i);
    g.out_edges[e.from].push_back(i);
    g.dist[e.from][e.to] = std::min(g.dist[e.from][e.to], e.length);
  }
  for (std::size_t m = 0; m < n; ++m)
    for (std::size_t u = 0; u < n; ++u)
      for (std::size_t v = 0; v < n; ++v) g.dist[u][v] = std::min(g.dist[u][v], g.dist[u][m] + g.dist[m][v]);
  return g;
}

// Depth-first search over edge words starting with a fixed minimal edge. Words
// are grown as prenecklaces (Fredricksen-Kessler-Maiorana period tracking), so a
// closed word is recorded exactly when it is a Lyndon word: the canonical,
// primitive rotation of its cycle.
template <class Sink>
class LyndonWalker {
 public:
  LyndonWalker(const MarkovFlowModel& model, const Graph& graph, double t_max, Sink& sink)
      : model_(model),
        graph_(graph),
        t_max_(t_max),
        prune_limit_(t_max * (1.0 + 1e-12) + 1e-300),
        sink_(sink),
        uses_(model.edge_count(), 0),
        homology_(model.k()) {}

  void run(std::size_t first_edge) {
    const Edge& e = model_.edge(first_edge);
    root_vertex_ = e.from;
    if (e.length + graph_.dist[e.to][root_vertex_] > prune_limit_) return;
    push(first_edge);
    if (e.to == root_vertex_) record();
    extend(e.length, 1);
    pop(first_edge);
  }

 private:
  void push(std::size_t edge) {
    word_.push_back(edge);
    ++uses_[edge];
    homology_ += model_.edge(edge).weight;
  }

  void pop(std::size_t edge) {
    word_.pop_back();
    --uses_[edge];
    homology_ -= model_.edge(edge).weight;
  }

  void extend(double length, std::size_t period) {
    const std::size_t t = word_.size();
    const std::size_t bound = word_[t - period];
    const auto& out = graph_.out_edges[model_.edge(word_.back()).to];
    for (auto it = std::lower_bound(out.begin(), out.end(), bound); it != out.end(); ++it) {
      const std::size_t idx = *it;
      const Edge& e = model_.edge(idx);
      const double next_length = length + e.length;
      if (next_length + graph_.dist[e.to][root_vertex_] > prune_limit_) continue;
      const std::size_t next_period = idx == bound ? period : t + 1;
      push(idx);
      if (e.to == root_vertex_ && next_period == t + 1) record();
      extend(next_length, next_period);
      pop(idx);
    }
  }

  void record() {
    // Summing by edge multiplicity in index order makes the length a function of
    // the edge multiset, independent of the walk order.
    double length = 0.0;
    for (std::size_t i = 0; i < uses_.size(); ++i) {
      if (uses_[i]) length += static_cast<double>(uses_[i]) * model_.edge(i).length;
    }
    if (length <= t_max_) sink_(word_, length, homology_);
  }

  const MarkovFlowModel& model_;
  const Graph& graph_;
  double t_max_;
  double prune_limit_;
  Sink& sink_;
  std::size_t root_vertex_ = 0;
  std::vector<std::size_t> word_;
  std::vector<std::uint32_t> uses_;
  HomologyClass homology_;
};

struct EntryKey {
  std::uint64_t length_bits;
  HomologyClass homology;
  bool operator==(const EntryKey&) const = default;
};

struct EntryKeyHash {
  std::size_t operator()(const EntryKey& key) const noexcept {
    return HomologyHash{}(key.homology) ^ (key.length_bits * 0x9E3779B97F4A7C15ULL);
  }
};

void check_cutoff(double t_max) {
  if (!(t_max > 0.0) || !std::isfinite(t_max)) throw DomainError("census: T_max must be positive and finite");
}

}  // namespace

void for_each_prime_orbit(const MarkovFlowModel& model, double t_max,
                          const std::function<void(const PrimeOrbit&)>& visit) {
  check_cutoff(t_max);
  require_strongly_connected(model);
  const Graph graph = prepare(model);
  auto sink = [&](const std::vector<std::size_t>& word, double length, const HomologyClass& homology) {
    visit(PrimeOrbit{word, length, homology});
  };
  LyndonWalker walker(model, graph, t_max, sink);
  for (std::size_t e = 0; e < model.edge_count(); ++e) walker.run(e);
}

OrbitTable enumerate_prime_orbits(const MarkovFlowModel& model, double t_max, const CensusOptions& options) {
  check_cutoff(t_max);
  require_strongly_connected(model);
  if (options.workers == 0) throw UsageError("census: worker count must be at least 1");
  const Graph graph = prepare(model);

  const std::size_t edge_count = model.edge_count();
  std::vector<std::vector<OrbitEntry>> partial(edge_count);
  std::vector<std::exception_ptr> failures(edge_count);
  std::atomic<std::size_t> next_edge{0};
  std::atomic<std::uint64_t> recorded{0};
  std::atomic<bool> abort{false};

  auto work = [&] {
    for (;;) {
      const std::size_t e = next_edge.fetch_add(1);
      if (e >= edge_count || abort.load()) return;
      try {
        std::unordered_map<EntryKey, std::uint64_t, EntryKeyHash> counts;
        auto sink = [&](const std::vector<std::size_t>&, double length, const HomologyClass& homology) {
          if (recorded.fetch_add(1) + 1 > options.budget) {
            throw ResourceError("census: prime orbit count exceeds --budget=" + std::to_string(options.budget) +
                                " at T_max = " + std::to_string(t_max));
          }
          ++counts[EntryKey{std::bit_cast<std::uint64_t>(length), homology}];
        };
        LyndonWalker walker(model, graph, t_max, sink);
        walker.run(e);
        std::vector<OrbitEntry> entries;
        entries.reserve(counts.size());
        for (auto& [key, count] : counts) {
          entries.push_back(OrbitEntry{std::bit_cast<double>(key.length_bits), key.homology, count});
        }
        partial[e] = merge_entries(std::move(entries));
      } catch (...) {
        failures[e] = std::current_exception();
        abort.store(true);
      }
    }
  };

  const unsigned workers = static_cast<unsigned>(std::min<std::size_t>(options.workers, edge_count));
  if (workers <= 1) {
    work();
  } else {
    std::vector<std::jthread> pool;
    for (unsigned w = 0; w < workers; ++w) pool.emplace_back(work);
  }
  for (const auto& failure : failures) {
    if (failure) std::rethrow_exception(failure);
  }

  std::vector<OrbitEntry> all;
  for (auto& p : partial) std::move(p.begin(), p.end(), std::back_inserter(all));
  return OrbitTable(model.k(), t_max, merge_entries(std::move(all)), model_hash(model));
}

// ---------------------------------------------------------------------------
// Counting functions

namespace {

void require_dimension(const OrbitTable& table, std::size_t dimension, const char* what) {
  if (dimension != table.k()) {
    throw DomainError(std::string(what) + " has dimension " + std::to_string(dimension) + ", table has k = " +
                      std::to_string(table.k()));
  }
}

HomologyClass window_offset(const OrbitTable& table, double T, std::span<const double> phi0) {
  require_dimension(table, phi0.size(), "phi0");
  std::vector<double> scaled(phi0.begin(), phi0.end());
  for (auto& x : scaled) x *= T;
  return integer_part(scaled);
}

}  // namespace

std::uint64_t count_orbits(const OrbitTable& table, double T) { return table.prefix_count(table.prefix_size(T)); }

std::uint64_t count_orbits_in_class(const OrbitTable& table, double T, const HomologyClass& alpha) {
  require_dimension(table, alpha.dimension(), "alpha");
  const std::size_t n = table.prefix_size(T);
  std::uint64_t total = 0;
  for (std::size_t i = 0; i < n; ++i) {
    const OrbitEntry& e = table.entries()[i];
    if (e.homology == alpha) total += e.count;
  }
  return total;
}

std::uint64_t shifted_count(const OrbitTable& table, double T, const HomologyClass& alpha,
                            std::span<const double> phi0) {
  require_dimension(table, alpha.dimension(), "alpha");
  return count_orbits_in_class(table, T, alpha + window_offset(table, T, phi0));
}

std::map<HomologyClass, std::uint64_t> shifted_class_counts(const OrbitTable& table, double T,
                                                            std::span<const double> phi0) {
  const HomologyClass offset = window_offset(table, T, phi0);
  const std::size_t n = table.prefix_size(T);
  std::map<HomologyClass, std::uint64_t> counts;
  for (std::size_t i = 0; i < n; ++i) {
    const OrbitEntry& e = table.entries()[i];
    counts[e.homology - offset] += e.count;
  }
  return counts;
}

std::uint64_t pair_count_direct(const OrbitTable& table, double T, const HomologyClass& beta) {
  require_dimension(table, beta.dimension(), "beta");
  const std::size_t n = table.prefix_size(T);
  const std::size_t k = table.k();
  // flat coordinate array keeps the O(n^2) loop allocation-free
  std::vector<std::int64_t> coords(n * k);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < k; ++j) coords[i * k + j] = table.entries()[i].homology[j];

  std::uint64_t total = 0;
  for (std::size_t i = 0; i < n; ++i) {
    const std::int64_t* gi = &coords[i * k];
    const std::uint64_t ci = table.entries()[i].count;
    for (std::size_t j = 0; j < n; ++j) {
      const std::int64_t* gj = &coords[j * k];
      bool match = true;
      for (std::size_t d = 0; d < k && match; ++d) match = gi[d] - gj[d] == beta[d];
      if (match) total += ci * table.entries()[j].count;
    }
  }
  return total;
}

std::uint64_t pair_count_convolution(const OrbitTable& table, double T, const HomologyClass& beta,
                                     std::span<const double> phi0) {
  require_dimension(table, beta.dimension(), "beta");
  const auto windows = shifted_class_counts(table, T, phi0);
  std::uint64_t total = 0;
  for (const auto& [alpha, count] : windows) {
    auto partner = windows.find(alpha + beta);
    if (partner != windows.end()) total += partner->second * count;
  }
  return total;
}

double empirical_clt(const OrbitTable& table, double T, std::span<const double> phi0, const Box& box) {
  require_dimension(table, box.dimension(), "box");
  const auto windows = shifted_class_counts(table, T, phi0);
  const std::uint64_t total = count_orbits(table, T);
  if (total == 0) throw UndefinedStatisticError("empirical CLT fraction undefined: no orbits with length <= T");
  const double scale = 1.0 / std::sqrt(T);
  std::uint64_t inside = 0;
  std::vector<double> x(table.k());
  for (const auto& [alpha, count] : windows) {
    for (std::size_t i = 0; i < x.size(); ++i) x[i] = static_cast<double>(alpha[i]) * scale;
    if (box.contains(x)) inside += count;
  }
  return static_cast<double>(inside) / static_cast<double>(total);
}

double sup_normalized_count(const OrbitTable& table, double T, std::span<const double> phi0, double h) {
  if (!(h > 0.0)) throw DomainError("sup_normalized_count: h must be positive");
  const auto windows = shifted_class_counts(table, T, phi0);
  std::uint64_t best = 0;
  for (const auto& [alpha, count] : windows) best = std::max(best, count);
  if (best == 0) return 0.0;
  const double k = static_cast<double>(table.k());
  return static_cast<double>(best) * std::pow(T, 1.0 + k / 2.0) * std::exp(-h * T);
}

}  // namespace orbitcensus
