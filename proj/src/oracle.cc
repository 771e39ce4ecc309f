#include "ugraph/oracle.h"

#include <cmath>
#include <limits>

#include "ugraph/union_find.h"

namespace ugraph {

namespace {

// The set of worlds being enumerated: edges in `free_edges` vary, every other
// edge is fixed present or absent according to `fixed_present`.
struct WorldSpace {
  std::vector<EdgeId> free_edges;
  std::vector<int> bit_of;
  std::vector<std::uint8_t> fixed_present;
};

WorldSpace make_space(const UncertainGraph& graph, const ExactOptions& options,
                      std::optional<std::pair<EdgeId, bool>> condition = std::nullopt) {
  WorldSpace space;
  const auto edges = graph.edges();
  space.bit_of.assign(edges.size(), -1);
  space.fixed_present.assign(edges.size(), 0);
  for (EdgeId id = 0; id < edges.size(); ++id) {
    if (condition && condition->first == id) {
      space.fixed_present[id] = condition->second;
    } else if (edges[id].certain()) {
      space.fixed_present[id] = 1;
    } else {
      space.bit_of[id] = static_cast<int>(space.free_edges.size());
      space.free_edges.push_back(id);
    }
  }
  if (space.free_edges.size() > std::min<std::size_t>(options.max_uncertain_edges, 62)) {
    throw LimitError("exact enumeration refused: " + std::to_string(space.free_edges.size()) +
                     " uncertain edges exceed the limit of " +
                     std::to_string(options.max_uncertain_edges));
  }
  return space;
}

double world_probability(const UncertainGraph& graph, const WorldSpace& space,
                         std::uint64_t mask) {
  double prob = 1.0;
  for (std::size_t bit = 0; bit < space.free_edges.size(); ++bit) {
    const double p = graph.edge(space.free_edges[bit]).p;
    prob *= (mask >> bit & 1) ? p : 1.0 - p;
  }
  return prob;
}

std::vector<double> row_in_space(const UncertainGraph& graph, const WorldSpace& space,
                                 NodeId source, Depth depth, int workers) {
  const std::size_t n = graph.num_nodes();
  const std::uint64_t total = std::uint64_t{1} << space.free_edges.size();
  const std::int64_t chunks = static_cast<std::int64_t>(std::min<std::uint64_t>(total, 64));
  const std::uint64_t per_chunk = total / static_cast<std::uint64_t>(chunks);
  std::vector<std::vector<double>> partial(chunks, std::vector<double>(n, 0.0));

  UnionFind base(n);
  for (EdgeId id = 0; id < graph.num_edges(); ++id) {
    if (space.fixed_present[id]) base.unite(graph.edge(id).u, graph.edge(id).v);
  }

#pragma omp parallel num_threads(workers < 1 ? 1 : workers)
  {
    UnionFind sets = base;
    HopLimitedSearch search(graph);
#pragma omp for schedule(static)
    for (std::int64_t c = 0; c < chunks; ++c) {
      auto& acc = partial[c];
      const std::uint64_t begin = static_cast<std::uint64_t>(c) * per_chunk;
      for (std::uint64_t mask = begin; mask < begin + per_chunk; ++mask) {
        const double prob = world_probability(graph, space, mask);
        if (depth) {
          auto present = [&](EdgeId e) {
            const int bit = space.bit_of[e];
            return bit < 0 ? space.fixed_present[e] != 0 : (mask >> bit & 1) != 0;
          };
          search.run(source, *depth, present, [&](NodeId u) { acc[u] += prob; });
        } else {
          sets = base;
          for (std::size_t bit = 0; bit < space.free_edges.size(); ++bit) {
            if (mask >> bit & 1) {
              const Edge& e = graph.edge(space.free_edges[bit]);
              sets.unite(e.u, e.v);
            }
          }
          const auto root = sets.find(source);
          for (NodeId u = 0; u < n; ++u) {
            if (sets.find(u) == root) acc[u] += prob;
          }
        }
      }
    }
  }

  std::vector<double> row(n, 0.0);
  for (const auto& acc : partial) {
    for (std::size_t u = 0; u < n; ++u) row[u] += acc[u];
  }
  row[source] = 1.0;
  return row;
}

void check_node(const UncertainGraph& graph, NodeId u) {
  if (u >= graph.num_nodes()) throw ValueError("node id out of range");
}

void check_depth(const UncertainGraph& graph, std::uint32_t d) {
  if (d < 1 || d >= graph.num_nodes()) {
    throw ValueError("depth must satisfy 1 <= d < n");
  }
}

void check_open_unit(double x, const char* name) {
  if (!(x > 0.0 && x < 1.0)) throw ValueError(std::string(name) + " must lie in (0,1)");
}

std::size_t ceil_count(double x) {
  if (!std::isfinite(x) || x >= 0x1.0p63) throw ValueError("sample count overflows");
  return std::max<std::size_t>(1, static_cast<std::size_t>(std::ceil(x)));
}

double log_base(double x, double base) { return std::log(x) / std::log(base); }

void check_schedule_params(double q, double epsilon, double gamma, double p_low, std::size_t n) {
  if (!(q > 0.0 && q <= 1.0)) throw ValueError("q must lie in (0,1]");
  check_open_unit(epsilon, "epsilon");
  if (!(gamma > 0.0)) throw ValueError("gamma must be positive");
  check_open_unit(p_low, "p_low");
  if (n < 2) throw ValueError("n must be at least 2");
}

}  // namespace

std::vector<double> exact_connection_row(const UncertainGraph& graph, NodeId source, Depth depth,
                                         const ExactOptions& options) {
  check_node(graph, source);
  if (depth) check_depth(graph, *depth);
  return row_in_space(graph, make_space(graph, options), source, depth, options.workers);
}

double exact_connection_prob(const UncertainGraph& graph, NodeId u, NodeId v,
                             const ExactOptions& options) {
  check_node(graph, v);
  return exact_connection_row(graph, u, std::nullopt, options)[v];
}

double exact_d_connection_prob(const UncertainGraph& graph, NodeId u, NodeId v, std::uint32_t d,
                               const ExactOptions& options) {
  check_node(graph, v);
  return exact_connection_row(graph, u, d, options)[v];
}

double exact_conditional_prob(const UncertainGraph& graph, NodeId u, NodeId v, EdgeId edge,
                              bool present, const ExactOptions& options) {
  check_node(graph, u);
  check_node(graph, v);
  if (edge >= graph.num_edges()) throw ValueError("edge id out of range");
  if (!present && graph.edge(edge).certain()) {
    throw ValueError("cannot condition on the absence of an edge with p = 1");
  }
  const WorldSpace space = make_space(graph, options, std::make_pair(edge, present));
  return row_in_space(graph, space, u, std::nullopt, options.workers)[v];
}

ProbEstimate mc_estimate(const WorldSamplePool& pool, NodeId u, NodeId v) {
  if (pool.size() == 0) throw ValueError("empty sample pool");
  check_node(pool.graph(), u);
  check_node(pool.graph(), v);
  std::size_t hits = 0;
  for (std::size_t i = 0; i < pool.size(); ++i) {
    const auto labels = pool.labels(i);
    hits += labels[u] == labels[v] ? 1 : 0;
  }
  return {static_cast<double>(hits) / static_cast<double>(pool.size()), pool.size(), std::nullopt};
}

ProbEstimate mc_estimate_d(const WorldSamplePool& pool, NodeId u, NodeId v, std::uint32_t d) {
  if (pool.size() == 0) throw ValueError("empty sample pool");
  check_node(pool.graph(), u);
  check_node(pool.graph(), v);
  check_depth(pool.graph(), d);
  HopLimitedSearch search(pool.graph());
  std::size_t hits = 0;
  for (std::size_t i = 0; i < pool.size(); ++i) {
    bool reached = false;
    search.run(world_key(pool.seed(), i), u, d, [&](NodeId w) { reached |= w == v; });
    hits += reached ? 1 : 0;
  }
  return {static_cast<double>(hits) / static_cast<double>(pool.size()), pool.size(), std::nullopt};
}

std::size_t required_samples_pointwise(double epsilon, double delta, double p) {
  check_open_unit(epsilon, "epsilon");
  check_open_unit(delta, "delta");
  if (!(p > 0.0 && p <= 1.0)) throw ValueError("p must lie in (0,1]");
  return ceil_count(3.0 * std::log(2.0 / delta) / (epsilon * epsilon * p));
}

std::size_t samples_mcp(double q, double epsilon, double gamma, double p_low, std::size_t n) {
  check_schedule_params(q, epsilon, gamma, p_low, n);
  const double nd = static_cast<double>(n);
  const double guesses = 1.0 + std::floor(log_base(1.0 / p_low, 1.0 + gamma));
  return ceil_count(12.0 / (q * epsilon * epsilon) * std::log(2.0 * nd * nd * nd * guesses));
}

std::size_t samples_acp(double q, double epsilon, double gamma, double p_low, std::size_t n) {
  check_schedule_params(q, epsilon, gamma, p_low, n);
  const double nd = static_cast<double>(n);
  const double guesses = 1.0 + std::floor(log_base(harmonic(n) / p_low, 1.0 + gamma));
  return ceil_count(12.0 / (q * q * q * epsilon * epsilon) *
                    std::log(2.0 * nd * nd * nd * guesses));
}

double harmonic(std::size_t n) {
  if (n == 0) throw ValueError("harmonic number requires n >= 1");
  double sum = 0.0;
  for (std::size_t i = 1; i <= n; ++i) sum += 1.0 / static_cast<double>(i);
  return sum;
}

}  // namespace ugraph
