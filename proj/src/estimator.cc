#include "ugraph/estimator.h"

#include <algorithm>

namespace ugraph {

std::span<const double> ConnectionEstimator::row(NodeId source, Depth depth) {
  if (source >= graph_->num_nodes()) throw ValueError("node id out of range");
  if (depth && (*depth < 1 || *depth >= graph_->num_nodes())) {
    throw ValueError("depth must satisfy 1 <= d < n");
  }
  const std::uint64_t key =
      static_cast<std::uint64_t>(source) << 32 | (depth ? *depth : 0xffffffffu);
  auto it = cache_.find(key);
  if (it == cache_.end()) it = cache_.emplace(key, compute_row(source, depth)).first;
  return it->second;
}

ExactEstimator::ExactEstimator(const UncertainGraph& graph, ExactOptions options)
    : ConnectionEstimator(graph), options_(options) {
  if (graph.num_uncertain_edges() > options_.max_uncertain_edges) {
    throw LimitError("exact estimator refused: " + std::to_string(graph.num_uncertain_edges()) +
                     " uncertain edges exceed the limit of " +
                     std::to_string(options_.max_uncertain_edges));
  }
}

std::vector<double> ExactEstimator::compute_row(NodeId source, Depth depth) {
  return exact_connection_row(graph(), source, depth, options_);
}

MonteCarloEstimator::MonteCarloEstimator(const UncertainGraph& graph, std::uint64_t seed,
                                         SamplingConfig config, int workers)
    : ConnectionEstimator(graph), config_(config), progressive_(true), pool_(graph, seed, workers) {
  if (config_.initial_samples < 1) throw ValueError("initial sample count must be positive");
}

MonteCarloEstimator::MonteCarloEstimator(const UncertainGraph& graph, std::uint64_t seed,
                                         std::size_t samples, double epsilon, int workers)
    : ConnectionEstimator(graph), progressive_(false), pool_(graph, seed, workers) {
  if (samples < 1) throw ValueError("sample count must be positive");
  config_.epsilon = epsilon;
  pool_.extend(samples);
}

std::size_t MonteCarloEstimator::planned_samples(double q, Objective objective) const {
  const std::size_t n = graph().num_nodes();
  const std::size_t theory =
      objective == Objective::kMinProb
          ? samples_mcp(q, config_.epsilon, config_.gamma, config_.p_low, n)
          : samples_acp(q, config_.epsilon, config_.gamma, config_.p_low, n);
  if (config_.mode == SampleMode::kTheory) return std::max(pool_.size(), theory);
  if (pool_.size() == 0) return std::min(config_.initial_samples, theory);
  if (lowest_guess_ && q < *lowest_guess_) {
    return std::max(pool_.size(), std::min(2 * pool_.size(), theory));
  }
  return pool_.size();
}

void MonteCarloEstimator::prepare(double q, Objective objective) {
  if (!progressive_) return;
  const std::size_t target = planned_samples(q, objective);
  if (!lowest_guess_ || q < *lowest_guess_) lowest_guess_ = q;
  if (target > pool_.size()) {
    pool_.extend(target);
    clear_cache();
  }
}

std::vector<double> MonteCarloEstimator::compute_row(NodeId source, Depth depth) {
  const UncertainGraph& g = graph();
  const std::size_t n = g.num_nodes();
  const std::size_t r = pool_.size();
  if (r == 0) throw ValueError("empty sample pool");
  std::vector<std::uint32_t> counts(n, 0);
  const int workers = pool_.workers();

  if (!depth) {
    constexpr std::int64_t kBlock = 1024;
    const std::int64_t blocks = (static_cast<std::int64_t>(n) + kBlock - 1) / kBlock;
#pragma omp parallel for num_threads(workers) schedule(static) if (blocks > 1)
    for (std::int64_t b = 0; b < blocks; ++b) {
      const std::size_t lo = static_cast<std::size_t>(b * kBlock);
      const std::size_t hi = std::min(n, lo + kBlock);
      for (std::size_t w = 0; w < r; ++w) {
        const NodeId* labels = pool_.labels(w).data();
        const NodeId own = labels[source];
        for (std::size_t u = lo; u < hi; ++u) counts[u] += labels[u] == own;
      }
    }
  } else {
    const std::int64_t worlds = static_cast<std::int64_t>(r);
#pragma omp parallel num_threads(workers)
    {
      std::vector<std::uint32_t> local(n, 0);
      HopLimitedSearch search(g);
#pragma omp for schedule(static)
      for (std::int64_t w = 0; w < worlds; ++w) {
        search.run(world_key(pool_.seed(), static_cast<std::uint64_t>(w)), source, *depth,
                   [&](NodeId u) { ++local[u]; });
      }
#pragma omp critical
      for (std::size_t u = 0; u < n; ++u) counts[u] += local[u];
    }
  }

  std::vector<double> row(n);
  for (std::size_t u = 0; u < n; ++u) {
    row[u] = static_cast<double>(counts[u]) / static_cast<double>(r);
  }
  return row;
}

}  // namespace ugraph
