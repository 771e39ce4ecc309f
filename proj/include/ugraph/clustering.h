#pragma once

#include <optional>
#include <vector>

#include "ugraph/estimator.h"
#include "ugraph/graph.h"

namespace ugraph {

// How a clustering was admitted: covered nodes reached their admitting center
// with estimate >= (1 - slack) * q.
struct ClusteringParams {
  double q = 1.0;
  double slack = 0.0;
  Depth depth;
  std::size_t samples = 0;
};

/// A full or partial k-clustering: k centers, an optional cluster index per
/// node, and each node's estimated connection probability to its center
/// (0 for uncovered nodes). Center i always belongs to cluster i.
struct Clustering {
  std::vector<NodeId> centers;
  std::vector<std::optional<ClusterIndex>> assignment;
  std::vector<double> estimate;
  ClusteringParams params;

  std::size_t k() const { return centers.size(); }
  std::size_t num_nodes() const { return assignment.size(); }
  std::size_t covered() const;
  bool full() const { return covered() == num_nodes(); }
  // Members of each cluster in ascending node id.
  std::vector<std::vector<NodeId>> clusters() const;
};

struct PartialOptions {
  // Seeded uniform choice of the candidate set; smallest ids otherwise.
  std::optional<std::uint64_t> candidate_seed;
};

// Greedy partial clustering: k rounds, each scoring at most `alpha`
// uncovered candidates by how many uncovered nodes they reach with
// probability >= q_bar, taking the best as a center and covering every node
// it reaches with probability >= q.
Clustering min_partial(ConnectionEstimator& estimator, std::size_t k, double q, std::size_t alpha,
                       double q_bar, const PartialOptions& options = {});

// Depth-limited variant: scores candidates with `selection_depth`-hop
// probabilities and covers with `depth`-hop probabilities.
Clustering min_partial_d(ConnectionEstimator& estimator, std::size_t k, double q,
                         std::size_t alpha, double q_bar, std::uint32_t depth,
                         std::uint32_t selection_depth, const PartialOptions& options = {});

// Assigns each uncovered node to the center it reaches with the highest
// estimate (cluster 0 when every estimate is 0).
Clustering complete_clustering(const Clustering& partial, ConnectionEstimator& estimator,
                               Depth depth = std::nullopt);

// Mean per-node estimate, counting uncovered nodes as 0.
double covered_average(const Clustering& clustering);

enum class ScheduleKind {
  kDoublingGap,  // 1, then max(1 - gamma 2^i, p_low), refined by binary search
  kGeometric,    // 1, 1/(1+gamma), 1/(1+gamma)^2, ... down to p_low
};

// Strictly decreasing probability guesses that never fall below p_low.
class GuessSchedule {
 public:
  GuessSchedule(double gamma, double p_low, ScheduleKind kind);

  std::optional<double> next();

  // True once a binary-search bracket [lo, hi] is tight enough to stop.
  bool bracket_closed(double lo, double hi) const { return lo / hi > 1.0 / (1.0 + gamma_); }

 private:
  double gamma_;
  double p_low_;
  ScheduleKind kind_;
  int step_ = -1;
  double last_ = 2.0;
};

enum class AcpVariant {
  kPractical,  // min_partial(q, 1, q)
  kTheory,     // min_partial(q^3, n, q)
};

struct DriverOptions {
  double gamma = 0.1;
  double p_low = 1e-4;
  Depth depth;
  ScheduleKind schedule = ScheduleKind::kDoublingGap;
  AcpVariant acp_variant = AcpVariant::kPractical;
  PartialOptions partial;
};

enum class Outcome { kClustered, kNoClusteringAboveThreshold };

struct RunStats {
  std::vector<double> guesses;  // every q passed to min-partial, in order
  std::size_t partial_runs = 0;
  double final_q = 0.0;
  double phi_best = 0.0;  // average with uncovered nodes at 0 (avg-prob driver)
  std::size_t samples = 0;
};

struct ClusteringResult {
  Outcome outcome = Outcome::kClustered;
  Clustering clustering;
  RunStats stats;
};

// Maximizes the minimum connection probability to centers: lowers the guess q
// until min-partial covers every node, then tightens q by binary search.
ClusteringResult mcp(ConnectionEstimator& estimator, std::size_t k,
                     const DriverOptions& options = {});

// Maximizes the average connection probability to centers.
ClusteringResult acp(ConnectionEstimator& estimator, std::size_t k,
                     const DriverOptions& options = {});

struct OptimumResult {
  double value = 0.0;
  Clustering witness;
};

// Exhaustive optimum over all k-subsets of centers with exact probabilities.
OptimumResult brute_force_optimum(const UncertainGraph& graph, std::size_t k,
                                  Objective objective, Depth depth = std::nullopt,
                                  std::size_t max_nodes = 10, const ExactOptions& exact = {});

}  // namespace ugraph
