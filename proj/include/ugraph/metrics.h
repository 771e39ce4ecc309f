#pragma once

#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "ugraph/clustering.h"
#include "ugraph/estimator.h"
#include "ugraph/world.h"

namespace ugraph {

// Minimum / mean over nodes of the estimated probability of reaching the
// assigned center. Centers count as 1; unassigned nodes count as 0.
double min_prob(const Clustering& clustering, ConnectionEstimator& estimator,
                Depth depth = std::nullopt);
double avg_prob(const Clustering& clustering, ConnectionEstimator& estimator,
                Depth depth = std::nullopt);

// Connected unordered pairs within and across clusters in a single world.
struct AvprCounts {
  std::uint64_t inner_connected = 0;
  std::uint64_t outer_connected = 0;
};

// Counts via (cluster, component) group sizes; requires a full clustering.
AvprCounts world_avpr_counts(const Clustering& clustering, std::span<const NodeId> labels);

// Unordered pair totals: same-cluster pairs and cross-cluster pairs.
std::uint64_t inner_pair_total(const Clustering& clustering);
std::uint64_t outer_pair_total(const Clustering& clustering);

// Average pairwise connection probability within (inner) or across (outer)
// clusters over the pool's worlds. Empty when there are no such pairs.
std::optional<double> inner_avpr(const Clustering& clustering, const WorldSamplePool& pool);
std::optional<double> outer_avpr(const Clustering& clustering, const WorldSamplePool& pool);

// Same quantities by direct summation of estimator values over all pairs.
std::optional<double> inner_avpr(const Clustering& clustering, ConnectionEstimator& estimator);
std::optional<double> outer_avpr(const Clustering& clustering, ConnectionEstimator& estimator);

struct QualityReport {
  double min_prob = 0.0;
  double avg_prob = 0.0;
  std::optional<double> inner_avpr;
  std::optional<double> outer_avpr;
  std::vector<std::size_t> cluster_sizes;
};

// All metrics for a full clustering. AVPR comes from `pool` when given,
// otherwise from the estimator.
QualityReport score_clustering(const Clustering& clustering, ConnectionEstimator& estimator,
                               Depth depth, const WorldSamplePool* pool);

struct GroundTruth {
  std::vector<std::string> ids;
  std::vector<std::vector<std::string>> complexes;
};

// One complex per line: `<complex_id> <member> <member> ...`; `#` comments.
GroundTruth load_ground_truth(std::istream& in);
GroundTruth load_ground_truth_file(const std::string& path);

struct Confusion {
  std::size_t universe = 0;
  std::uint64_t true_positives = 0;
  std::uint64_t false_positives = 0;
  std::uint64_t positives = 0;  // co-complex pairs in the universe
  std::uint64_t negatives = 0;  // remaining universe pairs
  double tpr = 0.0;
  double fpr = 0.0;
};

// Scores co-clustered pairs against co-complex pairs, restricted to labels
// present in both the graph and the ground truth.
Confusion evaluate_predictions(const Clustering& clustering, const UncertainGraph& graph,
                               const GroundTruth& truth);

}  // namespace ugraph
