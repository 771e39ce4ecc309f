#include "ugraph/metrics.h"

#include <algorithm>
#include <fstream>
#include <set>
#include <sstream>

namespace ugraph {

namespace {

void require_full(const Clustering& c) {
  if (!c.full()) throw ValueError("metric needs a full clustering");
}

std::vector<double> assigned_estimates(const Clustering& c, ConnectionEstimator& estimator,
                                       Depth depth) {
  std::vector<std::span<const double>> rows;
  for (NodeId center : c.centers) rows.push_back(estimator.row(center, depth));
  std::vector<double> values(c.num_nodes(), 0.0);
  for (NodeId u = 0; u < c.num_nodes(); ++u) {
    if (c.assignment[u]) values[u] = rows[*c.assignment[u]][u];
  }
  for (NodeId center : c.centers) values[center] = 1.0;
  return values;
}

std::uint64_t choose2(std::uint64_t m) { return m * (m - (m > 0)) / 2; }

}  // namespace

double min_prob(const Clustering& clustering, ConnectionEstimator& estimator, Depth depth) {
  const auto values = assigned_estimates(clustering, estimator, depth);
  return values.empty() ? 0.0 : *std::min_element(values.begin(), values.end());
}

double avg_prob(const Clustering& clustering, ConnectionEstimator& estimator, Depth depth) {
  const auto values = assigned_estimates(clustering, estimator, depth);
  double sum = 0.0;
  for (double v : values) sum += v;
  return values.empty() ? 0.0 : sum / static_cast<double>(values.size());
}

AvprCounts world_avpr_counts(const Clustering& clustering, std::span<const NodeId> labels) {
  const std::size_t n = clustering.num_nodes();
  std::vector<std::uint64_t> keys(n);
  for (NodeId u = 0; u < n; ++u) {
    keys[u] = static_cast<std::uint64_t>(*clustering.assignment[u]) * n + labels[u];
  }
  std::sort(keys.begin(), keys.end());
  std::uint64_t inner = 0;
  for (std::size_t i = 0; i < n;) {
    std::size_t j = i;
    while (j < n && keys[j] == keys[i]) ++j;
    inner += choose2(j - i);
    i = j;
  }
  std::vector<std::uint32_t> component(n, 0);
  for (NodeId u = 0; u < n; ++u) ++component[labels[u]];
  std::uint64_t total = 0;
  for (std::uint32_t s : component) total += choose2(s);
  return {inner, total - inner};
}

std::uint64_t inner_pair_total(const Clustering& clustering) {
  std::vector<std::uint64_t> sizes(clustering.k(), 0);
  for (const auto& a : clustering.assignment) {
    if (a) ++sizes[*a];
  }
  std::uint64_t total = 0;
  for (std::uint64_t s : sizes) total += choose2(s);
  return total;
}

std::uint64_t outer_pair_total(const Clustering& clustering) {
  return choose2(clustering.num_nodes()) - inner_pair_total(clustering);
}

namespace {

AvprCounts pool_counts(const Clustering& clustering, const WorldSamplePool& pool) {
  std::uint64_t inner = 0;
  std::uint64_t outer = 0;
  const auto worlds = static_cast<std::int64_t>(pool.size());
#pragma omp parallel for num_threads(pool.workers()) reduction(+ : inner, outer) schedule(static)
  for (std::int64_t w = 0; w < worlds; ++w) {
    const AvprCounts c = world_avpr_counts(clustering, pool.labels(static_cast<std::size_t>(w)));
    inner += c.inner_connected;
    outer += c.outer_connected;
  }
  return {inner, outer};
}

std::optional<double> ratio(std::uint64_t connected, std::uint64_t pairs, std::size_t worlds) {
  if (pairs == 0 || worlds == 0) return std::nullopt;
  return static_cast<double>(connected) / (static_cast<double>(pairs) * static_cast<double>(worlds));
}

std::optional<double> naive_avpr(const Clustering& c, ConnectionEstimator& estimator, bool inner) {
  require_full(c);
  const std::size_t n = c.num_nodes();
  double sum = 0.0;
  std::uint64_t pairs = 0;
  for (NodeId u = 0; u < n; ++u) {
    const auto row = estimator.row(u, std::nullopt);
    for (NodeId v = u + 1; v < n; ++v) {
      if ((c.assignment[u] == c.assignment[v]) != inner) continue;
      sum += row[v];
      ++pairs;
    }
  }
  if (pairs == 0) return std::nullopt;
  return sum / static_cast<double>(pairs);
}

}  // namespace

std::optional<double> inner_avpr(const Clustering& clustering, const WorldSamplePool& pool) {
  require_full(clustering);
  return ratio(pool_counts(clustering, pool).inner_connected, inner_pair_total(clustering),
               pool.size());
}

std::optional<double> outer_avpr(const Clustering& clustering, const WorldSamplePool& pool) {
  require_full(clustering);
  return ratio(pool_counts(clustering, pool).outer_connected, outer_pair_total(clustering),
               pool.size());
}

std::optional<double> inner_avpr(const Clustering& clustering, ConnectionEstimator& estimator) {
  return naive_avpr(clustering, estimator, true);
}

std::optional<double> outer_avpr(const Clustering& clustering, ConnectionEstimator& estimator) {
  return naive_avpr(clustering, estimator, false);
}

QualityReport score_clustering(const Clustering& clustering, ConnectionEstimator& estimator,
                               Depth depth, const WorldSamplePool* pool) {
  require_full(clustering);
  QualityReport report;
  report.min_prob = min_prob(clustering, estimator, depth);
  report.avg_prob = avg_prob(clustering, estimator, depth);
  if (pool) {
    const AvprCounts counts = pool_counts(clustering, *pool);
    report.inner_avpr = ratio(counts.inner_connected, inner_pair_total(clustering), pool->size());
    report.outer_avpr = ratio(counts.outer_connected, outer_pair_total(clustering), pool->size());
  } else {
    report.inner_avpr = inner_avpr(clustering, estimator);
    report.outer_avpr = outer_avpr(clustering, estimator);
  }
  for (const auto& members : clustering.clusters()) report.cluster_sizes.push_back(members.size());
  return report;
}

GroundTruth load_ground_truth(std::istream& in) {
  GroundTruth truth;
  std::string line;
  while (std::getline(in, line)) {
    std::istringstream fields(line);
    std::string id;
    if (!(fields >> id) || id.front() == '#') continue;
    std::vector<std::string> members;
    for (std::string m; fields >> m;) members.push_back(m);
    truth.ids.push_back(id);
    truth.complexes.push_back(std::move(members));
  }
  return truth;
}

GroundTruth load_ground_truth_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ValueError("cannot open ground truth file: " + path);
  return load_ground_truth(in);
}

Confusion evaluate_predictions(const Clustering& clustering, const UncertainGraph& graph,
                               const GroundTruth& truth) {
  const std::size_t n = graph.num_nodes();
  std::vector<std::uint8_t> in_universe(n, 0);
  std::set<std::pair<NodeId, NodeId>> positive;
  for (const auto& complex : truth.complexes) {
    std::vector<NodeId> ids;
    for (const auto& label : complex) {
      if (auto id = graph.find(label)) ids.push_back(*id);
    }
    std::sort(ids.begin(), ids.end());
    ids.erase(std::unique(ids.begin(), ids.end()), ids.end());
    for (std::size_t i = 0; i < ids.size(); ++i) {
      in_universe[ids[i]] = 1;
      for (std::size_t j = i + 1; j < ids.size(); ++j) positive.emplace(ids[i], ids[j]);
    }
  }

  Confusion result;
  result.universe = static_cast<std::size_t>(std::count(in_universe.begin(), in_universe.end(), 1));
  if (result.universe == 0) throw ValueError("graph and ground truth share no labels");
  result.positives = positive.size();
  result.negatives = choose2(result.universe) - result.positives;

  for (const auto& members : clustering.clusters()) {
    std::vector<NodeId> shared;
    for (NodeId u : members) {
      if (in_universe[u]) shared.push_back(u);
    }
    for (std::size_t i = 0; i < shared.size(); ++i) {
      for (std::size_t j = i + 1; j < shared.size(); ++j) {
        if (positive.count({shared[i], shared[j]})) {
          ++result.true_positives;
        } else {
          ++result.false_positives;
        }
      }
    }
  }
  if (result.positives) {
    result.tpr = static_cast<double>(result.true_positives) / static_cast<double>(result.positives);
  }
  if (result.negatives) {
    result.fpr =
        static_cast<double>(result.false_positives) / static_cast<double>(result.negatives);
  }
  return result;
}

}  // namespace ugraph
