#include "ugraph/baselines.h"

#include <functional>
#include <limits>
#include <queue>

namespace ugraph {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();
}

std::vector<double> shortest_distances(const UncertainGraph& graph,
                                       std::span<const NodeId> sources) {
  std::vector<double> dist(graph.num_nodes(), kInf);
  using Item = std::pair<double, NodeId>;
  std::priority_queue<Item, std::vector<Item>, std::greater<>> heap;
  for (NodeId s : sources) {
    dist[s] = 0.0;
    heap.emplace(0.0, s);
  }
  while (!heap.empty()) {
    auto [d, u] = heap.top();
    heap.pop();
    if (d > dist[u]) continue;
    for (const Incidence& inc : graph.incident(u)) {
      const double nd = d + edge_weight(graph.edge(inc.edge).p);
      if (nd < dist[inc.neighbor]) {
        dist[inc.neighbor] = nd;
        heap.emplace(nd, inc.neighbor);
      }
    }
  }
  return dist;
}

Clustering gmm(const UncertainGraph& graph, std::size_t k) {
  const std::size_t n = graph.num_nodes();
  if (k < 1 || k > n) throw ValueError("k must satisfy 1 <= k <= n");

  Clustering c;
  c.centers.push_back(0);
  // nearest[u]: distance to the closest center so far, and its index.
  std::vector<double> nearest = shortest_distances(graph, std::span<const NodeId>(c.centers));
  std::vector<ClusterIndex> owner(n, 0);
  std::vector<std::uint8_t> is_center(n, 0);
  is_center[0] = 1;

  while (c.centers.size() < k) {
    NodeId far = 0;
    double far_dist = -1.0;
    for (NodeId u = 0; u < n; ++u) {
      if (!is_center[u] && nearest[u] > far_dist) {
        far = u;
        far_dist = nearest[u];
      }
    }
    const auto index = static_cast<ClusterIndex>(c.centers.size());
    c.centers.push_back(far);
    is_center[far] = 1;
    const NodeId src[] = {far};
    const std::vector<double> dist = shortest_distances(graph, src);
    for (NodeId u = 0; u < n; ++u) {
      if (dist[u] < nearest[u]) {
        nearest[u] = dist[u];
        owner[u] = index;
      }
    }
  }

  c.assignment.assign(n, std::nullopt);
  c.estimate.assign(n, 0.0);
  for (NodeId u = 0; u < n; ++u) {
    c.assignment[u] = owner[u];
    c.estimate[u] = std::exp(-nearest[u]);
  }
  for (ClusterIndex i = 0; i < c.k(); ++i) {
    c.assignment[c.centers[i]] = i;
    c.estimate[c.centers[i]] = 1.0;
  }
  return c;
}

}  // namespace ugraph
