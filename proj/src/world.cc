#include "ugraph/world.h"

#include <algorithm>

#include "ugraph/union_find.h"

namespace ugraph {

namespace {

void label_world(const UncertainGraph& graph, std::uint64_t key, UnionFind& sets,
                 std::span<NodeId> out) {
  sets.reset();
  const auto edges = graph.edges();
  for (EdgeId id = 0; id < edges.size(); ++id) {
    if (edge_present(edges[id], key, id)) sets.unite(edges[id].u, edges[id].v);
  }
  sets.canonical_labels(out);
}

}  // namespace

WorldSample sample_world(const UncertainGraph& graph, std::uint64_t seed, std::uint64_t index) {
  WorldSample world{index, std::vector<NodeId>(graph.num_nodes())};
  UnionFind sets(graph.num_nodes());
  label_world(graph, world_key(seed, index), sets, world.labels);
  return world;
}

std::vector<std::uint8_t> realize_edges(const UncertainGraph& graph, std::uint64_t seed,
                                        std::uint64_t index) {
  const std::uint64_t key = world_key(seed, index);
  const auto edges = graph.edges();
  std::vector<std::uint8_t> mask(edges.size());
  for (EdgeId id = 0; id < edges.size(); ++id) mask[id] = edge_present(edges[id], key, id);
  return mask;
}

std::vector<NodeId> d_reachable(const UncertainGraph& graph, std::uint64_t seed,
                                std::uint64_t index, NodeId source, std::uint32_t d) {
  HopLimitedSearch search(graph);
  std::vector<NodeId> reached;
  search.run(world_key(seed, index), source, d, [&](NodeId u) { reached.push_back(u); });
  std::sort(reached.begin(), reached.end());
  return reached;
}

HopLimitedSearch::HopLimitedSearch(const UncertainGraph& graph)
    : graph_(&graph), stamp_(graph.num_nodes(), 0), hops_(graph.num_nodes(), 0) {
  queue_.reserve(graph.num_nodes());
}

WorldSamplePool::WorldSamplePool(const UncertainGraph& graph, std::uint64_t seed, int workers)
    : graph_(&graph), seed_(seed), workers_(workers < 1 ? 1 : workers) {}

void WorldSamplePool::extend(std::size_t target) {
  if (target <= size_) return;
  const std::size_t n = graph_->num_nodes();
  labels_.resize(target * n);
  const std::int64_t first = static_cast<std::int64_t>(size_);
  const std::int64_t last = static_cast<std::int64_t>(target);
#pragma omp parallel num_threads(workers_)
  {
    UnionFind sets(n);
#pragma omp for schedule(static)
    for (std::int64_t i = first; i < last; ++i) {
      label_world(*graph_, world_key(seed_, static_cast<std::uint64_t>(i)), sets,
                  {labels_.data() + static_cast<std::size_t>(i) * n, n});
    }
  }
  size_ = target;
}

WorldSample WorldSamplePool::world(std::size_t i) const {
  const auto view = labels(i);
  return {i, std::vector<NodeId>(view.begin(), view.end())};
}

}  // namespace ugraph
