#pragma once

#include <algorithm>
#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "ugraph/graph.h"

namespace ugraph {

// Counter-based randomness: the draw for an edge depends only on
// (master seed, world index, edge id), never on generation order.
inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

inline std::uint64_t world_key(std::uint64_t seed, std::uint64_t world) {
  return splitmix64(splitmix64(seed) ^ world);
}

// Uniform in [0,1) for the given world key and edge.
inline double edge_uniform(std::uint64_t key, EdgeId edge) {
  return static_cast<double>(splitmix64(key ^ (static_cast<std::uint64_t>(edge) << 1 | 1)) >> 11) *
         0x1.0p-53;
}

inline bool edge_present(const Edge& e, std::uint64_t key, EdgeId edge) {
  return e.certain() || edge_uniform(key, edge) < e.p;
}

// One sampled possible world, stored as canonical component labels
// (label = smallest node id of the component).
struct WorldSample {
  std::uint64_t index = 0;
  std::vector<NodeId> labels;
};

WorldSample sample_world(const UncertainGraph& graph, std::uint64_t seed, std::uint64_t index);

// Realized edge mask of a world; one byte per edge.
std::vector<std::uint8_t> realize_edges(const UncertainGraph& graph, std::uint64_t seed,
                                        std::uint64_t index);

// Nodes within `d` hops of `source` in the world, in ascending order.
std::vector<NodeId> d_reachable(const UncertainGraph& graph, std::uint64_t seed,
                                std::uint64_t index, NodeId source, std::uint32_t d);

// Breadth-first search over the realized edges of one world with a hop
// limit. Edge presence is asked of a predicate, so sampled worlds only
// evaluate the edges incident to visited nodes. Reuses its buffers.
class HopLimitedSearch {
 public:
  explicit HopLimitedSearch(const UncertainGraph& graph);

  // Visits every node within `d` hops of source (source included).
  template <typename Present, typename Visit>
  void run(NodeId source, std::uint32_t d, Present&& present, Visit&& visit);

  // Same, for the sampled world identified by `world_key`.
  template <typename Visit>
  void run(std::uint64_t world_key, NodeId source, std::uint32_t d, Visit&& visit) {
    run(source, d,
        [this, world_key](EdgeId e) { return edge_present(graph_->edge(e), world_key, e); },
        std::forward<Visit>(visit));
  }

 private:
  const UncertainGraph* graph_;
  std::vector<std::uint32_t> stamp_;
  std::vector<NodeId> queue_;
  std::vector<std::uint32_t> hops_;
  std::uint32_t epoch_ = 0;
};

/// A growable, seeded collection of possible worlds.
///
/// World i is a pure function of (graph, seed, i), so growing the pool never
/// alters existing worlds and the content does not depend on the number of
/// workers used to generate it. Labels are stored world-major.
class WorldSamplePool {
 public:
  WorldSamplePool(const UncertainGraph& graph, std::uint64_t seed, int workers = 1);

  // Grows the pool to `target` worlds; smaller targets are a no-op.
  void extend(std::size_t target);

  std::size_t size() const { return size_; }
  std::uint64_t seed() const { return seed_; }
  const UncertainGraph& graph() const { return *graph_; }
  int workers() const { return workers_; }
  void set_workers(int workers) { workers_ = workers < 1 ? 1 : workers; }

  std::span<const NodeId> labels(std::size_t world) const {
    const std::size_t n = graph_->num_nodes();
    return {labels_.data() + world * n, n};
  }
  WorldSample world(std::size_t i) const;

 private:
  const UncertainGraph* graph_;
  std::uint64_t seed_;
  int workers_;
  std::size_t size_ = 0;
  std::vector<NodeId> labels_;
};

template <typename Present, typename Visit>
void HopLimitedSearch::run(NodeId source, std::uint32_t d, Present&& present, Visit&& visit) {
  if (++epoch_ == 0) {
    std::fill(stamp_.begin(), stamp_.end(), 0u);
    epoch_ = 1;
  }
  queue_.clear();
  queue_.push_back(source);
  stamp_[source] = epoch_;
  hops_[source] = 0;
  for (std::size_t head = 0; head < queue_.size(); ++head) {
    const NodeId u = queue_[head];
    visit(u);
    if (hops_[u] == d) continue;
    for (const Incidence& inc : graph_->incident(u)) {
      if (stamp_[inc.neighbor] == epoch_) continue;
      if (!present(inc.edge)) continue;
      stamp_[inc.neighbor] = epoch_;
      hops_[inc.neighbor] = hops_[u] + 1;
      queue_.push_back(inc.neighbor);
    }
  }
}

}  // namespace ugraph
