#pragma once

#include <cmath>
#include <span>
#include <vector>

#include "ugraph/clustering.h"
#include "ugraph/graph.h"

namespace ugraph {

// Edge length for shortest paths: ln(1/p). Certain edges have length 0.
inline double edge_weight(double p) { return -std::log(p); }

// Distances from `sources` (multi-source) under ln(1/p) lengths; infinity
// for unreachable nodes.
std::vector<double> shortest_distances(const UncertainGraph& graph,
                                       std::span<const NodeId> sources);

// Gonzalez farthest-point k-center on ln(1/p) lengths. The first center is
// node 0; unreachable nodes count as farthest. Estimates are exp(-dist).
Clustering gmm(const UncertainGraph& graph, std::size_t k);

}  // namespace ugraph
