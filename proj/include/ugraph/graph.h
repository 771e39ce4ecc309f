#pragma once

#include <istream>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "ugraph/types.h"

namespace ugraph {

struct Edge {
  NodeId u;
  NodeId v;
  double p;

  bool certain() const { return p >= 1.0; }
};

struct Incidence {
  NodeId neighbor;
  EdgeId edge;
};

// Input rejected by load_graph; carries the 1-based line number.
class GraphParseError : public ValueError {
 public:
  GraphParseError(std::size_t line, const std::string& what);
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

/// An undirected graph whose edges exist independently with probability p(e).
///
/// Node ids are dense (0..n-1) and map one-to-one to the string labels seen in
/// the input. Self-loops, duplicate edges and probabilities outside (0,1] are
/// rejected at construction.
class UncertainGraph {
 public:
  UncertainGraph() = default;

  // Nodes labelled "0".."n-1".
  UncertainGraph(std::size_t n, std::vector<Edge> edges);
  UncertainGraph(std::vector<std::string> labels, std::vector<Edge> edges);

  std::size_t num_nodes() const { return labels_.size(); }
  std::size_t num_edges() const { return edges_.size(); }
  std::size_t num_uncertain_edges() const;

  std::span<const Edge> edges() const { return edges_; }
  const Edge& edge(EdgeId e) const { return edges_[e]; }
  std::span<const Incidence> incident(NodeId u) const {
    return {adjacency_.data() + offsets_[u], adjacency_.data() + offsets_[u + 1]};
  }

  const std::string& label(NodeId u) const { return labels_[u]; }
  std::span<const std::string> labels() const { return labels_; }
  std::optional<NodeId> find(std::string_view label) const;
  NodeId require(std::string_view label) const;

  // Connected components of the graph with every edge present.
  std::size_t num_components() const;

 private:
  void build();

  std::vector<std::string> labels_;
  std::unordered_map<std::string, NodeId> index_;
  std::vector<Edge> edges_;
  std::vector<std::size_t> offsets_;
  std::vector<Incidence> adjacency_;
};

// Parses the whitespace-separated edge list format `<u> <v> <p>`; '#' lines
// and blank lines are skipped.
UncertainGraph load_graph(std::istream& in);
UncertainGraph load_graph_file(const std::string& path);

// Edge probability for a collaboration count x: 1 - exp(-x/2).
double collaboration_probability(double count);

}  // namespace ugraph
