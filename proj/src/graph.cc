#include "ugraph/graph.h"

#include <cmath>
#include <fstream>
#include <set>
#include <sstream>
#include <utility>

#include "ugraph/union_find.h"

namespace ugraph {

GraphParseError::GraphParseError(std::size_t line, const std::string& what)
    : ValueError("line " + std::to_string(line) + ": " + what), line_(line) {}

namespace {

std::vector<std::string> numeric_labels(std::size_t n) {
  std::vector<std::string> labels;
  labels.reserve(n);
  for (std::size_t i = 0; i < n; ++i) labels.push_back(std::to_string(i));
  return labels;
}

bool valid_probability(double p) { return std::isfinite(p) && p > 0.0 && p <= 1.0; }

}  // namespace

UncertainGraph::UncertainGraph(std::size_t n, std::vector<Edge> edges)
    : UncertainGraph(numeric_labels(n), std::move(edges)) {}

UncertainGraph::UncertainGraph(std::vector<std::string> labels, std::vector<Edge> edges)
    : labels_(std::move(labels)), edges_(std::move(edges)) {
  for (NodeId u = 0; u < labels_.size(); ++u) {
    if (!index_.emplace(labels_[u], u).second) {
      throw ValueError("duplicate node label '" + labels_[u] + "'");
    }
  }
  std::set<std::pair<NodeId, NodeId>> seen;
  for (const Edge& e : edges_) {
    if (e.u >= labels_.size() || e.v >= labels_.size()) {
      throw ValueError("edge endpoint out of range");
    }
    if (e.u == e.v) throw ValueError("self-loop on node '" + labels_[e.u] + "'");
    if (!valid_probability(e.p)) {
      throw ValueError("edge probability " + std::to_string(e.p) + " outside (0,1]");
    }
    if (!seen.emplace(std::min(e.u, e.v), std::max(e.u, e.v)).second) {
      throw ValueError("duplicate edge " + labels_[e.u] + " " + labels_[e.v]);
    }
  }
  build();
}

void UncertainGraph::build() {
  const std::size_t n = labels_.size();
  offsets_.assign(n + 1, 0);
  for (const Edge& e : edges_) {
    ++offsets_[e.u + 1];
    ++offsets_[e.v + 1];
  }
  for (std::size_t u = 0; u < n; ++u) offsets_[u + 1] += offsets_[u];
  adjacency_.resize(offsets_[n]);
  std::vector<std::size_t> cursor(offsets_.begin(), offsets_.end() - 1);
  for (EdgeId id = 0; id < edges_.size(); ++id) {
    const Edge& e = edges_[id];
    adjacency_[cursor[e.u]++] = {e.v, id};
    adjacency_[cursor[e.v]++] = {e.u, id};
  }
}

std::size_t UncertainGraph::num_uncertain_edges() const {
  std::size_t count = 0;
  for (const Edge& e : edges_) count += e.certain() ? 0 : 1;
  return count;
}

std::optional<NodeId> UncertainGraph::find(std::string_view label) const {
  auto it = index_.find(std::string(label));
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

NodeId UncertainGraph::require(std::string_view label) const {
  if (auto id = find(label)) return *id;
  throw ValueError("unknown node '" + std::string(label) + "'");
}

std::size_t UncertainGraph::num_components() const {
  UnionFind sets(num_nodes());
  std::size_t components = num_nodes();
  for (const Edge& e : edges_) components -= sets.unite(e.u, e.v) ? 1 : 0;
  return components;
}

UncertainGraph load_graph(std::istream& in) {
  std::vector<std::string> labels;
  std::unordered_map<std::string, NodeId> index;
  std::vector<Edge> edges;
  std::set<std::pair<NodeId, NodeId>> seen;

  auto intern = [&](const std::string& label) {
    auto [it, inserted] = index.emplace(label, static_cast<NodeId>(labels.size()));
    if (inserted) labels.push_back(label);
    return it->second;
  };

  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    std::istringstream fields(line);
    std::string a, b, p_text, extra;
    if (!(fields >> a)) continue;
    if (a.front() == '#') continue;
    if (!(fields >> b >> p_text) || (fields >> extra)) {
      throw GraphParseError(line_no, "expected '<u> <v> <p>'");
    }
    double p = 0.0;
    std::size_t consumed = 0;
    try {
      p = std::stod(p_text, &consumed);
    } catch (const std::exception&) {
      consumed = 0;
    }
    if (consumed != p_text.size()) {
      throw GraphParseError(line_no, "unparsable probability '" + p_text + "'");
    }
    if (!valid_probability(p)) {
      throw GraphParseError(line_no, "probability " + p_text + " out of range (0,1]");
    }
    if (a == b) throw GraphParseError(line_no, "self-loop on '" + a + "'");
    const NodeId u = intern(a);
    const NodeId v = intern(b);
    if (!seen.emplace(std::min(u, v), std::max(u, v)).second) {
      throw GraphParseError(line_no, "duplicate edge " + a + " " + b);
    }
    edges.push_back({u, v, p});
  }
  return UncertainGraph(std::move(labels), std::move(edges));
}

UncertainGraph load_graph_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ValueError("cannot open graph file '" + path + "'");
  return load_graph(in);
}

double collaboration_probability(double count) {
  if (!(count >= 0.0)) throw ValueError("collaboration count must be non-negative");
  return 1.0 - std::exp(-count / 2.0);
}

}  // namespace ugraph
