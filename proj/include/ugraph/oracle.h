#pragma once

#include <optional>
#include <vector>

#include "ugraph/graph.h"
#include "ugraph/world.h"

namespace ugraph {

struct ExactOptions {
  // Enumeration covers 2^m worlds where m counts edges with p < 1.
  std::size_t max_uncertain_edges = 25;
  int workers = 1;
};

// Probability of connection (within `depth` hops when set) from `source` to
// every node, by enumerating all realizations of the uncertain edges.
std::vector<double> exact_connection_row(const UncertainGraph& graph, NodeId source, Depth depth,
                                         const ExactOptions& options = {});

double exact_connection_prob(const UncertainGraph& graph, NodeId u, NodeId v,
                             const ExactOptions& options = {});

double exact_d_connection_prob(const UncertainGraph& graph, NodeId u, NodeId v, std::uint32_t d,
                               const ExactOptions& options = {});

// Pr(u ~ v | edge present) or Pr(u ~ v | edge absent).
double exact_conditional_prob(const UncertainGraph& graph, NodeId u, NodeId v, EdgeId edge,
                              bool present, const ExactOptions& options = {});

struct ProbEstimate {
  double value = 0.0;
  std::size_t r = 0;
  // Probability level the sample size was dimensioned for, when known.
  std::optional<double> regime;
};

// Fraction of pool worlds in which u and v share a component.
ProbEstimate mc_estimate(const WorldSamplePool& pool, NodeId u, NodeId v);

// Fraction of pool worlds in which v is within d hops of u.
ProbEstimate mc_estimate_d(const WorldSamplePool& pool, NodeId u, NodeId v, std::uint32_t d);

// ceil(3 ln(2/delta) / (epsilon^2 p)): samples for an (epsilon, delta)
// relative approximation of a probability of at least p.
std::size_t required_samples_pointwise(double epsilon, double delta, double p);

// Per-guess sample sizes for the min-probability and average-probability
// drivers, union-bounded over n^3 pair events and all guesses down to p_low.
std::size_t samples_mcp(double q, double epsilon, double gamma, double p_low, std::size_t n);
std::size_t samples_acp(double q, double epsilon, double gamma, double p_low, std::size_t n);

double harmonic(std::size_t n);

}  // namespace ugraph
