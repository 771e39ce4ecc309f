#pragma once

#include <cstdint>
#include <memory>
#include <span>
#include <unordered_map>
#include <vector>

#include "ugraph/graph.h"
#include "ugraph/oracle.h"
#include "ugraph/world.h"

namespace ugraph {

enum class Objective { kMinProb, kAvgProb };
enum class SampleMode { kPractical, kTheory };

/// Source of pairwise connection probabilities for the clustering drivers.
///
/// Rows are cached per (source, depth). A cached span stays valid until the
/// next call to prepare(), which may grow the underlying sample pool.
class ConnectionEstimator {
 public:
  explicit ConnectionEstimator(const UncertainGraph& graph) : graph_(&graph) {}
  virtual ~ConnectionEstimator() = default;

  ConnectionEstimator(const ConnectionEstimator&) = delete;
  ConnectionEstimator& operator=(const ConnectionEstimator&) = delete;

  // Estimated Pr(source ~ u) (or within `depth` hops) for every node u.
  std::span<const double> row(NodeId source, Depth depth);
  double estimate(NodeId u, NodeId v, Depth depth) { return row(u, depth)[v]; }

  // Admission tests compare estimates against (1 - slack) * q.
  virtual double threshold_slack() const = 0;

  // Called before every min-partial run at guess q.
  virtual void prepare(double q, Objective objective) {
    (void)q;
    (void)objective;
  }

  // Number of sampled worlds backing the estimates; 0 for exact values.
  virtual std::size_t samples() const { return 0; }

  const UncertainGraph& graph() const { return *graph_; }

 protected:
  virtual std::vector<double> compute_row(NodeId source, Depth depth) = 0;
  void clear_cache() { cache_.clear(); }

 private:
  const UncertainGraph* graph_;
  std::unordered_map<std::uint64_t, std::vector<double>> cache_;
};

// Exact probabilities by world enumeration; small graphs only.
class ExactEstimator final : public ConnectionEstimator {
 public:
  ExactEstimator(const UncertainGraph& graph, ExactOptions options = {});

  double threshold_slack() const override { return 0.0; }

 protected:
  std::vector<double> compute_row(NodeId source, Depth depth) override;

 private:
  ExactOptions options_;
};

struct SamplingConfig {
  SampleMode mode = SampleMode::kPractical;
  std::size_t initial_samples = 50;
  double epsilon = 0.1;
  double gamma = 0.1;
  double p_low = 1e-4;
};

/// Monte Carlo estimates from a seeded world pool.
///
/// With progressive sampling, prepare() sizes the pool for each guess: theory
/// mode uses the union-bound sample counts directly; practical mode starts at
/// `initial_samples` and doubles whenever the guess drops below every earlier
/// guess, capped by the theory count. The pool never shrinks.
class MonteCarloEstimator final : public ConnectionEstimator {
 public:
  // Progressive pool driven by prepare().
  MonteCarloEstimator(const UncertainGraph& graph, std::uint64_t seed, SamplingConfig config,
                      int workers = 1);
  // Fixed pool of `samples` worlds; prepare() is a no-op.
  MonteCarloEstimator(const UncertainGraph& graph, std::uint64_t seed, std::size_t samples,
                      double epsilon = 0.1, int workers = 1);

  double threshold_slack() const override { return config_.epsilon / 2.0; }
  void prepare(double q, Objective objective) override;
  std::size_t samples() const override { return pool_.size(); }

  const WorldSamplePool& pool() const { return pool_; }
  // Target pool size for a guess, given the current state.
  std::size_t planned_samples(double q, Objective objective) const;

 protected:
  std::vector<double> compute_row(NodeId source, Depth depth) override;

 private:
  SamplingConfig config_;
  bool progressive_;
  WorldSamplePool pool_;
  std::optional<double> lowest_guess_;
};

}  // namespace ugraph
