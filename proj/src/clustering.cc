#include "ugraph/clustering.h"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>

namespace ugraph {

std::size_t Clustering::covered() const {
  return static_cast<std::size_t>(
      std::count_if(assignment.begin(), assignment.end(), [](const auto& a) { return a.has_value(); }));
}

std::vector<std::vector<NodeId>> Clustering::clusters() const {
  std::vector<std::vector<NodeId>> members(centers.size());
  for (NodeId u = 0; u < assignment.size(); ++u) {
    if (assignment[u]) members[*assignment[u]].push_back(u);
  }
  return members;
}

namespace {

void check_k(std::size_t k, std::size_t n) {
  if (k < 1 || k > n) throw ValueError("k must satisfy 1 <= k <= n");
}

// Picks, for every covered non-center node, the center with the highest
// estimate; ties go to the smallest cluster index.
void assign_to_best_center(Clustering& c, ConnectionEstimator& estimator, Depth depth,
                           bool include_uncovered) {
  const std::size_t n = c.num_nodes();
  std::vector<std::span<const double>> rows;
  rows.reserve(c.k());
  for (NodeId center : c.centers) rows.push_back(estimator.row(center, depth));
  std::vector<std::uint8_t> is_center(n, 0);
  for (ClusterIndex i = 0; i < c.k(); ++i) {
    is_center[c.centers[i]] = 1;
    c.assignment[c.centers[i]] = i;
    c.estimate[c.centers[i]] = 1.0;
  }
  for (NodeId u = 0; u < n; ++u) {
    if (is_center[u]) continue;
    if (!c.assignment[u] && !include_uncovered) continue;
    ClusterIndex best = 0;
    for (ClusterIndex i = 1; i < c.k(); ++i) {
      if (rows[i][u] > rows[best][u]) best = i;
    }
    c.assignment[u] = best;
    c.estimate[u] = rows[best][u];
  }
}

Clustering partial_clustering(ConnectionEstimator& estimator, std::size_t k, double q,
                              std::size_t alpha, double q_bar, Depth cover_depth,
                              Depth select_depth, const PartialOptions& options) {
  const std::size_t n = estimator.graph().num_nodes();
  check_k(k, n);
  if (!(q > 0.0 && q <= q_bar && q_bar <= 1.0)) {
    throw ValueError("thresholds must satisfy 0 < q <= q_bar <= 1");
  }
  if (alpha < 1) throw ValueError("alpha must be at least 1");

  const double slack = estimator.threshold_slack();
  const double cover_threshold = (1.0 - slack) * q;
  const double select_threshold = (1.0 - slack) * q_bar;

  std::vector<std::uint8_t> uncovered(n, 1);
  std::size_t remaining = n;
  std::vector<NodeId> centers;
  std::mt19937_64 rng(options.candidate_seed.value_or(0));
  std::vector<NodeId> candidates;

  for (std::size_t round = 0; round < k && remaining > 0; ++round) {
    candidates.clear();
    const std::size_t want = std::min(alpha, remaining);
    if (options.candidate_seed) {
      std::vector<NodeId> pool;
      pool.reserve(remaining);
      for (NodeId u = 0; u < n; ++u) {
        if (uncovered[u]) pool.push_back(u);
      }
      std::sample(pool.begin(), pool.end(), std::back_inserter(candidates), want, rng);
    } else {
      for (NodeId u = 0; u < n && candidates.size() < want; ++u) {
        if (uncovered[u]) candidates.push_back(u);
      }
    }

    NodeId center = candidates.front();
    if (candidates.size() > 1) {
      std::size_t best_score = 0;
      bool first = true;
      for (NodeId v : candidates) {
        const auto row = estimator.row(v, select_depth);
        std::size_t score = 0;
        for (NodeId u = 0; u < n; ++u) score += uncovered[u] && row[u] >= select_threshold;
        if (first || score > best_score) {
          center = v;
          best_score = score;
          first = false;
        }
      }
    }
    centers.push_back(center);

    const auto row = estimator.row(center, cover_depth);
    for (NodeId u = 0; u < n; ++u) {
      if (uncovered[u] && (u == center || row[u] >= cover_threshold)) {
        uncovered[u] = 0;
        --remaining;
      }
    }
  }

  // Fewer than k rounds ran only if everything got covered; pad with the
  // smallest ids, preferring nodes that are still uncovered.
  if (centers.size() < k) {
    std::vector<std::uint8_t> taken(n, 0);
    for (NodeId c : centers) taken[c] = 1;
    for (int pass = 0; pass < 2 && centers.size() < k; ++pass) {
      for (NodeId u = 0; u < n && centers.size() < k; ++u) {
        if (taken[u] || (pass == 0 && !uncovered[u])) continue;
        taken[u] = 1;
        if (uncovered[u]) {
          uncovered[u] = 0;
          --remaining;
        }
        centers.push_back(u);
      }
    }
  }

  Clustering result;
  result.centers = std::move(centers);
  result.assignment.assign(n, std::nullopt);
  result.estimate.assign(n, 0.0);
  result.params = {q, slack, cover_depth, estimator.samples()};
  for (NodeId u = 0; u < n; ++u) {
    if (!uncovered[u]) result.assignment[u] = 0;
  }
  assign_to_best_center(result, estimator, cover_depth, false);
  return result;
}

}  // namespace

Clustering min_partial(ConnectionEstimator& estimator, std::size_t k, double q, std::size_t alpha,
                       double q_bar, const PartialOptions& options) {
  return partial_clustering(estimator, k, q, alpha, q_bar, std::nullopt, std::nullopt, options);
}

Clustering min_partial_d(ConnectionEstimator& estimator, std::size_t k, double q,
                         std::size_t alpha, double q_bar, std::uint32_t depth,
                         std::uint32_t selection_depth, const PartialOptions& options) {
  if (selection_depth < 1 || selection_depth > depth) {
    throw ValueError("depths must satisfy 1 <= d' <= d");
  }
  return partial_clustering(estimator, k, q, alpha, q_bar, depth, selection_depth, options);
}

Clustering complete_clustering(const Clustering& partial, ConnectionEstimator& estimator,
                               Depth depth) {
  Clustering full = partial;
  if (!full.full()) assign_to_best_center(full, estimator, depth, true);
  return full;
}

double covered_average(const Clustering& clustering) {
  double sum = 0.0;
  for (NodeId u = 0; u < clustering.num_nodes(); ++u) {
    if (clustering.assignment[u]) sum += clustering.estimate[u];
  }
  return sum / static_cast<double>(clustering.num_nodes());
}

GuessSchedule::GuessSchedule(double gamma, double p_low, ScheduleKind kind)
    : gamma_(gamma), p_low_(p_low), kind_(kind) {
  if (!(gamma > 0.0)) throw ValueError("gamma must be positive");
  if (!(p_low > 0.0 && p_low < 1.0)) throw ValueError("p_low must lie in (0,1)");
}

std::optional<double> GuessSchedule::next() {
  if (last_ <= p_low_) return std::nullopt;
  double q = 1.0;
  if (step_ >= 0) {
    q = kind_ == ScheduleKind::kDoublingGap ? 1.0 - gamma_ * std::ldexp(1.0, step_)
                                            : last_ / (1.0 + gamma_);
  }
  ++step_;
  last_ = std::max(q, p_low_);
  return last_;
}

namespace {

struct GuessRunner {
  ConnectionEstimator& estimator;
  std::size_t k;
  const DriverOptions& options;
  Objective objective;
  RunStats stats;

  Clustering run(double q) {
    estimator.prepare(q, objective);
    stats.guesses.push_back(q);
    ++stats.partial_runs;
    const std::size_t n = estimator.graph().num_nodes();
    const bool theory =
        objective == Objective::kAvgProb && options.acp_variant == AcpVariant::kTheory;
    const double threshold = theory ? q * q * q : q;
    const std::size_t alpha = theory ? n : 1;
    if (!options.depth) return min_partial(estimator, k, threshold, alpha, q, options.partial);
    std::uint32_t selection = *options.depth;
    if (objective == Objective::kAvgProb) selection = std::max<std::uint32_t>(1, *options.depth / 3);
    return min_partial_d(estimator, k, threshold, alpha, q, *options.depth, selection,
                         options.partial);
  }
};

void check_driver(const ConnectionEstimator& estimator, std::size_t k, const DriverOptions& o) {
  check_k(k, estimator.graph().num_nodes());
  if (!(o.gamma > 0.0)) throw ValueError("gamma must be positive");
  if (!(o.p_low > 0.0 && o.p_low < 1.0)) throw ValueError("p_low must lie in (0,1)");
  if (o.depth && (*o.depth < 1 || *o.depth >= estimator.graph().num_nodes())) {
    throw ValueError("depth must satisfy 1 <= d < n");
  }
}

}  // namespace

ClusteringResult mcp(ConnectionEstimator& estimator, std::size_t k, const DriverOptions& options) {
  check_driver(estimator, k, options);
  GuessRunner runner{estimator, k, options, Objective::kMinProb, {}};
  GuessSchedule schedule(options.gamma, options.p_low, options.schedule);

  ClusteringResult result;
  std::optional<double> previous;
  while (auto q = schedule.next()) {
    Clustering c = runner.run(*q);
    if (c.full()) {
      double lo = *q;
      if (options.schedule == ScheduleKind::kDoublingGap && previous) {
        double hi = *previous;
        while (!schedule.bracket_closed(lo, hi)) {
          const double mid = std::sqrt(lo * hi);
          Clustering trial = runner.run(mid);
          if (trial.full()) {
            lo = mid;
            c = std::move(trial);
          } else {
            hi = mid;
          }
        }
      }
      result.outcome = Outcome::kClustered;
      result.clustering = std::move(c);
      runner.stats.final_q = lo;
      runner.stats.samples = estimator.samples();
      result.stats = std::move(runner.stats);
      return result;
    }
    previous = *q;
    result.clustering = std::move(c);
  }
  result.outcome = Outcome::kNoClusteringAboveThreshold;
  runner.stats.final_q = options.p_low;
  runner.stats.samples = estimator.samples();
  result.stats = std::move(runner.stats);
  return result;
}

ClusteringResult acp(ConnectionEstimator& estimator, std::size_t k, const DriverOptions& options) {
  check_driver(estimator, k, options);
  GuessRunner runner{estimator, k, options, Objective::kAvgProb, {}};
  GuessSchedule schedule(options.gamma, options.p_low, options.schedule);
  const bool theory = options.acp_variant == AcpVariant::kTheory;
  auto level = [&](double q) { return theory ? q * q * q : q; };

  Clustering best;
  double phi_best = -1.0;
  double best_q = 1.0;
  auto consider = [&](const Clustering& c, double q) {
    const double phi = covered_average(c);
    if (phi >= phi_best) {
      phi_best = phi;
      best = complete_clustering(c, estimator, options.depth);
      best_q = q;
    }
  };

  std::optional<double> previous;
  while (auto q = schedule.next()) {
    if (previous && level(*q) < phi_best) break;
    Clustering c = runner.run(*q);
    consider(c, *q);
    if (c.full()) {
      if (options.schedule == ScheduleKind::kDoublingGap && previous) {
        double lo = *q;
        double hi = *previous;
        while (!schedule.bracket_closed(lo, hi)) {
          const double mid = std::sqrt(lo * hi);
          Clustering trial = runner.run(mid);
          consider(trial, mid);
          (trial.full() ? lo : hi) = mid;
        }
      }
      break;
    }
    previous = *q;
  }

  ClusteringResult result;
  result.outcome = Outcome::kClustered;
  result.clustering = std::move(best);
  runner.stats.final_q = best_q;
  runner.stats.phi_best = phi_best;
  runner.stats.samples = estimator.samples();
  result.stats = std::move(runner.stats);
  return result;
}

OptimumResult brute_force_optimum(const UncertainGraph& graph, std::size_t k,
                                  Objective objective, Depth depth, std::size_t max_nodes,
                                  const ExactOptions& exact) {
  const std::size_t n = graph.num_nodes();
  if (n > max_nodes) {
    throw LimitError("brute-force optimum refused: " + std::to_string(n) +
                     " nodes exceed the limit of " + std::to_string(max_nodes));
  }
  check_k(k, n);
  ExactEstimator estimator(graph, exact);
  std::vector<std::vector<double>> prob(n);
  for (NodeId u = 0; u < n; ++u) {
    const auto row = estimator.row(u, depth);
    prob[u].assign(row.begin(), row.end());
  }

  std::vector<NodeId> centers(k);
  std::iota(centers.begin(), centers.end(), 0u);
  OptimumResult best{-1.0, {}};
  while (true) {
    double worst = 1.0;
    double sum = 0.0;
    for (NodeId u = 0; u < n; ++u) {
      double reach = 0.0;
      for (NodeId c : centers) reach = std::max(reach, prob[c][u]);
      worst = std::min(worst, reach);
      sum += reach;
    }
    const double value = objective == Objective::kMinProb ? worst : sum / static_cast<double>(n);
    if (value > best.value) {
      best.value = value;
      best.witness.centers = centers;
    }
    // Next k-subset in lexicographic order.
    std::size_t i = k;
    while (i > 0 && centers[i - 1] == n - k + i - 1) --i;
    if (i == 0) break;
    ++centers[i - 1];
    for (std::size_t j = i; j < k; ++j) centers[j] = centers[j - 1] + 1;
  }

  Clustering& w = best.witness;
  w.assignment.assign(n, std::nullopt);
  w.estimate.assign(n, 0.0);
  w.params = {0.0, 0.0, depth, 0};
  best.witness = complete_clustering(w, estimator, depth);
  return best;
}

}  // namespace ugraph
