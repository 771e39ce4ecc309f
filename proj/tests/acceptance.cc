// Acceptance checks, one line per criterion. Exit status is the number of
// failed criteria.
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <sstream>
#include <string>

#include "test_support.h"
#include "ugraph/cli.h"
#include "ugraph/clustering.h"
#include "ugraph/metrics.h"
#include "ugraph/oracle.h"
#include "ugraph/report.h"

namespace ugraph {
namespace {

namespace fs = std::filesystem;
using Clock = std::chrono::steady_clock;

double elapsed(Clock::time_point t) { return std::chrono::duration<double>(Clock::now() - t).count(); }

struct Verdict {
  bool pass;
  std::string detail;
};

std::string fmt(const char* format, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, format, args...);
  return buf;
}

// Random graphs with n <= 8 and at most 12 uncertain edges.
std::vector<UncertainGraph> corpus(std::size_t count, std::uint64_t seed, bool connected) {
  std::mt19937_64 rng(seed);
  std::vector<UncertainGraph> graphs;
  for (std::size_t i = 0; i < count; ++i) {
    const std::size_t n = 3 + i % 6;
    graphs.push_back(testing::random_graph(rng, n, std::min<std::size_t>(12, n * (n - 1) / 2), connected));
  }
  return graphs;
}

std::vector<std::vector<double>> exact_matrix(const UncertainGraph& g) {
  std::vector<std::vector<double>> m;
  for (NodeId u = 0; u < g.num_nodes(); ++u) m.push_back(exact_connection_row(g, u, std::nullopt));
  return m;
}

Verdict exact_oracle() {
  const auto start = Clock::now();
  const double tri = exact_connection_prob(testing::triangle(), 0, 1);
  const double path = exact_connection_prob(testing::path3(), 0, 2);
  const double secs = elapsed(start);
  const bool ok = std::abs(tri - 0.625) <= 1e-12 && std::abs(path - 0.25) <= 1e-12 && secs < 1.0;
  return {ok, fmt("triangle %.15g, path %.15g, %.4f s", tri, path, secs)};
}

Verdict triangle_inequality() {
  const auto start = Clock::now();
  std::size_t violations = 0;
  std::size_t triples = 0;
  for (const auto& g : corpus(1000, 101, false)) {
    const auto p = exact_matrix(g);
    const std::size_t n = g.num_nodes();
    for (NodeId u = 0; u < n; ++u)
      for (NodeId v = 0; v < n; ++v)
        for (NodeId z = 0; z < n; ++z, ++triples) violations += p[u][z] + 1e-12 < p[u][v] * p[v][z];
  }
  const double secs = elapsed(start);
  return {violations == 0 && secs < 60.0,
          fmt("%zu violations over %zu triples in 1000 graphs, %.2f s", violations, triples, secs)};
}

Verdict conditioning() {
  std::size_t monotone = 0;
  std::size_t total_prob = 0;
  std::size_t checks = 0;
  for (const auto& g : corpus(1000, 101, false)) {
    const std::size_t n = g.num_nodes();
    const auto base = exact_matrix(g);
    for (EdgeId e = 0; e < g.num_edges(); ++e) {
      const double p = g.edge(e).p;
      if (p >= 1.0) continue;
      for (NodeId u = 0; u < n; ++u) {
        for (NodeId v = u + 1; v < n; ++v, ++checks) {
          const double with = exact_conditional_prob(g, u, v, e, true);
          const double without = exact_conditional_prob(g, u, v, e, false);
          monotone += with + 1e-12 < without;
          total_prob += std::abs(p * with + (1 - p) * without - base[u][v]) > 1e-12;
        }
      }
    }
  }
  return {monotone == 0 && total_prob == 0,
          fmt("%zu monotonicity and %zu decomposition violations over %zu (pair, edge) checks",
              monotone, total_prob, checks)};
}

Verdict calibration() {
  const double eps = 0.1;
  const double delta = 0.05;
  const int trials = 200;
  std::mt19937_64 rng(404);
  std::size_t pairs = 0;
  std::size_t bad_pairs = 0;
  double worst = 0.0;
  for (int graph = 0; graph < 5; ++graph) {
    const UncertainGraph g = testing::random_graph(rng, 8, 12, true);
    const auto p = exact_matrix(g);
    struct Pair {
      NodeId u, v;
      std::size_t r;
      int misses;
    };
    std::vector<Pair> todo;
    std::size_t max_r = 0;
    for (NodeId u = 0; u < 8; ++u)
      for (NodeId v = u + 1; v < 8; ++v) {
        // Pairs below 0.01 would need over 10^5 worlds per trial.
        if (p[u][v] < 0.01) continue;
        const std::size_t r = required_samples_pointwise(eps, delta, p[u][v]);
        todo.push_back({u, v, r, 0});
        max_r = std::max(max_r, r);
      }
    for (int t = 0; t < trials; ++t) {
      WorldSamplePool pool(g, splitmix64(static_cast<std::uint64_t>(graph) << 32 | t));
      pool.extend(max_r);
      for (auto& pr : todo) {
        std::size_t hits = 0;
        for (std::size_t w = 0; w < pr.r; ++w) {
          const auto labels = pool.labels(w);
          hits += labels[pr.u] == labels[pr.v];
        }
        const double est = static_cast<double>(hits) / static_cast<double>(pr.r);
        pr.misses += std::abs(est - p[pr.u][pr.v]) > eps * p[pr.u][pr.v];
      }
    }
    for (const auto& pr : todo) {
      ++pairs;
      const double rate = static_cast<double>(pr.misses) / trials;
      worst = std::max(worst, rate);
      bad_pairs += rate > 0.10;
    }
  }
  return {bad_pairs == 0 && pairs > 0,
          fmt("%zu pairs, worst miss rate %.3f (limit 0.10), %zu pairs over", pairs, worst, bad_pairs)};
}

// Exact-mode and sampled-mode driver checks against brute-force optima.
Verdict guarantee(bool average) {
  const double gamma = 0.1;
  const double eps = 0.1;
  std::size_t runs = 0;
  std::size_t exact_ok = 0;
  std::size_t mc_ok = 0;
  double tightest = INFINITY;
  const auto graphs = corpus(210, average ? 606 : 505, true);
  for (std::size_t i = 0; i < graphs.size(); ++i) {
    const UncertainGraph& g = graphs[i];
    const std::size_t n = g.num_nodes();
    const std::size_t k = 1 + i % 3;
    const double opt =
        brute_force_optimum(g, k, average ? Objective::kAvgProb : Objective::kMinProb).value;
    const double bound = average ? std::pow(opt / ((1 + gamma) * harmonic(n)), 3)
                                 : opt * opt / (1 + gamma);
    ExactEstimator exact(g);
    auto measure = [&](const ClusteringResult& r) {
      if (r.outcome != Outcome::kClustered) return -1.0;
      return average ? avg_prob(r.clustering, exact) : min_prob(r.clustering, exact);
    };
    DriverOptions opts;
    opts.gamma = gamma;
    const double got = measure(average ? acp(exact, k, opts) : mcp(exact, k, opts));
    ++runs;
    exact_ok += got + 1e-12 >= bound;
    if (bound > 0) tightest = std::min(tightest, got / bound);
    MonteCarloEstimator mc(g, 7000 + i, SamplingConfig{});
    const double sampled = measure(average ? acp(mc, k, opts) : mcp(mc, k, opts));
    mc_ok += sampled + 1e-12 >= (1 - eps) * bound;
  }
  const double mc_rate = static_cast<double>(mc_ok) / runs;
  return {exact_ok == runs && mc_rate >= 0.95,
          fmt("exact %zu/%zu, sampled %.3f (need 0.95), smallest value/bound %.3f", exact_ok, runs,
              mc_rate, tightest)};
}

Verdict outliers() {
  std::size_t checks = 0;
  std::size_t fails = 0;
  std::mt19937_64 rng(707);
  for (int i = 0; i < 300; ++i) {
    const std::size_t n = 3 + i % 5;
    const UncertainGraph g = testing::random_graph(rng, n, 12, i % 4 != 0);
    const auto p = exact_matrix(g);
    ExactEstimator est(g);
    for (std::size_t k = 1; k <= std::min<std::size_t>(3, n - 1); ++k) {
      for (double q : {0.95, 0.8, 0.6, 0.4, 0.2, 0.05}) {
        const Clustering c = min_partial(est, k, q * q * q, n, q);
        ++checks;
        fails += n - c.covered() > testing::min_uncovered(p, k, q);
      }
    }
  }
  return {fails == 0, fmt("%zu of %zu runs exceeded the optimal outlier count", fails, checks)};
}

bool same(const Clustering& a, const Clustering& b) {
  return a.centers == b.centers && a.assignment == b.assignment && a.estimate == b.estimate;
}

Verdict depth_limit() {
  std::size_t mismatches = 0;
  std::size_t runs = 0;
  std::size_t non_monotone = 0;
  std::mt19937_64 rng(808);
  for (int i = 0; i < 60; ++i) {
    const std::size_t n = 4 + i % 5;
    const UncertainGraph g = testing::random_graph(rng, n, 12, i % 3 != 0);
    const auto d = static_cast<std::uint32_t>(n - 1);
    DriverOptions deep;
    deep.depth = d;
    const std::size_t k = 1 + i % 3;
    {
      MonteCarloEstimator a(g, i, SamplingConfig{}), b(g, i, SamplingConfig{});
      mismatches += !same(mcp(a, k, {}).clustering, mcp(b, k, deep).clustering);
    }
    {
      MonteCarloEstimator a(g, i, SamplingConfig{}), b(g, i, SamplingConfig{});
      mismatches += !same(acp(a, k, {}).clustering, acp(b, k, deep).clustering);
    }
    {
      MonteCarloEstimator a(g, i, 500), b(g, i, 500);
      mismatches += !same(min_partial(a, k, 0.4, n, 0.6), min_partial_d(b, k, 0.4, n, 0.6, d, d));
    }
    runs += 3;
    for (NodeId u = 0; u < n; ++u) {
      std::vector<double> prev(n, 0.0);
      for (std::uint32_t depth = 1; depth < n; ++depth) {
        const auto row = exact_connection_row(g, u, depth);
        for (NodeId v = 0; v < n; ++v) non_monotone += row[v] + 1e-12 < prev[v];
        prev = row;
      }
    }
  }
  return {mismatches == 0 && non_monotone == 0,
          fmt("%zu of %zu full-depth runs differ; %zu depth monotonicity violations", mismatches,
              runs, non_monotone)};
}

struct Workspace {
  fs::path dir = fs::temp_directory_path() / "ugraph_acceptance";
  Workspace() { fs::create_directories(dir); }
  ~Workspace() { fs::remove_all(dir); }
  std::string write(const std::string& name, const std::string& text) const {
    std::ofstream(dir / name) << text;
    return (dir / name).string();
  }
  std::string at(const std::string& name) const { return (dir / name).string(); }
};

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  std::stringstream s;
  s << in.rdbuf();
  return s.str();
}

int cli_run(std::vector<std::string> args) {
  std::ostringstream out, err;
  return cli::run(args, out, err);
}

Verdict determinism() {
  Workspace ws;
  std::mt19937_64 rng(909);
  const UncertainGraph g = testing::random_graph(rng, 120, 300, true);
  std::string text;
  for (const Edge& e : g.edges()) text += "v" + std::to_string(e.u) + " v" + std::to_string(e.v) + " " + fmt("%.6f", e.p) + "\n";
  const std::string graph = ws.write("g.txt", text);
  std::string truth_text = "c0";
  for (int i = 0; i < 30; ++i) truth_text += " v" + std::to_string(i);
  const std::string truth = ws.write("truth.txt", truth_text + "\nc1 v50 v51 v52\n");
  cli_run({"mcp", graph, "--k", "5", "--output", ws.at("base.json")});

  const std::vector<std::vector<std::string>> commands = {
      {"mcp", graph, "--k", "5"},
      {"mcp", graph, "--k", "5", "--depth", "3"},
      {"acp", graph, "--k", "5"},
      {"acp", graph, "--k", "5", "--sample-mode", "theory"},
      {"gmm", graph, "--k", "5"},
      {"metrics", graph, ws.at("base.json")},
      {"estimate", graph, "v0", "v7"},
      {"eval", graph, ws.at("base.json"), truth},
      {"sweep", graph, "--ks", "2,4", "--algorithm", "acp"},
  };
  std::size_t differing = 0;
  for (std::size_t c = 0; c < commands.size(); ++c) {
    std::string first;
    for (const char* workers : {"1", "4", "1", "4"}) {
      auto args = commands[c];
      const std::string out = ws.at("out" + std::to_string(c) + ".json");
      args.insert(args.end(), {"--workers", workers, "--output", out});
      if (args[0] == "eval") args.erase(args.end() - 4, args.end() - 2);
      cli_run(args);
      const std::string doc = slurp(out);
      if (first.empty()) first = doc;
      differing += doc.empty() || doc != first;
    }
  }
  // The oracle has no worker-dependent sampling; still checked for stable output.
  std::string oracle_first;
  for (int rep = 0; rep < 2; ++rep) {
    cli_run({"oracle", ws.write("tri.txt", "u v 0.5\nv w 0.5\nu w 0.5\n"), "u", "v", "--output", ws.at("o.json")});
    const std::string doc = slurp(ws.at("o.json"));
    if (oracle_first.empty()) oracle_first = doc;
    differing += doc.empty() || doc != oracle_first;
  }
  return {differing == 0,
          fmt("%zu of %zu repeated runs differ across worker counts 1 and 4", differing,
              commands.size() * 4 + 2)};
}

Verdict sample_formulas() {
  const std::size_t mcp_r = samples_mcp(0.5, 0.1, 0.1, 1e-4, 100);
  const std::size_t acp_r = samples_acp(0.5, 0.1, 0.1, 1e-4, 100);
  // Direct evaluation: floor(log_1.1(10^4)) = 96, and log_1.1(H(100) 10^4) = 113.9...
  const double mcp_direct = std::ceil(12.0 / (0.5 * 0.01) * std::log(2.0 * 1e6 * 97.0));
  const double acp_direct = std::ceil(12.0 / (0.125 * 0.01) * std::log(2.0 * 1e6 * 114.0));
  bool monotone = true;
  double prev_m = 0;
  double prev_a = 0;
  for (double q = 1.0; q > 1e-3; q *= 0.97) {
    const double m = static_cast<double>(samples_mcp(q, 0.1, 0.1, 1e-4, 100));
    const double a = static_cast<double>(samples_acp(q, 0.1, 0.1, 1e-4, 100));
    monotone = monotone && m >= prev_m && a >= prev_a;
    prev_m = m;
    prev_a = a;
  }
  const bool ok = mcp_r == 45801 && acp_r == 184751 && mcp_r == mcp_direct &&
                  acp_r == acp_direct && monotone;
  return {ok, fmt("samples_mcp %zu (direct %.0f), samples_acp %zu (direct %.0f), monotone %s",
                  mcp_r, mcp_direct, acp_r, acp_direct, monotone ? "yes" : "no")};
}

Verdict collaboration_mapping() {
  const double a = collaboration_probability(1);
  const double b = collaboration_probability(2);
  const double c = collaboration_probability(5);
  const bool ok = std::abs(a - 0.393) < 5e-4 && std::abs(b - 0.632) < 5e-4 &&
                  std::abs(c - 0.918) < 5e-4 && std::abs(a - 0.39) <= 0.01 &&
                  std::abs(b - 0.63) <= 0.01 && std::abs(c - 0.91) <= 0.01;
  return {ok, fmt("x=1: %.4f, x=2: %.4f, x=5: %.4f", a, b, c)};
}

Verdict predictive_pipeline() {
  Workspace ws;
  std::string graph_text;
  std::string truth_text;
  // Six certain cliques of four members.
  for (int c = 0; c < 6; ++c) {
    truth_text += "complex" + std::to_string(c);
    for (int a = 0; a < 4; ++a) {
      truth_text += " p" + std::to_string(4 * c + a);
      for (int b = a + 1; b < 4; ++b) {
        graph_text += "p" + std::to_string(4 * c + a) + " p" + std::to_string(4 * c + b) + " 1\n";
      }
    }
    truth_text += "\n";
  }
  const std::string graph = ws.write("g.txt", graph_text);
  const std::string truth = ws.write("truth.txt", truth_text);
  auto rates = [&](const char* k) {
    cli_run({"mcp", graph, "--k", k, "--output", ws.at("run.json")});
    std::ostringstream out, err;
    cli::run({"eval", graph, ws.at("run.json"), truth}, out, err);
    const auto doc = Json::parse(out.str());
    return std::pair<double, double>{doc["tpr"], doc["fpr"]};
  };
  const auto six = rates("6");
  // A single cluster needs a connected graph: join the cliques with certain edges.
  graph_text += "p3 p4 1\np7 p8 1\np11 p12 1\np15 p16 1\np19 p20 1\n";
  ws.write("g.txt", graph_text);
  const auto one = rates("1");
  const bool ok = six.first == 1.0 && six.second == 0.0 && one.first == 1.0 && one.second == 1.0;
  return {ok, fmt("matching clusters TPR %.3f FPR %.3f; single cluster TPR %.3f FPR %.3f",
                  six.first, six.second, one.first, one.second)};
}

Verdict desk_scale() {
  Workspace ws;
  std::mt19937_64 rng(1313);
  const std::size_t n = 2559;
  const std::size_t m = 7031;
  std::set<std::pair<std::size_t, std::size_t>> seen;
  std::string text;
  auto add = [&](std::size_t a, std::size_t b) {
    if (a == b || !seen.insert(std::minmax(a, b)).second) return;
    std::uniform_real_distribution<double> high(0.9, 1.0), low(0.27, 0.9);
    const double p = rng() % 4 == 0 ? high(rng) : low(rng);
    text += "prot" + std::to_string(a) + " prot" + std::to_string(b) + " " + fmt("%.4f", p) + "\n";
  };
  for (std::size_t v = 1; v < n; ++v) add(rng() % v, v);
  while (seen.size() < m) add(rng() % n, rng() % n);
  const std::string graph = ws.write("krogan_like.txt", text);
  const auto start = Clock::now();
  const int code = cli_run({"mcp", graph, "--k", "100", "--sample-mode", "practical", "--output",
                            ws.at("run.json")});
  const double secs = elapsed(start);
  const auto doc = Json::parse(slurp(ws.at("run.json")));
  return {code == 0 && secs < 60.0,
          fmt("%zu nodes, %zu edges, k=100: exit %d, %.2f s, min_prob %.3f, r=%zu", n, seen.size(),
              code, secs, doc["metrics"]["min_prob"].get<double>(),
              doc["sampling"]["r"].get<std::size_t>())};
}

Verdict avpr_grouping() {
  std::mt19937_64 rng(1414);
  std::size_t worlds = 0;
  std::size_t mismatches = 0;
  for (int i = 0; i < 100; ++i) {
    const std::size_t n = 2 + rng() % 49;
    const UncertainGraph g = testing::random_graph(rng, n, 2 * n, i % 2 == 0);
    const std::size_t k = 1 + rng() % n;
    Clustering c;
    for (NodeId u = 0; u < k; ++u) c.centers.push_back(u);
    for (NodeId u = 0; u < n; ++u) c.assignment.emplace_back(u < k ? u : rng() % k);
    c.estimate.assign(n, 0.0);
    WorldSamplePool pool(g, static_cast<std::uint64_t>(i));
    pool.extend(50);
    for (std::size_t w = 0; w < pool.size(); ++w, ++worlds) {
      const auto labels = pool.labels(w);
      std::uint64_t inner = 0;
      std::uint64_t outer = 0;
      for (NodeId u = 0; u < n; ++u)
        for (NodeId v = u + 1; v < n; ++v) {
          if (labels[u] != labels[v]) continue;
          (c.assignment[u] == c.assignment[v] ? inner : outer) += 1;
        }
      const AvprCounts fast = world_avpr_counts(c, labels);
      mismatches += fast.inner_connected != inner || fast.outer_connected != outer;
    }
  }
  return {mismatches == 0, fmt("%zu of %zu worlds differ from the all-pairs count", mismatches, worlds)};
}

}  // namespace
}  // namespace ugraph

int main() {
  using namespace ugraph;
  const std::vector<std::pair<const char*, std::function<Verdict()>>> criteria = {
      {"exact oracle values", exact_oracle},
      {"triangle inequality", triangle_inequality},
      {"conditioning on an edge", conditioning},
      {"estimator calibration", calibration},
      {"min-probability guarantee", [] { return guarantee(false); }},
      {"average-probability guarantee", [] { return guarantee(true); }},
      {"outlier bound", outliers},
      {"depth-limit consistency", depth_limit},
      {"determinism across workers", determinism},
      {"sample-size formulas", sample_formulas},
      {"collaboration probability mapping", collaboration_mapping},
      {"predictive evaluation", predictive_pipeline},
      {"desk-scale performance", desk_scale},
      {"grouped pair counting", avpr_grouping},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Verdict v{false, ""};
    const auto start = Clock::now();
    try {
      v = criteria[i].second();
    } catch (const std::exception& e) {
      v = {false, std::string("exception: ") + e.what()};
    }
    std::printf("criterion %2zu %s  %s: %s [%.1f s]\n", i + 1, v.pass ? "PASS" : "FAIL",
                criteria[i].first, v.detail.c_str(), elapsed(start));
    std::fflush(stdout);
    failed += !v.pass;
  }
  return failed;
}
