#include "ugraph/cli.h"

#include <omp.h>

#include <algorithm>
#include <cctype>
#include <chrono>
#include <fstream>
#include <iostream>
#include <memory>

#include "CLI11.hpp"
#include "ugraph/baselines.h"
#include "ugraph/clustering.h"
#include "ugraph/estimator.h"
#include "ugraph/metrics.h"
#include "ugraph/report.h"

namespace ugraph::cli {

namespace {

constexpr std::size_t kGmmEvalSamples = 1000;

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

// The evaluation pool is drawn from a seed unrelated to the clustering pool.
std::uint64_t eval_seed(std::uint64_t seed) { return splitmix64(seed ^ 0x5eed5eed5eed5eedULL); }

int worker_count(const RunConfig& cfg) {
  return cfg.workers > 0 ? cfg.workers : omp_get_max_threads();
}

Depth depth_of(const RunConfig& cfg) {
  return cfg.depth ? Depth(cfg.depth) : std::nullopt;
}

Json params_json(const RunConfig& cfg) {
  Json p;
  p["graph"] = cfg.graph_path;
  p["k"] = cfg.k;
  p["gamma"] = cfg.gamma;
  p["epsilon"] = cfg.epsilon;
  p["p_low"] = cfg.p_low;
  p["depth"] = cfg.depth ? Json(cfg.depth) : Json(nullptr);
  p["seed"] = cfg.seed;
  p["sample_mode"] = cfg.sample_mode;
  p["samples_init"] = cfg.samples_init;
  p["estimator"] = cfg.estimator;
  p["schedule"] = cfg.schedule;
  p["random_candidates"] = cfg.random_candidates;
  p["eval_samples"] = cfg.eval_samples;
  return p;
}

void write_text(const std::string& path, const std::string& text, std::ostream& out) {
  if (path.empty()) {
    out << text;
    return;
  }
  std::ofstream file(path, std::ios::binary);
  if (!file) throw ValueError("cannot write " + path);
  file << text;
}

Json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ValueError("cannot open " + path);
  try {
    return Json::parse(in);
  } catch (const Json::exception& e) {
    throw ValueError(path + ": " + e.what());
  }
}

std::unique_ptr<ConnectionEstimator> fixed_estimator(const RunConfig& cfg,
                                                     const UncertainGraph& graph,
                                                     std::uint64_t seed, std::size_t samples) {
  if (cfg.estimator == "exact") {
    return std::make_unique<ExactEstimator>(graph, ExactOptions{cfg.exact_limit, worker_count(cfg)});
  }
  return std::make_unique<MonteCarloEstimator>(graph, seed, samples, cfg.epsilon,
                                               worker_count(cfg));
}

const WorldSamplePool* pool_of(ConnectionEstimator& est) {
  auto* mc = dynamic_cast<MonteCarloEstimator*>(&est);
  return mc ? &mc->pool() : nullptr;
}

// Re-reads every assigned node's estimate from `est` and scores the result.
void rescore(Clustering& c, ConnectionEstimator& est, Depth depth, bool keep_estimates,
             std::optional<QualityReport>& metrics) {
  if (!keep_estimates) {
    std::vector<std::span<const double>> rows;
    for (NodeId center : c.centers) rows.push_back(est.row(center, depth));
    for (NodeId u = 0; u < c.num_nodes(); ++u) {
      if (c.assignment[u]) c.estimate[u] = rows[*c.assignment[u]][u];
    }
    for (NodeId center : c.centers) c.estimate[center] = 1.0;
  }
  metrics = score_clustering(c, est, depth, pool_of(est));
}

struct Run {
  Json doc;
  Outcome outcome = Outcome::kClustered;
};

Run cluster(const RunConfig& cfg, const std::string& algorithm, const UncertainGraph& graph) {
  if (cfg.k < 1) throw ValueError("--k must be at least 1");
  const Depth depth = depth_of(cfg);
  const int workers = worker_count(cfg);
  RunRecord rec;
  rec.algorithm = algorithm;
  rec.params = params_json(cfg);
  rec.seed = cfg.seed;

  const auto start = Clock::now();
  std::unique_ptr<ConnectionEstimator> est;
  bool keep_estimates = false;
  if (algorithm == "gmm") {
    rec.clustering = gmm(graph, cfg.k);
    keep_estimates = true;
    est = fixed_estimator(cfg, graph, cfg.seed,
                          cfg.eval_samples ? cfg.eval_samples : kGmmEvalSamples);
  } else {
    if (cfg.estimator == "exact") {
      est = std::make_unique<ExactEstimator>(graph, ExactOptions{cfg.exact_limit, workers});
    } else {
      SamplingConfig sampling;
      sampling.mode = cfg.sample_mode == "theory" ? SampleMode::kTheory : SampleMode::kPractical;
      sampling.initial_samples = cfg.samples_init;
      sampling.epsilon = cfg.epsilon;
      sampling.gamma = cfg.gamma;
      sampling.p_low = cfg.p_low;
      est = std::make_unique<MonteCarloEstimator>(graph, cfg.seed, sampling, workers);
    }
    DriverOptions opts;
    opts.gamma = cfg.gamma;
    opts.p_low = cfg.p_low;
    opts.depth = depth;
    opts.schedule =
        cfg.schedule == "geometric" ? ScheduleKind::kGeometric : ScheduleKind::kDoublingGap;
    opts.acp_variant = cfg.sample_mode == "theory" ? AcpVariant::kTheory : AcpVariant::kPractical;
    if (cfg.random_candidates) opts.partial.candidate_seed = cfg.seed;
    ClusteringResult result = algorithm == "mcp" ? mcp(*est, cfg.k, opts) : acp(*est, cfg.k, opts);
    rec.outcome = result.outcome;
    rec.clustering = std::move(result.clustering);
    rec.stats = std::move(result.stats);
  }
  rec.durations.emplace_back("cluster", seconds_since(start));

  const auto scoring = Clock::now();
  Json eval = nullptr;
  if (rec.outcome == Outcome::kClustered) {
    std::unique_ptr<ConnectionEstimator> eval_est;
    if (algorithm != "gmm" && cfg.eval_samples && cfg.estimator != "exact") {
      eval_est = fixed_estimator(cfg, graph, eval_seed(cfg.seed), cfg.eval_samples);
      eval = {{"r", cfg.eval_samples}, {"seed", eval_seed(cfg.seed)}};
    }
    rescore(rec.clustering, eval_est ? *eval_est : *est, depth, keep_estimates, rec.metrics);
  }
  rec.samples = est->samples();
  rec.durations.emplace_back("metrics", seconds_since(scoring));
  if (!cfg.timings) rec.durations.clear();

  Run run;
  run.outcome = rec.outcome;
  run.doc = to_json(rec, graph);
  run.doc["sampling"]["eval"] = eval;
  return run;
}

// Recomputes estimates and metrics of a document from the pool it names.
Json rescore_document(Json doc, const UncertainGraph& graph, RunConfig cfg) {
  if (doc.at("outcome") != "clustered") return doc;
  const Json& params = doc.at("params");
  cfg.estimator = params.at("estimator").get<std::string>();
  cfg.epsilon = params.at("epsilon").get<double>();
  const Json& sampling = doc.at("sampling");
  const Json& pool = sampling.contains("eval") && !sampling["eval"].is_null() ? sampling["eval"]
                                                                              : sampling;
  auto est = fixed_estimator(cfg, graph, pool.at("seed").get<std::uint64_t>(),
                             std::max<std::size_t>(1, pool.at("r").get<std::size_t>()));
  Clustering c = clustering_from_json(doc, graph);
  std::optional<QualityReport> metrics;
  rescore(c, *est, c.params.depth, doc.at("algorithm") == "gmm", metrics);
  Json estimates = Json::object();
  for (NodeId u = 0; u < c.num_nodes(); ++u) {
    if (c.assignment[u]) estimates[graph.label(u)] = c.estimate[u];
  }
  doc["estimates"] = estimates;
  doc["metrics"] = metrics_json(metrics);
  return doc;
}

std::string env_name(const std::string& flag) {
  std::string name = "UGRAPH_";
  for (char ch : flag) name += ch == '-' ? '_' : static_cast<char>(std::toupper(ch));
  return name;
}

template <typename T>
CLI::Option* option(CLI::App* app, const std::string& flag, T& value, const std::string& help) {
  return app->add_option("--" + flag, value, help)->envname(env_name(flag))->capture_default_str();
}

void clustering_options(CLI::App* app, RunConfig& cfg) {
  app->add_option("graph", cfg.graph_path, "edge list: <u> <v> <p> per line")->required();
  option(app, "k", cfg.k, "number of clusters")->required();
  option(app, "gamma", cfg.gamma, "guess schedule step");
  option(app, "epsilon", cfg.epsilon, "relative sampling error");
  option(app, "p-low", cfg.p_low, "lowest probability guess");
  option(app, "depth", cfg.depth, "hop limit for connections (0 = unlimited)");
  option(app, "seed", cfg.seed, "sampling seed");
  option(app, "workers", cfg.workers, "worker threads (0 = all cores)");
  option(app, "sample-mode", cfg.sample_mode, "practical or theory")
      ->check(CLI::IsMember({"practical", "theory"}));
  option(app, "samples-init", cfg.samples_init, "initial pool size in practical mode");
  option(app, "estimator", cfg.estimator, "mc or exact")->check(CLI::IsMember({"mc", "exact"}));
  option(app, "exact-limit", cfg.exact_limit, "most uncertain edges for exact mode");
  option(app, "schedule", cfg.schedule, "doubling or geometric")
      ->check(CLI::IsMember({"doubling", "geometric"}));
  option(app, "eval-samples", cfg.eval_samples, "score on a fresh pool of this size");
  app->add_flag("--random-candidates", cfg.random_candidates, "seeded candidate sets");
  app->add_flag("--timings", cfg.timings, "record wall-clock durations");
  option(app, "output", cfg.output, "JSON output path (default stdout)");
  option(app, "csv", cfg.csv, "also write a CSV row here");
}

int dispatch(CLI::App& app, RunConfig& cfg, const std::vector<std::string>& args,
             std::ostream& out, std::ostream& err) {
  std::string u_label;
  std::string v_label;
  std::string input_path;
  std::string truth_path;
  std::string sweep_algorithm = "mcp";
  std::vector<std::size_t> ks;
  std::size_t samples = 10000;

  CLI::App* cmd_mcp = app.add_subcommand("mcp", "maximize the minimum connection probability");
  CLI::App* cmd_acp = app.add_subcommand("acp", "maximize the average connection probability");
  CLI::App* cmd_gmm = app.add_subcommand("gmm", "farthest-point baseline on ln(1/p) lengths");
  for (CLI::App* c : {cmd_mcp, cmd_acp, cmd_gmm}) clustering_options(c, cfg);

  CLI::App* cmd_metrics = app.add_subcommand("metrics", "re-score a clustering document");
  cmd_metrics->add_option("graph", cfg.graph_path)->required();
  cmd_metrics->add_option("input", input_path, "clustering document")->required();
  option(cmd_metrics, "workers", cfg.workers, "worker threads (0 = all cores)");
  option(cmd_metrics, "exact-limit", cfg.exact_limit, "most uncertain edges for exact mode");
  option(cmd_metrics, "output", cfg.output, "JSON output path (default stdout)");

  CLI::App* cmd_oracle = app.add_subcommand("oracle", "exact connection probability of a pair");
  CLI::App* cmd_estimate = app.add_subcommand("estimate", "sampled connection probability");
  for (CLI::App* c : {cmd_oracle, cmd_estimate}) {
    c->add_option("graph", cfg.graph_path)->required();
    c->add_option("u", u_label)->required();
    c->add_option("v", v_label)->required();
    option(c, "depth", cfg.depth, "hop limit (0 = unlimited)");
    option(c, "workers", cfg.workers, "worker threads (0 = all cores)");
    option(c, "output", cfg.output, "JSON output path");
  }
  option(cmd_oracle, "exact-limit", cfg.exact_limit, "most uncertain edges to enumerate");
  option(cmd_estimate, "seed", cfg.seed, "sampling seed");
  option(cmd_estimate, "samples", samples, "number of sampled worlds");

  CLI::App* cmd_eval = app.add_subcommand("eval", "compare co-clustered pairs to complexes");
  cmd_eval->add_option("graph", cfg.graph_path)->required();
  cmd_eval->add_option("input", input_path, "clustering document")->required();
  cmd_eval->add_option("truth", truth_path, "complex file")->required();
  option(cmd_eval, "output", cfg.output, "JSON output path (default stdout)");

  CLI::App* cmd_sweep = app.add_subcommand("sweep", "run one algorithm over several k");
  clustering_options(cmd_sweep, cfg);
  cmd_sweep->get_option("--k")->required(false);
  cmd_sweep->add_option("--ks", ks, "comma-separated k values")->delimiter(',')->required();
  cmd_sweep->add_option("--algorithm", sweep_algorithm, "mcp, acp or gmm")
      ->check(CLI::IsMember({"mcp", "acp", "gmm"}));

  app.require_subcommand(1);
  app.set_config("--config", "", "TOML/INI file with option defaults");

  std::vector<const char*> argv{"ugraph"};
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kInputError;
  }

  if (cmd_mcp->parsed() || cmd_acp->parsed() || cmd_gmm->parsed()) {
    const std::string algorithm = cmd_mcp->parsed() ? "mcp" : cmd_acp->parsed() ? "acp" : "gmm";
    const UncertainGraph graph = load_graph_file(cfg.graph_path);
    Run r = cluster(cfg, algorithm, graph);
    write_text(cfg.output, serialize(r.doc), out);
    if (!cfg.csv.empty()) write_text(cfg.csv, csv_header() + csv_row(r.doc), out);
    return r.outcome == Outcome::kClustered ? kOk : kNoClustering;
  }
  if (cmd_sweep->parsed()) {
    const UncertainGraph graph = load_graph_file(cfg.graph_path);
    std::string table = csv_header();
    for (std::size_t k : ks) {
      cfg.k = k;
      table += csv_row(cluster(cfg, sweep_algorithm, graph).doc);
    }
    write_text(cfg.csv.empty() ? cfg.output : cfg.csv, table, out);
    return kOk;
  }
  if (cmd_metrics->parsed()) {
    const UncertainGraph graph = load_graph_file(cfg.graph_path);
    write_text(cfg.output, serialize(rescore_document(read_json_file(input_path), graph, cfg)),
               out);
    return kOk;
  }
  if (cmd_oracle->parsed() || cmd_estimate->parsed()) {
    const UncertainGraph graph = load_graph_file(cfg.graph_path);
    const NodeId u = graph.require(u_label);
    const NodeId v = graph.require(v_label);
    Json doc;
    doc["u"] = u_label;
    doc["v"] = v_label;
    doc["depth"] = cfg.depth ? Json(cfg.depth) : Json(nullptr);
    if (cmd_oracle->parsed()) {
      ExactEstimator est(graph, ExactOptions{cfg.exact_limit, worker_count(cfg)});
      doc["value"] = est.estimate(u, v, depth_of(cfg));
    } else {
      MonteCarloEstimator est(graph, cfg.seed, samples, 0.1, worker_count(cfg));
      doc["value"] = est.estimate(u, v, depth_of(cfg));
      doc["r"] = samples;
      doc["seed"] = cfg.seed;
    }
    out << doc["value"].dump() << '\n';
    if (!cfg.output.empty()) write_text(cfg.output, serialize(doc), out);
    return kOk;
  }
  if (cmd_eval->parsed()) {
    const UncertainGraph graph = load_graph_file(cfg.graph_path);
    const Clustering c = clustering_from_json(read_json_file(input_path), graph);
    const Confusion conf = evaluate_predictions(c, graph, load_ground_truth_file(truth_path));
    Json doc;
    doc["universe"] = conf.universe;
    doc["true_positives"] = conf.true_positives;
    doc["false_positives"] = conf.false_positives;
    doc["positives"] = conf.positives;
    doc["negatives"] = conf.negatives;
    doc["tpr"] = conf.tpr;
    doc["fpr"] = conf.fpr;
    write_text(cfg.output, serialize(doc), out);
    return kOk;
  }
  err << "error: unknown subcommand\n";
  return kInputError;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Clustering of uncertain graphs by connection probability", "ugraph"};
  RunConfig cfg;
  try {
    return dispatch(app, cfg, args, out, err);
  } catch (const GraphParseError& e) {
    err << "error: " << cfg.graph_path << ": " << e.what() << '\n';
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
  }
  return kInputError;
}

}  // namespace ugraph::cli
