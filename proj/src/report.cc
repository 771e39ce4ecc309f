#include "ugraph/report.h"

#include <algorithm>
#include <sstream>

namespace ugraph {

namespace {

Json optional_number(const std::optional<double>& v) { return v ? Json(*v) : Json(nullptr); }

const char* outcome_name(Outcome o) {
  return o == Outcome::kClustered ? "clustered" : "no_clustering_above_threshold";
}

}  // namespace

Json metrics_json(const std::optional<QualityReport>& metrics) {
  if (!metrics) return nullptr;
  Json m;
  m["min_prob"] = metrics->min_prob;
  m["avg_prob"] = metrics->avg_prob;
  m["inner_avpr"] = optional_number(metrics->inner_avpr);
  m["outer_avpr"] = optional_number(metrics->outer_avpr);
  m["cluster_sizes"] = metrics->cluster_sizes;
  return m;
}

Json to_json(const RunRecord& record, const UncertainGraph& graph) {
  const Clustering& c = record.clustering;
  Json doc;
  doc["algorithm"] = record.algorithm;
  doc["params"] = record.params;
  doc["outcome"] = outcome_name(record.outcome);

  Json centers = Json::array();
  Json clusters = Json::object();
  const auto members = c.clusters();
  for (ClusterIndex i = 0; i < c.k(); ++i) {
    std::vector<std::string> labels;
    for (NodeId u : members[i]) labels.push_back(graph.label(u));
    std::sort(labels.begin(), labels.end());
    centers.push_back(graph.label(c.centers[i]));
    clusters[graph.label(c.centers[i])] = labels;
  }
  doc["centers"] = centers;
  doc["clusters"] = clusters;

  Json estimates = Json::object();
  std::vector<std::string> uncovered;
  for (NodeId u = 0; u < c.num_nodes(); ++u) {
    if (c.assignment[u]) {
      estimates[graph.label(u)] = c.estimate[u];
    } else {
      uncovered.push_back(graph.label(u));
    }
  }
  std::sort(uncovered.begin(), uncovered.end());
  doc["estimates"] = estimates;
  doc["uncovered"] = uncovered;
  doc["metrics"] = metrics_json(record.metrics);

  Json sampling;
  sampling["r"] = record.samples;
  sampling["seed"] = record.seed;
  sampling["guesses"] = record.stats.guesses;
  sampling["partial_runs"] = record.stats.partial_runs;
  sampling["final_q"] = record.stats.final_q;
  sampling["phi_best"] = record.stats.phi_best;
  doc["sampling"] = sampling;

  if (!record.durations.empty()) {
    Json durations;
    for (const auto& [phase, seconds] : record.durations) durations[phase] = seconds;
    doc["durations"] = durations;
  }
  return doc;
}

Clustering clustering_from_json(const Json& doc, const UncertainGraph& graph) {
  try {
    Clustering c;
    c.assignment.assign(graph.num_nodes(), std::nullopt);
    c.estimate.assign(graph.num_nodes(), 0.0);
    for (const auto& label : doc.at("centers")) c.centers.push_back(graph.require(label.get<std::string>()));
    const Json& clusters = doc.at("clusters");
    for (ClusterIndex i = 0; i < c.k(); ++i) {
      for (const auto& label : clusters.at(graph.label(c.centers[i]))) {
        c.assignment[graph.require(label.get<std::string>())] = i;
      }
    }
    for (const auto& [label, value] : doc.at("estimates").items()) {
      c.estimate[graph.require(label)] = value.get<double>();
    }
    const Json& params = doc.at("params");
    if (params.contains("depth") && !params["depth"].is_null()) {
      c.params.depth = params["depth"].get<std::uint32_t>();
    }
    return c;
  } catch (const Json::exception& e) {
    throw ValueError(std::string("malformed clustering document: ") + e.what());
  }
}

std::string serialize(const Json& doc) { return doc.dump(2) + "\n"; }

std::string csv_header() {
  return "algorithm,k,outcome,min_prob,avg_prob,inner_avpr,outer_avpr,samples,final_q\n";
}

std::string csv_row(const Json& doc) {
  auto cell = [](const Json& v) -> std::string {
    if (v.is_null()) return "";
    if (v.is_string()) return v.get<std::string>();
    return v.dump();
  };
  const Json& m = doc.at("metrics");
  auto metric = [&](const char* key) { return m.is_null() ? std::string() : cell(m.at(key)); };
  std::ostringstream row;
  row << cell(doc.at("algorithm")) << ',' << cell(doc.at("params").at("k")) << ','
      << cell(doc.at("outcome")) << ',' << metric("min_prob") << ',' << metric("avg_prob") << ','
      << metric("inner_avpr") << ',' << metric("outer_avpr") << ','
      << cell(doc.at("sampling").at("r")) << ',' << cell(doc.at("sampling").at("final_q"))
      << '\n';
  return row.str();
}

}  // namespace ugraph
