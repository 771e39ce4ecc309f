#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"
#include "ugraph/clustering.h"
#include "ugraph/metrics.h"

namespace ugraph {

using Json = nlohmann::json;

// Everything a clustering run writes out.
struct RunRecord {
  std::string algorithm;
  Json params = Json::object();
  Outcome outcome = Outcome::kClustered;
  Clustering clustering;
  std::optional<QualityReport> metrics;
  RunStats stats;
  std::uint64_t seed = 0;
  std::size_t samples = 0;  // pool size behind the estimates, 0 when exact
  std::vector<std::pair<std::string, double>> durations;
};

// Canonical document: keys sorted, labels instead of ids, cluster members
// sorted by label, undefined metrics as null.
Json to_json(const RunRecord& record, const UncertainGraph& graph);

// Rebuilds the clustering described by a document.
Clustering clustering_from_json(const Json& doc, const UncertainGraph& graph);

Json metrics_json(const std::optional<QualityReport>& metrics);

// Two-space indented JSON with a trailing newline.
std::string serialize(const Json& doc);

std::string csv_header();
// algorithm,k,outcome,min_prob,avg_prob,inner_avpr,outer_avpr,samples,final_q
std::string csv_row(const Json& doc);

}  // namespace ugraph
