#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace ugraph::cli {

enum ExitCode : int {
  kOk = 0,
  kNoClustering = 1,  // no clustering above the probability floor
  kInputError = 2,    // unreadable input, bad flag or parameter
};

struct RunConfig {
  std::string graph_path;
  std::size_t k = 0;
  double gamma = 0.1;
  double epsilon = 0.1;
  double p_low = 1e-4;
  std::uint32_t depth = 0;  // 0: unlimited
  std::uint64_t seed = 1;
  std::string sample_mode = "practical";
  std::size_t samples_init = 50;
  int workers = 0;  // 0: all available cores
  std::string estimator = "mc";
  std::string schedule = "doubling";
  bool random_candidates = false;
  bool timings = false;
  std::size_t eval_samples = 0;  // 0: score on the clustering pool
  std::size_t exact_limit = 25;
  std::string output;
  std::string csv;
};

// Runs the command line `args` (without the program name). Documents go to
// --output or `out`; diagnostics go to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace ugraph::cli
