#pragma once

#include <cstdint>
#include <json.hpp>
#include <string>
#include <vector>

namespace wrtlab {

// Config file layout:
// {
//   "model": {"type": "pat" | "wrt" | "urn-pat", "seq": {sequence spec}, "mode": "definetti"},
//   "n": [1000, 10000], "replicates": 100, "seed": 42, "output": "out/run",
//   "statistics": ["height", "scaled_root_degree"], "z": 0.5, "threads": 0,
//   "checks": [{"statistic": "scaled_root_degree", "n": 10000, "expected": 1.7725,
//               "rel_tol": 0.05}]
// }
// Checks accept rel_tol, abs_tol or z_max; the z-score is always reported.
struct ExperimentConfig {
  nlohmann::json model;
  std::vector<std::size_t> n_schedule;
  std::size_t replicates = 0;
  std::uint64_t seed = 1;
  std::string output;
  std::vector<std::string> statistics;
  double z = 0.5;
  unsigned threads = 0;
  nlohmann::json checks = nlohmann::json::array();

  static ExperimentConfig from_json(const nlohmann::json& j);
};

const std::vector<std::string>& known_statistics();

struct ExperimentResult {
  std::string data_path;     // <output>.csv: replicate,n,<statistics...>
  std::string summary_path;  // <output>.summary.json
  nlohmann::json summary;
  bool pass = true;
};

// Replicate r grows one tree on stream derive_seed(seed, r) and is measured at
// every n of the schedule. Output is identical for any thread count.
ExperimentResult run_experiment(const ExperimentConfig& config);

}  // namespace wrtlab
