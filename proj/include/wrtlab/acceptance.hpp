#pragma once

#include <cstdint>
#include <functional>
#include <json.hpp>
#include <string>
#include <vector>

namespace wrtlab {

enum class AcceptanceLevel { kFast, kFull };

const char* to_string(AcceptanceLevel level);
AcceptanceLevel parse_acceptance_level(const std::string& name);

struct CriterionResult {
  int id = 0;
  std::string name;
  bool pass = false;
  std::string observed;
  std::string expected;
  double seconds = 0.0;
  nlohmann::json details = nlohmann::json::object();
};

struct AcceptanceOptions {
  AcceptanceLevel level = AcceptanceLevel::kFull;
  std::uint64_t seed = 20190611;
  unsigned threads = 0;
  std::vector<int> only;  // empty: all criteria
  std::function<void(const CriterionResult&)> on_result;
};

struct AcceptanceReport {
  std::string build_id;
  AcceptanceLevel level = AcceptanceLevel::kFull;
  std::uint64_t seed = 0;
  double seconds = 0.0;
  std::vector<CriterionResult> criteria;

  bool pass() const;
  nlohmann::json to_json() const;
};

constexpr int kCriterionCount = 13;

// The fast level caps tree and urn sizes at 10^5; exact criteria run unchanged.
AcceptanceReport run_acceptance_suite(const AcceptanceOptions& options);

// "PASS [ 3] name | observed ... | expected ... | 1.2 s"
std::string format_result_line(const CriterionResult& r);

}  // namespace wrtlab
