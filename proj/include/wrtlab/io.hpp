#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <json.hpp>
#include <string>

#include "wrtlab/sequences.hpp"
#include "wrtlab/trees.hpp"

namespace wrtlab {

// Sequence specs:
//   {"kind": "constant_fitness", "a": 1, "b": 1}
//   {"kind": "periodic_fitness", "a": 1, "pattern": [0, 1]}
//   {"kind": "fitness", "head": [...], "period": [...]}
//   {"kind": "power", "gamma": 0.5, "C": 1}
//   {"kind": "geometric", "ratio": 2}
//   {"kind": "explicit", "w": [...]}
//   {"kind": "beta_sampled", "fitness": {...}, "seed": 7}
bool is_fitness_spec(const nlohmann::json& spec);
FitnessSequence fitness_from_json(const nlohmann::json& spec);
// n_max bounds the generated prefix; explicit sequences keep their own length.
WeightSequence weights_from_json(const nlohmann::json& spec, std::size_t n_max);
nlohmann::json fitness_to_json(const FitnessSequence& fitness);

// Exponent gamma of W_n ~ C n^gamma implied by a spec, when it has one.
std::optional<double> spec_gamma(const nlohmann::json& spec);

// "n,w,W" with one row per index.
void write_weights_csv(std::ostream& out, const WeightSequence& weights);
WeightSequence read_weights_csv(std::istream& in);

// "i,parent" rows, parent 0 for the root.
void write_tree_csv(std::ostream& out, const PlaneTree& tree);
// "step,choice" rows, step m = 2..n is the arrival of u_m.
void write_trace_csv(std::ostream& out, const GrowthTrace& trace);
GrowthTrace read_trace_csv(std::istream& in);

// Round-trippable text for doubles.
std::string format_double(double x);

const char* build_id();

}  // namespace wrtlab
