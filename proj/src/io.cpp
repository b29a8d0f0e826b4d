#include "wrtlab/io.hpp"

#include <charconv>
#include <cmath>
#include <istream>
#include <ostream>
#include <sstream>

#include "wrtlab/errors.hpp"

#ifndef WRTLAB_BUILD_ID
#define WRTLAB_BUILD_ID "unknown"
#endif

namespace wrtlab {

using nlohmann::json;

namespace {

std::string kind_of(const json& spec) {
  if (!spec.is_object() || !spec.contains("kind") || !spec["kind"].is_string()) {
    throw ConfigError("sequence spec needs a string \"kind\"");
  }
  return spec["kind"].get<std::string>();
}

template <class T>
T field(const json& spec, const char* name) {
  if (!spec.contains(name)) throw ConfigError(std::string("sequence spec missing \"") + name + "\"");
  try {
    return spec[name].get<T>();
  } catch (const json::exception& e) {
    throw ConfigError(std::string("bad value for \"") + name + "\": " + e.what());
  }
}

template <class T>
T field_or(const json& spec, const char* name, T fallback) {
  return spec.contains(name) ? field<T>(spec, name) : fallback;
}

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> out;
  std::stringstream ss(line);
  std::string cell;
  while (std::getline(ss, cell, ',')) out.push_back(cell);
  return out;
}

double parse_number(const std::string& s) {
  try {
    std::size_t used = 0;
    const double x = std::stod(s, &used);
    if (used != s.size()) throw ConfigError("trailing characters in number: " + s);
    return x;
  } catch (const std::logic_error&) {
    throw ConfigError("not a number: " + s);
  }
}

}  // namespace

bool is_fitness_spec(const json& spec) {
  const auto k = kind_of(spec);
  return k == "constant_fitness" || k == "periodic_fitness" || k == "fitness";
}

FitnessSequence fitness_from_json(const json& spec) {
  const auto k = kind_of(spec);
  if (k == "constant_fitness") {
    return make_constant_fitness(field<double>(spec, "a"), field<double>(spec, "b"));
  }
  if (k == "periodic_fitness") {
    return make_periodic_fitness(field<double>(spec, "a"), field<std::vector<double>>(spec, "pattern"));
  }
  if (k == "fitness") {
    return FitnessSequence(field<std::vector<double>>(spec, "head"),
                           field<std::vector<double>>(spec, "period"));
  }
  throw ConfigError("not a fitness spec: " + k);
}

WeightSequence weights_from_json(const json& spec, std::size_t n_max) {
  const auto k = kind_of(spec);
  if (k == "power") {
    return make_power_weights(field<double>(spec, "gamma"), field_or<double>(spec, "C", 1.0), n_max);
  }
  if (k == "geometric") return make_geometric_weights(field<double>(spec, "ratio"), n_max);
  if (k == "explicit") return WeightSequence::from_increments(field<std::vector<double>>(spec, "w"));
  if (k == "beta_sampled") {
    const auto f = fitness_from_json(field<json>(spec, "fitness"));
    return weights_from_betas(sample_beta_coupling(f, n_max, field_or<std::uint64_t>(spec, "seed", 1)));
  }
  throw ConfigError("not a weight spec: " + k);
}

json fitness_to_json(const FitnessSequence& fitness) {
  return {{"kind", "fitness"}, {"head", fitness.head()}, {"period", fitness.period()}};
}

std::optional<double> spec_gamma(const json& spec) {
  const auto k = kind_of(spec);
  if (k == "power") return field<double>(spec, "gamma");
  if (k == "beta_sampled") return spec_gamma(field<json>(spec, "fitness"));
  if (is_fitness_spec(spec)) {
    const double c = fitness_from_json(spec).period_mean();
    return c / (c + 1.0);
  }
  return std::nullopt;
}

std::string format_double(double x) {
  char buf[64];
  const auto r = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, r.ptr);
}

void write_weights_csv(std::ostream& out, const WeightSequence& weights) {
  out << "n,w,W\n";
  for (std::size_t n = 1; n <= weights.size(); ++n) {
    out << n << ',' << format_double(weights.w(n)) << ',' << format_double(weights.W(n)) << '\n';
  }
}

WeightSequence read_weights_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line) || line != "n,w,W") throw ConfigError("weights CSV must start with n,w,W");
  std::vector<double> w;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const auto cells = split_csv_line(line);
    if (cells.size() != 3) throw ConfigError("weights CSV rows need three columns");
    if (parse_number(cells[0]) != static_cast<double>(w.size() + 1)) {
      throw ConfigError("weights CSV indices must run 1, 2, ...");
    }
    w.push_back(parse_number(cells[1]));
  }
  return WeightSequence::from_increments(w);
}

void write_tree_csv(std::ostream& out, const PlaneTree& tree) {
  out << "i,parent\n";
  for (std::size_t i = 1; i <= tree.size(); ++i) out << i << ',' << tree.parent(i) << '\n';
}

void write_trace_csv(std::ostream& out, const GrowthTrace& trace) {
  out << "step,choice\n";
  for (std::size_t m = 2; m <= trace.size(); ++m) out << m << ',' << trace.choices[m - 2] << '\n';
}

GrowthTrace read_trace_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line) || line != "step,choice") {
    throw ConfigError("trace CSV must start with step,choice");
  }
  GrowthTrace t;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const auto cells = split_csv_line(line);
    if (cells.size() != 2) throw ConfigError("trace CSV rows need two columns");
    if (parse_number(cells[0]) != static_cast<double>(t.choices.size() + 2)) {
      throw ConfigError("trace CSV steps must run 2, 3, ...");
    }
    t.choices.push_back(static_cast<Vertex>(parse_number(cells[1])));
  }
  PlaneTree check(t);  // validates choices
  return t;
}

const char* build_id() { return WRTLAB_BUILD_ID; }

}  // namespace wrtlab
