#include "wrtlab/experiment.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <optional>

#include "wrtlab/errors.hpp"
#include "wrtlab/io.hpp"
#include "wrtlab/parallel.hpp"
#include "wrtlab/stat_tests.hpp"
#include "wrtlab/stats.hpp"
#include "wrtlab/urns.hpp"

namespace wrtlab {

using nlohmann::json;

const std::vector<std::string>& known_statistics() {
  static const std::vector<std::string> names = {
      "height",       "height_over_log_n", "root_degree",  "scaled_root_degree",
      "max_degree",   "leaves",            "profile_peak", "normalized_N",
      "M_n",          "mu_subtree_u2"};
  return names;
}

ExperimentConfig ExperimentConfig::from_json(const json& j) {
  if (!j.is_object()) throw ConfigError("experiment config must be a JSON object");
  ExperimentConfig c;
  try {
    c.model = j.at("model");
    const auto& n = j.at("n");
    c.n_schedule = n.is_array() ? n.get<std::vector<std::size_t>>()
                                : std::vector<std::size_t>{n.get<std::size_t>()};
    c.replicates = j.at("replicates").get<std::size_t>();
    c.seed = j.value("seed", std::uint64_t{1});
    c.output = j.at("output").get<std::string>();
    c.statistics = j.at("statistics").get<std::vector<std::string>>();
    c.z = j.value("z", 0.5);
    c.threads = j.value("threads", 0u);
    if (j.contains("checks")) c.checks = j.at("checks");
  } catch (const json::exception& e) {
    throw ConfigError(std::string("invalid experiment config: ") + e.what());
  }
  if (c.n_schedule.empty()) throw ConfigError("n schedule is empty");
  if (!std::is_sorted(c.n_schedule.begin(), c.n_schedule.end()) || c.n_schedule.front() < 2) {
    throw ConfigError("n schedule must be increasing and start at 2 or more");
  }
  for (const auto& s : c.statistics) {
    const auto& k = known_statistics();
    if (std::find(k.begin(), k.end(), s) == k.end()) throw ConfigError("unknown statistic: " + s);
  }
  if (!c.model.is_object() || !c.model.contains("type") || !c.model.contains("seq")) {
    throw ConfigError("model needs \"type\" and \"seq\"");
  }
  const auto type = c.model["type"].get<std::string>();
  if (type != "wrt" && type != "pat" && type != "urn-pat") throw ConfigError("unknown model type: " + type);
  if (!c.checks.is_array()) throw ConfigError("checks must be an array");
  return c;
}

namespace {

struct Model {
  std::string type;
  json seq;
  std::optional<FitnessSequence> fitness;
  std::optional<WeightSequence> weights;  // fixed weights for wrt
  bool annealed = false;                  // wrt over per-replicate beta weights
  UrnMode mode = UrnMode::kDeFinetti;
  std::optional<double> gamma;
};

Model build_model(const ExperimentConfig& c) {
  Model m;
  m.type = c.model["type"].get<std::string>();
  m.seq = c.model["seq"];
  m.gamma = spec_gamma(m.seq);
  const std::size_t n_max = c.n_schedule.back();
  if (m.type == "wrt") {
    if (is_fitness_spec(m.seq)) throw ConfigError("wrt model needs a weight spec");
    if (m.seq["kind"] == "beta_sampled" && !m.seq.contains("seed")) {
      m.annealed = true;
      m.fitness = fitness_from_json(m.seq["fitness"]);
    } else {
      m.weights = weights_from_json(m.seq, n_max);
    }
  } else {
    if (!is_fitness_spec(m.seq)) throw ConfigError(m.type + " model needs a fitness spec");
    m.fitness = fitness_from_json(m.seq);
    if (c.model.contains("mode")) m.mode = parse_urn_mode(c.model["mode"].get<std::string>());
  }
  return m;
}

double statistic(const std::string& name, const PlaneTree& t, const WeightSequence* w,
                 const Model& m, double z) {
  const double n = static_cast<double>(t.size());
  if (name == "height") return height(t);
  if (name == "height_over_log_n") return height(t) / std::log(n);
  if (name == "root_degree") return t.out_degree(1);
  if (name == "scaled_root_degree") {
    if (!m.gamma) throw ConfigError("scaled_root_degree needs a sequence with a known gamma");
    return t.out_degree(1) * std::pow(n, -(1.0 - *m.gamma));
  }
  if (name == "max_degree") {
    const auto d = degrees(t);
    return *std::max_element(d.begin(), d.end());
  }
  if (name == "leaves") {
    const auto d = degrees(t);
    return static_cast<double>(std::count(d.begin(), d.end(), 0u));
  }
  if (name == "profile_peak") {
    const auto L = profile(t);
    return static_cast<double>(*std::max_element(L.begin(), L.end()));
  }
  if (name == "normalized_N") {
    if (!m.gamma) throw ConfigError("normalized_N needs a sequence with a known gamma");
    return normalized_N(t, *m.gamma, z);
  }
  if (name == "M_n") {
    if (w == nullptr) throw ConfigError("M_n needs weights (wrt model)");
    return M_n(t, *w, z);
  }
  if (name == "mu_subtree_u2") {
    if (w == nullptr) throw ConfigError("mu_subtree_u2 needs weights (wrt model)");
    return subtree_mass(weight_measure(t, *w), t, 2);
  }
  throw ConfigError("unknown statistic: " + name);
}

using Rows = std::vector<std::vector<double>>;  // per n: statistic values

Rows run_replicate(const ExperimentConfig& c, const Model& m, std::size_t r) {
  Rng rng = make_stream(c.seed, r);
  const std::size_t n_max = c.n_schedule.back();
  GrowthTrace trace;
  std::optional<WeightSequence> local;
  const WeightSequence* w = m.weights ? &*m.weights : nullptr;
  if (m.type == "wrt") {
    if (m.annealed) {
      local = weights_from_betas(sample_beta_coupling(*m.fitness, n_max, rng));
      w = &*local;
    }
    trace = grow_wrt(*w, n_max, rng).trace;
  } else if (m.type == "pat") {
    trace = grow_pat(*m.fitness, n_max, rng).trace;
  } else {
    trace = grow_pat_via_urns(*m.fitness, n_max, rng, m.mode).trace;
  }
  Rows rows;
  for (std::size_t n : c.n_schedule) {
    GrowthTrace prefix{{trace.choices.begin(), trace.choices.begin() + (n - 1)}};
    const PlaneTree t(prefix);
    std::vector<double> vals;
    for (const auto& s : c.statistics) vals.push_back(statistic(s, t, w, m, c.z));
    rows.push_back(std::move(vals));
  }
  return rows;
}

}  // namespace

ExperimentResult run_experiment(const ExperimentConfig& c) {
  const Model model = build_model(c);
  const auto results = parallel_map<Rows>(c.replicates, c.threads,
                                          [&](std::size_t r) { return run_replicate(c, model, r); });

  ExperimentResult out;
  out.data_path = c.output + ".csv";
  out.summary_path = c.output + ".summary.json";
  const auto parent = std::filesystem::path(out.data_path).parent_path();
  if (!parent.empty()) std::filesystem::create_directories(parent);

  std::ofstream data(out.data_path, std::ios::binary);
  if (!data) throw ConfigError("cannot write " + out.data_path);
  data << "replicate,n";
  for (const auto& s : c.statistics) data << ',' << s;
  data << '\n';
  for (std::size_t r = 0; r < results.size(); ++r) {
    for (std::size_t i = 0; i < c.n_schedule.size(); ++i) {
      data << r << ',' << c.n_schedule[i];
      for (double v : results[r][i]) data << ',' << format_double(v);
      data << '\n';
    }
  }

  json stats = json::object();
  for (std::size_t s = 0; s < c.statistics.size(); ++s) {
    json per_n = json::object();
    for (std::size_t i = 0; i < c.n_schedule.size(); ++i) {
      std::vector<double> xs;
      for (const auto& rows : results) xs.push_back(rows[i][s]);
      json entry = {{"count", xs.size()}};
      if (xs.size() >= 2) {
        const auto sm = summarize(xs);
        entry["mean"] = sm.mean;
        entry["se"] = sm.se;
        entry["variance"] = sm.variance;
      } else if (xs.size() == 1) {
        entry["mean"] = xs[0];
      }
      per_n[std::to_string(c.n_schedule[i])] = entry;
    }
    stats[c.statistics[s]] = per_n;
  }

  json checks = json::array();
  for (const auto& chk : c.checks) {
    json res = chk;
    bool pass = false;
    try {
      const auto name = chk.at("statistic").get<std::string>();
      const auto n = std::to_string(chk.at("n").get<std::size_t>());
      const double expected = chk.at("expected").get<double>();
      if (!stats.contains(name) || !stats[name].contains(n)) throw ConfigError("check refers to unmeasured " + name);
      const auto& e = stats[name][n];
      if (!e.contains("mean")) {
        res["error"] = "no data";
      } else {
        const double mean = e["mean"].get<double>();
        const double se = e.value("se", 0.0);
        const double zscore = se > 0.0 ? (mean - expected) / se : 0.0;
        res["observed"] = mean;
        res["z_score"] = zscore;
        if (chk.contains("rel_tol")) {
          pass = std::abs(mean - expected) <= chk["rel_tol"].get<double>() * std::abs(expected);
        } else if (chk.contains("abs_tol")) {
          pass = std::abs(mean - expected) <= chk["abs_tol"].get<double>();
        } else if (chk.contains("z_max")) {
          pass = se > 0.0 && std::abs(zscore) <= chk["z_max"].get<double>();
        } else {
          throw ConfigError("check needs rel_tol, abs_tol or z_max");
        }
      }
    } catch (const json::exception& e) {
      throw ConfigError(std::string("invalid check: ") + e.what());
    }
    res["pass"] = pass;
    out.pass = out.pass && pass;
    checks.push_back(res);
  }

  out.summary = {{"build_id", build_id()},
                 {"model", c.model},
                 {"n", c.n_schedule},
                 {"replicates", c.replicates},
                 {"seed", c.seed},
                 {"statistics", stats},
                 {"checks", checks},
                 {"pass", out.pass}};
  std::ofstream summary(out.summary_path, std::ios::binary);
  if (!summary) throw ConfigError("cannot write " + out.summary_path);
  summary << out.summary.dump(2) << '\n';
  return out;
}

}  // namespace wrtlab
