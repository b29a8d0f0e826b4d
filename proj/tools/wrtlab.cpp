#include <CLI11.hpp>
#include <cmath>
#include <fstream>
#include <iostream>
#include <json.hpp>
#include <memory>
#include <sstream>

#include "wrtlab/acceptance.hpp"
#include "wrtlab/errors.hpp"
#include "wrtlab/experiment.hpp"
#include "wrtlab/io.hpp"
#include "wrtlab/limits.hpp"
#include "wrtlab/oracle.hpp"
#include "wrtlab/pagraph.hpp"
#include "wrtlab/parallel.hpp"
#include "wrtlab/stat_tests.hpp"
#include "wrtlab/stats.hpp"
#include "wrtlab/urns.hpp"

using nlohmann::json;
using namespace wrtlab;

namespace {

constexpr int kExitPass = 0;
constexpr int kExitCheckFailed = 1;
constexpr int kExitBadInput = 2;
constexpr int kExitInternal = 3;

struct Global {
  std::uint64_t seed = 1;
  unsigned threads = 0;
  std::string out;
  std::string format = "csv";
};

// Writes to --out when given, stdout otherwise.
class Sink {
 public:
  explicit Sink(const std::string& path) {
    if (!path.empty()) {
      file_ = std::make_unique<std::ofstream>(path);
      if (!*file_) throw ConfigError("cannot open " + path);
    }
  }
  std::ostream& get() { return file_ ? *file_ : std::cout; }

 private:
  std::unique_ptr<std::ofstream> file_;
};

json parse_json_arg(const std::string& text, const char* what) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw ConfigError(std::string("invalid JSON for ") + what + ": " + e.what());
  }
}

template <class T>
T get_or(const json& j, const char* key, T fallback) {
  if (!j.contains(key)) return fallback;
  try {
    return j[key].get<T>();
  } catch (const json::exception& e) {
    throw ConfigError(std::string("bad value for \"") + key + "\": " + e.what());
  }
}

json default_seq(const std::string& model) {
  if (model == "wrt") return {{"kind", "power"}, {"gamma", 1.0}, {"C", 1.0}};
  return {{"kind", "constant_fitness"}, {"a", 1.0}, {"b", 1.0}};
}

struct TreeModel {
  std::string type = "pat";
  std::string seq;
  std::string mode = "exchangeable";

  json spec() const { return seq.empty() ? default_seq(type) : parse_json_arg(seq, "--seq"); }
};

void add_model_options(CLI::App* cmd, TreeModel& m) {
  cmd->add_option("--model", m.type, "Tree model")->check(CLI::IsMember({"wrt", "pat", "urn-pat"}));
  cmd->add_option("--seq", m.seq, "Weight or fitness spec as JSON");
  cmd->add_option("--mode", m.mode, "Nested-urn mode for urn-pat")
      ->check(CLI::IsMember({"exchangeable", "definetti"}));
}

// Grows the requested model; weights are kept for statistics that need them.
struct Grown {
  GrownTree tree;
  std::shared_ptr<WeightSequence> weights;
};

Grown grow_model(const TreeModel& m, const json& spec, std::size_t n, Rng& rng) {
  Grown g;
  if (m.type == "wrt") {
    if (is_fitness_spec(spec)) throw ConfigError("wrt model needs a weight spec");
    g.weights = std::make_shared<WeightSequence>(weights_from_json(spec, n));
    g.tree = grow_wrt(*g.weights, n, rng);
    return g;
  }
  if (!is_fitness_spec(spec)) throw ConfigError(m.type + " model needs a fitness spec");
  const auto f = fitness_from_json(spec);
  g.tree = m.type == "pat" ? grow_pat(f, n, rng) : grow_pat_via_urns(f, n, rng, parse_urn_mode(m.mode));
  return g;
}

void require_format(const Global& g, std::initializer_list<const char*> allowed) {
  for (const char* a : allowed) {
    if (g.format == a) return;
  }
  throw ConfigError("format " + g.format + " is not available for this command");
}

// grow -------------------------------------------------------------------

struct GrowArgs {
  TreeModel model;
  std::size_t n = 10;
  bool trace = false;
};

int cmd_grow(const Global& g, const GrowArgs& a) {
  const json spec = a.model.spec();
  Rng rng = make_rng(g.seed);
  const auto t = grow_model(a.model, spec, a.n, rng).tree;
  Sink sink(g.out);
  if (g.format == "json") {
    json parents = json::array();
    for (std::size_t i = 1; i <= t.tree.size(); ++i) parents.push_back(i == 1 ? 0 : t.tree.parent(i));
    sink.get() << json{{"model", a.model.type}, {"seq", spec}, {"n", a.n}, {"seed", g.seed},
                       {"height", height(t.tree)}, {"parent", parents}}.dump()
               << '\n';
  } else if (a.trace) {
    write_trace_csv(sink.get(), t.trace);
  } else {
    write_tree_csv(sink.get(), t.tree);
  }
  return kExitPass;
}

// stats ------------------------------------------------------------------

struct StatsArgs {
  TreeModel model;
  std::string stat = "profile";
  std::size_t n = 1000;
  std::size_t replicates = 1;
  double z = 0.5;
  std::optional<double> gamma;
  std::size_t k_max = 10;
};

double gamma_for(const StatsArgs& a, const json& spec) {
  if (a.gamma) return *a.gamma;
  if (auto gm = spec_gamma(spec)) return *gm;
  throw ConfigError("pass --gamma: the sequence does not determine it");
}

int cmd_stats(const Global& g, const StatsArgs& a) {
  require_format(g, {"csv", "json"});
  const json spec = a.model.spec();
  Sink sink(g.out);
  auto& out = sink.get();

  if (a.stat == "mrca") {
    if (a.model.type != "wrt") throw ConfigError("mrca needs the wrt model");
    const auto w = weights_from_json(spec, a.n);
    const auto reg = measure_regime(w);
    json rows = json::array();
    if (reg.regime == Regime::kDiffuseBoundary) {
      for (std::size_t k = 1; k <= a.k_max; ++k) {
        const auto p = mrca_law(w, k);
        rows.push_back({{"k", k}, {"probability", p.value}, {"lower_bound", p.lower_bound},
                        {"tail_estimate", p.tail_estimate}});
      }
    }
    if (g.format == "json") {
      out << json{{"regime", to_string(reg.regime)}, {"log_sum_w", reg.log_sum_w},
                  {"sum_ratio_sq", reg.sum_ratio_sq}, {"mrca", rows}}.dump(2)
          << '\n';
    } else {
      out << "k,probability,lower_bound,tail_estimate\n";
      for (const auto& r : rows) {
        out << r["k"].get<std::size_t>() << ',' << format_double(r["probability"]) << ','
            << format_double(r["lower_bound"]) << ',' << format_double(r["tail_estimate"]) << '\n';
      }
      std::cerr << "regime: " << to_string(reg.regime) << '\n';
    }
    return kExitPass;
  }

  const auto trees = parallel_map<Grown>(a.replicates, g.threads, [&](std::size_t r) {
    Rng rng = make_stream(g.seed, r);
    return grow_model(a.model, spec, a.n, rng);
  });

  if (a.stat == "profile") {
    const double gm = gamma_for(a, spec);
    std::vector<double> mean;
    for (const auto& t : trees) {
      const auto L = profile(t.tree.tree);
      if (L.size() > mean.size()) mean.resize(L.size(), 0.0);
      for (std::size_t k = 0; k < L.size(); ++k) mean[k] += double(L[k]) / trees.size();
    }
    if (g.format == "json") {
      json rows = json::array();
      for (std::size_t k = 0; k < mean.size(); ++k) {
        rows.push_back({{"k", k}, {"count", mean[k]}, {"prediction", gaussian_profile_prediction(a.n, gm, k)}});
      }
      out << json{{"gamma", gm}, {"profile", rows}}.dump(2) << '\n';
    } else {
      out << "k,count,prediction\n";
      for (std::size_t k = 0; k < mean.size(); ++k) {
        out << k << ',' << format_double(mean[k]) << ','
            << format_double(gaussian_profile_prediction(a.n, gm, k)) << '\n';
      }
    }
    return kExitPass;
  }

  if (a.stat == "height" || a.stat == "laplace") {
    const bool h = a.stat == "height";
    if (h) {
      out << "replicate,n,height,height_over_log_n\n";
    } else {
      out << "replicate,n,z,log_laplace,normalized_N\n";
    }
    std::vector<double> vals;
    const double gm = h ? 0.0 : gamma_for(a, spec);
    for (std::size_t r = 0; r < trees.size(); ++r) {
      const auto& t = trees[r].tree.tree;
      if (h) {
        const double ht = height(t);
        vals.push_back(ht / std::log(double(a.n)));
        out << r << ',' << a.n << ',' << ht << ',' << format_double(vals.back()) << '\n';
      } else {
        vals.push_back(normalized_N(t, gm, a.z));
        out << r << ',' << a.n << ',' << format_double(a.z) << ',' << format_double(log_laplace_profile(t, a.z))
            << ',' << format_double(vals.back()) << '\n';
      }
    }
    if (g.format == "json") {
      const auto s = summarize(vals);
      std::cerr << json{{"mean", s.mean}, {"se", s.se}, {"variance", s.variance}}.dump() << '\n';
    }
    return kExitPass;
  }

  if (a.stat == "measures") {
    if (a.model.type != "wrt") throw ConfigError("measures needs the wrt model");
    const auto b = make_constant_fitness(1.0, 1.0);
    out << "replicate,k,mu,eta,nu\n";
    for (std::size_t r = 0; r < trees.size(); ++r) {
      const auto& t = trees[r].tree.tree;
      const auto mu = weight_measure(t, *trees[r].weights);
      const auto eta = degree_measure(t, b);
      const auto nu = uniform_measure(t);
      for (std::size_t k = 1; k <= std::min(a.k_max, t.size()); ++k) {
        out << r << ',' << k << ',' << format_double(subtree_mass(mu, t, k)) << ','
            << format_double(subtree_mass(eta, t, k)) << ',' << format_double(subtree_mass(nu, t, k)) << '\n';
      }
    }
    return kExitPass;
  }

  if (a.stat == "degrees") {
    std::vector<std::vector<double>> deg(a.k_max);
    for (const auto& t : trees) {
      const auto d = degrees(t.tree.tree);
      for (std::size_t k = 1; k <= a.k_max; ++k) deg[k - 1].push_back(k <= d.size() ? d[k - 1] : 0.0);
    }
    out << "k,mean,se,expected\n";
    for (std::size_t k = 1; k <= a.k_max; ++k) {
      const auto s = summarize(deg[k - 1]);
      const double e = trees.front().weights ? degree_expectation(*trees.front().weights, k, a.n) : NAN;
      out << k << ',' << format_double(s.mean) << ',' << format_double(s.se) << ','
          << (std::isnan(e) ? std::string() : format_double(e)) << '\n';
    }
    return kExitPass;
  }
  throw ConfigError("unknown statistic: " + a.stat);
}

// urn --------------------------------------------------------------------

struct UrnArgs {
  std::string kind = "timedep";
  std::string params = "{}";
  std::size_t n = 100;
  std::size_t replicates = 1;
  bool path = false;
};

int cmd_urn(const Global& g, const UrnArgs& a) {
  const json p = parse_json_arg(a.params, "--params");
  const json fspec = get_or<json>(p, "fitness", default_seq("pat"));
  const auto runs = parallel_map<UrnTrajectory>(a.replicates, g.threads, [&](std::size_t r) {
    Rng rng = make_stream(g.seed, r);
    if (a.kind == "timedep") {
      return run_time_dependent_urn(get_or(p, "a", 1.0), get_or(p, "b", 1.0), get_or<std::size_t>(p, "start", 1),
                                    get_or(p, "s", 1.0), a.n, rng);
    }
    const auto f = fitness_from_json(fspec);
    if (a.kind == "immigration") return run_immigration_urn(f, a.n, rng);
    // Root urn of the nested construction: a_1 + deg(u_1) against the total PAT weight.
    const auto t = grow_pat_via_urns(f, a.n, rng, parse_urn_mode(get_or<std::string>(p, "mode", "exchangeable")));
    const auto d = degrees(t.tree);
    UrnTrajectory u;
    u.times = {a.n};
    u.red = {f.a(1) + d[0]};
    u.total = {f.A(a.n) + double(a.n) - 1.0};
    return u;
  });
  Sink sink(g.out);
  auto& out = sink.get();
  out << "replicate,n,red,total\n";
  for (std::size_t r = 0; r < runs.size(); ++r) {
    const auto& u = runs[r];
    const std::size_t first = a.path ? 0 : u.size() - 1;
    for (std::size_t i = first; i < u.size(); ++i) {
      out << r << ',' << u.times[i] << ',' << format_double(u.red[i]) << ',' << format_double(u.total[i]) << '\n';
    }
  }
  return kExitPass;
}

// limits -----------------------------------------------------------------

struct LimitsArgs {
  std::string law = "beta";
  std::string params = "{}";
  std::size_t samples = 0;
  unsigned p_max = 2;
};

json moments_json(const std::vector<double>& m) {
  json j = json::object();
  for (std::size_t p = 1; p <= m.size(); ++p) j[std::to_string(p)] = m[p - 1];
  return j;
}

int cmd_limits(const Global& g, const LimitsArgs& a) {
  const json p = parse_json_arg(a.params, "--params");
  Rng rng = make_rng(g.seed);
  std::vector<double> exact;
  std::vector<double> draws;
  const std::size_t k = get_or<std::size_t>(p, "k", 1);
  if (k < 1) throw ConfigError("k starts at 1");

  if (a.law == "beta") {
    const double x = get_or(p, "a", 1.0), y = get_or(p, "b", 1.0);
    for (unsigned q = 1; q <= a.p_max; ++q) exact.push_back(beta_moment(x, y, q));
    for (std::size_t i = 0; i < a.samples; ++i) draws.push_back(sample_beta(x, y, rng).value);
  } else if (a.law == "ml") {
    const double al = get_or(p, "alpha", 0.5), th = get_or(p, "theta", 0.5);
    for (unsigned q = 1; q <= a.p_max; ++q) exact.push_back(ml_moment(al, th, q));
    for (std::size_t i = 0; i < a.samples; ++i) {
      draws.push_back(sample_mlmc(al, th, 1, get_or<std::size_t>(p, "N", 10000), rng).M[0]);
    }
  } else if (a.law == "mlmc") {
    const double al = get_or(p, "alpha", 0.5), th = get_or(p, "theta", 0.5);
    const auto spec = LimitChainSpec::from_fitness(make_constant_fitness(th / al, 1.0 / al - 1.0));
    for (unsigned q = 1; q <= a.p_max; ++q) exact.push_back(limit_chain_moment(spec, k, q).value);
    for (std::size_t i = 0; i < a.samples; ++i) {
      draws.push_back(sample_mlmc(al, th, k, get_or<std::size_t>(p, "N", 10000), rng).M[k - 1]);
    }
  } else if (a.law == "ggp") {
    const double z = get_or(p, "z", 1.0), r = get_or(p, "r", 1.0);
    const double shape = z / r + double(k) - 1.0;
    for (unsigned q = 1; q <= a.p_max; ++q) {
      exact.push_back(std::exp(std::lgamma(shape + q / r) - std::lgamma(shape)));
    }
    for (std::size_t i = 0; i < a.samples; ++i) draws.push_back(sample_ggp(z, r, k, rng)[k - 1]);
  } else if (a.law == "ipggp" || a.law == "chain") {
    const auto f = a.law == "ipggp"
                       ? make_periodic_fitness(get_or(p, "a", 1.0), get_or<std::vector<double>>(p, "pattern", {0.0, 1.0}))
                       : fitness_from_json(get_or<json>(p, "fitness", default_seq("pat")));
    const auto spec = LimitChainSpec::from_fitness(f);
    if (a.law == "ipggp" && spec.form != ChainForm::kIpggp) throw ConfigError("ipggp needs an integer pattern");
    for (unsigned q = 1; q <= a.p_max; ++q) exact.push_back(limit_chain_moment(spec, k, q).value);
    const double scale = a.law == "ipggp" ? ipggp_scale(f.period()) : 1.0;
    for (std::size_t i = 0; i < a.samples; ++i) {
      if (a.law == "ipggp") {
        draws.push_back(scale * sample_ipggp(f.a(1), f.period(), k, rng)[k - 1]);
      } else {
        draws.push_back(sample_limit_chain(f, spec.c, k, get_or<std::size_t>(p, "N", 10000), rng).M[k - 1]);
      }
    }
  } else {
    throw ConfigError("unknown law: " + a.law);
  }

  Sink sink(g.out);
  auto& out = sink.get();
  if (g.format == "csv" && a.samples > 0) {
    out << "sample,value\n";
    for (std::size_t i = 0; i < draws.size(); ++i) out << i << ',' << format_double(draws[i]) << '\n';
    return kExitPass;
  }
  json j = moments_json(exact);
  if (a.samples > 0) {
    json emp = json::object();
    for (unsigned q = 1; q <= a.p_max; ++q) {
      std::vector<double> pw(draws.size());
      for (std::size_t i = 0; i < draws.size(); ++i) pw[i] = std::pow(draws[i], q);
      const auto s = summarize(pw);
      emp[std::to_string(q)] = {{"mean", s.mean}, {"se", s.se}, {"z", s.se > 0 ? (s.mean - exact[q - 1]) / s.se : 0.0}};
    }
    j["empirical"] = emp;
  }
  out << j.dump(2) << '\n';
  return kExitPass;
}

// verify / pagraph -------------------------------------------------------

std::vector<std::uint32_t> parse_degrees(const std::string& text) {
  std::vector<std::uint32_t> d;
  std::stringstream ss(text);
  std::string cell;
  while (std::getline(ss, cell, ',')) {
    try {
      d.push_back(static_cast<std::uint32_t>(std::stoul(cell)));
    } catch (const std::logic_error&) {
      throw ConfigError("bad seed degree: " + cell);
    }
  }
  return d;
}

struct VerifyArgs {
  std::string fitness;
  std::size_t n = 5;
  std::string seed_degrees = "1,1";
  std::size_t m = 2;
  double alpha = 0.0;
  double tol = 1e-10;
};

int cmd_verify_theorem1(const Global& g, const VerifyArgs& a) {
  const auto f = fitness_from_json(a.fitness.empty() ? default_seq("pat") : parse_json_arg(a.fitness, "--fitness"));
  const auto r = certify_theorem1(f, a.n, a.tol);
  Sink sink(g.out);
  sink.get() << json{{"n", r.n}, {"max_abs_diff", r.max_abs_diff}, {"pat_total", r.pat_total},
                     {"mixture_total", r.mixture_total}, {"pass", r.pass}}.dump(2)
             << '\n';
  return r.pass ? kExitPass : kExitCheckFailed;
}

int cmd_verify_pagraph(const Global& g, const VerifyArgs& a) {
  const auto c = certify_pagraph_coupling(parse_degrees(a.seed_degrees), a.m, a.alpha, a.n, a.tol);
  Sink sink(g.out);
  sink.get() << json{{"n", c.n},
                     {"tree_size", c.tree_size},
                     {"max_abs_diff", c.max_abs_diff},
                     {"max_trace_abs_diff", c.max_trace_abs_diff},
                     {"graph_total", c.graph_total},
                     {"pat_total", c.pat_total},
                     {"outcomes", c.outcomes},
                     {"pass", c.pass}}
                        .dump(2)
             << '\n';
  return c.pass ? kExitPass : kExitCheckFailed;
}

struct PagraphArgs {
  std::string seed_degrees = "1,1";
  std::size_t m = 2;
  double alpha = 0.0;
  std::size_t n = 100;
  std::size_t replicates = 1;
};

int cmd_pagraph(const Global& g, const PagraphArgs& a) {
  const auto d = parse_degrees(a.seed_degrees);
  Sink sink(g.out);
  auto& out = sink.get();
  if (g.format == "json") {
    Rng rng = make_rng(g.seed);
    const auto r = coupled_degree_limits(d, a.m, a.alpha, a.n, a.replicates, rng);
    json split = json::array();
    for (const auto& s : r.split_summary) split.push_back({{"mean", s.mean}, {"se", s.se}});
    out << json{{"n", r.n},
                {"replicates", r.replicates},
                {"exponent", r.exponent},
                {"time_change", r.time_change},
                {"merged_seed", r.merged_seed},
                {"max_degree", r.max_degree},
                {"merged_seed_mean", r.merged_seed_summary.mean},
                {"merged_seed_se", r.merged_seed_summary.se},
                {"split", split}}
                   .dump(2)
        << '\n';
    return kExitPass;
  }
  out << (a.replicates > 1 ? "replicate,u,v\n" : "u,v\n");
  for (std::size_t r = 0; r < a.replicates; ++r) {
    Rng rng = make_stream(g.seed, r);
    const auto graph = grow_pa_graph(d, a.m, a.alpha, a.n, rng);
    for (const auto& [u, v] : graph.edges) {
      if (a.replicates > 1) out << r << ',';
      out << u << ',' << v << '\n';
    }
  }
  return kExitPass;
}

// accept / run -----------------------------------------------------------

struct AcceptArgs {
  std::string level = "fast";
  std::vector<int> only;
  bool seed_given = false;
};

int cmd_accept(const Global& g, const AcceptArgs& a) {
  AcceptanceOptions opt;
  opt.level = parse_acceptance_level(a.level);
  if (a.seed_given) opt.seed = g.seed;
  opt.threads = g.threads;
  opt.only = a.only;
  for (int id : a.only) {
    if (id < 1 || id > kCriterionCount) throw ConfigError("criterion ids run from 1 to 13");
  }
  opt.on_result = [](const CriterionResult& r) { std::cout << format_result_line(r) << std::endl; };
  const auto report = run_acceptance_suite(opt);
  if (!g.out.empty()) {
    Sink sink(g.out);
    sink.get() << report.to_json().dump(2) << '\n';
  }
  std::cout << (report.pass() ? "PASS" : "FAIL") << ": " << report.criteria.size() << " criteria, "
            << to_string(report.level) << " level, build " << report.build_id << '\n';
  return report.pass() ? kExitPass : kExitCheckFailed;
}

int cmd_run(const Global& g, const std::string& path, bool threads_given) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open " + path);
  json j;
  try {
    j = json::parse(in);
  } catch (const json::parse_error& e) {
    throw ConfigError(std::string("invalid JSON in ") + path + ": " + e.what());
  }
  auto cfg = ExperimentConfig::from_json(j);
  if (threads_given) cfg.threads = g.threads;
  if (!g.out.empty()) cfg.output = g.out;
  const auto r = run_experiment(cfg);
  std::cout << r.data_path << '\n' << r.summary_path << '\n';
  return r.pass ? kExitPass : kExitCheckFailed;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Weighted recursive trees and preferential attachment: simulation and checks"};
  app.require_subcommand(1);
  app.fallthrough();
  app.set_version_flag("--version", std::string(build_id()));

  Global g;
  auto* seed_opt = app.add_option("--seed", g.seed, "Master seed");
  auto* threads_opt = app.add_option("--threads", g.threads, "Worker threads, 0 for all cores");
  app.add_option("--out", g.out, "Output path, stdout when omitted");
  app.add_option("--format", g.format, "Output format")->check(CLI::IsMember({"csv", "json"}));

  GrowArgs grow;
  auto* c_grow = app.add_subcommand("grow", "Grow one tree and write it as CSV");
  add_model_options(c_grow, grow.model);
  c_grow->add_option("--n", grow.n, "Number of vertices")->check(CLI::PositiveNumber);
  c_grow->add_flag("--trace", grow.trace, "Write the step,choice trace instead of i,parent");

  StatsArgs stats;
  auto* c_stats = app.add_subcommand("stats", "Tree statistics over replicates");
  add_model_options(c_stats, stats.model);
  c_stats->add_option("--stat", stats.stat, "Statistic")
      ->check(CLI::IsMember({"profile", "height", "laplace", "measures", "mrca", "degrees"}));
  c_stats->add_option("--n", stats.n, "Tree size")->check(CLI::PositiveNumber);
  c_stats->add_option("--replicates", stats.replicates, "Replicates")->check(CLI::PositiveNumber);
  c_stats->add_option("--z", stats.z, "Laplace argument");
  c_stats->add_option("--gamma", stats.gamma, "Growth exponent of W_n");
  c_stats->add_option("--k-max", stats.k_max, "Largest vertex index reported");

  UrnArgs urn;
  auto* c_urn = app.add_subcommand("urn", "Urn processes");
  c_urn->add_option("--kind", urn.kind, "Urn kind")->check(CLI::IsMember({"timedep", "immigration", "nested-pat"}));
  c_urn->add_option("--params", urn.params, "Parameters as JSON");
  c_urn->add_option("--n", urn.n, "Steps or tree size");
  c_urn->add_option("--replicates", urn.replicates, "Replicates");
  c_urn->add_flag("--path", urn.path, "Write every step, not only the last");

  LimitsArgs lim;
  auto* c_lim = app.add_subcommand("limits", "Moments and samples of the limit laws");
  c_lim->add_option("--law", lim.law, "Law")->check(CLI::IsMember({"beta", "ml", "mlmc", "ggp", "ipggp", "chain"}));
  c_lim->add_option("--params", lim.params, "Parameters as JSON");
  c_lim->add_option("--samples", lim.samples, "Monte Carlo samples");
  c_lim->add_option("--p", lim.p_max, "Highest moment")->check(CLI::PositiveNumber);

  VerifyArgs ver;
  auto* c_ver = app.add_subcommand("verify", "Exact finite-n certificates");
  c_ver->require_subcommand(1);
  auto* c_t1 = c_ver->add_subcommand("theorem1", "PAT against the beta-mixture WRT");
  c_t1->add_option("--fitness", ver.fitness, "Fitness spec as JSON");
  c_t1->add_option("--n", ver.n, "Tree size, at most 8");
  c_t1->add_option("--tol", ver.tol, "Tolerance");
  auto* c_vp = c_ver->add_subcommand("pagraph", "Graph against its merged PAT");
  c_vp->add_option("--seed-degrees", ver.seed_degrees, "Comma-separated seed degrees");
  c_vp->add_option("--m", ver.m, "Edges per newcomer");
  c_vp->add_option("--alpha", ver.alpha, "Affine shift");
  c_vp->add_option("--n", ver.n, "Arrivals");
  c_vp->add_option("--tol", ver.tol, "Tolerance");

  PagraphArgs pg;
  auto* c_pg = app.add_subcommand("pagraph", "(m, alpha) preferential attachment graphs");
  c_pg->add_option("--seed-degrees", pg.seed_degrees, "Comma-separated seed degrees");
  c_pg->add_option("--m", pg.m, "Edges per newcomer")->check(CLI::PositiveNumber);
  c_pg->add_option("--alpha", pg.alpha, "Affine shift");
  c_pg->add_option("--n", pg.n, "Vertices after growth");
  c_pg->add_option("--replicates", pg.replicates, "Replicates")->check(CLI::PositiveNumber);

  AcceptArgs acc;
  auto* c_acc = app.add_subcommand("accept", "Run the acceptance suite");
  c_acc->add_option("--level", acc.level, "Suite level")->check(CLI::IsMember({"fast", "full"}));
  c_acc->add_option("--only", acc.only, "Criterion ids");

  std::string config;
  auto* c_run = app.add_subcommand("run", "Run an experiment from a JSON config");
  c_run->add_option("config", config, "Config file")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitPass : kExitBadInput;
  }

  try {
    if (*c_grow) return cmd_grow(g, grow);
    if (*c_stats) return cmd_stats(g, stats);
    if (*c_urn) return cmd_urn(g, urn);
    if (*c_lim) return cmd_limits(g, lim);
    if (*c_t1) return cmd_verify_theorem1(g, ver);
    if (*c_vp) return cmd_verify_pagraph(g, ver);
    if (*c_pg) return cmd_pagraph(g, pg);
    if (*c_acc) {
      acc.seed_given = seed_opt->count() > 0;
      return cmd_accept(g, acc);
    }
    if (*c_run) return cmd_run(g, config, threads_opt->count() > 0);
  } catch (const ParameterError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitBadInput;
  } catch (const ConfigError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitBadInput;
  } catch (const RangeError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitBadInput;
  } catch (const DomainError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitBadInput;
  } catch (const InsufficientDataError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitBadInput;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << '\n';
    return kExitInternal;
  }
  return kExitInternal;
}
