#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "wrtlab/acceptance.hpp"
#include "wrtlab/errors.hpp"
#include "wrtlab/experiment.hpp"
#include "wrtlab/io.hpp"
#include "wrtlab/limits.hpp"
#include "wrtlab/oracle.hpp"
#include "wrtlab/pagraph.hpp"
#include "wrtlab/stats.hpp"
#include "wrtlab/urns.hpp"

namespace py = pybind11;
using namespace wrtlab;
using nlohmann::json;

namespace {

struct Tree {
  std::vector<Vertex> parents;  // parents[i-1] for u_i, 0 at the root
  std::vector<Vertex> trace;
  std::vector<std::uint32_t> degrees;
  std::vector<std::uint32_t> depths;
  std::uint32_t height = 0;
};

Tree to_tree(const GrownTree& g) {
  Tree t;
  for (std::size_t i = 1; i <= g.tree.size(); ++i) t.parents.push_back(g.tree.parent(i));
  t.trace = g.trace.choices;
  t.degrees = degrees(g.tree);
  t.depths = heights(g.tree);
  t.height = height(g.tree);
  return t;
}

json parse(const std::string& s) { return json::parse(s); }

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Weighted recursive trees, preferential attachment and their limits";

  py::register_exception<ParameterError>(m, "ParameterError", PyExc_ValueError);
  py::register_exception<DomainError>(m, "DomainError", PyExc_ValueError);
  py::register_exception<RangeError>(m, "RangeError", PyExc_IndexError);
  py::register_exception<ConfigError>(m, "ConfigError", PyExc_ValueError);
  py::register_exception<InsufficientDataError>(m, "InsufficientDataError", PyExc_ValueError);

  m.def("build_id", [] { return std::string(build_id()); });

  py::class_<FitnessSequence>(m, "FitnessSequence")
      .def(py::init<std::vector<double>, std::vector<double>>(), py::arg("head"), py::arg("period"))
      .def("a", &FitnessSequence::a)
      .def("A", &FitnessSequence::A)
      .def("values", &FitnessSequence::values)
      .def_property_readonly("period_mean", &FitnessSequence::period_mean);
  m.def("constant_fitness", &make_constant_fitness, py::arg("a"), py::arg("b"));
  m.def("periodic_fitness", &make_periodic_fitness, py::arg("a"), py::arg("pattern"));

  py::class_<WeightSequence>(m, "WeightSequence")
      .def_static("from_increments", &WeightSequence::from_increments)
      .def("__len__", &WeightSequence::size)
      .def("w", &WeightSequence::w)
      .def("W", &WeightSequence::W)
      .def("log_W", &WeightSequence::log_W);
  m.def("power_weights", &make_power_weights, py::arg("gamma"), py::arg("C"), py::arg("n_max"));
  m.def("geometric_weights", &make_geometric_weights, py::arg("ratio"), py::arg("n_max"));
  m.def(
      "beta_sampled_weights",
      [](const FitnessSequence& f, std::size_t n, std::uint64_t seed) {
        return weights_from_betas(sample_beta_coupling(f, n, seed));
      },
      py::arg("fitness"), py::arg("n_max"), py::arg("seed"));
  m.def(
      "estimate_gamma", [](const WeightSequence& w) { return estimate_profile(w).gamma_hat; },
      py::arg("weights"));

  py::class_<Tree>(m, "Tree")
      .def_readonly("parents", &Tree::parents)
      .def_readonly("trace", &Tree::trace)
      .def_readonly("degrees", &Tree::degrees)
      .def_readonly("depths", &Tree::depths)
      .def_readonly("height", &Tree::height)
      .def("__len__", [](const Tree& t) { return t.parents.size(); });
  m.def(
      "grow_wrt",
      [](const WeightSequence& w, std::size_t n, std::uint64_t seed) {
        Rng rng = make_rng(seed);
        return to_tree(grow_wrt(w, n, rng));
      },
      py::arg("weights"), py::arg("n"), py::arg("seed"));
  m.def(
      "grow_pat",
      [](const FitnessSequence& f, std::size_t n, std::uint64_t seed, const std::string& mode) {
        Rng rng = make_rng(seed);
        if (mode == "direct") return to_tree(grow_pat(f, n, rng));
        return to_tree(grow_pat_via_urns(f, n, rng, parse_urn_mode(mode)));
      },
      py::arg("fitness"), py::arg("n"), py::arg("seed"), py::arg("mode") = "direct");

  m.def(
      "pat_trace_probability",
      [](const FitnessSequence& f, std::vector<Vertex> t) { return pat_trace_probability(f, GrowthTrace{t}); },
      py::arg("fitness"), py::arg("trace"));
  m.def(
      "wrt_mixture_trace_probability",
      [](const FitnessSequence& f, std::vector<Vertex> t) {
        return wrt_mixture_trace_probability(f, GrowthTrace{t});
      },
      py::arg("fitness"), py::arg("trace"));
  m.def(
      "certify_theorem1",
      [](const FitnessSequence& f, std::size_t n) {
        const auto r = certify_theorem1(f, n);
        return py::dict(py::arg("n") = r.n, py::arg("max_abs_diff") = r.max_abs_diff,
                        py::arg("pat_total") = r.pat_total, py::arg("mixture_total") = r.mixture_total,
                        py::arg("pass") = r.pass);
      },
      py::arg("fitness"), py::arg("n"));

  m.def("beta_moment", &beta_moment, py::arg("a"), py::arg("b"), py::arg("q"));
  m.def("ml_moment", &ml_moment, py::arg("alpha"), py::arg("theta"), py::arg("p"));
  m.def(
      "limit_chain_moment",
      [](const FitnessSequence& f, std::size_t k, unsigned p) {
        return limit_chain_moment(LimitChainSpec::from_fitness(f), k, p).value;
      },
      py::arg("fitness"), py::arg("k"), py::arg("p"));
  m.def(
      "sample_ggp",
      [](double z, double r, std::size_t k_max, std::uint64_t seed) {
        Rng rng = make_rng(seed);
        return sample_ggp(z, r, k_max, rng);
      },
      py::arg("z"), py::arg("r"), py::arg("k_max"), py::arg("seed"));

  m.def("height_constant", &height_constant, py::arg("gamma"));
  m.def("solve_z_plus", &solve_z_plus, py::arg("gamma"));
  m.def("gaussian_profile_prediction", &gaussian_profile_prediction, py::arg("n"), py::arg("gamma"),
        py::arg("k"));
  m.def(
      "measure_regime", [](const WeightSequence& w) { return std::string(to_string(measure_regime(w).regime)); },
      py::arg("weights"));
  m.def(
      "mrca_probability", [](const WeightSequence& w, std::size_t k) { return mrca_law(w, k).value; },
      py::arg("weights"), py::arg("k"));

  m.def(
      "time_dependent_urn",
      [](double a, double b, double s, std::size_t steps, std::uint64_t seed) {
        Rng rng = make_rng(seed);
        const auto u = run_time_dependent_urn(a, b, 1, s, steps, rng);
        return py::make_tuple(u.red, u.total);
      },
      py::arg("a"), py::arg("b"), py::arg("s"), py::arg("steps"), py::arg("seed"));
  m.def(
      "immigration_urn",
      [](const FitnessSequence& f, std::size_t n, std::uint64_t seed) {
        Rng rng = make_rng(seed);
        const auto u = run_immigration_urn(f, n, rng);
        return py::make_tuple(u.red, u.total);
      },
      py::arg("fitness"), py::arg("n"), py::arg("seed"));

  m.def(
      "grow_pa_graph",
      [](std::vector<std::uint32_t> d, std::size_t mm, double alpha, std::size_t n, std::uint64_t seed) {
        Rng rng = make_rng(seed);
        const auto g = grow_pa_graph(d, mm, alpha, n, rng);
        return py::make_tuple(g.edges, g.degree);
      },
      py::arg("seed_degrees"), py::arg("m"), py::arg("alpha"), py::arg("n"), py::arg("seed"));
  m.def(
      "certify_pagraph_coupling",
      [](std::vector<std::uint32_t> d, std::size_t mm, double alpha, std::size_t n) {
        const auto c = certify_pagraph_coupling(d, mm, alpha, n);
        return py::dict(py::arg("max_abs_diff") = c.max_abs_diff,
                        py::arg("max_trace_abs_diff") = c.max_trace_abs_diff, py::arg("pass") = c.pass);
      },
      py::arg("seed_degrees"), py::arg("m"), py::arg("alpha"), py::arg("n"));

  // JSON crosses the boundary as text; the Python wrapper decodes it.
  m.def(
      "_run_experiment",
      [](const std::string& config) {
        py::gil_scoped_release release;
        return run_experiment(ExperimentConfig::from_json(parse(config))).summary.dump();
      },
      py::arg("config"));
  m.def(
      "_run_acceptance",
      [](const std::string& level, std::vector<int> only, std::uint64_t seed) {
        AcceptanceOptions opt;
        opt.level = parse_acceptance_level(level);
        opt.only = std::move(only);
        opt.seed = seed;
        py::gil_scoped_release release;
        return run_acceptance_suite(opt).to_json().dump();
      },
      py::arg("level"), py::arg("only"), py::arg("seed"));
}
