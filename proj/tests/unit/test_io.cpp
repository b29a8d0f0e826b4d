#include <doctest.h>

#include <atomic>
#include <sstream>

#include "wrtlab/errors.hpp"
#include "wrtlab/io.hpp"
#include "wrtlab/parallel.hpp"

using namespace wrtlab;
using nlohmann::json;

TEST_CASE("sequence specs") {
  const auto f = fitness_from_json(json::parse(R"({"kind":"periodic_fitness","a":1,"pattern":[0,1]})"));
  CHECK(f.values(4) == std::vector<double>{1, 0, 1, 0});
  const auto g = fitness_from_json(fitness_to_json(f));
  CHECK(g.values(9) == f.values(9));

  const auto w = weights_from_json(json::parse(R"({"kind":"power","gamma":0.5})"), 100);
  CHECK(w.size() == 100);
  CHECK(w.W(100) == doctest::Approx(10.0));
  const auto e = weights_from_json(json::parse(R"({"kind":"explicit","w":[1,2,3]})"), 100);
  CHECK(e.size() == 3);
  CHECK(e.W(3) == 6.0);

  const json bs = json::parse(R"({"kind":"beta_sampled","fitness":{"kind":"constant_fitness","a":1,"b":1},"seed":7})");
  CHECK(weights_from_json(bs, 500).log_W(500) == weights_from_json(bs, 500).log_W(500));
  CHECK(*spec_gamma(bs) == doctest::Approx(0.5));
  CHECK_FALSE(spec_gamma(json::parse(R"({"kind":"geometric","ratio":2})")).has_value());

  CHECK_THROWS_AS(fitness_from_json(json::parse(R"({"kind":"power","gamma":1})")), ConfigError);
  CHECK_THROWS_AS(weights_from_json(json::parse(R"({"kind":"nope"})"), 5), ConfigError);
  CHECK_THROWS_AS(weights_from_json(json::parse(R"({"gamma":1})"), 5), ConfigError);
  CHECK_THROWS_AS(fitness_from_json(json::parse(R"({"kind":"constant_fitness","a":1})")), ConfigError);
  CHECK_THROWS_AS(fitness_from_json(json::parse(R"({"kind":"constant_fitness","a":-2,"b":1})")), ParameterError);
}

TEST_CASE("weights CSV round trip") {
  const auto w = make_power_weights(0.37, 1.7, 200);
  std::stringstream ss;
  write_weights_csv(ss, w);
  CHECK(ss.str().rfind("n,w,W\n", 0) == 0);
  const auto back = read_weights_csv(ss);
  REQUIRE(back.size() == w.size());
  for (std::size_t n = 1; n <= w.size(); ++n) {
    REQUIRE(back.w(n) == w.w(n));
    REQUIRE(back.W(n) == doctest::Approx(w.W(n)).epsilon(1e-14));
  }
  std::stringstream bad("n,w\n1,1\n");
  CHECK_THROWS_AS(read_weights_csv(bad), ConfigError);
  std::stringstream gap("n,w,W\n1,1,1\n3,1,2\n");
  CHECK_THROWS_AS(read_weights_csv(gap), ConfigError);
}

TEST_CASE("trace and tree CSV") {
  const GrowthTrace t{{1, 1, 2, 3}};
  std::stringstream ss;
  write_trace_csv(ss, t);
  CHECK(ss.str() == "step,choice\n2,1\n3,1\n4,2\n5,3\n");
  CHECK(read_trace_csv(ss) == t);
  std::stringstream tree;
  write_tree_csv(tree, PlaneTree(t));
  CHECK(tree.str() == "i,parent\n1,0\n2,1\n3,1\n4,2\n5,3\n");
  std::stringstream bad("step,choice\n2,2\n");
  CHECK_THROWS(read_trace_csv(bad));
}

TEST_CASE("format_double round trips") {
  for (double x : {0.1, 1.0 / 3.0, 1e-300, 123456789.125, -2.5}) {
    CHECK(std::stod(format_double(x)) == x);
  }
  CHECK(format_double(2.0) == "2");
  CHECK(std::string(build_id()).size() > 0);
}

TEST_CASE("parallel_map keeps index order and rethrows") {
  for (unsigned threads : {1u, 2u, 7u}) {
    const auto v = parallel_map<std::size_t>(100, threads, [](std::size_t i) { return i * i; });
    REQUIRE(v.size() == 100);
    for (std::size_t i = 0; i < 100; ++i) REQUIRE(v[i] == i * i);
  }
  CHECK(parallel_map<int>(0, 4, [](std::size_t) { return 1; }).empty());
  std::atomic<int> calls{0};
  CHECK_THROWS_AS(parallel_map<int>(50, 3,
                                    [&](std::size_t i) {
                                      ++calls;
                                      if (i == 17) throw RangeError("boom");
                                      return 0;
                                    }),
                  RangeError);
  CHECK(resolve_threads(3) == 3);
  CHECK(resolve_threads(0) >= 1);
}

TEST_CASE("replicate streams do not depend on execution order") {
  const auto a = parallel_map<std::uint64_t>(20, 1, [](std::size_t r) { return make_stream(9, r)(); });
  const auto b = parallel_map<std::uint64_t>(20, 4, [](std::size_t r) { return make_stream(9, 19 - r)(); });
  for (std::size_t r = 0; r < 20; ++r) CHECK(a[r] == b[19 - r]);
  CHECK(derive_seed(9, 0) != derive_seed(9, 1));
  CHECK(derive_seed(9, 0) != derive_seed(10, 0));
}
