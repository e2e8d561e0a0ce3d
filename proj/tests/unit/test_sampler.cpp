#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <map>

#include <sparsecol/rng.hpp>
#include <sparsecol/sampler.hpp>

using namespace sparsecol;

namespace {

Graph bowtie() { return Graph::from_edges(5, {{1, 2}, {2, 0}, {0, 1}, {0, 3}, {3, 4}, {4, 0}}); }

SamplerOptions with_radius(std::uint32_t r, Arithmetic a = Arithmetic::Float) {
  SamplerOptions o;
  o.radius = r;
  o.arith = a;
  return o;
}

}  // namespace

TEST_SUITE("sampler") {
  TEST_CASE("trees at full radius always succeed properly") {
    Rng rng(1);
    for (int i = 0; i < 200; ++i) {
      const Graph t = random_tree(2 + rng.below(30), rng);
      const std::size_t S = t.max_degree() + 1 + rng.below(3);
      const auto r = static_cast<std::uint32_t>(diameter(t));
      const SampleRun run = sample_colouring(t, S, with_radius(r), rng.next());
      REQUIRE(run.status == RunStatus::Success);
      CHECK(count_conflicts(t, run.colouring) == 0);
      for (Colour c : run.colouring) CHECK((c >= 1 && c <= S));
    }
  }

  TEST_CASE("triangle at radius one is uniform") {
    const Graph g = cycle_graph(3);
    std::map<std::vector<Colour>, std::size_t> freq;
    constexpr std::size_t N = 100000;
    for (std::size_t s = 0; s < N; ++s) {
      const SampleRun run = sample_colouring(g, 3, with_radius(1), s);
      REQUIRE(run.status == RunStatus::Success);
      ++freq[run.colouring];
    }
    CHECK(freq.size() == 6);
    double tv = 0;
    for (const auto& [c, k] : freq) tv += std::abs(static_cast<double>(k) / N - 1.0 / 6);
    CHECK(tv / 2 <= 0.02);
  }

  TEST_CASE("two triangles sharing a vertex fail there") {
    for (OrderPolicy p : {OrderPolicy::Identity, OrderPolicy::Random, OrderPolicy::DegreeDescending}) {
      for (std::uint64_t s = 0; s < 20; ++s) {
        SamplerOptions o = with_radius(1);
        o.order = p;
        const SampleRun run = sample_colouring(bowtie(), 5, o, s);
        CHECK(run.status == RunStatus::Failure);
        CHECK(run.stop_vertex == Vertex{0});
      }
    }
  }

  TEST_CASE("failure vertex does not depend on the seed") {
    const Graph g = generate_gnp(200, 20, 12);
    const auto first = classify_all_balls(g, 1).first_complex;
    REQUIRE(first.has_value());
    for (std::uint64_t s = 0; s < 10; ++s) {
      const SampleRun run = sample_colouring(g, 60, with_radius(1), s);
      CHECK(run.status == RunStatus::Failure);
      CHECK(run.stop_vertex == first);
    }
  }

  TEST_CASE("runs are deterministic") {
    const Graph g = generate_gnp(2000, 3, 5);
    SamplerOptions o = with_radius(2);
    o.order = OrderPolicy::Random;
    const SampleRun a = sample_colouring(g, 20, o, 42);
    const SampleRun b = sample_colouring(g, 20, o, 42);
    CHECK(a.order == b.order);
    CHECK(a.colouring == b.colouring);
    CHECK(a.log_weight == b.log_weight);
    CHECK(a.status == b.status);
    CHECK(a.steps.size() == b.steps.size());
    CHECK(sample_colouring(g, 20, o, 43).colouring != a.colouring);
  }

  TEST_CASE("successful runs on sparse graphs are proper") {
    for (std::uint64_t seed = 1; seed <= 20; ++seed) {
      const Graph g = generate_gnp(1500, 2, seed);
      const SampleRun run = sample_colouring(g, 10, with_radius(1), seed);
      if (run.status != RunStatus::Success) continue;
      CHECK(count_conflicts(g, run.colouring) == 0);
      CHECK(run.log_weight <= 0);
      CHECK(run.steps.size() == g.num_vertices());
    }
  }

  TEST_CASE("step records") {
    const Graph g = path_graph(4);
    const SampleRun run = sample_colouring(g, 3, with_radius(1, Arithmetic::Exact), 3);
    REQUIRE(run.steps.size() == 4);
    CHECK(run.steps[0].probability == doctest::Approx(1.0 / 3));
    double log_sum = 0;
    for (const StepRecord& s : run.steps) log_sum += std::log(s.probability);
    CHECK(run.log_weight == doctest::Approx(log_sum));
    REQUIRE(run.weight.has_value());
    CHECK(std::log(run.weight->convert_to<double>()) == doctest::Approx(run.log_weight));
    SamplerOptions quiet = with_radius(1);
    quiet.record_steps = false;
    CHECK(sample_colouring(g, 3, quiet, 3).steps.empty());
  }

  TEST_CASE("orders are permutations") {
    const Graph g = generate_gnp(200, 3, 1);
    for (OrderPolicy p : {OrderPolicy::Identity, OrderPolicy::Random, OrderPolicy::DegreeDescending}) {
      auto o = vertex_order(g, p, 9);
      CHECK(o.size() == 200);
      std::sort(o.begin(), o.end());
      for (Vertex v = 0; v < 200; ++v) CHECK(o[v] == v);
    }
    const auto d = vertex_order(g, OrderPolicy::DegreeDescending, 0);
    for (std::size_t i = 1; i < d.size(); ++i) CHECK(g.degree(d[i - 1]) >= g.degree(d[i]));
    CHECK(parse_order_policy("degree") == OrderPolicy::DegreeDescending);
    CHECK(to_string(OrderPolicy::Random) == "random");
    CHECK_THROWS_AS(parse_order_policy("sideways"), std::invalid_argument);
  }

  TEST_CASE("argument checks") {
    CHECK_THROWS_AS(sample_colouring(path_graph(3), 3, with_radius(0), 1), std::invalid_argument);
    CHECK_THROWS_AS(sample_colouring(path_graph(3), 1, with_radius(1), 1), std::invalid_argument);
  }

  TEST_CASE("count estimates are exact at full radius") {
    struct Case {
      Graph g;
      std::size_t S;
      int want;
    };
    const std::vector<Case> cases{{path_graph(3), 3, 12}, {cycle_graph(4), 3, 18}, {path_graph(1), 7, 7}};
    for (const Case& c : cases) {
      const CountEstimate e = estimate_count(c.g, c.S, with_radius(5, Arithmetic::Exact), 200, 17);
      CHECK(e.successes == 200);
      CHECK(e.failure_fraction == 0);
      for (const CountSample& s : e.samples) CHECK(s.estimate == Rational(c.want));
      CHECK(e.exact_mean == Rational(c.want));
      CHECK(e.log_mean == doctest::Approx(std::log(c.want)));
      CHECK(e.relative_std_error == doctest::Approx(0).epsilon(1e-12));
    }
  }

  TEST_CASE("count estimates at small radius are unbiased-looking") {
    const Graph g = path_graph(6);
    const CountEstimate e = estimate_count(g, 3, with_radius(1), 4000, 3);
    CHECK(e.successes == 4000);
    const double truth = std::log(3.0 * 32);
    CHECK(std::abs(e.log_mean - truth) <= 4 * e.relative_std_error + 1e-12);
  }

  TEST_CASE("batch aggregates") {
    const Graph g = generate_gnp(500, 2, 8);
    const BatchStats one = run_batch(g, 12, with_radius(1), 1, 77);
    const SampleRun single = sample_colouring(g, 12, with_radius(1), derive_seed(77, 0));
    REQUIRE(one.trials.size() == 1);
    CHECK(one.trials[0].log_weight == single.log_weight);
    CHECK(one.trials[0].status == single.status);
    CHECK(one.success_rate == (single.status == RunStatus::Success ? 1.0 : 0.0));
    if (single.status == RunStatus::Success) CHECK(one.mean_log_weight == single.log_weight);

    const BatchStats ten = run_batch(bowtie(), 5, with_radius(1), 10, 1);
    CHECK(ten.trials.size() == 10);
    CHECK(ten.success_rate == 0);
    CHECK(ten.failures == 10);
    for (std::size_t i = 0; i < 10; ++i) CHECK(ten.trials[i].seed == derive_seed(1, i));
  }
}
