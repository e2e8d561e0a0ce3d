#include <doctest.h>

#include <cmath>
#include <map>

#include <sparsecol/oracle.hpp>
#include <sparsecol/rng.hpp>
#include <sparsecol/treedp.hpp>

using namespace sparsecol;

namespace {

std::vector<Rational> rationals(std::initializer_list<int> num, int den) {
  std::vector<Rational> out;
  for (int x : num) out.emplace_back(x, den);
  return out;
}

FixedColours random_fixed(std::size_t n, std::size_t S, Rng& rng) {
  FixedColours fc;
  const std::size_t k = rng.below(std::min<std::size_t>(n, 4) + 1);
  for (std::size_t i = 0; i < k; ++i) {
    const auto v = static_cast<Vertex>(rng.below(n));
    if (!fc.contains(v)) fc.set(v, static_cast<Colour>(1 + rng.below(S)));
  }
  return fc;
}

std::vector<Colour> as_vector(const FixedColours& fc, std::size_t n) {
  std::vector<Colour> out(n, kNoColour);
  for (const auto& [v, c] : fc) out[v] = c;
  return out;
}

// Pearson statistic over the listed outcomes with uniform expectation.
double chi_square(const std::map<std::vector<Colour>, std::size_t>& freq, std::size_t outcomes, std::size_t draws) {
  const double e = static_cast<double>(draws) / static_cast<double>(outcomes);
  double x = 0;
  for (const auto& [k, c] : freq) x += (c - e) * (c - e) / e;
  return x + e * static_cast<double>(outcomes - freq.size());
}

}  // namespace

TEST_SUITE("treedp") {
  TEST_CASE("tree counts") {
    CHECK(count_tree(path_graph(3), 5, {}).exact_value() == 80);
    CHECK(count_tree(path_graph(2), 3, {{0, 1}}).exact_value() == 2);
    CHECK(count_tree(star_graph(3), 3, {{1, 1}, {2, 2}, {3, 3}}).exact_value() == 0);
    CHECK(count_tree(path_graph(1), 4, {}).exact_value() == 4);
    CHECK_THROWS_AS(count_tree(cycle_graph(3), 3, {}), std::invalid_argument);
    CHECK_THROWS_AS(count_tree(Graph::from_edges(3, {{0, 1}}), 3, {}), std::invalid_argument);
  }

  TEST_CASE("unicyclic counts") {
    CHECK(count_unicyclic(cycle_graph(3), 3, {}).exact_value() == 6);
    CHECK(count_unicyclic(cycle_graph(4), 3, {}).exact_value() == 18);
    CHECK(count_unicyclic(cycle_graph(4), 2, {}).exact_value() == 2);
    CHECK(count_unicyclic(cycle_graph(5), 2, {}).exact_value() == 0);
    CHECK_THROWS_AS(count_unicyclic(path_graph(4), 3, {}), std::invalid_argument);
    CHECK_THROWS_AS(count_colourings(complete_graph(4), 3, {}), std::invalid_argument);
  }

  TEST_CASE("closed forms") {
    Rng rng(3);
    for (std::size_t S = 1; S <= 6; ++S) {
      for (std::size_t n = 1; n <= 12; ++n) {
        const BigInt want = BigInt(S) * boost::multiprecision::pow(BigInt(S - 1), static_cast<unsigned>(n - 1));
        CHECK(count_tree(random_tree(n, rng), S, {}).exact_value() == want);
        if (n < 3) continue;
        BigInt cyc = boost::multiprecision::pow(BigInt(S) - 1, static_cast<unsigned>(n));
        cyc += (n % 2 == 0 ? 1 : -1) * (BigInt(S) - 1);
        CHECK(count_unicyclic(cycle_graph(n), S, {}).exact_value() == cyc);
      }
    }
  }

  TEST_CASE("marginal examples") {
    CHECK(conditional_marginal(path_graph(2), 3, {{0, 1}}, 1).probabilities_exact() == rationals({0, 1, 1}, 2));
    CHECK(conditional_marginal(path_graph(1), 4, {}, 0).probabilities_exact() == rationals({1, 1, 1, 1}, 4));
    CHECK(conditional_marginal(cycle_graph(3), 3, {{0, 1}, {1, 2}}, 2).probabilities_exact() ==
          rationals({0, 0, 1}, 1));
    CHECK(conditional_marginal(cycle_graph(4), 3, {{0, 1}}, 2).probabilities_exact() == rationals({4, 1, 1}, 6));
    CHECK(conditional_marginal(path_graph(3), 3, {{1, 2}}, 1).probabilities_exact() == rationals({0, 1, 0}, 1));
    CHECK_THROWS_AS(conditional_marginal(path_graph(2), 3, {{0, 1}, {1, 1}}, 0), InfeasibleBoundary);
  }

  TEST_CASE("subtree root marginals") {
    // 0 is the root, 1 a leaf, 2 has the fixed child 3, 4 has two free leaves.
    const Graph t = Graph::from_edges(7, {{0, 1}, {0, 2}, {2, 3}, {0, 4}, {4, 5}, {4, 6}});
    const auto m = subtree_root_marginals(t, 0, 3, {{3, 1}});
    CHECK(m[1].probabilities_exact() == rationals({1, 1, 1}, 3));
    CHECK(m[2].probabilities_exact() == rationals({0, 1, 1}, 2));
    CHECK(m[4].probabilities_exact() == rationals({1, 1, 1}, 3));
    CHECK(m[3].probabilities_exact() == rationals({1, 0, 0}, 1));
    CHECK(m[0].probabilities_exact() == conditional_marginal(t, 3, {{3, 1}}, 0).probabilities_exact());
  }

  TEST_CASE("counts and marginals match enumeration") {
    Rng rng(101);
    for (int i = 0; i < 500; ++i) {
      const std::size_t n = 3 + rng.below(8);
      const std::size_t S = 3 + rng.below(3);
      const Graph g = (i % 2 == 0) ? random_tree(n, rng) : random_unicyclic(n, rng);
      const FixedColours fc = random_fixed(n, S, rng);
      const BigInt count = count_colourings(g, S, fc).exact_value();
      REQUIRE(count == enumerate(g, S, fc).count);
      if (count == 0) continue;
      const auto v = static_cast<Vertex>(rng.below(n));
      CHECK(conditional_marginal(g, S, fc, v).probabilities_exact() ==
            exact_marginal(g, S, fc, v).probabilities_exact());
    }
  }

  TEST_CASE("float arithmetic tracks exact") {
    Rng rng(55);
    for (int i = 0; i < 300; ++i) {
      const std::size_t n = 3 + rng.below(20);
      const std::size_t S = 3 + rng.below(6);
      const Graph g = (i % 2 == 0) ? random_tree(n, rng) : random_unicyclic(n, rng);
      const FixedColours fc = random_fixed(n, S, rng);
      const CountValue e = count_colourings(g, S, fc);
      const CountValue f = count_colourings(g, S, fc, Arithmetic::Float);
      if (e.is_zero()) {
        CHECK(f.is_zero());
        continue;
      }
      CHECK(std::abs(e.log_value() - f.log_value()) <= 1e-10 * std::max(1.0, std::abs(e.log_value())));
      const auto v = static_cast<Vertex>(rng.below(n));
      const auto pe = conditional_marginal(g, S, fc, v).probabilities();
      const auto pf = conditional_marginal(g, S, fc, v, Arithmetic::Float).probabilities();
      double sum = 0;
      for (std::size_t c = 0; c < S; ++c) {
        CHECK(std::abs(pe[c] - pf[c]) <= 1e-10);
        sum += pf[c];
      }
      CHECK(sum == doctest::Approx(1.0).epsilon(1e-12));
    }
  }

  TEST_CASE("float counts stay finite on long paths") {
    const CountValue c = count_tree(path_graph(2000), 3, {}, Arithmetic::Float);
    CHECK(c.log_value() == doctest::Approx(std::log(3.0) + 1999 * std::log(2.0)).epsilon(1e-12));
    const CountValue u = count_unicyclic(cycle_graph(3000), 4, {}, Arithmetic::Float);
    CHECK(u.log_value() == doctest::Approx(3000 * std::log(3.0)).epsilon(1e-12));
  }

  TEST_CASE("every colouring is drawn with probability one over the count") {
    Rng rng(8);
    for (int i = 0; i < 60; ++i) {
      const std::size_t n = 3 + rng.below(5);
      const std::size_t S = 3;
      const Graph g = (i % 2 == 0) ? random_tree(n, rng) : random_unicyclic(n, rng);
      const FixedColours fc = random_fixed(n, S, rng);
      EnumerationOptions opts;
      opts.list_cap = 100000;
      const auto all = enumerate(g, S, fc, opts);
      for (const auto& col : all.listing) {
        FixedColours c;
        for (Vertex v = 0; v < n; ++v) c.set(v, col[v]);
        CHECK(replay_probability(g, S, fc, c).probability == Rational(1, all.count));
      }
    }
    FixedColours improper{{0, 1}, {1, 1}, {2, 2}};
    CHECK(replay_probability(path_graph(3), 3, {}, improper).probability == 0);
  }

  TEST_CASE("exact sampler frequencies") {
    struct Case {
      Graph g;
      std::size_t S;
      std::size_t outcomes;
    };
    const std::vector<Case> cases{{path_graph(2), 2, 2}, {path_graph(3), 3, 12}, {cycle_graph(4), 3, 18}};
    for (const Case& c : cases) {
      Rng rng(2718);
      std::map<std::vector<Colour>, std::size_t> freq;
      constexpr std::size_t N = 100000;
      for (std::size_t i = 0; i < N; ++i) {
        const ListSample s = sample_exact(c.g, c.S, {}, rng);
        ++freq[as_vector(s.colouring, c.g.num_vertices())];
      }
      CHECK(freq.size() == c.outcomes);
      for (const auto& [col, k] : freq) {
        for (const Edge& e : c.g.edges()) CHECK(col[e.u] != col[e.v]);
        CHECK(std::abs(static_cast<double>(k) / N - 1.0 / c.outcomes) <= 0.01);
      }
      // 0.999 quantiles of chi-square with 1, 11 and 17 degrees of freedom.
      const double crit = c.outcomes == 2 ? 10.828 : c.outcomes == 12 ? 31.264 : 40.790;
      CHECK(chi_square(freq, c.outcomes, N) < crit);
    }
  }

  TEST_CASE("exact sampler respects fixed colours and reports its probability") {
    Rng rng(12);
    for (int i = 0; i < 200; ++i) {
      const std::size_t n = 3 + rng.below(8);
      const Graph g = (i % 2 == 0) ? random_tree(n, rng) : random_unicyclic(n, rng);
      const FixedColours fc = random_fixed(n, 4, rng);
      if (count_colourings(g, 4, fc).is_zero()) {
        CHECK_THROWS_AS(sample_exact(g, 4, fc, rng), InfeasibleBoundary);
        continue;
      }
      const ListSample s = sample_exact(g, 4, fc, rng, Arithmetic::Exact);
      CHECK(s.colouring.size() == n);
      for (const auto& [v, c] : fc) CHECK(s.colouring.get(v) == c);
      for (const Edge& e : g.edges()) CHECK(s.colouring.get(e.u) != s.colouring.get(e.v));
      CHECK(s.probability == Rational(1, count_colourings(g, 4, fc).exact_value()));
    }
  }

  TEST_CASE("ball overloads use host ids") {
    const Graph g = path_graph(6);
    const Ball b = ball(g, 2, 1);
    CHECK(count_tree(b, 3, {{5, 1}}).exact_value() == 12);
    CHECK(count_tree(b, 3, {{3, 1}}).exact_value() == 4);
    const auto m = conditional_marginal(b, 3, {{1, 2}}, 3);
    CHECK(m.probabilities_exact() == rationals({1, 2, 1}, 4));
  }

  TEST_CASE("draw_index follows the weights") {
    Rng rng(4);
    const WeightVector w = WeightVector::exact({0, 1, 3});
    std::size_t hits[3] = {0, 0, 0};
    for (int i = 0; i < 40000; ++i) ++hits[draw_index(rng, w)];
    CHECK(hits[0] == 0);
    CHECK(hits[2] / 40000.0 == doctest::Approx(0.75).epsilon(0.02));
  }
}
