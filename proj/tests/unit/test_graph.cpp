#include <doctest.h>

#include <cmath>
#include <numeric>
#include <sstream>

#include <sparsecol/graph.hpp>
#include <sparsecol/rng.hpp>

using namespace sparsecol;

namespace {

// Edges that close a cycle when added one at a time to a union-find forest.
std::size_t cycle_edges(std::size_t n, const std::vector<Edge>& edges) {
  std::vector<std::size_t> up(n);
  std::iota(up.begin(), up.end(), 0);
  auto find = [&](std::size_t x) {
    while (up[x] != x) x = up[x] = up[up[x]];
    return x;
  };
  std::size_t closing = 0;
  for (const Edge& e : edges) {
    const auto a = find(e.u), b = find(e.v);
    if (a == b) ++closing;
    else up[a] = b;
  }
  return closing;
}

Graph bowtie() { return Graph::from_edges(5, {{0, 1}, {1, 2}, {2, 0}, {0, 3}, {3, 4}, {4, 0}}); }

}  // namespace

TEST_SUITE("graph") {
  TEST_CASE("edge lists are normalised") {
    const Graph g = Graph::from_edges(4, {{2, 1}, {1, 2}, {0, 3}});
    CHECK(g.num_edges() == 2);
    CHECK(g.edges()[0] == Edge(0, 3));
    CHECK(g.has_edge(1, 2));
    CHECK(g.has_edge(2, 1));
    CHECK_FALSE(g.has_edge(0, 1));
    CHECK(g.max_degree() == 1);
    CHECK_THROWS_AS(Graph::from_edges(3, {{1, 1}}), std::invalid_argument);
    CHECK_THROWS_AS(Graph::from_edges(3, {{0, 3}}), std::invalid_argument);
  }

  TEST_CASE("edge list text round trip") {
    const Graph g = petersen_graph();
    std::stringstream ss;
    write_edge_list(ss, g);
    const Graph h = read_edge_list(ss);
    CHECK(h.num_vertices() == 10);
    CHECK(h.edges() == g.edges());
    std::istringstream bad("3 1\n0 7\n");
    CHECK_THROWS(read_edge_list(bad));
  }

  TEST_CASE("gnp small cases") {
    CHECK(generate_gnp(1, 0.5, 17).num_edges() == 0);
    CHECK_THROWS_AS(generate_gnp(0, 0.0, 3), std::invalid_argument);
    std::size_t present = 0;
    for (std::uint64_t seed = 0; seed < 1'000'000; ++seed) present += generate_gnp(2, 2, seed).num_edges();
    CHECK(present == 1'000'000);
    CHECK_THROWS_AS(generate_gnp(4, 5, 1), std::invalid_argument);
    CHECK_THROWS_AS(generate_gnp(4, -1, 1), std::invalid_argument);
  }

  TEST_CASE("gnp edge count mean") {
    const double n = 1e4, p = 5 / n;
    const double pairs = n * (n - 1) / 2;
    double sum = 0;
    for (std::uint64_t seed = 1; seed <= 100; ++seed) sum += generate_gnp(10000, 5, seed).num_edges();
    const double sd_of_mean = std::sqrt(pairs * p * (1 - p) / 100);
    CHECK(std::abs(sum / 100 - pairs * p) <= 3 * sd_of_mean);
  }

  TEST_CASE("gnp is deterministic per seed") {
    CHECK(generate_gnp(500, 3, 9).edges() == generate_gnp(500, 3, 9).edges());
    CHECK(generate_gnp(500, 3, 9).edges() != generate_gnp(500, 3, 10).edges());
  }

  TEST_CASE("ball examples") {
    const Ball p = ball(path_graph(3), 0, 1);
    CHECK(p.size() == 2);
    CHECK(p.induced_edges.size() == 1);
    CHECK(p.kind == BallKind::Tree);

    for (Vertex v = 0; v < 3; ++v) {
      const Ball t = ball(cycle_graph(3), v, 1);
      CHECK(t.size() == 3);
      CHECK(t.induced_edges.size() == 3);
      CHECK(t.kind == BallKind::Unicyclic);
      CHECK(t.cycle_edge.has_value());
    }

    const Ball b = ball(bowtie(), 0, 1);
    CHECK(b.size() == 5);
    CHECK(b.induced_edges.size() == 6);
    CHECK(b.kind == BallKind::Complex);
  }

  TEST_CASE("ball layout") {
    const Graph g = path_graph(7);
    const Ball b = ball(g, 3, 2);
    CHECK(b.vertices.front() == 3);
    CHECK(b.size() == 5);
    CHECK(b.depth_of(1) == 2);
    CHECK(b.depth_of(4) == 1);
    CHECK_FALSE(b.contains(0));
    CHECK(b.local.num_edges() == 4);
    for (std::size_t i = 1; i < b.size(); ++i) CHECK(b.depth[i - 1] <= b.depth[i]);
    CHECK(ball(g, 3, 0).size() == 1);
  }

  TEST_CASE("trees and cycles classify as expected") {
    Rng rng(5);
    for (int i = 0; i < 50; ++i) {
      const Graph t = random_tree(2 + rng.below(40), rng);
      for (std::uint32_t r : {1u, 2u, 5u}) CHECK(classify_all_balls(t, r).complex == 0);
    }
    for (std::size_t n = 3; n <= 15; ++n) {
      const auto h = classify_all_balls(cycle_graph(n), static_cast<std::uint32_t>((n + 1) / 2));
      CHECK(h.unicyclic == n);
      CHECK(h.first_complex == std::nullopt);
    }
  }

  TEST_CASE("classification agrees with an independent cycle count") {
    Rng rng(11);
    for (int i = 0; i < 300; ++i) {
      const std::size_t n = 2 + rng.below(19);
      const Graph g = generate_gnp(n, 0.5 + 3 * rng.uniform() * std::min(1.0, n / 4.0), rng.next());
      const auto r = static_cast<std::uint32_t>(rng.below(4));
      BallExtractor ex(g);
      for (Vertex v = 0; v < n; ++v) {
        const Ball b = ball(g, v, r);
        const std::size_t cycles = cycle_edges(n, b.induced_edges);
        const BallKind want = cycles == 0 ? BallKind::Tree : cycles == 1 ? BallKind::Unicyclic : BallKind::Complex;
        CHECK(b.kind == want);
        CHECK(ex.classify(v, r) == want);
        CHECK(ex.extract(v, r).vertices == b.vertices);
      }
    }
  }

  TEST_CASE("balls grow with the radius") {
    const Graph g = generate_gnp(300, 2, 4);
    for (Vertex v = 0; v < 300; v += 37) {
      std::size_t prev = 0;
      for (std::uint32_t r = 0; r <= 6; ++r) {
        const Ball b = ball(g, v, r);
        CHECK(b.size() >= prev);
        prev = b.size();
      }
    }
  }

  TEST_CASE("structure helpers") {
    CHECK(diameter(path_graph(6)) == 5);
    CHECK(diameter(cycle_graph(7)) == 3);
    CHECK(cyclomatic_number(petersen_graph()) == 6);
    CHECK(is_connected(petersen_graph()));
    std::size_t k = 0;
    components(Graph::from_edges(5, {{0, 1}, {3, 4}}), &k);
    CHECK(k == 3);
    CHECK(classify_connected(complete_graph(4)) == BallKind::Complex);
    CHECK_THROWS_AS(root_connected(Graph::from_edges(3, {{0, 1}}), 0), std::invalid_argument);
    Rng rng(2);
    const Graph u = random_unicyclic(9, rng);
    CHECK(u.num_edges() == 9);
    CHECK(classify_connected(u) == BallKind::Unicyclic);
  }

  TEST_CASE("radius choice") {
    CHECK(radius_epsilon(20) == doctest::Approx(0.052294).epsilon(1e-5));
    CHECK(radius_for(1e6, 20) == 1);
    CHECK(radius_for(2, 20) == 1);
    CHECK(radius_for(std::exp(100.0), 20) == 5);
    std::uint32_t prev = 0;
    for (double n = 2; n < 1e300; n *= 1e10) {
      CHECK(radius_for(n, 5) >= prev);
      prev = radius_for(n, 5);
    }
  }
}
