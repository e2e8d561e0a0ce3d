#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <set>

#include <sparsecol/mixing.hpp>
#include <sparsecol/oracle.hpp>
#include <sparsecol/rng.hpp>

using namespace sparsecol;

namespace {

std::vector<Rational> rationals(std::initializer_list<int> num, int den) {
  std::vector<Rational> out;
  for (int x : num) out.emplace_back(x, den);
  return out;
}

// Subtree of `t` at u as a standalone graph with u relabelled 0.
std::pair<Graph, FixedColours> subtree(const RandomTree& t, Vertex u, const FixedColours& fixed) {
  std::vector<Vertex> members{u};
  for (std::size_t i = 0; i < members.size(); ++i)
    for (Vertex c : t.children[members[i]]) members.push_back(c);
  std::vector<Vertex> local(t.size(), 0);
  for (std::size_t i = 0; i < members.size(); ++i) local[members[i]] = static_cast<Vertex>(i);
  std::vector<Edge> edges;
  FixedColours fc;
  for (Vertex v : members) {
    if (v != u) edges.emplace_back(local[v], local[t.parent[v]]);
    if (auto c = fixed.get(v)) fc.set(local[v], *c);
  }
  return {Graph::from_edges(members.size(), edges), fc};
}

void check_unfolding(const Graph& g, const UnfoldedTree& u) {
  const Graph& t = u.tree;
  CHECK(t.num_edges() + 1 == t.num_vertices());
  CHECK(is_connected(t));
  for (const Edge& e : t.edges()) CHECK(g.has_edge(u.h[e.u], u.h[e.v]));
  std::set<Vertex> image(u.h.begin(), u.h.end());
  CHECK(image.size() == g.num_vertices());
  CHECK(u.rooted.size() == t.num_vertices());
}

}  // namespace

TEST_SUITE("mixing") {
  TEST_CASE("tree sampler edge cases") {
    const RandomTree one = sample_td_tree(100, 3, 0, TreeLaw::Td, 5);
    CHECK(one.size() == 1);
    CHECK(one.height() == 0);
    for (std::uint64_t s = 0; s < 50; ++s) {
      const RandomTree t = sample_td_tree(12, 12, 1, TreeLaw::Td, s);
      CHECK(t.children[0].size() == 11);
    }
    CHECK_THROWS_AS(sample_td_tree(1000, 20, 10, TreeLaw::Td, 1, 5000), std::length_error);
  }

  TEST_CASE("root offspring mean") {
    constexpr std::size_t N = 100000;
    double sum = 0, sq = 0;
    for (std::uint64_t s = 0; s < N; ++s) {
      const double k = static_cast<double>(sample_td_tree(10000, 5, 1, TreeLaw::Td, s).children[0].size());
      sum += k;
      sq += k * k;
    }
    const double p = 5.0 / 10000;
    const double mean = 9999 * p;
    const double sd = std::sqrt(9999 * p * (1 - p) / N);
    CHECK(std::abs(sum / N - mean) <= 3 * sd);
    CHECK(sq / N - (sum / N) * (sum / N) == doctest::Approx(9999 * p * (1 - p)).epsilon(0.03));
  }

  TEST_CASE("binomial draws") {
    Rng rng(6);
    CHECK(binomial_draw(rng, 10, 0) == 0);
    CHECK(binomial_draw(rng, 10, 1) == 10);
    double sum = 0;
    for (int i = 0; i < 20000; ++i) sum += static_cast<double>(binomial_draw(rng, 50, 0.3));
    CHECK(sum / 20000 == doctest::Approx(15).epsilon(0.01));
  }

  TEST_CASE("conditioned law has no single-child vertices") {
    for (std::uint64_t s = 0; s < 100; ++s) {
      const RandomTree t = sample_td_tree(1000, 3, 4, TreeLaw::Trd, s);
      for (Vertex v = 0; v < t.size(); ++v) {
        if (t.depth[v] < 4) CHECK(t.children[v].size() != 1);
        else CHECK(t.children[v].empty());
      }
    }
  }

  TEST_CASE("tree layout") {
    const RandomTree t = sample_td_tree(1000, 3, 5, TreeLaw::Td, 21);
    CHECK(t.parent[0] == 0);
    for (Vertex v = 1; v < t.size(); ++v) {
      CHECK(t.parent[v] < v);
      CHECK(t.depth[v] == t.depth[t.parent[v]] + 1);
    }
    const Graph g = t.to_graph();
    CHECK(g.num_edges() + 1 == t.size());
    std::vector<Vertex> relabel;
    const RandomTree back = tree_from_graph(g, 0, &relabel);
    CHECK(back.parent == t.parent);
    for (Vertex v : t.at_least(3)) CHECK(t.depth[v] >= 3);
  }

  TEST_CASE("colour root examples") {
    Rng rng(1);
    const RandomTree single = tree_from_graph(path_graph(1), 0);
    CHECK(colour_root(single, 3, {}, rng).marginals[0].probabilities_exact() == rationals({1, 1, 1}, 3));

    const RandomTree edge = tree_from_graph(path_graph(2), 0);
    for (int i = 0; i < 50; ++i) {
      const ColourRootResult r = colour_root(edge, 3, {{1, 1}}, rng);
      CHECK(r.colours[1] == 1);
      CHECK(r.colours[0] != 1);
      CHECK(r.marginals[0].probabilities_exact() == rationals({0, 1, 1}, 2));
    }

    // Depth-2 binary tree with leaves fixed to 1, 2, 3, 3.
    const Graph bin = Graph::from_edges(7, {{0, 1}, {0, 2}, {1, 3}, {1, 4}, {2, 5}, {2, 6}});
    const RandomTree bt = tree_from_graph(bin, 0);
    const FixedColours leaves{{3, 1}, {4, 2}, {5, 3}, {6, 3}};
    const ColourRootResult r = colour_root(bt, 3, leaves, rng);
    CHECK(r.marginals[0].probabilities_exact() == exact_marginal(bin, 3, leaves, 0).probabilities_exact());
    CHECK(r.colours[1] == 3);
  }

  TEST_CASE("colour root marginals match subtree enumeration") {
    Rng rng(200);
    std::size_t done = 0;
    while (done < 200) {
      const std::size_t n = 2 + rng.below(9);
      const std::size_t S = 2 + rng.below(4);
      const RandomTree t = tree_from_graph(random_tree(n, rng), 0);
      FixedColours fc;
      for (std::size_t k = rng.below(4); k > 0; --k) {
        const auto v = static_cast<Vertex>(rng.below(n));
        if (!fc.contains(v)) fc.set(v, static_cast<Colour>(1 + rng.below(S)));
      }
      ColourRootResult r;
      try {
        r = colour_root(t, S, fc, rng);
      } catch (const InfeasibleBoundary&) {
        continue;
      }
      for (Vertex u = 0; u < n; ++u) {
        const auto [sg, sfc] = subtree(t, u, fc);
        CHECK(r.marginals[u].probabilities_exact() == exact_marginal(sg, S, sfc, 0).probabilities_exact());
      }
      ++done;
    }
  }

  TEST_CASE("disagreement examples") {
    const RandomTree shallow = tree_from_graph(path_graph(3), 0);
    CHECK(root_disagreement_tv(shallow, 3, 3, {}, 1).value == 0);

    DisagreementOptions ex;
    ex.exhaustive_limit = 1000;
    const RandomTree edge = tree_from_graph(path_graph(2), 0);
    const DisagreementResult r = root_disagreement_tv(edge, 4, 1, ex, 1);
    CHECK(r.exhaustive);
    CHECK(r.value == doctest::Approx(1.0 / 3));

    const DisagreementResult p = root_disagreement_tv(tree_from_graph(path_graph(3), 0), 3, 2, ex, 1);
    CHECK(p.value == doctest::Approx(0.25));
  }

  TEST_CASE("disagreement on sampled trees") {
    const RandomTree t = sample_td_tree(1000, 3, 5, TreeLaw::Td, 3);
    DisagreementOptions o;
    o.pairs = 50;
    double prev = 1;
    for (std::uint32_t l = 1; l <= 4; ++l) {
      const DisagreementResult r = root_disagreement_tv(t, 15, l, o, 9);
      CHECK(r.value >= 0);
      CHECK(r.value <= 1);
      CHECK(r.value <= prev + 1e-12);
      prev = r.value;
    }
  }

  TEST_CASE("unfolding a triangle") {
    const Graph g = cycle_graph(3);
    const UnfoldedTree u = unfold_unicyclic(g, 0);
    check_unfolding(g, u);
    CHECK(u.tree.num_vertices() == 5);
    CHECK(diameter(u.tree) == 4);
    CHECK(u.h[0] == 0);
    CHECK(std::count(u.h.begin(), u.h.end(), Vertex{0}) == 1);
    CHECK(std::count(u.h.begin(), u.h.end(), Vertex{2}) == 2);
  }

  TEST_CASE("unfolding a four cycle") {
    for (Vertex root = 0; root < 4; ++root) {
      const UnfoldedTree u = unfold_unicyclic(cycle_graph(4), root);
      check_unfolding(cycle_graph(4), u);
      CHECK(u.tree.num_vertices() == 7);
      CHECK(diameter(u.tree) == 6);
      CHECK(u.h[0] == root);
    }
  }

  TEST_CASE("unfolding keeps the root path and doubles the far side") {
    // Root 0 on a tail 0-1-2, cycle 2-3-4-5-2 with a pendant 6 on 4.
    const Graph g = Graph::from_edges(7, {{0, 1}, {1, 2}, {2, 3}, {3, 4}, {4, 5}, {5, 2}, {4, 6}});
    const UnfoldedTree u = unfold_unicyclic(g, 0);
    check_unfolding(g, u);
    CHECK(u.tree.num_vertices() == g.num_vertices() + 4);
    for (Vertex v : {0u, 1u, 2u}) CHECK(std::count(u.h.begin(), u.h.end(), v) == 1);
    for (Vertex v : {3u, 4u, 5u, 6u}) CHECK(std::count(u.h.begin(), u.h.end(), v) == 2);

    const Ball b = ball(g, 0, 5);
    const UnfoldedTree ub = unfold_unicyclic(b);
    CHECK(ub.tree.num_vertices() == u.tree.num_vertices());
    CHECK(ub.h[0] == 0);
    CHECK_THROWS_AS(unfold_unicyclic(path_graph(3), 0), std::invalid_argument);
  }

  TEST_CASE("law names") {
    CHECK(parse_tree_law("trd") == TreeLaw::Trd);
    CHECK(to_string(TreeLaw::Td) == "td");
    CHECK_THROWS_AS(parse_tree_law("x"), std::invalid_argument);
  }
}
