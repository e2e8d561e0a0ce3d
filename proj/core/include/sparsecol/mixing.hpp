#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "sparsecol/common.hpp"
#include "sparsecol/graph.hpp"
#include "sparsecol/rng.hpp"
#include "sparsecol/treedp.hpp"
#include "sparsecol/weights.hpp"

namespace sparsecol {

/// Td: every vertex has Binomial(n-1, d/n) children.
/// Trd: a vertex is a leaf with the binomial's probability of zero children;
/// otherwise its child count is the binomial conditioned on being >= 2.
enum class TreeLaw { Td, Trd };

std::string to_string(TreeLaw law);
TreeLaw parse_tree_law(const std::string& s);

/// Rooted tree with vertex 0 as root and vertices numbered in BFS order.
struct RandomTree {
  std::vector<Vertex> parent;  // parent[0] == 0
  std::vector<std::vector<Vertex>> children;
  std::vector<std::uint32_t> depth;
  std::uint32_t depth_limit = 0;
  TreeLaw law = TreeLaw::Td;

  std::size_t size() const { return parent.size(); }
  std::uint32_t height() const;
  Graph to_graph() const;
  /// Vertices at depth >= l.
  std::vector<Vertex> at_least(std::uint32_t l) const;
};

/// Draw from Binomial(trials, p) by inversion over log-space terms. The
/// result depends only on the stream, not on the standard library.
std::uint64_t binomial_draw(Rng& rng, std::uint64_t trials, double p);

/// Branching process with offspring Binomial(n-1, d/n), cut at `depth`.
/// Throws std::length_error once the tree exceeds `max_vertices`.
RandomTree sample_td_tree(std::size_t n, double d, std::uint32_t depth, TreeLaw law, std::uint64_t seed,
                          std::size_t max_vertices = 1'000'000);

/// Builds a RandomTree from a tree graph rooted at `root`, renumbered in BFS
/// order. `relabel`, if given, receives the new id of every old vertex.
RandomTree tree_from_graph(const Graph& tree, Vertex root, std::vector<Vertex>* relabel = nullptr);

struct ColourRootResult {
  /// Colour per tree vertex (not necessarily proper).
  std::vector<Colour> colours;
  /// Law each vertex was drawn from: the root marginal of its subtree system.
  std::vector<WeightVector> marginals;
};

/// Every unfixed vertex u independently receives a colour drawn from the
/// root marginal of the subtree T_u with the fixed colours inside T_u;
/// fixed vertices keep theirs. Throws InfeasibleBoundary if some subtree has
/// no feasible colouring.
ColourRootResult colour_root(const RandomTree& tree, std::size_t colours, const FixedColours& fixed, Rng& rng,
                             Arithmetic arith = Arithmetic::Exact);

struct DisagreementOptions {
  /// Pairs of sampled boundary colourings.
  std::size_t pairs = 50;
  /// Enumerate every colouring of the depth-l layer instead of sampling
  /// when there are at most this many.
  std::uint64_t exhaustive_limit = 0;
};

struct DisagreementResult {
  double value = 0.0;
  std::size_t evaluated = 0;
  std::size_t infeasible_skipped = 0;
  bool exhaustive = false;
};

/// Largest TV distance between root marginals over the boundary
/// colourings tried, where the boundary is every vertex at depth >= l and
/// the free (unconditioned) root marginal is included among the
/// candidates. Sampled boundaries are restrictions of uniform proper
/// colourings of the whole tree, so they are always feasible. Zero when
/// the tree has no vertex at depth l.
DisagreementResult root_disagreement_tv(const RandomTree& tree, std::size_t colours, std::uint32_t l,
                                        const DisagreementOptions& opts, std::uint64_t seed);

// ---------------------------------------------------------------------------

struct UnfoldedTree {
  /// Tree rooted at vertex 0; vertices numbered in BFS order.
  Graph tree;
  RandomTree rooted;
  /// h[x] is the source vertex represented by tree vertex x.
  std::vector<Vertex> h;
};

/// Unfolds a unicyclic graph into a tree seen from `root`. Let u be the
/// cycle vertex nearest to the root and w1 < w2 its cycle neighbours. The
/// tree is the spanning tree that drops the edge {u, w2}, plus a second copy
/// of the component of G - u containing the rest of the cycle, hung from u
/// through w2. Cycle vertices and their pendant subtrees therefore appear
/// twice.
UnfoldedTree unfold_unicyclic(const Graph& g, Vertex root);
/// Same on a ball around its center; h holds host vertex ids.
UnfoldedTree unfold_unicyclic(const Ball& b);

}  // namespace sparsecol
