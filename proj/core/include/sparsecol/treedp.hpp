#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "sparsecol/common.hpp"
#include "sparsecol/graph.hpp"
#include "sparsecol/rng.hpp"
#include "sparsecol/weights.hpp"

namespace sparsecol {

/// Exact: arbitrary-precision integer counts, exact rationals downstream.
/// Float: per-vertex normalized messages with an accumulated log-normalizer.
enum class Arithmetic { Exact, Float };

// ---------------------------------------------------------------------------
// Counting list colourings of trees and unicyclic graphs.
//
// A vertex fixed to colour c may only take c; every other vertex may take any
// of 1..S. Messages are m_u(c) = [c allowed at u] * prod_{w child of u}
// (sum_c' m_w(c') - m_w(c)), so each edge costs O(S). Unicyclic graphs drop
// the non-tree edge {a, b} of a BFS tree, fix b to each allowed colour in
// turn and forbid that colour at a; only the messages on the root paths of a
// and b are recomputed between colours.

/// Proper colourings of a tree agreeing with `fixed`. Throws
/// std::invalid_argument unless `tree` is connected with |E| = |V| - 1.
CountValue count_tree(const Graph& tree, std::size_t colours, const FixedColours& fixed,
                      Arithmetic arith = Arithmetic::Exact);

/// Throws std::invalid_argument unless `g` is connected with |E| = |V|.
CountValue count_unicyclic(const Graph& g, std::size_t colours, const FixedColours& fixed,
                           Arithmetic arith = Arithmetic::Exact);

/// Tree or unicyclic, dispatched on structure.
CountValue count_colourings(const Graph& g, std::size_t colours, const FixedColours& fixed,
                            Arithmetic arith = Arithmetic::Exact);

/// Ball overloads: `fixed` is keyed by host vertex ids; entries outside the
/// ball are ignored. The ball's center is the root.
CountValue count_tree(const Ball& b, std::size_t colours, const FixedColours& fixed,
                      Arithmetic arith = Arithmetic::Exact);
CountValue count_unicyclic(const Ball& b, std::size_t colours, const FixedColours& fixed,
                           Arithmetic arith = Arithmetic::Exact);

// ---------------------------------------------------------------------------
// Marginals

/// Law of v's colour under the uniform measure on feasible colourings.
/// Throws InfeasibleBoundary when there is none. If v itself is fixed the
/// result is the point mass on its colour.
WeightVector conditional_marginal(const Graph& g, std::size_t colours, const FixedColours& fixed, Vertex v,
                                  Arithmetic arith = Arithmetic::Exact);
WeightVector conditional_marginal(const Ball& b, std::size_t colours, const FixedColours& fixed, Vertex v,
                                  Arithmetic arith = Arithmetic::Exact);

/// Same as conditional_marginal on a graph in local ids, with the fixed
/// colours given per vertex (0 = free). This is the sampler's inner call.
WeightVector local_marginal(const Graph& g, std::span<const Colour> fixed, std::size_t colours, Vertex v,
                            Arithmetic arith);

/// For a tree rooted at `root`, the root marginal of every subtree system
/// PCS(T_u, S, fixed restricted to T_u), indexed by vertex. Throws
/// InfeasibleBoundary if any subtree has no feasible colouring.
std::vector<WeightVector> subtree_root_marginals(const Graph& tree, Vertex root, std::size_t colours,
                                                 const FixedColours& fixed, Arithmetic arith = Arithmetic::Exact);

// ---------------------------------------------------------------------------
// Exact uniform sampling

struct ListSample {
  /// Colour per vertex (graph ids, or host ids for the Ball overload).
  FixedColours colouring;
  /// Probability with which this colouring was drawn; exact in Exact mode.
  Rational probability = 1;
  double log_probability = 0.0;
};

/// Uniform draw from the feasible colourings: bottom-up messages, then root
/// colour from its marginal and each child from its message with the
/// parent's colour removed. In the unicyclic case the colour of the far
/// endpoint of the non-tree edge is drawn first, proportional to the
/// residual tree counts. Throws InfeasibleBoundary when there is nothing to
/// draw.
ListSample sample_exact(const Graph& g, std::size_t colours, const FixedColours& fixed, Rng& rng,
                        Arithmetic arith = Arithmetic::Float);
ListSample sample_exact(const Ball& b, std::size_t colours, const FixedColours& fixed, Rng& rng,
                        Arithmetic arith = Arithmetic::Float);

/// Probability that sample_exact(g, colours, fixed, ., arith) returns
/// `colouring` (a full assignment of g), computed by replaying its choices.
/// Zero if the colouring is improper or disagrees with `fixed`.
ListSample replay_probability(const Graph& g, std::size_t colours, const FixedColours& fixed,
                              const FixedColours& colouring, Arithmetic arith = Arithmetic::Exact);

/// Index i drawn with probability proportional to entry i of `w`. Exact
/// vectors are drawn with an exact big-integer draw.
std::size_t draw_index(Rng& rng, const WeightVector& w);

}  // namespace sparsecol
