#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "sparsecol/common.hpp"
#include "sparsecol/graph.hpp"
#include "sparsecol/weights.hpp"

namespace sparsecol {

inline constexpr std::uint64_t kDefaultEnumerationBudget = 100'000'000;

struct EnumerationOptions {
  /// Maximum number of partial assignments visited before BudgetExceeded.
  std::uint64_t budget = kDefaultEnumerationBudget;
  /// Number of colourings to list; 0 disables listing.
  std::size_t list_cap = 0;
};

struct EnumerationResult {
  BigInt count = 0;
  /// Up to list_cap colourings, colour per vertex, in lexicographic order of
  /// the search.
  std::vector<std::vector<Colour>> listing;
  std::uint64_t nodes = 0;
};

/// Counts proper colourings agreeing with `fixed` by backtracking with
/// forward checking. Once the unassigned vertices form an independent set,
/// their choices are multiplied instead of enumerated (unless listing).
EnumerationResult enumerate(const Graph& g, std::size_t colours, const FixedColours& fixed,
                            const EnumerationOptions& opts = {});

/// Plain filter over the whole product space of the unfixed vertices. Kept
/// as an independent check of enumerate(); the budget counts assignments.
BigInt enumerate_product(const Graph& g, std::size_t colours, const FixedColours& fixed,
                         std::uint64_t budget = kDefaultEnumerationBudget);

/// Exact law of v's colour by partitioned enumeration.
WeightVector exact_marginal(const Graph& g, std::size_t colours, const FixedColours& fixed, Vertex v,
                            const EnumerationOptions& opts = {});

// ---------------------------------------------------------------------------

/// Half the L1 distance between the normalized vectors.
double tv_distance(const WeightVector& p, const WeightVector& q);
double tv_distance(const std::vector<double>& p, const std::vector<double>& q);
/// Exact version; both vectors must be Exact mode.
Rational tv_distance_exact(const WeightVector& p, const WeightVector& q);

// ---------------------------------------------------------------------------

struct SdOptions {
  /// Compute v's marginal in the whole graph instead of the radius-l ball.
  bool full_graph = false;
  std::uint64_t budget = kDefaultEnumerationBudget;
};

struct SdResult {
  /// Max over ordered pairs of feasible boundary colourings of the TV
  /// distance between v's marginals.
  Rational value = 0;
  /// Max over feasible boundary colourings of the TV distance to the
  /// marginal with no boundary.
  Rational max_vs_free = 0;
  std::size_t boundary_size = 0;
  std::size_t feasible_boundaries = 0;
  std::size_t distinct_marginals = 0;
};

/// Spatial dependency at v: the boundary is the set of vertices at distance
/// exactly l in the radius-l ball (or at distance >= l in the whole
/// component with full_graph). Every colouring of the boundary with at least
/// one proper extension is tried. Zero when the boundary is empty.
SdResult exact_sd(const Graph& g, std::size_t colours, Vertex v, std::uint32_t l, const SdOptions& opts = {});

}  // namespace sparsecol
