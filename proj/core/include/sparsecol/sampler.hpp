#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "sparsecol/common.hpp"
#include "sparsecol/graph.hpp"
#include "sparsecol/treedp.hpp"

namespace sparsecol {

enum class OrderPolicy { Identity, Random, DegreeDescending };

std::string to_string(OrderPolicy p);
/// Accepts "identity", "random" and "degree".
OrderPolicy parse_order_policy(const std::string& s);

enum class RunStatus { Success, Failure, Infeasible };

std::string to_string(RunStatus s);

struct SamplerOptions {
  std::uint32_t radius = 1;
  OrderPolicy order = OrderPolicy::Identity;
  Arithmetic arith = Arithmetic::Float;
  /// Keep one StepRecord per coloured vertex.
  bool record_steps = true;
};

struct StepRecord {
  Vertex vertex = 0;
  Colour colour = kNoColour;
  /// Conditional probability of the drawn colour.
  double probability = 0.0;
  std::uint32_t ball_size = 0;
  BallKind kind = BallKind::Tree;
};

/// One pass of the sequential sampler.
struct SampleRun {
  std::vector<Vertex> order;
  /// colouring[v] in 1..S for every vertex on Success; 0 for vertices not
  /// reached otherwise.
  std::vector<Colour> colouring;
  RunStatus status = RunStatus::Success;
  /// Vertex at which the run stopped (Failure or Infeasible).
  std::optional<Vertex> stop_vertex;
  /// Sum of log conditional probabilities of the drawn colours.
  double log_weight = 0.0;
  /// Exact product of the conditional probabilities (Exact mode only).
  std::optional<Rational> weight;
  std::vector<StepRecord> steps;
  double seconds = 0.0;
};

/// The visiting order for `policy`; `seed` is only used by Random.
std::vector<Vertex> vertex_order(const Graph& g, OrderPolicy policy, std::uint64_t seed);

/// Colours the vertices one at a time in the chosen order. Each vertex draws
/// its colour from the uniform measure on proper colourings of its radius-r
/// ball, conditioned on the colours already placed inside that ball. Stops
/// with Failure at the first vertex whose ball has two or more cycles and
/// with Infeasible when the local conditional has no mass.
///
/// Requires S >= 2 and radius >= 1; with radius >= 1 every coloured neighbour
/// lies in the ball, so successful runs are always proper.
SampleRun sample_colouring(const Graph& g, std::size_t colours, const SamplerOptions& opts, std::uint64_t seed);

/// Number of monochromatic edges of a complete colouring.
std::size_t count_conflicts(const Graph& g, const std::vector<Colour>& colouring);

// ---------------------------------------------------------------------------

struct CountSample {
  std::uint64_t seed = 0;
  RunStatus status = RunStatus::Success;
  /// log of 1/weight for successful runs.
  double log_estimate = 0.0;
  /// 1/weight, Exact mode only.
  std::optional<Rational> estimate;
};

struct CountEstimate {
  std::vector<CountSample> samples;
  std::size_t successes = 0;
  double failure_fraction = 0.0;
  /// log of the mean of 1/weight over successful runs.
  double log_mean = 0.0;
  /// Standard error of the mean divided by the mean.
  double relative_std_error = 0.0;
  /// Mean of the exact estimates, Exact mode only.
  std::optional<Rational> exact_mean;
};

/// Telescoping-product count estimator: 1/weight of each successful run is
/// an estimate of the number of proper colourings. Run i uses seed
/// derive_seed(seed, i).
CountEstimate estimate_count(const Graph& g, std::size_t colours, const SamplerOptions& opts,
                             std::size_t num_samples, std::uint64_t seed);

// ---------------------------------------------------------------------------

struct TrialRecord {
  std::size_t index = 0;
  std::uint64_t seed = 0;
  RunStatus status = RunStatus::Success;
  std::optional<Vertex> stop_vertex;
  double log_weight = 0.0;
  std::size_t conflicts = 0;
  double seconds = 0.0;
};

struct BatchStats {
  std::vector<TrialRecord> trials;
  std::size_t successes = 0;
  std::size_t failures = 0;
  std::size_t infeasible = 0;
  double success_rate = 0.0;
  /// Mean log_weight over successful trials (0 when there are none).
  double mean_log_weight = 0.0;
  double seconds_per_vertex = 0.0;
};

/// `trials` independent runs, trial i seeded with derive_seed(seed, i).
BatchStats run_batch(const Graph& g, std::size_t colours, const SamplerOptions& opts, std::size_t trials,
                     std::uint64_t seed);

}  // namespace sparsecol
