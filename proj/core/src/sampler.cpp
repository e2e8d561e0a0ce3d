#include "sparsecol/sampler.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

#include "sparsecol/rng.hpp"

namespace sparsecol {

std::string to_string(OrderPolicy p) {
  switch (p) {
    case OrderPolicy::Identity: return "identity";
    case OrderPolicy::Random: return "random";
    case OrderPolicy::DegreeDescending: return "degree";
  }
  return "identity";
}

OrderPolicy parse_order_policy(const std::string& s) {
  if (s == "identity") return OrderPolicy::Identity;
  if (s == "random") return OrderPolicy::Random;
  if (s == "degree") return OrderPolicy::DegreeDescending;
  throw std::invalid_argument("unknown order policy \"" + s + "\"");
}

std::string to_string(RunStatus s) {
  switch (s) {
    case RunStatus::Success: return "success";
    case RunStatus::Failure: return "failure";
    case RunStatus::Infeasible: return "infeasible";
  }
  return "success";
}

std::vector<Vertex> vertex_order(const Graph& g, OrderPolicy policy, std::uint64_t seed) {
  std::vector<Vertex> order(g.num_vertices());
  std::iota(order.begin(), order.end(), Vertex{0});
  if (policy == OrderPolicy::Random) {
    Rng rng(seed, streams::kOrder);
    for (std::size_t i = order.size(); i > 1; --i) std::swap(order[i - 1], order[rng.below(i)]);
  } else if (policy == OrderPolicy::DegreeDescending) {
    std::stable_sort(order.begin(), order.end(),
                     [&](Vertex a, Vertex b) { return g.degree(a) > g.degree(b); });
  }
  return order;
}

SampleRun sample_colouring(const Graph& g, std::size_t colours, const SamplerOptions& opts, std::uint64_t seed) {
  if (colours < 2) throw std::invalid_argument("sample_colouring: need at least 2 colours");
  if (opts.radius < 1) throw std::invalid_argument("sample_colouring: radius must be at least 1");

  const auto start = std::chrono::steady_clock::now();
  SampleRun run;
  run.order = vertex_order(g, opts.order, seed);
  run.colouring.assign(g.num_vertices(), kNoColour);
  if (opts.arith == Arithmetic::Exact) run.weight = Rational(1);
  if (opts.record_steps) run.steps.reserve(g.num_vertices());

  Rng rng(seed, streams::kSampler);
  BallExtractor extractor(g);
  std::vector<Colour> local_fixed;

  for (Vertex v : run.order) {
    const Ball b = extractor.extract(v, opts.radius);
    if (b.kind == BallKind::Complex) {
      run.status = RunStatus::Failure;
      run.stop_vertex = v;
      break;
    }
    local_fixed.resize(b.size());
    for (std::size_t i = 0; i < b.size(); ++i) local_fixed[i] = run.colouring[b.vertices[i]];

    WeightVector w;
    try {
      w = local_marginal(b.local, local_fixed, colours, 0, opts.arith);
    } catch (const InfeasibleBoundary&) {
      run.status = RunStatus::Infeasible;
      run.stop_vertex = v;
      break;
    }

    const std::size_t idx = draw_index(rng, w);
    const Colour c = static_cast<Colour>(idx + 1);
    run.colouring[v] = c;
    double p;
    if (w.is_exact()) {
      *run.weight *= w.probability_exact(idx);
      run.log_weight += log_of(w.counts()[idx]) - log_of(w.total());
      p = w.probability(idx);
    } else {
      p = w.probability(idx);
      run.log_weight += std::log(p);
    }
    if (opts.record_steps)
      run.steps.push_back({v, c, p, static_cast<std::uint32_t>(b.size()), b.kind});
  }

  if (run.status != RunStatus::Success) run.weight.reset();
  run.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return run;
}

std::size_t count_conflicts(const Graph& g, const std::vector<Colour>& colouring) {
  std::size_t bad = 0;
  for (const Edge& e : g.edges())
    if (colouring[e.u] == colouring[e.v]) ++bad;
  return bad;
}

CountEstimate estimate_count(const Graph& g, std::size_t colours, const SamplerOptions& opts,
                             std::size_t num_samples, std::uint64_t seed) {
  CountEstimate out;
  SamplerOptions o = opts;
  o.record_steps = false;
  const bool exact = opts.arith == Arithmetic::Exact;
  Rational exact_sum = 0;
  std::vector<double> logs;

  for (std::size_t i = 0; i < num_samples; ++i) {
    CountSample s;
    s.seed = derive_seed(seed, i);
    const SampleRun run = sample_colouring(g, colours, o, s.seed);
    s.status = run.status;
    if (run.status == RunStatus::Success) {
      s.log_estimate = -run.log_weight;
      logs.push_back(s.log_estimate);
      if (exact) {
        s.estimate = 1 / *run.weight;
        exact_sum += *s.estimate;
      }
      ++out.successes;
    }
    out.samples.push_back(std::move(s));
  }

  out.failure_fraction =
      num_samples == 0 ? 0.0 : static_cast<double>(num_samples - out.successes) / static_cast<double>(num_samples);
  if (logs.empty()) {
    out.log_mean = -std::numeric_limits<double>::infinity();
    return out;
  }
  const double top = *std::max_element(logs.begin(), logs.end());
  double s1 = 0.0, s2 = 0.0;
  for (double l : logs) {
    const double x = std::exp(l - top);
    s1 += x;
    s2 += x * x;
  }
  const double k = static_cast<double>(logs.size());
  const double mean = s1 / k;
  out.log_mean = top + std::log(mean);
  if (logs.size() > 1) {
    const double var = std::max(0.0, (s2 - k * mean * mean) / (k - 1.0));
    out.relative_std_error = std::sqrt(var / k) / mean;
  }
  if (exact) out.exact_mean = exact_sum / Rational(static_cast<long long>(logs.size()));
  return out;
}

BatchStats run_batch(const Graph& g, std::size_t colours, const SamplerOptions& opts, std::size_t trials,
                     std::uint64_t seed) {
  if (trials < 1) throw std::invalid_argument("run_batch: need at least one trial");
  BatchStats out;
  SamplerOptions o = opts;
  o.record_steps = false;
  double total_seconds = 0.0;
  double log_sum = 0.0;
  for (std::size_t i = 0; i < trials; ++i) {
    TrialRecord rec;
    rec.index = i;
    rec.seed = derive_seed(seed, i);
    const SampleRun run = sample_colouring(g, colours, o, rec.seed);
    rec.status = run.status;
    rec.stop_vertex = run.stop_vertex;
    rec.log_weight = run.log_weight;
    rec.seconds = run.seconds;
    if (run.status == RunStatus::Success) {
      rec.conflicts = count_conflicts(g, run.colouring);
      ++out.successes;
      log_sum += run.log_weight;
    } else if (run.status == RunStatus::Failure) {
      ++out.failures;
    } else {
      ++out.infeasible;
    }
    total_seconds += run.seconds;
    out.trials.push_back(rec);
  }
  out.success_rate = static_cast<double>(out.successes) / static_cast<double>(trials);
  out.mean_log_weight = out.successes ? log_sum / static_cast<double>(out.successes) : 0.0;
  const double n = static_cast<double>(std::max<std::size_t>(1, g.num_vertices()));
  out.seconds_per_vertex = total_seconds / (static_cast<double>(trials) * n);
  return out;
}

}  // namespace sparsecol
