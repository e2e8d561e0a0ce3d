#pragma once

#include <cstdint>

#include "sparsecol/common.hpp"

namespace sparsecol {

// ---------------------------------------------------------------------------
// Binomial tails

/// Pr[Binomial(trials, p) >= x], summed directly in log space (long double).
long double binomial_upper_tail(std::uint64_t trials, long double p, std::uint64_t x);

/// Pr[Binomial(trials, p) >= x] as an exact rational, for rational p.
/// Computed as 1 minus the lower terms, so the cost grows with x and the
/// size of p's denominator to the power `trials`.
Rational binomial_upper_tail_exact(std::uint64_t trials, const Rational& p, std::uint64_t x);

/// q(t) = Pr[Binomial(n-1, d/n) < t].
long double q_of_t(double n, double d, std::uint64_t t);
/// 1 - q(t), evaluated as an upper tail so it keeps full relative accuracy.
long double q_of_t_complement(double n, double d, std::uint64_t t);

// ---------------------------------------------------------------------------
// Coupon collector

/// Probability that k uniform draws from S colours miss at least one,
/// by inclusion-exclusion over the missed set.
Rational q_ks(std::uint64_t k, std::uint64_t S);
/// Same quantity from a dynamic program over the number of distinct colours.
Rational q_ks_dp(std::uint64_t k, std::uint64_t S);

/// As q_ks, conditioned on the first two draws being distinct
/// (requires S >= 2 and k >= 2). Dynamic program over distinct colours seen.
Rational q_ks2(std::uint64_t k, std::uint64_t S);
/// Same by conditioned inclusion-exclusion.
Rational q_ks2_inclusion_exclusion(std::uint64_t k, std::uint64_t S);

// ---------------------------------------------------------------------------
// Disagreement bounds

/// (n, d, S, t, l). S is a double so that values like 20^14 fit exactly.
struct BoundParams {
  double n = 0;
  double d = 0;
  double S = 0;
  double t = 0;
  double l = 1;
};

/// Validates 1 <= t < S, l >= 0, d > 1 and n >= 1; throws
/// std::invalid_argument otherwise.
void validate(const BoundParams& bp);

/// Base of the tree bound:
///   d tS/(S-t)^2 q + 2d (S(1-q) + S/(S-1) (exp(d/(S-1)) - q)),  q = q(t).
long double lemma_d_base(const BoundParams& bp);
/// Base of the unfolded-tree bound:
///   [d tS/(S-t)^2 q + 2d (S(1-q) + S/(S-1) (exp(d/(S-2)) - q))] / (1 - (d+1)e^-d).
/// Requires S > 2.
long double lemma_g_base(const BoundParams& bp);

/// l * log(base).
long double log_lemma_d_bound(const BoundParams& bp);
long double log_lemma_g_bound(const BoundParams& bp);
/// base^l.
long double eval_lemma_d_bound(const BoundParams& bp);
long double eval_lemma_g_bound(const BoundParams& bp);

/// max(ceil(7d), ceil(2x ln d) + 1) where S = d^x.
std::uint64_t default_threshold(double d, double S);

/// d^14, the colour count the large-d guarantee asks for.
long double reference_colours(double d);

}  // namespace sparsecol
