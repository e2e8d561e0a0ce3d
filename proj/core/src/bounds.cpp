#include "sparsecol/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

namespace sparsecol {
namespace {

long double log_pmf(std::uint64_t m, long double p, std::uint64_t k) {
  const long double mk = static_cast<long double>(m);
  const long double kk = static_cast<long double>(k);
  return std::lgamma(mk + 1) - std::lgamma(kk + 1) - std::lgamma(mk - kk + 1) + kk * std::log(p) +
         (mk - kk) * std::log1p(-p);
}

/// Sum of pmf(k) for k >= x, walking upward; x must be past the mean.
long double sum_up(std::uint64_t m, long double p, std::uint64_t x) {
  const long double odds = std::log(p) - std::log1p(-p);
  long double lt = log_pmf(m, p, x);
  long double sum = 0;
  for (std::uint64_t k = x; k <= m; ++k) {
    const long double term = std::exp(lt);
    sum += term;
    if (term <= sum * 1e-22L) break;
    const long double kk = static_cast<long double>(k);
    lt += std::log((static_cast<long double>(m) - kk) / (kk + 1)) + odds;
  }
  return sum;
}

/// Sum of pmf(k) for k < x, walking downward; x must be at most the mean.
long double sum_down(std::uint64_t m, long double p, std::uint64_t x) {
  if (x == 0) return 0;
  const long double odds = std::log(p) - std::log1p(-p);
  long double lt = log_pmf(m, p, x - 1);
  long double sum = 0;
  for (std::uint64_t k = x; k-- > 0;) {
    const long double term = std::exp(lt);
    sum += term;
    if (term <= sum * 1e-22L || k == 0) break;
    const long double kk = static_cast<long double>(k);
    lt -= std::log((static_cast<long double>(m) - kk + 1) / kk) + odds;
  }
  return sum;
}

BigInt binom(std::uint64_t n, std::uint64_t k) {
  if (k > n) return 0;
  BigInt r = 1;
  for (std::uint64_t i = 0; i < k; ++i) r = r * (n - i) / (i + 1);
  return r;
}

BigInt ipow(std::uint64_t base, std::uint64_t e) {
  return boost::multiprecision::pow(BigInt(base), static_cast<unsigned>(e));
}

}  // namespace

long double binomial_upper_tail(std::uint64_t trials, long double p, std::uint64_t x) {
  if (x == 0) return 1;
  if (x > trials || p <= 0) return 0;
  if (p >= 1) return 1;
  const long double mean = static_cast<long double>(trials) * p;
  if (static_cast<long double>(x) > mean) return sum_up(trials, p, x);
  return 1 - sum_down(trials, p, x);
}

Rational binomial_upper_tail_exact(std::uint64_t trials, const Rational& p, std::uint64_t x) {
  if (p < 0 || p > 1) throw std::invalid_argument("binomial_upper_tail_exact: p outside [0, 1]");
  if (x == 0) return 1;
  if (x > trials) return 0;
  const BigInt a = numerator(p);
  const BigInt b = denominator(p);
  const BigInt c = b - a;
  const unsigned m = static_cast<unsigned>(trials);
  const BigInt whole = boost::multiprecision::pow(b, m);
  // term_k = C(m,k) a^k c^(m-k); all over b^m.
  BigInt lower = 0;
  BigInt choose = 1;
  BigInt apow = 1;
  BigInt cpow = boost::multiprecision::pow(c, m);
  for (std::uint64_t k = 0; k < x; ++k) {
    lower += choose * apow * cpow;
    choose = choose * (trials - k) / (k + 1);
    apow *= a;
    if (c != 0) cpow /= c;
  }
  return Rational(whole - lower, whole);
}

long double q_of_t(double n, double d, std::uint64_t t) {
  const auto trials = static_cast<std::uint64_t>(n) - 1;
  const long double p = static_cast<long double>(d) / static_cast<long double>(n);
  if (t == 0) return 0;
  if (t > trials) return 1;
  const long double mean = static_cast<long double>(trials) * p;
  if (static_cast<long double>(t) <= mean) return sum_down(trials, p, t);
  return 1 - sum_up(trials, p, t);
}

long double q_of_t_complement(double n, double d, std::uint64_t t) {
  const auto trials = static_cast<std::uint64_t>(n) - 1;
  return binomial_upper_tail(trials, static_cast<long double>(d) / static_cast<long double>(n), t);
}

// ---------------------------------------------------------------------------

Rational q_ks(std::uint64_t k, std::uint64_t S) {
  if (S == 0) throw std::invalid_argument("q_ks: S must be positive");
  BigInt all = 0;
  for (std::uint64_t j = 0; j <= S; ++j) {
    const BigInt term = binom(S, j) * ipow(S - j, k);
    if (j % 2 == 0) all += term;
    else all -= term;
  }
  return 1 - Rational(all, ipow(S, k));
}

Rational q_ks_dp(std::uint64_t k, std::uint64_t S) {
  if (S == 0) throw std::invalid_argument("q_ks: S must be positive");
  std::vector<BigInt> ways(S + 1, 0);
  ways[0] = 1;
  for (std::uint64_t i = 0; i < k; ++i) {
    std::vector<BigInt> next(S + 1, 0);
    for (std::uint64_t j = 0; j <= S; ++j) {
      if (ways[j] == 0) continue;
      next[j] += ways[j] * j;
      if (j < S) next[j + 1] += ways[j] * (S - j);
    }
    ways = std::move(next);
  }
  return 1 - Rational(ways[S], ipow(S, k));
}

Rational q_ks2(std::uint64_t k, std::uint64_t S) {
  if (S < 2 || k < 2) throw std::invalid_argument("q_ks2: need S >= 2 and k >= 2");
  std::vector<BigInt> ways(S + 1, 0);
  ways[2] = S * (S - 1);
  for (std::uint64_t i = 2; i < k; ++i) {
    std::vector<BigInt> next(S + 1, 0);
    for (std::uint64_t j = 2; j <= S; ++j) {
      if (ways[j] == 0) continue;
      next[j] += ways[j] * j;
      if (j < S) next[j + 1] += ways[j] * (S - j);
    }
    ways = std::move(next);
  }
  return 1 - Rational(ways[S], BigInt(S * (S - 1)) * ipow(S, k - 2));
}

Rational q_ks2_inclusion_exclusion(std::uint64_t k, std::uint64_t S) {
  if (S < 2 || k < 2) throw std::invalid_argument("q_ks2: need S >= 2 and k >= 2");
  BigInt all = 0;
  for (std::uint64_t j = 0; j + 2 <= S; ++j) {
    const BigInt term = binom(S, j) * (S - j) * (S - j - 1) * ipow(S - j, k - 2);
    if (j % 2 == 0) all += term;
    else all -= term;
  }
  return 1 - Rational(all, BigInt(S * (S - 1)) * ipow(S, k - 2));
}

// ---------------------------------------------------------------------------

void validate(const BoundParams& bp) {
  if (!(bp.d > 1)) throw std::invalid_argument("bounds: d must exceed 1");
  if (!(bp.n >= 1) || bp.d > bp.n) throw std::invalid_argument("bounds: need n >= max(1, d)");
  if (!(bp.t >= 1)) throw std::invalid_argument("bounds: t must be at least 1");
  if (!(bp.S > bp.t)) throw std::invalid_argument("bounds: S must exceed t");
  if (!(bp.l >= 0)) throw std::invalid_argument("bounds: l must be nonnegative");
}

namespace {

long double bracket(const BoundParams& bp, long double exp_shift) {
  const long double d = bp.d;
  const long double S = bp.S;
  const long double t = bp.t;
  const auto ti = static_cast<std::uint64_t>(std::ceil(bp.t));
  const long double q = q_of_t(bp.n, bp.d, ti);
  const long double qc = q_of_t_complement(bp.n, bp.d, ti);
  const long double first = d * t * S / ((S - t) * (S - t)) * q;
  const long double second = 2 * d * (S * qc + S / (S - 1) * (std::expm1(d / exp_shift) + qc));
  return first + second;
}

long double log_bound(long double base, double l) {
  if (l == 0) return 0;
  return static_cast<long double>(l) * std::log(base);
}

}  // namespace

long double lemma_d_base(const BoundParams& bp) {
  validate(bp);
  return bracket(bp, static_cast<long double>(bp.S) - 1);
}

long double lemma_g_base(const BoundParams& bp) {
  validate(bp);
  if (!(bp.S > 2)) throw std::invalid_argument("bounds: the unfolded-tree form needs S > 2");
  const long double d = bp.d;
  return bracket(bp, static_cast<long double>(bp.S) - 2) / (1 - (d + 1) * std::exp(-d));
}

long double log_lemma_d_bound(const BoundParams& bp) { return log_bound(lemma_d_base(bp), bp.l); }
long double log_lemma_g_bound(const BoundParams& bp) { return log_bound(lemma_g_base(bp), bp.l); }
long double eval_lemma_d_bound(const BoundParams& bp) { return std::exp(log_lemma_d_bound(bp)); }
long double eval_lemma_g_bound(const BoundParams& bp) { return std::exp(log_lemma_g_bound(bp)); }

std::uint64_t default_threshold(double d, double S) {
  if (!(d > 1) || !(S > 1)) throw std::invalid_argument("default_threshold: need d > 1 and S > 1");
  const double x = std::log(S) / std::log(d);
  const double a = std::ceil(7 * d);
  const double b = std::ceil(2 * x * std::log(d)) + 1;
  return static_cast<std::uint64_t>(std::max(a, b));
}

long double reference_colours(double d) { return std::pow(static_cast<long double>(d), 14.0L); }

}  // namespace sparsecol
