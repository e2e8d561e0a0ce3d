#pragma once

#include <cstddef>
#include <initializer_list>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "sparsecol/common.hpp"

namespace sparsecol {

/// Partial colour assignment: vertex -> colour in 1..S.
class FixedColours {
 public:
  using Map = std::map<Vertex, Colour>;

  FixedColours() = default;
  FixedColours(std::initializer_list<std::pair<const Vertex, Colour>> init);

  /// Assigns `c` to `v`. Colour 0 is rejected, as is reassigning a vertex to
  /// a different colour.
  void set(Vertex v, Colour c);
  void erase(Vertex v) { map_.erase(v); }

  std::optional<Colour> get(Vertex v) const;
  bool contains(Vertex v) const { return map_.count(v) != 0; }
  std::size_t size() const { return map_.size(); }
  bool empty() const { return map_.empty(); }

  Map::const_iterator begin() const { return map_.begin(); }
  Map::const_iterator end() const { return map_.end(); }

  /// Throws std::invalid_argument unless every vertex is < n and every
  /// colour is in 1..S.
  void validate(std::size_t n, std::size_t colours) const;

  /// Parses "v:c,v:c,..." (whitespace tolerated, empty string allowed).
  static FixedColours parse(const std::string& text);
  std::string to_string() const;

  friend bool operator==(const FixedColours&, const FixedColours&) = default;

 private:
  Map map_;
};

/// Natural log of a positive big integer; -inf for zero.
double log_of(const BigInt& x);

/// Distribution over colours 1..S; entry i belongs to colour i+1.
///
/// Exact mode keeps integer counts (the distribution is counts / total).
/// Float mode keeps normalized probabilities plus the log of the
/// unnormalized total, so products of huge counts stay representable.
class WeightVector {
 public:
  enum class Mode { Exact, Float };

  WeightVector() = default;

  static WeightVector exact(std::vector<BigInt> counts);
  /// `weights` need not be normalized; `log_scale` is the log of the factor
  /// they were divided by. The stored log-normalizer is
  /// log_scale + log(sum(weights)).
  static WeightVector floating(std::vector<double> weights, double log_scale = 0.0);
  static WeightVector uniform(std::size_t colours);

  Mode mode() const { return mode_; }
  bool is_exact() const { return mode_ == Mode::Exact; }
  std::size_t size() const { return mode_ == Mode::Exact ? counts_.size() : probs_.size(); }

  /// True when every entry is zero (no feasible colour).
  bool is_zero() const;

  /// Exact mode only.
  const std::vector<BigInt>& counts() const;
  const BigInt& total() const;
  Rational probability_exact(std::size_t i) const;
  std::vector<Rational> probabilities_exact() const;

  double probability(std::size_t i) const;
  std::vector<double> probabilities() const;

  /// Log of the unnormalized total mass.
  double log_normalizer() const;

  /// Float copy of this vector (identity for Float mode).
  WeightVector to_float() const;

 private:
  Mode mode_ = Mode::Float;
  std::vector<BigInt> counts_;
  BigInt total_;
  std::vector<double> probs_;
  double log_norm_ = 0.0;
};

/// Number of feasible colourings, exact or as a log-magnitude.
class CountValue {
 public:
  static CountValue exact(BigInt value);
  static CountValue from_log(double log_value);
  static CountValue zero_float();

  bool is_exact() const { return exact_.has_value(); }
  bool is_zero() const;
  const BigInt& exact_value() const;
  /// Natural log of the count; -inf when zero.
  double log_value() const;
  std::string to_string() const;

 private:
  std::optional<BigInt> exact_;
  double log_ = 0.0;
  bool zero_ = false;
};

}  // namespace sparsecol
