#pragma once

#include <cstdint>
#include <random>

#include "sparsecol/common.hpp"

namespace sparsecol {

/// Seeded random stream.
///
/// Every stream is identified by (seed, stream): the pair is expanded through
/// std::seed_seq into an mt19937_64 state, so independent streams for trials,
/// orders and instances are derived from a single user seed without sharing
/// state. Conversions to doubles and bounded integers are done here rather
/// than through <random> distributions so output is identical across
/// standard library implementations.
class Rng {
 public:
  explicit Rng(std::uint64_t seed, std::uint64_t stream = 0);

  std::uint64_t next() { return engine_(); }

  /// Uniform on [0, 1) with 53 random bits.
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  /// Uniform on {0, ..., n-1}; n must be positive.
  std::uint64_t below(std::uint64_t n);

  /// Uniform on {0, ..., bound-1}; bound must be positive.
  BigInt below(const BigInt& bound);

  std::mt19937_64& engine() { return engine_; }

 private:
  std::mt19937_64 engine_;
};

/// Stream tags used by the library. Kept in one place so every consumer of a
/// user seed derives disjoint streams.
namespace streams {
inline constexpr std::uint64_t kGraph = 0x67726170ULL;
inline constexpr std::uint64_t kOrder = 0x6f726472ULL;
inline constexpr std::uint64_t kSampler = 0x73616d70ULL;
inline constexpr std::uint64_t kTree = 0x74726565ULL;
inline constexpr std::uint64_t kBoundary = 0x626e6479ULL;
inline constexpr std::uint64_t kVerify = 0x76657269ULL;
}  // namespace streams

/// Child seed for trial `index` of a batch run under `seed`.
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index);

}  // namespace sparsecol
