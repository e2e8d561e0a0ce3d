#pragma once

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <string>
#include <vector>

#include <sparsecol/common.hpp>
#include <sparsecol/graph.hpp>
#include <sparsecol/weights.hpp>

namespace sparsecol::cli {

enum ExitCode : int {
  kOk = 0,
  kVerificationFailed = 1,
  kBudgetExceeded = 2,
  kUsage = 3,
};

/// Name of the environment variable holding the enumeration budget.
inline constexpr const char* kBudgetEnv = "SPARSECOL_ENUM_BUDGET";

/// Budget from the environment, or the library default when unset.
/// Throws std::invalid_argument on a malformed value.
std::uint64_t budget_from_env();

/// The exact counter checked by the verification suite. Replaceable so the
/// suite's own failure path can be exercised.
using CountFn = std::function<BigInt(const Graph&, std::size_t, const FixedColours&)>;

struct Hooks {
  CountFn count;
};

struct VerifyConfig {
  std::size_t instances = 500;
  std::uint64_t seed = 1;
  std::uint64_t budget = 0;  // 0 = take it from the environment
  std::size_t max_vertices = 12;
};

struct Mismatch {
  std::size_t index = 0;
  std::uint64_t seed = 0;
  std::string graph;  // edge list in the text format
  std::size_t colours = 0;
  std::string fixed;
  std::string check;
  std::string expected;
  std::string actual;
};

struct VerifyReport {
  std::size_t instances = 0;
  std::size_t checks = 0;
  std::vector<Mismatch> mismatches;
  bool ok() const { return mismatches.empty(); }
};

/// Cross-checks tree DP counts and marginals against enumeration on random
/// trees and unicyclic graphs, and enumeration against the product-space
/// filter on the smaller ones. Instance i uses derive_seed(seed, i).
/// Throws BudgetExceeded.
VerifyReport run_verify(const VerifyConfig& cfg, const Hooks& hooks = {});

/// Entry point shared by the executables. Returns the process exit code.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err, const Hooks& hooks = {});

}  // namespace sparsecol::cli
