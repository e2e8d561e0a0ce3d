#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

#include <boost/multiprecision/cpp_int.hpp>

namespace sparsecol {

using Vertex = std::uint32_t;

/// Colours are 1-based (1..S). Zero is reserved for "uncoloured".
using Colour = std::uint32_t;
inline constexpr Colour kNoColour = 0;

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// The fixed colours leave no proper colouring of the system.
class InfeasibleBoundary : public Error {
 public:
  using Error::Error;
};

/// Exhaustive enumeration would visit more partial assignments than allowed.
class BudgetExceeded : public Error {
 public:
  using Error::Error;
};

/// Renders a rational as "p/q" (or "p" when the denominator is 1).
std::string to_string(const Rational& r);

}  // namespace sparsecol
