#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace mexch {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

/// Index of a symbol in a class alphabet.
using State = std::uint16_t;

/// Ordered tuple of symbols (a point of a finite product space).
using Tuple = std::vector<State>;

inline constexpr std::uint64_t kDefaultEnumerationCap = 10'000'000;
inline constexpr std::uint64_t kDefaultPermutationCap = 1'000'000;

/// Raised when an exhaustive computation would exceed its configured cap.
class CapExceeded : public std::length_error {
 public:
  using std::length_error::length_error;
};

/// Raised when an operation requires a multi-exchangeable law and gets another.
class NotMultiExchangeable : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Renders a rational as "p/q", or "p" when the denominator is one.
std::string to_string(const Rational& r);

/// Parses "p/q" or "p"; throws std::invalid_argument on malformed input.
Rational parse_rational(const std::string& text);

}  // namespace mexch
