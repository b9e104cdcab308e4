#pragma once

#include <cmath>
#include <cstddef>
#include <limits>

namespace opp {

/// Absolute tolerance for comparisons in the base-2 log domain.
inline constexpr double kLogTol = 0x1p-40;

inline constexpr double kNegInf = -std::numeric_limits<double>::infinity();

inline double log2_count(double x) { return x <= 0 ? kNegInf : std::log2(x); }

/// a <= b in the log domain, with equality up to kLogTol.
inline bool log_leq(double a, double b) {
  if (a == kNegInf) return true;
  if (b == kNegInf) return false;
  return a <= b + kLogTol;
}

/// a < b in the log domain; values within kLogTol count as equal.
inline bool log_lt(double a, double b) { return !log_leq(b, a); }

/// Smallest integer >= x, treating x within a relative 2^-40 of an integer as that integer.
inline std::size_t ceil_count(double x) {
  if (x <= 0) return 0;
  const double r = std::round(x);
  if (std::fabs(x - r) <= kLogTol * std::fmax(1.0, x)) return static_cast<std::size_t>(r);
  return static_cast<std::size_t>(std::ceil(x));
}

/// Largest integer <= x with the same snapping as ceil_count.
inline std::size_t floor_count(double x) {
  if (x <= 0) return 0;
  const double r = std::round(x);
  if (std::fabs(x - r) <= kLogTol * std::fmax(1.0, x)) return static_cast<std::size_t>(r);
  return static_cast<std::size_t>(std::floor(x));
}

}  // namespace opp
