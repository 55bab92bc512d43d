#pragma once

#include <cmath>
#include <cstddef>
#include <span>

namespace voisel {

inline constexpr double kSqrt2 = 1.4142135623730950488;
inline constexpr double kSqrtPi = 1.7724538509055160273;
inline constexpr double kInvSqrt2Pi = 0.39894228040143267794;

/// Standard normal density.
inline double norm_pdf(double x) { return kInvSqrt2Pi * std::exp(-0.5 * x * x); }

/// Standard normal CDF via erfc (accurate in both tails).
inline double norm_cdf(double x) { return 0.5 * std::erfc(-x / kSqrt2); }

/// Inverse standard normal CDF. Newton refinement from a tail-asymptotic
/// start; accurate to ~1e-14 for p in (1e-300, 1 - 1e-16).
double norm_icdf(double p);

/// Index of the largest element, lowest index on ties. Empty span -> 0.
std::size_t argmax(std::span<const double> values);

}  // namespace voisel
