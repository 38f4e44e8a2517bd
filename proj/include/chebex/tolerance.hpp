#pragma once

#include <algorithm>
#include <cmath>
#include <span>

namespace chebex {

// Comparability policy for discrete data. Two tolerances are used
// throughout: an absolute one for equality of data values (scaled to the
// magnitude of the vector at hand) and a relative one for deciding that a
// residual attains the max-norm.
inline constexpr double abs_tolerance_factor = 1e-12;
inline constexpr double rel_tolerance = 1e-9;

// Largest exponent magnitude accepted for e^x in double precision.
inline constexpr double exponent_budget = 700.0;

/// max |v_i| over the vector, or 1 when the vector is empty or all zero.
inline double value_scale(std::span<const double> v) {
    double m = 0.0;
    for (double x : v) m = std::max(m, std::abs(x));
    return m > 0.0 ? m : 1.0;
}

/// Absolute equality tolerance scaled to the vector's magnitude.
inline double abs_tolerance(std::span<const double> v) {
    return abs_tolerance_factor * value_scale(v);
}

inline bool approx_equal_rel(double a, double b, double rel = rel_tolerance) {
    return std::abs(a - b) <= rel * std::max(std::abs(a), std::abs(b));
}

}  // namespace chebex
