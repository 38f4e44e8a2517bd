#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <span>
#include <string>
#include <vector>

#include "chebex/errors.hpp"
#include "chebex/tolerance.hpp"

namespace chebex {

/// f(t) = amplitude * e^{rate * t} + offset.
/// rate == 0 is permitted (constant-plus-amplitude degenerate member).
struct ExponentialModel {
    double amplitude = 0.0;  // a
    double offset = 0.0;     // b
    double rate = 0.0;       // k, in inverse time units
};

/// f(t) = intercept + slope * t.
struct LinearModel {
    double slope = 0.0;      // c
    double intercept = 0.0;  // d
};

namespace detail {

inline void check_exponent_budget(double rate, double span) {
    if (std::abs(rate) * span > exponent_budget)
        throw OverflowRisk("|k * (t_n - t_1)| = " + std::to_string(std::abs(rate) * span) +
                           " exceeds the exponent budget of " + std::to_string(exponent_budget));
}

// Shifted amplitude a' = a * e^{k t_ref}, so that f(t) = a' e^{k (t - t_ref)} + b.
inline double normalize_amplitude(double amplitude, double rate, double t_ref) {
    if (amplitude == 0.0) return 0.0;
    double shifted = amplitude * std::exp(rate * t_ref);
    if (!std::isfinite(shifted))
        throw OverflowRisk("amplitude normalization overflows for k * t_1 = " +
                           std::to_string(rate * t_ref));
    return shifted;
}

// Inverse of normalize_amplitude: recover the public coefficient.
inline double denormalize_amplitude(double shifted, double rate, double t_ref) {
    if (shifted == 0.0) return 0.0;
    double amplitude = shifted * std::exp(-rate * t_ref);
    if (!std::isfinite(amplitude))
        throw OverflowRisk("amplitude de-normalization overflows for k * t_1 = " +
                           std::to_string(rate * t_ref));
    return amplitude;
}

// e^{k (t_i - t_ref)} for every instant.
inline std::vector<double> shifted_exponentials(std::span<const double> times, double rate,
                                                double t_ref) {
    std::vector<double> u(times.size());
    for (std::size_t i = 0; i < times.size(); ++i) u[i] = std::exp(rate * (times[i] - t_ref));
    return u;
}

}  // namespace detail

/// Evaluate the model at each instant. Computation is shift-normalized
/// around the first instant so results stay finite whenever
/// |k * (t_i - t_1)| is within the exponent budget.
inline std::vector<double> evaluate(const ExponentialModel& m, std::span<const double> times) {
    if (times.empty()) return {};
    detail::check_exponent_budget(m.rate, times.back() - times.front());
    const double t_ref = times.front();
    const double shifted = detail::normalize_amplitude(m.amplitude, m.rate, t_ref);
    std::vector<double> out(times.size());
    for (std::size_t i = 0; i < times.size(); ++i)
        out[i] = shifted * std::exp(m.rate * (times[i] - t_ref)) + m.offset;
    return out;
}

inline std::vector<double> evaluate(const LinearModel& m, std::span<const double> times) {
    std::vector<double> out(times.size());
    for (std::size_t i = 0; i < times.size(); ++i) out[i] = m.intercept + m.slope * times[i];
    return out;
}

/// Amplitude of the unique exponential with the given rate interpolating
/// (t_i, T_i) and (t_j, T_j):  a = (T_i - T_j) / (e^{k t_i} - e^{k t_j}).
///
/// Symmetric in its two points. Throws DegenerateDenominator when the
/// exponential difference underflows.
inline double interp_slope(double t_i, double value_i, double t_j, double value_j, double rate) {
    if (t_i == t_j) throw InvariantViolation("interp_slope requires distinct instants");
    if (rate == 0.0) throw InvariantViolation("interp_slope requires a nonzero rate");
    detail::check_exponent_budget(rate, std::abs(t_i - t_j));
    const double t_ref = std::min(t_i, t_j);
    const double denom = std::exp(rate * (t_i - t_ref)) - std::exp(rate * (t_j - t_ref));
    if (std::abs(denom) < std::numeric_limits<double>::min())
        throw DegenerateDenominator("e^{k t_i} - e^{k t_j} underflows for k = " +
                                    std::to_string(rate));
    const double shifted = (value_i - value_j) / denom;
    return detail::denormalize_amplitude(shifted, rate, t_ref);
}

}  // namespace chebex
