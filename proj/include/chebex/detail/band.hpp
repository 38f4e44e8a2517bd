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

// Successive-remainders core over a strictly decreasing basis u. The family
// of approximants is alpha * u + beta: with u_i = e^{k (t_i - t_1)}, k < 0,
// that is the fixed-rate exponential family; with u_i = -(t_i - t_1) it is
// the family of lines. Requires the value vector in case-1 layout (every
// global max index before every global min index).

namespace chebex {

/// Snapshot taken after one improvement step. Coefficients are in the basis
/// frame of the (reduced, time-shifted) problem the solver ran on.
struct StepState {
    double slope_acc = 0.0;       // accumulated alpha
    double offset_acc = 0.0;      // accumulated beta
    double error = 0.0;           // max-norm of the remainder after the step
    std::size_t first_min = 0;    // m after the update
    std::size_t last_max = 0;     // M after the update
};

struct StepTrace {
    std::size_t initial_min = 0;  // m0
    std::size_t initial_max = 0;  // M0
    double initial_error = 0.0;   // midrange level error
    std::vector<StepState> steps;
};

namespace detail {

struct BandCandidates {
    double min_side_slope = 0.0;     // a_{m2 m}
    std::size_t min_candidate = 0;   // m2, smallest index attaining the min-side minimum
    double max_side_slope = 0.0;     // a_{M2 M}
    std::size_t max_candidate = 0;   // M2, largest index attaining the max-side minimum

    double slope() const { return std::min(min_side_slope, max_side_slope); }

    // Equal candidates (within the relative tolerance) move the max index.
    bool move_min() const {
        return min_side_slope < max_side_slope &&
               !approx_equal_rel(min_side_slope, max_side_slope);
    }
};

inline double pair_slope(std::span<const double> x, std::span<const double> u, std::size_t i,
                         std::size_t j) {
    const double denom = u[i] - u[j];
    if (std::abs(denom) < std::numeric_limits<double>::min())
        throw DegenerateDenominator("basis difference underflows between indices " +
                                    std::to_string(i) + " and " + std::to_string(j));
    return (x[i] - x[j]) / denom;
}

// Interpolation slopes against the first minimum and the last maximum of the
// remainder x. Requires last_max < first_min, which guarantees both candidate
// ranges are nonempty.
inline BandCandidates band_candidates(std::span<const double> x, std::span<const double> u,
                                      std::size_t first_min, std::size_t last_max) {
    BandCandidates c;
    c.min_side_slope = std::numeric_limits<double>::infinity();
    for (std::size_t j = 0; j < first_min; ++j) {
        const double a = pair_slope(x, u, j, first_min);
        if (a < c.min_side_slope) {  // strict: keeps the smallest index on ties
            c.min_side_slope = a;
            c.min_candidate = j;
        }
    }
    c.max_side_slope = std::numeric_limits<double>::infinity();
    for (std::size_t i = last_max + 1; i < x.size(); ++i) {
        const double a = pair_slope(x, u, i, last_max);
        if (a <= c.max_side_slope) {  // non-strict: keeps the largest index on ties
            c.max_side_slope = a;
            c.max_candidate = i;
        }
    }
    return c;
}

struct CoreFit {
    double slope = 0.0;
    double offset = 0.0;
    std::size_t iterations = 0;
};

// Start from the midrange level, then repeatedly add the midline of the
// narrowest band sandwiching the remainder until the remainder alternates
// (the loop guard M < m fails). Index bookkeeping follows the constructive
// method: each step either moves the first minimum left or the last maximum
// right, so the loop runs at most m0 - M0 times.
inline CoreFit successive_remainders(std::span<const double> values, std::span<const double> u,
                                     StepTrace* trace = nullptr) {
    const std::size_t n = values.size();
    double vmax = values[0], vmin = values[0];
    for (double v : values) {
        vmax = std::max(vmax, v);
        vmin = std::min(vmin, v);
    }
    std::size_t m = n, M = 0;
    for (std::size_t i = 0; i < n; ++i) {
        if (values[i] == vmax) M = i;            // last index attaining the max
        if (m == n && values[i] == vmin) m = i;  // first index attaining the min
    }

    CoreFit fit;
    fit.offset = 0.5 * (vmax + vmin);
    if (trace) {
        trace->initial_min = m;
        trace->initial_max = M;
        trace->initial_error = 0.5 * (vmax - vmin);
        trace->steps.clear();
    }

    std::vector<double> x(n);
    while (M < m) {
        for (std::size_t i = 0; i < n; ++i) x[i] = values[i] - (fit.slope * u[i] + fit.offset);
        const BandCandidates cand = band_candidates(x, u, m, M);
        const double a_bar = cand.slope();
        // In exact arithmetic a_bar > 0 on case-1 data. A non-positive value
        // here means rounding has exhausted the representable improvement.
        if (!(a_bar > 0.0)) break;
        const double b_upper = x[M] - a_bar * u[M];
        const double b_lower = x[m] - a_bar * u[m];
        fit.slope += a_bar;
        fit.offset += 0.5 * (b_upper + b_lower);
        if (cand.move_min())
            m = cand.min_candidate;
        else
            M = cand.max_candidate;
        ++fit.iterations;
        if (trace)
            trace->steps.push_back(
                StepState{fit.slope, fit.offset, 0.5 * (b_upper - b_lower), m, M});
        if (fit.iterations > n) throw InvariantViolation("remainder iteration bound exceeded");
    }
    return fit;
}

}  // namespace detail
}  // namespace chebex
