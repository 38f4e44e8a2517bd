#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <span>
#include <string>
#include <vector>

#include "chebex/detail/band.hpp"
#include "chebex/errors.hpp"
#include "chebex/fit_result.hpp"
#include "chebex/model.hpp"
#include "chebex/shape.hpp"
#include "chebex/symmetry.hpp"
#include "chebex/time_series.hpp"
#include "chebex/tolerance.hpp"

// Best max-norm approximation of a time series by a e^{k t} + b for a fixed
// rate k. Two independent routes: an O(n^4) exhaustive scan over index
// triples, and the successive-remainders construction (O(n^2) worst case).

namespace chebex {

/// Best constant fit: a = 0, b = midrange. Valid for any rate, and the exact
/// optimum whenever the data is alternated (or k = 0).
inline ExpFit solve_constant(const TimeSeries& series, double rate = 0.0) {
    double vmax = series.values[0], vmin = series.values[0];
    for (double v : series.values) {
        vmax = std::max(vmax, v);
        vmin = std::min(vmin, v);
    }
    ExponentialModel model{0.0, 0.5 * (vmax + vmin), rate};
    ExpFit fit = error_of(series, model);
    fit.method = FitMethod::Constant;
    return fit;
}

namespace detail {

// n = 1: interpolate with the constant. n = 2: interpolate exactly through
// both points (needs k != 0). Returns false for larger series.
inline bool solve_tiny(const TimeSeries& series, double rate, ExpFit& out) {
    const std::size_t n = series.size();
    if (n == 1) {
        out = error_of(series, ExponentialModel{0.0, series.values[0], rate});
        return true;
    }
    if (n == 2) {
        const double a = interp_slope(series.times[0], series.values[0], series.times[1],
                                      series.values[1], rate);
        const double a_shift = normalize_amplitude(a, rate, series.times[0]);
        const double b = series.values[0] - a_shift;  // f(t_1) = a' + b
        out = error_of(series, ExponentialModel{a, b, rate});
        return true;
    }
    return false;
}

}  // namespace detail

/// Candidate counters for the exhaustive route.
struct ExhaustiveStats {
    std::size_t amplitude_candidates = 0;  // distinct slopes a_{il}, l >= i + 2
    std::size_t triples = 0;               // index triples i < j < l examined
};

/// Exhaustive reference solver: for every triple i < j < l take the slope
/// interpolating points i and l and the offset centering the residual on
/// points i and j, then keep the candidate with the smallest max-norm error.
/// Ties go to the lexicographically smallest (i, j, l). Exact but O(n^4).
inline ExpFit solve_exhaustive(const TimeSeries& series, double rate,
                               ExhaustiveStats* stats = nullptr) {
    if (rate == 0.0) throw InvariantViolation("exhaustive solver requires a nonzero rate");
    detail::check_exponent_budget(rate, time_span(series));
    ExpFit tiny;
    if (detail::solve_tiny(series, rate, tiny)) {
        tiny.method = FitMethod::Exhaustive;
        return tiny;
    }

    const std::size_t n = series.size();
    const std::span<const double> T(series.values);
    const double t_ref = series.times.front();
    const std::vector<double> u = detail::shifted_exponentials(series.times, rate, t_ref);

    // Slopes depend on (i, l) only; precompute them for l >= i + 2.
    std::vector<double> amp(n * n, 0.0);
    std::size_t amp_count = 0;
    for (std::size_t i = 0; i + 2 < n; ++i)
        for (std::size_t l = i + 2; l < n; ++l) {
            const double denom = u[i] - u[l];
            if (std::abs(denom) < std::numeric_limits<double>::min())
                throw DegenerateDenominator("exponential basis collapses between instants " +
                                            std::to_string(i + 1) + " and " +
                                            std::to_string(l + 1));
            amp[i * n + l] = (T[i] - T[l]) / denom;
            ++amp_count;
        }

    double best_error = std::numeric_limits<double>::infinity();
    double best_a = 0.0, best_b = 0.0;
    std::size_t triples = 0;
    for (std::size_t i = 0; i + 2 < n; ++i)
        for (std::size_t j = i + 1; j + 1 < n; ++j)
            for (std::size_t l = j + 1; l < n; ++l) {
                ++triples;
                const double a = amp[i * n + l];
                const double b = 0.5 * ((T[i] - a * u[i]) + (T[j] - a * u[j]));
                double err = 0.0;
                for (std::size_t r = 0; r < n; ++r) {
                    err = std::max(err, std::abs(T[r] - (a * u[r] + b)));
                    if (err >= best_error) break;  // cannot beat the incumbent
                }
                if (err < best_error) {
                    best_error = err;
                    best_a = a;
                    best_b = b;
                }
            }

    if (stats) *stats = ExhaustiveStats{amp_count, triples};
    ExponentialModel model{detail::denormalize_amplitude(best_a, rate, t_ref), best_b, rate};
    ExpFit fit = error_of(series, model);
    fit.iterations = triples;
    fit.method = FitMethod::Exhaustive;
    return fit;
}

/// Which critical index one improvement step moved.
enum class MovedIndex { MinSide, MaxSide };

/// One band-construction step, exposed for instrumentation. Inputs and
/// outputs are in the original (unshifted) frame.
struct ImprovementStep {
    double amplitude_increment = 0.0;  // a-bar, always > 0 on valid input
    double offset_increment = 0.0;     // b-bar, midline of the sandwiching band
    std::size_t min_candidate = 0;     // m2
    std::size_t max_candidate = 0;     // M2
    MovedIndex moved = MovedIndex::MaxSide;
};

/// Compute the widest-band improvement for a case-1 remainder: the largest
/// amplitude increment that keeps a e^{k t} + b sandwiched by the remainder
/// at indices first_min and last_max. Requires last_max < first_min and
/// k < 0; throws InvariantViolation if the data admits no positive increment.
inline ImprovementStep improvement_step(std::span<const double> remainder,
                                        std::span<const double> times, double rate,
                                        std::size_t first_min, std::size_t last_max) {
    const std::size_t n = remainder.size();
    if (n == 0 || times.size() != n)
        throw SeriesError("remainder and instants must have equal nonzero length");
    if (!(rate < 0.0)) throw InvariantViolation("improvement step requires a negative rate");
    if (!(last_max < first_min && first_min < n))
        throw InvariantViolation("improvement step requires last_max < first_min < n");
    detail::check_exponent_budget(rate, times.back() - times.front());

    const double t_ref = times.front();
    const std::vector<double> u = detail::shifted_exponentials(times, rate, t_ref);
    const detail::BandCandidates cand = detail::band_candidates(remainder, u, first_min, last_max);
    const double a_bar = cand.slope();
    if (!(a_bar > 0.0))
        throw InvariantViolation("no positive amplitude increment; remainder is not in case 1");

    ImprovementStep step;
    step.amplitude_increment = detail::denormalize_amplitude(a_bar, rate, t_ref);
    step.offset_increment = 0.5 * ((remainder[last_max] - a_bar * u[last_max]) +
                                   (remainder[first_min] - a_bar * u[first_min]));
    step.min_candidate = cand.min_candidate;
    step.max_candidate = cand.max_candidate;
    step.moved = cand.move_min() ? MovedIndex::MinSide : MovedIndex::MaxSide;
    return step;
}

/// Successive-remainders solver for fixed nonzero rate. Alternated and
/// constant data short-circuit to the midrange constant; everything else is
/// reduced to case 1 (k < 0, maxima before minima), solved by repeated band
/// improvements, and mapped back. The returned critical set always contains
/// an alternation of length >= 3.
inline ExpFit solve_remainders(const TimeSeries& series, double rate,
                               StepTrace* trace = nullptr) {
    if (rate == 0.0) throw InvariantViolation("remainders solver requires a nonzero rate");
    detail::check_exponent_budget(rate, time_span(series));
    ExpFit tiny;
    if (detail::solve_tiny(series, rate, tiny)) {
        tiny.method = FitMethod::Remainders;
        return tiny;
    }

    const Shape shape = classify(series.values, abs_tolerance(series));
    if (shape.solved_by_constant()) return solve_constant(series, rate);

    const Case1Reduction red = reduce_to_case1(series, rate, abs_tolerance(series));
    const double t_ref = red.series.times.front();
    const std::vector<double> u = detail::shifted_exponentials(red.series.times, red.rate, t_ref);
    const detail::CoreFit core = detail::successive_remainders(red.series.values, u, trace);

    ExponentialModel reduced{detail::denormalize_amplitude(core.slope, red.rate, t_ref),
                             core.offset, red.rate};
    ExpFit fit = error_of(series, undo_transform(reduced, red.transform));
    fit.iterations = core.iterations;
    fit.transform = red.transform;
    fit.method = FitMethod::Remainders;
    return fit;
}

}  // namespace chebex
