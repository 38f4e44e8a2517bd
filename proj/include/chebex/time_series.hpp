#pragma once

#include <cmath>
#include <cstddef>
#include <utility>
#include <vector>

#include "chebex/errors.hpp"
#include "chebex/tolerance.hpp"

namespace chebex {

/// Discrete observations T_i taken at strictly increasing instants t_i.
///
/// Invariants (enforced by make_series, assumed everywhere else):
///   - times.size() == values.size() >= 1
///   - times strictly increasing
///   - all entries finite
struct TimeSeries {
    std::vector<double> times;
    std::vector<double> values;

    std::size_t size() const { return times.size(); }
};

/// Validating constructor for TimeSeries. Throws SeriesError.
inline TimeSeries make_series(std::vector<double> times, std::vector<double> values) {
    if (times.size() != values.size())
        throw SeriesError("times and values must have equal length");
    if (times.empty()) throw SeriesError("series must contain at least one observation");
    for (std::size_t i = 0; i < times.size(); ++i) {
        if (!std::isfinite(times[i]) || !std::isfinite(values[i]))
            throw SeriesError("non-finite entry at index " + std::to_string(i));
        if (i > 0 && !(times[i - 1] < times[i]))
            throw SeriesError("instants must be strictly increasing (index " +
                              std::to_string(i) + ")");
    }
    return TimeSeries{std::move(times), std::move(values)};
}

inline double time_span(const TimeSeries& s) { return s.times.back() - s.times.front(); }

inline double value_scale(const TimeSeries& s) {
    return value_scale(std::span<const double>(s.values));
}

inline double abs_tolerance(const TimeSeries& s) {
    return abs_tolerance_factor * value_scale(s);
}

}  // namespace chebex
