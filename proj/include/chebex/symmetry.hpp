#pragma once

#include <algorithm>
#include <vector>

#include "chebex/errors.hpp"
#include "chebex/model.hpp"
#include "chebex/shape.hpp"
#include "chebex/time_series.hpp"

namespace chebex {

/// Axis reflections used to bring a fixed-k problem into case 1
/// (rate < 0, maxima before minima). Each flip is an involution and the
/// two flips commute.
struct SymmetryTransform {
    bool flip_value = false;  // X-axis symmetry: T -> -T
    bool flip_time = false;   // Y-axis symmetry: t -> -t with index order reversed

    bool identity() const { return !flip_value && !flip_time; }
};

inline TimeSeries apply_transform(const TimeSeries& s, SymmetryTransform tr) {
    TimeSeries out = s;
    if (tr.flip_time) {
        std::reverse(out.times.begin(), out.times.end());
        std::reverse(out.values.begin(), out.values.end());
        for (double& t : out.times) t = -t;
    }
    if (tr.flip_value) {
        for (double& v : out.values) v = -v;
    }
    return out;
}

inline double transform_rate(double rate, SymmetryTransform tr) {
    return tr.flip_time ? -rate : rate;
}

/// Map a model solving the transformed problem back to the original one.
/// flip_value negates amplitude and offset; flip_time negates the rate.
/// Applying the same transform twice is the identity.
inline ExponentialModel undo_transform(const ExponentialModel& m, SymmetryTransform tr) {
    ExponentialModel out = m;
    if (tr.flip_value) {
        out.amplitude = -out.amplitude;
        out.offset = -out.offset;
    }
    if (tr.flip_time) out.rate = -out.rate;
    return out;
}

struct Case1Reduction {
    TimeSeries series;
    double rate = 0.0;
    SymmetryTransform transform;
};

/// Reduce a non-alternated fixed-k problem to case 1. The returned rate is
/// negative and the returned values classify as MaxBeforeMin.
///
/// Throws NotReducible for alternated or constant data (solved directly by
/// the constant midrange).
inline Case1Reduction reduce_to_case1(const TimeSeries& s, double rate, double tol) {
    if (rate == 0.0) throw InvariantViolation("reduce_to_case1 requires a nonzero rate");
    const Shape shape = classify(s.values, tol);
    if (shape.solved_by_constant())
        throw NotReducible("alternated or constant data is solved by the midrange level");

    SymmetryTransform tr;
    if (rate < 0.0) {
        tr.flip_value = (shape.tag == ShapeTag::MinBeforeMax);  // case 2
    } else if (shape.tag == ShapeTag::MaxBeforeMin) {           // case 3
        tr.flip_value = true;
        tr.flip_time = true;
    } else {                                                    // case 4
        tr.flip_time = true;
    }
    return Case1Reduction{apply_transform(s, tr), transform_rate(rate, tr), tr};
}

}  // namespace chebex
