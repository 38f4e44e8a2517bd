#pragma once

#include <algorithm>
#include <array>
#include <cstddef>
#include <optional>
#include <span>

#include "chebex/tolerance.hpp"

namespace chebex {

enum class ShapeTag {
    Constant,      // max - min within tolerance
    Alternated,    // a global min strictly between two global maxima, or vice versa
    MaxBeforeMin,  // every global max index precedes every global min index
    MinBeforeMax,  // every global min index precedes every global max index
};

enum class AlternationKind {
    MaxMinMax,  // witnesses (M1, m1, M2), M1 < m1 < M2
    MinMaxMin,  // witnesses (m1, M1, m2), m1 < M1 < m2
};

/// Classification of a value vector by the layout of its global extrema.
/// Extremum membership is decided within an absolute tolerance, so ties
/// in real data are honored.
struct Shape {
    ShapeTag tag = ShapeTag::Constant;
    std::optional<AlternationKind> pattern;     // set iff tag == Alternated
    std::array<std::size_t, 3> witnesses{};     // meaningful iff tag == Alternated
    std::size_t first_max = 0, last_max = 0;    // extremum index extents
    std::size_t first_min = 0, last_min = 0;    // (meaningful unless Constant)

    bool alternated() const { return tag == ShapeTag::Alternated; }
    bool constant() const { return tag == ShapeTag::Constant; }
    /// True when the vector is solved by the constant midrange level.
    bool solved_by_constant() const { return constant() || alternated(); }
};

/// Classify the vector. `tol` is the absolute tolerance for extremum
/// membership and for the constant test; pass abs_tolerance(values) for
/// the standard policy.
inline Shape classify(std::span<const double> values, double tol) {
    Shape shape;
    const std::size_t n = values.size();
    double vmax = values[0], vmin = values[0];
    for (double x : values) {
        if (x > vmax) vmax = x;
        if (x < vmin) vmin = x;
    }
    if (vmax - vmin <= tol) return shape;  // Constant

    const auto is_max = [&](std::size_t i) { return values[i] >= vmax - tol; };
    const auto is_min = [&](std::size_t i) { return values[i] <= vmin + tol; };

    std::size_t first_max = n, last_max = 0, first_min = n, last_min = 0;
    for (std::size_t i = 0; i < n; ++i) {
        if (is_max(i)) {
            first_max = std::min(first_max, i);
            last_max = i;
        }
        if (is_min(i)) {
            first_min = std::min(first_min, i);
            last_min = i;
        }
    }
    shape.first_max = first_max;
    shape.last_max = last_max;
    shape.first_min = first_min;
    shape.last_min = last_min;

    // A point in both extremum sets means the spread sits inside the
    // tolerance band; treat as constant.
    if (first_max == first_min) {
        shape = Shape{};
        return shape;
    }

    if (first_max < first_min) {
        // A min strictly between the outermost maxima makes it alternated.
        for (std::size_t i = first_max + 1; i < last_max; ++i) {
            if (is_min(i)) {
                shape.tag = ShapeTag::Alternated;
                shape.pattern = AlternationKind::MaxMinMax;
                shape.witnesses = {first_max, i, last_max};
                return shape;
            }
        }
        shape.tag = ShapeTag::MaxBeforeMin;
        return shape;
    }

    for (std::size_t i = first_min + 1; i < last_min; ++i) {
        if (is_max(i)) {
            shape.tag = ShapeTag::Alternated;
            shape.pattern = AlternationKind::MinMaxMin;
            shape.witnesses = {first_min, i, last_min};
            return shape;
        }
    }
    shape.tag = ShapeTag::MinBeforeMax;
    return shape;
}

}  // namespace chebex
