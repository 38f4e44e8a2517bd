#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "chebex/detail/band.hpp"
#include "chebex/errors.hpp"
#include "chebex/fit_result.hpp"
#include "chebex/model.hpp"
#include "chebex/shape.hpp"
#include "chebex/time_series.hpp"
#include "chebex/tolerance.hpp"

// Discrete Chebyshev (max-norm) line fitting. Runs the same
// successive-remainders core as the exponential solver on the decreasing
// basis u_i = t_1 - t_i; an exhaustive triple enumeration serves as the
// independent reference. The sign structure of the best line's residuals is
// the cheap probe for case-1 data (decreasing with convex residual pattern).

namespace chebex {

struct LineFitOutcome {
    LineFit fit;
    /// Witness triple i < j < l with residual signs (s, -s, s), absent when
    /// the line interpolates within tolerance.
    std::optional<std::array<std::size_t, 3>> witness;
};

namespace detail {

// Recover slope/intercept from basis coordinates f = alpha * (t_ref - t) + beta,
// optionally undoing a value flip applied before solving.
inline LinearModel line_from_basis(double alpha, double beta, double t_ref, bool flipped) {
    LinearModel m{-alpha, beta + alpha * t_ref};
    if (flipped) {
        m.slope = -m.slope;
        m.intercept = -m.intercept;
    }
    return m;
}

}  // namespace detail

/// Best max-norm line through the series. The witness triple equioscillates:
/// its residuals are +-error with alternating signs.
inline LineFitOutcome fit_line(const TimeSeries& series) {
    const std::size_t n = series.size();
    LineFitOutcome out;
    if (n == 1) {
        out.fit = error_of(series, LinearModel{0.0, series.values[0]});
        return out;
    }
    if (n == 2) {
        const double c =
            (series.values[1] - series.values[0]) / (series.times[1] - series.times[0]);
        out.fit = error_of(series, LinearModel{c, series.values[0] - c * series.times[0]});
        return out;
    }

    const Shape shape = classify(series.values, abs_tolerance(series));
    if (shape.solved_by_constant()) {
        double vmax = series.values[0], vmin = series.values[0];
        for (double v : series.values) {
            vmax = std::max(vmax, v);
            vmin = std::min(vmin, v);
        }
        out.fit = error_of(series, LinearModel{0.0, 0.5 * (vmax + vmin)});
        out.fit.method = FitMethod::Constant;
    } else {
        // Increasing-style data is solved on -T; the line maps back by negation.
        const bool flip = (shape.tag == ShapeTag::MinBeforeMax);
        std::vector<double> vals = series.values;
        if (flip)
            for (double& v : vals) v = -v;
        const double t_ref = series.times.front();
        std::vector<double> u(n);
        for (std::size_t i = 0; i < n; ++i) u[i] = t_ref - series.times[i];
        const detail::CoreFit core = detail::successive_remainders(vals, u);
        out.fit = error_of(series, detail::line_from_basis(core.slope, core.offset, t_ref, flip));
        out.fit.iterations = core.iterations;
        out.fit.method = FitMethod::Remainders;
        out.fit.transform.flip_value = flip;
    }
    out.witness = alternating_triple(out.fit.critical, +1);
    if (!out.witness) out.witness = alternating_triple(out.fit.critical, -1);
    return out;
}

/// Reference line fit by full triple enumeration: slope through points
/// (i, l), offset centering the residual on points (i, j), smallest max-norm
/// wins, ties to the lexicographically smallest (i, j, l). O(n^4).
inline LineFit fit_line_exhaustive(const TimeSeries& series) {
    const std::size_t n = series.size();
    if (n < 3) throw ConfigError("triple enumeration needs at least 3 points");
    const std::vector<double>& t = series.times;
    const std::vector<double>& T = series.values;

    double best_error = std::numeric_limits<double>::infinity();
    LinearModel best{};
    std::size_t triples = 0;
    for (std::size_t i = 0; i + 2 < n; ++i)
        for (std::size_t j = i + 1; j + 1 < n; ++j)
            for (std::size_t l = j + 1; l < n; ++l) {
                ++triples;
                const double c = (T[i] - T[l]) / (t[i] - t[l]);
                const double d = 0.5 * ((T[i] - c * t[i]) + (T[j] - c * t[j]));
                double err = 0.0;
                for (std::size_t r = 0; r < n; ++r) {
                    err = std::max(err, std::abs(T[r] - (c * t[r] + d)));
                    if (err >= best_error) break;
                }
                if (err < best_error) {
                    best_error = err;
                    best = LinearModel{c, d};
                }
            }

    LineFit fit = error_of(series, best);
    fit.iterations = triples;
    fit.method = FitMethod::Exhaustive;
    return fit;
}

enum class Case1Verdict {
    Case1,      // decreasing best line and a (+,-,+) equioscillation witness
    NotCase1,   // any other sign structure
    Degenerate  // the best line interpolates within tolerance
};

/// Probe whether the data is compatible with case 1 (fit by a e^{kt} + b
/// with k < 0, a > 0): the best max-norm line must have negative slope and
/// leave a (+,-,+) alternating residual triple.
inline Case1Verdict is_case1_data(const TimeSeries& series) {
    if (series.size() < 3) throw ConfigError("case-1 probe needs at least 3 points");
    const LineFitOutcome lf = fit_line(series);
    if (lf.fit.error <= abs_tolerance(series)) return Case1Verdict::Degenerate;
    if (lf.fit.model.slope < 0.0 && alternating_triple(lf.fit.critical, +1))
        return Case1Verdict::Case1;
    return Case1Verdict::NotCase1;
}

}  // namespace chebex
