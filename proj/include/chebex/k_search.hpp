#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "chebex/errors.hpp"
#include "chebex/fit_result.hpp"
#include "chebex/fixed_k.hpp"
#include "chebex/model.hpp"
#include "chebex/shape.hpp"
#include "chebex/time_series.hpp"
#include "chebex/tolerance.hpp"

// Minimizing the fixed-k error over k. The error profile E(k) is quasiconvex,
// so an interval-shrinking grid search converges; the alternation pattern of
// the fixed-k optimum tells which side of the optimum a given k sits on, and
// four alternating critical residuals pin k down analytically.

namespace chebex {

struct SearchConfig {
    double k_lo = -1.0;
    double k_hi = -1e-6;
    std::size_t samples = 33;     // grid points per sweep; odd, >= 3
    double epsilon = 1e-12;       // stop threshold on the grid spacing
    std::size_t max_sweeps = 200; // safety cap on sampling passes

    /// Scale-aware default interval: one octave of half-life rates around
    /// ln 2 / span, widened by C = 64 on each side. Increasing-style data
    /// gets the mirrored positive interval.
    static SearchConfig defaults_for(const TimeSeries& series);
};

inline SearchConfig SearchConfig::defaults_for(const TimeSeries& series) {
    if (series.size() < 2)
        throw ConfigError("default search interval needs at least two instants");
    const double lambda = std::log(2.0) / time_span(series);
    constexpr double C = 64.0;
    SearchConfig cfg;
    const Shape shape = classify(series.values, abs_tolerance(series));
    if (shape.tag == ShapeTag::MinBeforeMax) {
        cfg.k_lo = lambda / C;
        cfg.k_hi = lambda * C;
    } else {
        cfg.k_lo = -lambda * C;
        cfg.k_hi = -lambda / C;
    }
    cfg.samples = 33;
    cfg.epsilon = 1e-12 * (cfg.k_hi - cfg.k_lo);
    cfg.max_sweeps = 200;
    return cfg;
}

namespace detail {

inline void validate_config(const SearchConfig& cfg, const TimeSeries& series) {
    if (!(cfg.k_lo < cfg.k_hi)) throw ConfigError("search interval requires k_lo < k_hi");
    if (cfg.samples < 3 || cfg.samples % 2 == 0)
        throw ConfigError("samples per sweep must be an odd integer >= 3");
    if (!(cfg.epsilon > 0.0)) throw ConfigError("epsilon must be positive");
    if (cfg.max_sweeps == 0) throw ConfigError("max_sweeps must be positive");
    const double span = time_span(series);
    check_exponent_budget(cfg.k_lo, span);
    check_exponent_budget(cfg.k_hi, span);
}

}  // namespace detail

/// Condensed sign pattern of the critical residuals at a fixed-k optimum.
enum class AlternationPattern {
    Degenerate,  // error at the tolerance floor; signs carry no information
    TooFew,      // fewer than 3 alternating criticals (non-optimal model)
    MaxMinMax,   // signs read (+, -, +)
    MinMaxMin,   // signs read (-, +, -)
    FourPlus,    // >= 4 alternating criticals: k itself is optimal
};

inline const char* to_string(AlternationPattern p) {
    switch (p) {
        case AlternationPattern::Degenerate: return "degenerate";
        case AlternationPattern::TooFew: return "too-few";
        case AlternationPattern::MaxMinMax: return "max-min-max";
        case AlternationPattern::MinMaxMin: return "min-max-min";
        case AlternationPattern::FourPlus: return "four+";
    }
    return "?";
}

namespace detail {

inline AlternationPattern condense_pattern(const ExpFit& fit, double tol_abs) {
    if (fit.error <= tol_abs) return AlternationPattern::Degenerate;
    const auto heads = run_heads(fit.critical);
    if (heads.size() >= 4) return AlternationPattern::FourPlus;
    if (heads.size() < 3) return AlternationPattern::TooFew;
    return heads[0].sign > 0 ? AlternationPattern::MaxMinMax : AlternationPattern::MinMaxMin;
}

}  // namespace detail

struct ErrorProfilePoint {
    double error = 0.0;
    AlternationPattern pattern = AlternationPattern::Degenerate;
};

/// Best fixed-k error and the critical-sign pattern certifying it. k = 0 is
/// served by the constant fit (the k = 0 member family is the constants).
inline ErrorProfilePoint error_profile(const TimeSeries& series, double k) {
    const ExpFit fit = (k == 0.0) ? solve_constant(series) : solve_remainders(series, k);
    return {fit.error, detail::condense_pattern(fit, abs_tolerance(series))};
}

struct SearchResult {
    ExpFit fit;
    std::size_t sweeps = 0;      // sampling passes performed
    double final_spacing = 0.0;  // grid spacing when the loop stopped
    bool boundary = false;       // best k sits on the original interval edge
};

/// Interval-shrinking grid search for the best k. Each sweep samples the
/// profile at `samples` equispaced rates, recenters on the least-index
/// minimizer with half-width equal to the old spacing (clamped to the
/// original interval), and stops once the spacing drops below epsilon.
/// Constant or alternated data short-circuits to the constant fit at k = 0.
inline SearchResult grid_search(const TimeSeries& series, const SearchConfig& cfg) {
    detail::validate_config(cfg, series);
    if (classify(series.values, abs_tolerance(series)).solved_by_constant())
        return SearchResult{solve_constant(series), 0, 0.0, false};

    // A sampled rate of exactly 0 is shifted just inside the interval: the
    // k = 0 member family (constants) is a poorer fit than nearby rates and
    // would dent the profile at that one sample.
    const double nudge = 1e-12 * std::max(std::abs(cfg.k_lo), std::abs(cfg.k_hi));
    const auto point = [&](double a, double b, std::size_t i) {
        double k = (i == 0) ? a : (i == cfg.samples - 1) ? b
                                : a + static_cast<double>(i) * (b - a) /
                                      static_cast<double>(cfg.samples - 1);
        if (k == 0.0) {
            const double room_pos = b, room_neg = -a;
            k = room_pos > room_neg ? std::min(nudge, 0.5 * room_pos)
                                    : -std::min(nudge, 0.5 * room_neg);
        }
        return k;
    };

    double a = cfg.k_lo, b = cfg.k_hi;
    double k_m = a;
    std::size_t sweeps = 0;
    const auto sweep = [&](double lo, double hi) {
        double best = std::numeric_limits<double>::infinity();
        double best_k = lo;
        for (std::size_t i = 0; i < cfg.samples; ++i) {
            const double k = point(lo, hi, i);
            const double e = error_profile(series, k).error;
            if (e < best) {  // strict: least index wins ties
                best = e;
                best_k = k;
            }
        }
        k_m = best_k;
        ++sweeps;
    };

    sweep(a, b);
    double spacing = (b - a) / static_cast<double>(cfg.samples - 1);
    while (spacing > cfg.epsilon && sweeps < cfg.max_sweeps) {
        a = std::max(k_m - spacing, cfg.k_lo);
        b = std::min(k_m + spacing, cfg.k_hi);
        sweep(a, b);
        spacing = (b - a) / static_cast<double>(cfg.samples - 1);
    }

    SearchResult result;
    result.fit = (k_m == 0.0) ? solve_constant(series) : solve_remainders(series, k_m);
    result.fit.method = FitMethod::Grid;
    result.sweeps = sweeps;
    result.final_spacing = spacing;
    result.boundary = (k_m == cfg.k_lo || k_m == cfg.k_hi);
    return result;
}

enum class BracketVerdict {
    ContainsOptimum,  // patterns at the two rates differ
    SameSide,         // identical three-point patterns
    Inconclusive,     // a degenerate or already-optimal endpoint
};

/// Compare the alternation patterns of the fixed-k optima at k1 < k2. The
/// pattern flips exactly when the optimum is crossed, so differing patterns
/// bracket the optimal rate.
inline BracketVerdict alternation_bracket(const TimeSeries& series, double k1, double k2) {
    if (!(k1 < k2)) throw ConfigError("bracket requires k1 < k2");
    if (k1 == 0.0 || k2 == 0.0) throw ConfigError("bracket endpoints must be nonzero");
    const AlternationPattern p1 = error_profile(series, k1).pattern;
    const AlternationPattern p2 = error_profile(series, k2).pattern;
    const auto informative = [](AlternationPattern p) {
        return p == AlternationPattern::MaxMinMax || p == AlternationPattern::MinMaxMin;
    };
    if (!informative(p1) || !informative(p2)) return BracketVerdict::Inconclusive;
    return p1 == p2 ? BracketVerdict::SameSide : BracketVerdict::ContainsOptimum;
}

/// Optimality certificate: true iff the model's residuals stay within the
/// max-norm band and at least four critical residuals alternate in sign
/// (or the model interpolates within the absolute tolerance).
inline bool verify_optimal(const TimeSeries& series, const ExponentialModel& model,
                           double rel_tol = rel_tolerance) {
    const ExpFit fit = error_of(series, model, rel_tol);
    if (fit.error <= abs_tolerance(series)) return true;
    const double band = fit.error * (1.0 + rel_tol);
    for (double r : fit.residuals)
        if (std::abs(r) > band) return false;
    return alternation_length(fit.critical) >= 4;
}

namespace detail {

// Difference of the two interpolation slopes that must agree at the optimal
// rate: slope through (i1, i3) minus slope through (i2, i4), computed in the
// frame shifted by the first instant (a positive common factor, so roots and
// signs are unchanged).
inline double starred_gap(const TimeSeries& s, const std::array<std::size_t, 4>& idx, double k) {
    const double t_ref = s.times.front();
    const auto shifted_slope = [&](std::size_t p, std::size_t q) {
        const double denom =
            std::exp(k * (s.times[p] - t_ref)) - std::exp(k * (s.times[q] - t_ref));
        if (std::abs(denom) < std::numeric_limits<double>::min())
            throw DegenerateDenominator("exponential basis collapses between instants " +
                                        std::to_string(p + 1) + " and " + std::to_string(q + 1));
        return (s.values[p] - s.values[q]) / denom;
    };
    return shifted_slope(idx[0], idx[2]) - shifted_slope(idx[1], idx[3]);
}

}  // namespace detail

/// Analytic refinement from four alternating critical indices i1<i2<i3<i4:
/// the optimal rate is the root of "slope(i1,i3) == slope(i2,i4)", found by
/// bisection on [k1, k2] to 1e-14 relative width; amplitude and offset then
/// follow from the same interpolation conditions. The refined model is
/// returned only if verify_optimal accepts it.
inline ExponentialModel refine_k(const TimeSeries& series, std::array<std::size_t, 4> indices,
                                 double k1, double k2) {
    if (!(k1 < k2)) throw ConfigError("refinement bracket requires k1 < k2");
    if (k1 == 0.0 || k2 == 0.0 || (k1 < 0.0 && k2 > 0.0))
        throw ConfigError("refinement bracket must not touch or straddle k = 0");
    for (std::size_t p = 0; p + 1 < indices.size(); ++p)
        if (!(indices[p] < indices[p + 1]))
            throw ConfigError("critical indices must be strictly increasing");
    if (indices.back() >= series.size()) throw ConfigError("critical index out of range");
    const double span = time_span(series);
    detail::check_exponent_budget(k1, span);
    detail::check_exponent_budget(k2, span);

    const auto g = [&](double k) { return detail::starred_gap(series, indices, k); };
    double lo = k1, hi = k2;
    double g_lo = g(lo), g_hi = g(hi);
    double root;
    if (g_lo == 0.0) {
        root = lo;
    } else if (g_hi == 0.0) {
        root = hi;
    } else if (g_lo * g_hi > 0.0 || std::isnan(g_lo) || std::isnan(g_hi)) {
        throw NoSignChange("slope gap has the same sign at both bracket ends");
    } else {
        for (int iter = 0; iter < 200; ++iter) {
            const double mid = 0.5 * (lo + hi);
            if (hi - lo <= 1e-14 * std::max(std::abs(lo), std::abs(hi))) break;
            const double g_mid = g(mid);
            if (g_mid == 0.0) {
                lo = hi = mid;
                break;
            }
            if ((g_mid > 0.0) == (g_lo > 0.0)) {
                lo = mid;
                g_lo = g_mid;
            } else {
                hi = mid;
            }
        }
        root = 0.5 * (lo + hi);
    }

    const double amplitude = interp_slope(series.times[indices[0]], series.values[indices[0]],
                                          series.times[indices[2]], series.values[indices[2]],
                                          root);
    const double t_ref = series.times.front();
    const double a_shift = detail::normalize_amplitude(amplitude, root, t_ref);
    const auto fitted = [&](std::size_t p) {
        return a_shift * std::exp(root * (series.times[p] - t_ref));
    };
    const double offset = 0.5 * ((series.values[indices[0]] - fitted(indices[0])) +
                                 (series.values[indices[1]] - fitted(indices[1])));
    const ExponentialModel model{amplitude, offset, root};
    if (!verify_optimal(series, model))
        throw RefinementRejected("refined model leaves some residual outside the band");
    return model;
}

struct RefinedSearch {
    SearchResult grid;
    std::optional<ExpFit> refined;  // present only when refinement was accepted
    std::string rejection;          // reason refinement was skipped or rejected
};

/// Grid search followed by a best-effort analytic refinement: take the four
/// alternating critical indices of the grid solution, bracket the rate by
/// the final grid spacing, and accept the refined model only if it verifies
/// and does not increase the error. Falls back to the grid solution with the
/// reason recorded.
inline RefinedSearch search_with_refinement(const TimeSeries& series, const SearchConfig& cfg) {
    RefinedSearch out{grid_search(series, cfg), std::nullopt, ""};
    const ExpFit& fit = out.grid.fit;
    if (fit.error <= abs_tolerance(series)) {
        out.rejection = "grid error already at the tolerance floor";
        return out;
    }
    const auto quad = alternating_quad(fit.critical);
    if (!quad) {
        out.rejection = "grid solution has fewer than four alternating critical residuals";
        return out;
    }
    const double k_m = fit.model.rate;
    double lo = std::max(k_m - out.grid.final_spacing, cfg.k_lo);
    double hi = std::min(k_m + out.grid.final_spacing, cfg.k_hi);
    if (lo < 0.0 && hi > 0.0) {  // keep the bracket on the side of the grid optimum
        const double tiny = 1e-12 * std::max(std::abs(lo), std::abs(hi));
        if (k_m > 0.0)
            lo = std::min(tiny, 0.5 * hi);
        else
            hi = std::max(-tiny, 0.5 * lo);
    }
    try {
        const ExponentialModel model = refine_k(series, *quad, lo, hi);
        ExpFit refined = error_of(series, model);
        if (refined.error > fit.error * (1.0 + rel_tolerance))
            throw RefinementRejected("refined error exceeds the grid error");
        refined.method = FitMethod::GridRefine;
        out.refined = std::move(refined);
    } catch (const Error& e) {
        out.rejection = e.what();
    }
    return out;
}

}  // namespace chebex
