#pragma once

#include <array>
#include <cmath>
#include <cstddef>
#include <optional>
#include <vector>

#include "chebex/model.hpp"
#include "chebex/shape.hpp"
#include "chebex/symmetry.hpp"
#include "chebex/time_series.hpp"

namespace chebex {

/// Index where |residual| attains the max-norm error (within the relative
/// tolerance), tagged with the residual sign. Residuals below the absolute
/// tolerance are tagged 0 and skipped by alternation counting.
struct CriticalPoint {
    std::size_t index = 0;  // 0-based
    int sign = 0;           // -1, 0, +1
};

enum class FitMethod {
    Constant,
    Remainders,
    Exhaustive,
    Grid,
    GridRefine,
};

inline const char* to_string(FitMethod m) {
    switch (m) {
        case FitMethod::Constant: return "constant";
        case FitMethod::Remainders: return "remainders";
        case FitMethod::Exhaustive: return "exhaustive";
        case FitMethod::Grid: return "grid";
        case FitMethod::GridRefine: return "grid+refine";
    }
    return "?";
}

/// Outcome of a fit: the model, its residual vector T - f(t), the max-norm
/// error, and the critical index set that certifies it.
template <typename Model>
struct FitResult {
    Model model{};
    std::vector<double> residuals;
    double error = 0.0;  // max |residuals|
    std::vector<CriticalPoint> critical;
    std::size_t iterations = 0;
    Shape shape_at_solution{};
    SymmetryTransform transform{};  // reduction applied while solving
    FitMethod method = FitMethod::Constant;
};

using ExpFit = FitResult<ExponentialModel>;
using LineFit = FitResult<LinearModel>;

/// Length of the longest alternating sign run over the critical points,
/// zeros excluded. (Equals the number of sign runs, since the longest
/// alternating subsequence of a sign sequence takes one entry per run.)
inline std::size_t alternation_length(const std::vector<CriticalPoint>& critical) {
    std::size_t runs = 0;
    int prev = 0;
    for (const auto& c : critical) {
        if (c.sign == 0) continue;
        if (c.sign != prev) {
            ++runs;
            prev = c.sign;
        }
    }
    return runs;
}

namespace detail {

// First index of each sign run, zeros excluded.
inline std::vector<CriticalPoint> run_heads(const std::vector<CriticalPoint>& critical) {
    std::vector<CriticalPoint> heads;
    int prev = 0;
    for (const auto& c : critical) {
        if (c.sign == 0) continue;
        if (c.sign != prev) {
            heads.push_back(c);
            prev = c.sign;
        }
    }
    return heads;
}

}  // namespace detail

/// First critical triple i < j < l whose signs read (s, -s, s) for the
/// requested leading sign.
inline std::optional<std::array<std::size_t, 3>> alternating_triple(
    const std::vector<CriticalPoint>& critical, int leading_sign) {
    const auto heads = detail::run_heads(critical);
    for (std::size_t p = 0; p + 2 < heads.size(); ++p) {
        if (heads[p].sign == leading_sign)
            return std::array<std::size_t, 3>{heads[p].index, heads[p + 1].index,
                                              heads[p + 2].index};
    }
    return std::nullopt;
}

/// First four alternating critical indices, if at least 4 sign runs exist.
inline std::optional<std::array<std::size_t, 4>> alternating_quad(
    const std::vector<CriticalPoint>& critical) {
    const auto heads = detail::run_heads(critical);
    if (heads.size() < 4) return std::nullopt;
    return std::array<std::size_t, 4>{heads[0].index, heads[1].index, heads[2].index,
                                      heads[3].index};
}

namespace detail {

template <typename Model>
FitResult<Model> fit_from_residuals(const TimeSeries& s, const Model& m,
                                    std::vector<double> residuals, double rel_tol) {
    FitResult<Model> fr;
    fr.model = m;
    fr.residuals = std::move(residuals);
    for (double r : fr.residuals) fr.error = std::max(fr.error, std::abs(r));
    const double tol = abs_tolerance(s);
    const double threshold = fr.error * (1.0 - rel_tol);
    for (std::size_t i = 0; i < fr.residuals.size(); ++i) {
        const double r = fr.residuals[i];
        if (std::abs(r) >= threshold) {
            int sign = 0;
            if (r > tol) sign = +1;
            else if (r < -tol) sign = -1;
            fr.critical.push_back(CriticalPoint{i, sign});
        }
    }
    fr.shape_at_solution = classify(fr.residuals, tol);
    return fr;
}

}  // namespace detail

/// Residual vector, max-norm error and critical set of a model on a series.
template <typename Model>
FitResult<Model> error_of(const TimeSeries& s, const Model& m, double rel_tol = rel_tolerance) {
    std::vector<double> f = evaluate(m, s.times);
    std::vector<double> residuals(s.size());
    for (std::size_t i = 0; i < s.size(); ++i) residuals[i] = s.values[i] - f[i];
    return detail::fit_from_residuals(s, m, std::move(residuals), rel_tol);
}

}  // namespace chebex
