#pragma once

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <random>
#include <span>
#include <vector>

#include "chebex/errors.hpp"
#include "chebex/k_search.hpp"
#include "chebex/model.hpp"
#include "chebex/time_series.hpp"

// Brute-force references and synthetic data generation for tests and
// diagnostics. Nothing in the solvers depends on this header.

namespace chebex {

enum class NoiseShape { None, Alternating, Uniform };

struct SynthSpec {
    ExponentialModel model{};
    std::vector<double> times;
    double noise_bound = 0.0;                 // magnitude bound for the noise
    NoiseShape noise = NoiseShape::None;
    std::uint64_t seed = 0;                   // used by Uniform only
};

namespace detail {

// Uniform double in [0, 1) from the top 53 bits; the standard distribution
// objects are not bit-identical across library implementations, this is.
inline double unit_double(std::mt19937_64& rng) {
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

}  // namespace detail

/// Deterministic synthetic series: model values plus the requested noise.
/// Alternating noise adds +bound at the first instant, -bound at the second,
/// and so on; uniform noise draws from [-bound, bound] seeded by `seed`.
inline TimeSeries synth(const SynthSpec& spec) {
    if (!(spec.noise_bound >= 0.0) || !std::isfinite(spec.noise_bound))
        throw ConfigError("noise bound must be finite and nonnegative");
    std::vector<double> values = evaluate(spec.model, spec.times);
    switch (spec.noise) {
        case NoiseShape::None:
            break;
        case NoiseShape::Alternating:
            for (std::size_t i = 0; i < values.size(); ++i)
                values[i] += (i % 2 == 0) ? spec.noise_bound : -spec.noise_bound;
            break;
        case NoiseShape::Uniform: {
            std::mt19937_64 rng(spec.seed);
            for (double& v : values)
                v += spec.noise_bound * (2.0 * detail::unit_double(rng) - 1.0);
            break;
        }
    }
    return make_series(spec.times, std::move(values));
}

struct ProfilePoint {
    double rate = 0.0;
    double error = 0.0;
};

struct ScanResult {
    double best_rate = 0.0;
    double best_error = std::numeric_limits<double>::infinity();
    std::vector<ProfilePoint> table;
};

/// Evaluate the fixed-k error at every rate in the grid; the reported best
/// is the least-index minimizer. Brute-force reference for the grid search.
inline ScanResult dense_k_scan(const TimeSeries& series, std::span<const double> k_grid) {
    if (k_grid.empty()) throw ConfigError("rate grid must not be empty");
    ScanResult scan;
    scan.table.reserve(k_grid.size());
    for (double k : k_grid) {
        const double e = error_profile(series, k).error;
        scan.table.push_back(ProfilePoint{k, e});
        if (e < scan.best_error) {
            scan.best_error = e;
            scan.best_rate = k;
        }
    }
    return scan;
}

/// Equispaced rate grid with `count` points on [lo, hi].
inline std::vector<double> rate_grid(double lo, double hi, std::size_t count) {
    if (!(lo < hi) || count < 2) throw ConfigError("rate grid requires lo < hi and >= 2 points");
    std::vector<double> grid(count);
    for (std::size_t i = 0; i < count; ++i)
        grid[i] = (i == count - 1)
                      ? hi
                      : lo + static_cast<double>(i) * (hi - lo) / static_cast<double>(count - 1);
    return grid;
}

/// True iff the error column decreases (within tol) to a single valley and
/// increases (within tol) afterwards. Rates must be ascending.
inline bool unimodal_check(std::span<const ProfilePoint> samples, double tol) {
    const std::size_t n = samples.size();
    if (n == 0) throw ConfigError("unimodal check requires at least one sample");
    for (std::size_t i = 0; i + 1 < n; ++i)
        if (!(samples[i].rate < samples[i + 1].rate))
            throw ConfigError("unimodal check requires ascending rates");
    std::size_t p = 0;  // end of the longest non-increasing prefix
    while (p + 1 < n && samples[p + 1].error <= samples[p].error + tol) ++p;
    std::size_t q = n - 1;  // start of the earliest non-decreasing suffix
    while (q > 0 && samples[q].error >= samples[q - 1].error - tol) --q;
    return q <= p;
}

}  // namespace chebex
