#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <random>
#include <vector>

#include "chebex/chebex.hpp"

using namespace chebex;

namespace {

const double kHalf = -std::log(2.0);

// Random instance with distinct instants and values in [-10, 10]; the data
// is almost surely MaxBeforeMin or MinBeforeMax (ties have measure zero).
TimeSeries random_instance(std::mt19937_64& rng, std::size_t n) {
    std::uniform_real_distribution<double> val(-10.0, 10.0);
    std::uniform_real_distribution<double> gap(0.2, 1.5);
    std::vector<double> t(n), v(n);
    double at = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        t[i] = at;
        at += gap(rng);
        v[i] = val(rng);
    }
    return make_series(std::move(t), std::move(v));
}

// Remainder of the reduced problem after accumulating (slope, offset).
std::vector<double> replay_remainder(const TimeSeries& reduced, const std::vector<double>& u,
                                     double slope, double offset) {
    std::vector<double> x(reduced.size());
    for (std::size_t i = 0; i < reduced.size(); ++i)
        x[i] = reduced.values[i] - (slope * u[i] + offset);
    return x;
}

double max_abs(const std::vector<double>& v) {
    double m = 0.0;
    for (double x : v) m = std::max(m, std::abs(x));
    return m;
}

}  // namespace

TEST_CASE("solve_constant returns the midrange level") {
    const TimeSeries s = make_series({0, 1, 2}, {1, 3, 2});
    const ExpFit fit = solve_constant(s);
    CHECK(fit.model.amplitude == 0.0);
    CHECK(fit.model.offset == 2.0);
    CHECK(fit.error == 1.0);
    CHECK(fit.method == FitMethod::Constant);
}

TEST_CASE("solve_constant on constant data has zero error") {
    const ExpFit fit = solve_constant(make_series({0, 1, 2}, {5, 5, 5}));
    CHECK(fit.model.offset == 5.0);
    CHECK(fit.error == 0.0);
}

TEST_CASE("no exponential beats the midrange level on alternated data") {
    const TimeSeries s = make_series({0, 1, 2}, {3, 1, 3});
    const ExpFit constant = solve_constant(s, -1.0);
    CHECK(constant.model.offset == 2.0);
    CHECK(constant.error == 1.0);
    for (double k = -4.0; k < 4.1; k += 0.5) {
        if (k == 0.0) continue;
        CHECK(solve_exhaustive(s, k).error >= constant.error - 1e-12);
    }
}

TEST_CASE("solve_exhaustive recovers an exact member of the family") {
    const std::vector<double> t{0, 1, 2, 3};
    const TimeSeries s = make_series(t, evaluate(ExponentialModel{2.0, 1.0, -1.0}, t));
    const ExpFit fit = solve_exhaustive(s, -1.0);
    CHECK(fit.error <= 1e-12 * value_scale(s));
    CHECK(fit.model.amplitude == Catch::Approx(2.0).epsilon(1e-9));
    CHECK(fit.model.offset == Catch::Approx(1.0).epsilon(1e-9));
}

TEST_CASE("solve_exhaustive pins alternating noise at its bound") {
    std::vector<double> t{0, 1, 2, 3};
    std::vector<double> v = evaluate(ExponentialModel{2.0, 1.0, -1.0}, t);
    const double signs[4] = {0.1, -0.1, 0.1, -0.1};
    for (std::size_t i = 0; i < 4; ++i) v[i] += signs[i];
    const ExpFit fit = solve_exhaustive(make_series(t, v), -1.0);
    CHECK(fit.error == Catch::Approx(0.1).margin(1e-12));
    CHECK(fit.model.amplitude == Catch::Approx(2.0).epsilon(1e-9));
    CHECK(fit.model.offset == Catch::Approx(1.0).epsilon(1e-9));
}

TEST_CASE("solve_exhaustive enumerates (n-1)(n-2)/2 amplitude candidates") {
    std::mt19937_64 rng(41);
    for (std::size_t n = 3; n <= 8; ++n) {
        const TimeSeries s = random_instance(rng, n);
        ExhaustiveStats stats;
        solve_exhaustive(s, -0.7, &stats);
        CHECK(stats.amplitude_candidates == (n - 1) * (n - 2) / 2);
        CHECK(stats.triples == n * (n - 1) * (n - 2) / 6);
    }
}

TEST_CASE("solve_exhaustive requires a nonzero rate") {
    CHECK_THROWS_AS(solve_exhaustive(make_series({0, 1, 2}, {3, 2, 1}), 0.0),
                    InvariantViolation);
}

TEST_CASE("improvement_step: two-point remainder interpolates exactly") {
    // remainder (1, -1) at t = (0, 1) with e^{k} = 1/2: slope (1-(-1))/(1-0.5) = 4
    const std::vector<double> x{1.0, -1.0};
    const std::vector<double> t{0.0, 1.0};
    const ImprovementStep step = improvement_step(x, t, kHalf, 1, 0);
    CHECK(step.amplitude_increment == Catch::Approx(4.0).margin(1e-12));
    CHECK(step.offset_increment == Catch::Approx(-3.0).margin(1e-12));
    // equal candidates on both sides move the max index
    CHECK(step.moved == MovedIndex::MaxSide);
    // applying the increment interpolates both points: new error 0
    const double r0 = x[0] - (step.amplitude_increment * 1.0 + step.offset_increment);
    const double r1 = x[1] - (step.amplitude_increment * 0.5 + step.offset_increment);
    CHECK(std::abs(r0) <= 1e-12);
    CHECK(std::abs(r1) <= 1e-12);
}

TEST_CASE("improvement_step rejects remainders that are not in case 1") {
    const std::vector<double> x{-1.0, 1.0};
    const std::vector<double> t{0.0, 1.0};
    CHECK_THROWS_AS(improvement_step(x, t, kHalf, 1, 0), InvariantViolation);
    CHECK_THROWS_AS(improvement_step(x, t, 0.5, 1, 0), InvariantViolation);  // k >= 0
    CHECK_THROWS_AS(improvement_step(x, t, kHalf, 0, 1), InvariantViolation);  // M >= m
}

TEST_CASE("improvement_step strictly shrinks the band on case-1 remainders") {
    std::mt19937_64 rng(43);
    int tested = 0;
    while (tested < 50) {
        const TimeSeries s = random_instance(rng, 6);
        const double tol = abs_tolerance(s);
        if (classify(s.values, tol).tag != ShapeTag::MaxBeforeMin) continue;
        ++tested;
        // start from the midrange remainder, as the solver does
        double vmax = s.values[0], vmin = s.values[0];
        for (double v : s.values) {
            vmax = std::max(vmax, v);
            vmin = std::min(vmin, v);
        }
        std::vector<double> x(s.size());
        for (std::size_t i = 0; i < s.size(); ++i) x[i] = s.values[i] - 0.5 * (vmax + vmin);
        std::size_t m = s.size(), M = 0;
        for (std::size_t i = 0; i < s.size(); ++i) {
            if (x[i] == vmax - 0.5 * (vmax + vmin)) M = i;
            if (m == s.size() && x[i] == vmin - 0.5 * (vmax + vmin)) m = i;
        }
        const double before = max_abs(x);
        const ImprovementStep step = improvement_step(x, s.times, -0.4, m, M);
        CHECK(step.amplitude_increment > 0.0);
        const std::vector<double> f =
            evaluate(ExponentialModel{step.amplitude_increment, step.offset_increment, -0.4},
                     s.times);
        std::vector<double> after(s.size());
        for (std::size_t i = 0; i < s.size(); ++i) after[i] = x[i] - f[i];
        CHECK(max_abs(after) < before);
    }
}

TEST_CASE("solve_remainders: alternated data falls back to the constant") {
    const ExpFit fit = solve_remainders(make_series({0, 1, 2}, {3, 1, 3}), -1.0);
    CHECK(fit.method == FitMethod::Constant);
    CHECK(fit.model.offset == 2.0);
    CHECK(fit.error == 1.0);
}

TEST_CASE("solve_remainders recovers an exact member") {
    const std::vector<double> t{0, 1, 2, 3};
    const TimeSeries s = make_series(t, evaluate(ExponentialModel{2.0, 1.0, -1.0}, t));
    const ExpFit fit = solve_remainders(s, -1.0);
    CHECK(fit.error <= abs_tolerance(s));
    CHECK(fit.model.amplitude == Catch::Approx(2.0).epsilon(1e-9));
    CHECK(fit.model.offset == Catch::Approx(1.0).epsilon(1e-9));
    CHECK(fit.method == FitMethod::Remainders);
}

TEST_CASE("solve_remainders matches the exhaustive reference on a worked instance") {
    // exact member: 8 * 2^-t + 2, so both routes must hit the floor
    const TimeSeries s = make_series({0, 1, 2, 3, 4}, {10, 6, 4, 3, 2.5});
    const ExpFit rem = solve_remainders(s, kHalf);
    const ExpFit exh = solve_exhaustive(s, kHalf);
    CHECK(rem.error == Catch::Approx(exh.error).margin(1e-9 * value_scale(s)));
    CHECK(rem.error <= abs_tolerance(s));
    CHECK(rem.model.amplitude == Catch::Approx(exh.model.amplitude).epsilon(1e-9));
    CHECK(rem.model.offset == Catch::Approx(exh.model.offset).epsilon(1e-9));
}

TEST_CASE("solve_remainders handles one- and two-point series exactly") {
    const ExpFit one = solve_remainders(make_series({3.0}, {7.0}), -1.0);
    CHECK(one.model.amplitude == 0.0);
    CHECK(one.model.offset == 7.0);
    CHECK(one.error == 0.0);
    const ExpFit two = solve_remainders(make_series({0.0, 1.0}, {3.0, 1.0}), kHalf);
    CHECK(two.error <= 1e-12 * 3.0);
    CHECK(two.model.amplitude == Catch::Approx(4.0).epsilon(1e-12));
}

TEST_CASE("solve_remainders agrees with the exhaustive reference on random data") {
    std::mt19937_64 rng(47);
    std::uniform_real_distribution<double> uk(0.05, 3.0);
    std::uniform_int_distribution<std::size_t> len(4, 10);
    for (int trial = 0; trial < 100; ++trial) {
        const TimeSeries s = random_instance(rng, len(rng));
        if (classify(s.values, abs_tolerance(s)).solved_by_constant()) continue;
        const double k = -uk(rng) / time_span(s);
        const ExpFit rem = solve_remainders(s, k);
        const ExpFit exh = solve_exhaustive(s, k);
        CHECK(std::abs(rem.error - exh.error) <= 1e-9 * value_scale(s));
    }
}

TEST_CASE("solve_remainders on negated data returns the negated model") {
    std::mt19937_64 rng(53);
    for (int trial = 0; trial < 50; ++trial) {
        const TimeSeries s = random_instance(rng, 7);
        if (classify(s.values, abs_tolerance(s)).solved_by_constant()) continue;
        std::vector<double> neg(s.size());
        for (std::size_t i = 0; i < s.size(); ++i) neg[i] = -s.values[i];
        const TimeSeries sn = make_series(s.times, neg);
        const ExpFit a = solve_remainders(s, -0.8);
        const ExpFit b = solve_remainders(sn, -0.8);
        CHECK(b.error == Catch::Approx(a.error).margin(1e-12 * value_scale(s)));
        CHECK(b.model.amplitude == Catch::Approx(-a.model.amplitude).epsilon(1e-9));
        CHECK(b.model.offset == Catch::Approx(-a.model.offset).margin(1e-9 * value_scale(s)));
    }
}

TEST_CASE("the final remainder alternates with at least 3 critical residuals") {
    std::mt19937_64 rng(59);
    for (int trial = 0; trial < 100; ++trial) {
        const TimeSeries s = random_instance(rng, 8);
        if (classify(s.values, abs_tolerance(s)).solved_by_constant()) continue;
        const ExpFit fit = solve_remainders(s, -0.3);
        if (fit.error <= abs_tolerance(s)) continue;
        CHECK(alternation_length(fit.critical) >= 3);
        CHECK(fit.shape_at_solution.solved_by_constant());
    }
}

TEST_CASE("step trace: strict descent, case stability, and the iteration bound") {
    std::mt19937_64 rng(61);
    std::uniform_int_distribution<std::size_t> len(4, 12);
    for (int trial = 0; trial < 100; ++trial) {
        const TimeSeries s = random_instance(rng, len(rng));
        const double tol = abs_tolerance(s);
        if (classify(s.values, tol).solved_by_constant()) continue;
        const double k = -1.1 / time_span(s);
        StepTrace trace;
        solve_remainders(s, k, &trace);
        CHECK(trace.steps.size() <= trace.initial_min - trace.initial_max);

        const Case1Reduction red = reduce_to_case1(s, k, tol);
        const std::vector<double> u =
            detail::shifted_exponentials(red.series.times, red.rate, red.series.times.front());
        double prev_error = trace.initial_error;
        for (std::size_t step = 0; step < trace.steps.size(); ++step) {
            const StepState& st = trace.steps[step];
            const std::vector<double> x =
                replay_remainder(red.series, u, st.slope_acc, st.offset_acc);
            const double err = max_abs(x);
            CHECK(err < prev_error + tol);  // descent, up to rounding
            prev_error = err;
            const Shape xs = classify(x, tol);
            if (step + 1 < trace.steps.size()) {
                CHECK(xs.tag == ShapeTag::MaxBeforeMin);  // still case 1 before the last step
            } else {
                CHECK(err < trace.initial_error);  // net progress is strict
                if (!xs.solved_by_constant()) {
                    // rounding stopped the loop one ulp short of alternation;
                    // the answer must still match the exhaustive reference
                    const ExpFit exh = solve_exhaustive(s, k);
                    CHECK(err <= exh.error + 1e-9 * value_scale(s));
                }
            }
        }
    }
}

TEST_CASE("band inequality: every step's remainder stays inside the band") {
    std::mt19937_64 rng(67);
    for (int trial = 0; trial < 50; ++trial) {
        const TimeSeries s = random_instance(rng, 7);
        const double tol = abs_tolerance(s);
        if (classify(s.values, tol).solved_by_constant()) continue;
        const double k = -0.9 / time_span(s);
        StepTrace trace;
        solve_remainders(s, k, &trace);
        const Case1Reduction red = reduce_to_case1(s, k, tol);
        const std::vector<double> u =
            detail::shifted_exponentials(red.series.times, red.rate, red.series.times.front());
        // walk the steps: before each step the remainder must lie between the
        // exponentials through its first minimum and its last maximum
        double vmax = red.series.values[0], vmin = red.series.values[0];
        for (double v : red.series.values) {
            vmax = std::max(vmax, v);
            vmin = std::min(vmin, v);
        }
        double slope = 0.0;
        double offset = 0.5 * (vmax + vmin);
        std::size_t m = trace.initial_min, M = trace.initial_max;
        for (const StepState& st : trace.steps) {
            const std::vector<double> x = replay_remainder(red.series, u, slope, offset);
            const double a_bar = st.slope_acc - slope;
            // band through the minimum and through the maximum
            const double b_min = x[m] - a_bar * u[m];
            const double b_max = x[M] - a_bar * u[M];
            for (std::size_t i = 0; i < x.size(); ++i) {
                CHECK(x[i] >= a_bar * u[i] + b_min - tol);
                CHECK(x[i] <= a_bar * u[i] + b_max + tol);
            }
            slope = st.slope_acc;
            offset = st.offset_acc;
            m = st.first_min;
            M = st.last_max;
        }
    }
}
