#pragma once

#include <cstddef>
#include <string>

#include "json.hpp"

#include "chebex/csv.hpp"
#include "chebex/fit_result.hpp"
#include "chebex/model.hpp"
#include "chebex/time_series.hpp"

// Serializable view of a fit. Indices are 1-based on the wire; numbers are
// emitted in shortest round-trip decimal form, so identical inputs give
// byte-identical output.

namespace chebex {

struct FitReport {
    ExponentialModel model{};
    double error = 0.0;
    std::vector<CriticalPoint> critical;
    FitMethod method = FitMethod::Constant;
    SymmetryTransform transform{};
    std::size_t iterations = 0;
    std::size_t sweeps = 0;
    bool boundary = false;
    // input digest
    std::size_t n = 0;
    double t_min = 0.0;
    double t_max = 0.0;
    double scale = 1.0;
};

inline FitReport make_report(const ExpFit& fit, const TimeSeries& input, std::size_t sweeps = 0,
                             bool boundary = false) {
    FitReport r;
    r.model = fit.model;
    r.error = fit.error;
    r.critical = fit.critical;
    r.method = fit.method;
    r.transform = fit.transform;
    r.iterations = fit.iterations;
    r.sweeps = sweeps;
    r.boundary = boundary;
    r.n = input.size();
    r.t_min = input.times.front();
    r.t_max = input.times.back();
    r.scale = value_scale(input);
    return r;
}

inline nlohmann::ordered_json critical_json(const std::vector<CriticalPoint>& critical) {
    nlohmann::ordered_json arr = nlohmann::ordered_json::array();
    for (const auto& c : critical) arr.push_back({{"i", c.index + 1}, {"sign", c.sign}});
    return arr;
}

inline nlohmann::ordered_json report_json(const FitReport& r) {
    nlohmann::ordered_json j;
    j["a"] = r.model.amplitude;
    j["b"] = r.model.offset;
    j["k"] = r.model.rate;
    j["error"] = r.error;
    j["critical"] = critical_json(r.critical);
    j["method"] = to_string(r.method);
    j["transform"] = {{"flip_value", r.transform.flip_value}, {"flip_time", r.transform.flip_time}};
    j["iterations"] = r.iterations;
    j["sweeps"] = r.sweeps;
    j["boundary"] = r.boundary;
    j["input"] = {{"n", r.n}, {"t_min", r.t_min}, {"t_max", r.t_max}, {"scale", r.scale}};
    return j;
}

/// Two-line TSV: header and values. The critical set is packed into one
/// column as semicolon-joined "index:sign" pairs (1-based).
inline std::string report_tsv(const FitReport& r) {
    std::string critical;
    for (const auto& c : r.critical) {
        if (!critical.empty()) critical += ';';
        critical += std::to_string(c.index + 1) + ':' + std::to_string(c.sign);
    }
    std::string out = "a\tb\tk\terror\tmethod\titerations\tsweeps\tboundary\tcritical\n";
    out += format_double(r.model.amplitude) + '\t' + format_double(r.model.offset) + '\t' +
           format_double(r.model.rate) + '\t' + format_double(r.error) + '\t' +
           to_string(r.method) + '\t' + std::to_string(r.iterations) + '\t' +
           std::to_string(r.sweeps) + '\t' + (r.boundary ? "true" : "false") + '\t' + critical +
           '\n';
    return out;
}

}  // namespace chebex
