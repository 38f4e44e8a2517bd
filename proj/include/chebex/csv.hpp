#pragma once

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstddef>
#include <fstream>
#include <istream>
#include <ostream>
#include <string>
#include <string_view>
#include <system_error>
#include <vector>

#include "chebex/errors.hpp"
#include "chebex/time_series.hpp"

// Two-column (t, T) CSV/TSV ingestion and emission. Rows are sorted by t;
// numbers are parsed and printed locale-independently, output uses the
// shortest round-trip decimal form.

namespace chebex {
namespace detail {

inline std::string_view trim_spaces(std::string_view sv) {
    while (!sv.empty() && (sv.front() == ' ' || sv.front() == '\r')) sv.remove_prefix(1);
    while (!sv.empty() && (sv.back() == ' ' || sv.back() == '\r')) sv.remove_suffix(1);
    return sv;
}

inline std::vector<std::string_view> split(std::string_view line, char delim) {
    std::vector<std::string_view> fields;
    std::size_t start = 0;
    while (true) {
        const std::size_t pos = line.find(delim, start);
        if (pos == std::string_view::npos) {
            fields.push_back(line.substr(start));
            return fields;
        }
        fields.push_back(line.substr(start, pos - start));
        start = pos + 1;
    }
}

// Strict full-field parse to a finite double.
inline bool parse_field(std::string_view field, double& out) {
    field = trim_spaces(field);
    if (field.empty()) return false;
    const auto res = std::from_chars(field.data(), field.data() + field.size(), out);
    return res.ec == std::errc{} && res.ptr == field.data() + field.size() &&
           std::isfinite(out);
}

}  // namespace detail

/// Parse two numeric columns (t, T), comma- or tab-separated, with an
/// optional single header line. Rows are sorted by t afterwards; equal
/// instants are rejected. Error positions are 1-based file coordinates.
inline TimeSeries parse_csv(std::istream& in) {
    struct Row {
        double t, value;
        std::size_t line;
    };
    std::vector<Row> rows;
    std::string line;
    std::size_t line_no = 0;
    bool saw_candidate = false;  // first non-empty line may be a header
    while (std::getline(in, line)) {
        ++line_no;
        const std::string_view sv = detail::trim_spaces(line);
        if (sv.empty()) continue;
        const char delim = (sv.find('\t') != std::string_view::npos) ? '\t' : ',';
        const auto fields = detail::split(sv, delim);
        double t = 0.0, value = 0.0;
        const bool two_numbers = fields.size() == 2 && detail::parse_field(fields[0], t) &&
                                 detail::parse_field(fields[1], value);
        if (!two_numbers) {
            if (!saw_candidate) {  // header line
                saw_candidate = true;
                continue;
            }
            if (fields.size() != 2)
                throw CsvError("expected 2 columns at row " + std::to_string(line_no) +
                               ", found " + std::to_string(fields.size()));
            const std::size_t bad_col = detail::parse_field(fields[0], t) ? 2 : 1;
            throw NonNumericCell(line_no, bad_col);
        }
        saw_candidate = true;
        rows.push_back(Row{t, value, line_no});
    }
    if (rows.empty()) throw EmptyInput();

    std::stable_sort(rows.begin(), rows.end(),
                     [](const Row& a, const Row& b) { return a.t < b.t; });
    std::vector<double> times, values;
    times.reserve(rows.size());
    values.reserve(rows.size());
    for (std::size_t i = 0; i < rows.size(); ++i) {
        if (i > 0 && rows[i].t == rows[i - 1].t)
            throw DuplicateInstant(rows[i].line, rows[i].t);
        times.push_back(rows[i].t);
        values.push_back(rows[i].value);
    }
    return make_series(std::move(times), std::move(values));
}

inline TimeSeries parse_csv_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw CsvError("cannot open file: " + path);
    return parse_csv(in);
}

/// Shortest decimal string that round-trips to the same double.
inline std::string format_double(double v) {
    char buf[32];
    const auto res = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, res.ptr);
}

inline void write_csv(std::ostream& out, const TimeSeries& series) {
    out << "t,T\n";
    for (std::size_t i = 0; i < series.size(); ++i)
        out << format_double(series.times[i]) << ',' << format_double(series.values[i]) << '\n';
}

}  // namespace chebex
