#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace chebex {

/// Base class for every failure raised by this library.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

/// Input violates a TimeSeries invariant (length, ordering, finiteness).
class SeriesError : public Error {
public:
    using Error::Error;
};

/// Invalid search or solver configuration.
class ConfigError : public Error {
public:
    using Error::Error;
};

/// |k * (t_n - t_1)| exceeds the double-precision exponent budget, or a
/// de-normalized coefficient is not representable.
class OverflowRisk : public Error {
public:
    using Error::Error;
};

/// e^{k t_i} - e^{k t_j} underflowed; the pair carries no slope information.
class DegenerateDenominator : public Error {
public:
    using Error::Error;
};

/// reduce_to_case1 was asked to reduce alternated or constant data,
/// which is solved directly instead.
class NotReducible : public Error {
public:
    using Error::Error;
};

/// An internal step invariant failed, e.g. a non-positive amplitude
/// increment where the construction requires a positive one.
class InvariantViolation : public Error {
public:
    using Error::Error;
};

/// The root function has the same sign at both ends of the bracket.
class NoSignChange : public Error {
public:
    using Error::Error;
};

/// The analytically refined model failed the optimality certificate.
class RefinementRejected : public Error {
public:
    using Error::Error;
};

/// CSV ingestion failures. Row/column numbers are 1-based file positions.
class CsvError : public Error {
public:
    using Error::Error;
};

class EmptyInput : public CsvError {
public:
    EmptyInput() : CsvError("no data rows found") {}
};

class NonNumericCell : public CsvError {
public:
    NonNumericCell(std::size_t row, std::size_t column)
        : CsvError("non-numeric cell at row " + std::to_string(row) +
                   ", column " + std::to_string(column)),
          row(row),
          column(column) {}

    std::size_t row;
    std::size_t column;
};

class DuplicateInstant : public CsvError {
public:
    DuplicateInstant(std::size_t row, double instant)
        : CsvError("duplicate instant t=" + std::to_string(instant) +
                   " at row " + std::to_string(row)),
          row(row),
          instant(instant) {}

    std::size_t row;
    double instant;
};

}  // namespace chebex
