#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace wittlift {

/// Base class for all library errors.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Two operands live over different moduli p^m (or different primes).
struct ModulusMismatchError : Error {
    using Error::Error;
};

/// Inversion was requested for an element of positive valuation.
struct NonUnitError : Error {
    using Error::Error;
};

/// A ring descriptor has out-of-range or inconsistent parameters.
struct InvalidDescriptorError : Error {
    using Error::Error;
};

/// Two ring elements belong to structurally different rings.
struct RingMismatchError : Error {
    using Error::Error;
};

/// Divided powers were requested outside the divided-power ideal.
struct NotInPDIdealError : Error {
    using Error::Error;
};

/// The requested source/target pair has no built-in truncation surjection.
struct UnsupportedTruncationError : Error {
    using Error::Error;
};

/// Series operands disagree on variables, precision, or degree cap.
struct SeriesContextMismatchError : Error {
    using Error::Error;
};

/// A substitution image has a unit constant term.
struct UnitSubstitutionError : Error {
    using Error::Error;
};

/// A claimed common zero fails on some generator.
struct PointNotAZeroError : Error {
    PointNotAZeroError(std::string msg, std::size_t gen, std::uint64_t val)
        : Error(std::move(msg)), generator_index(gen), value(val) {}
    std::size_t generator_index;
    std::uint64_t value;
};

/// An evaluation image sits outside the target's maximal ideal.
struct ImageNotInMaxIdealError : Error {
    using Error::Error;
};

/// Series precision or degree cap is too small for the target ring.
struct InsufficientPrecisionError : Error {
    using Error::Error;
};

/// Expression or problem-file syntax error, with 1-based position.
struct ParseError : Error {
    ParseError(std::string msg, std::size_t line_, std::size_t column_)
        : Error(std::move(msg)), line(line_), column(column_) {}
    std::size_t line;
    std::size_t column;
};

} // namespace wittlift
