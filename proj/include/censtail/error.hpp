#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace censtail {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// An argument lies outside the mathematical domain of an operation.
class DomainError : public Error {
public:
    using Error::Error;
};

/// The top k concomitants are all censored, so p̂ₖ = 0.
class AllCensoredTail : public Error {
public:
    using Error::Error;
};

/// A closed-form transform hit a zero denominator.
class Degenerate : public Error {
public:
    using Error::Error;
};

/// Malformed input data (files, rows, values).
class DataError : public Error {
public:
    using Error::Error;
};

/// Invalid run configuration.
class ConfigError : public Error {
public:
    using Error::Error;
};

/// Why an estimate at a given k is missing from a path.
enum class Reason {
    Ok,
    AllCensoredTail,
    Degenerate,
    OutOfRange,
    NonFinite,
};

constexpr std::string_view to_string(Reason r) noexcept {
    switch (r) {
        case Reason::Ok: return "ok";
        case Reason::AllCensoredTail: return "all-censored-tail";
        case Reason::Degenerate: return "degenerate";
        case Reason::OutOfRange: return "out-of-range";
        case Reason::NonFinite: return "non-finite";
    }
    return "unknown";
}

}  // namespace censtail
