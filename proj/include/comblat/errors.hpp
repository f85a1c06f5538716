#pragma once

#include <stdexcept>
#include <string>

namespace comblat {

/// Base class for every error thrown by this library.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct EvenPumpIndex : Error {
    using Error::Error;
};

struct NonpositiveFSR : Error {
    using Error::Error;
};

struct CopyLabelOutOfRange : Error {
    using Error::Error;
};

// Signals a coding bug in the index case analysis, not a domain error.
struct InternalIndexError : Error {
    using Error::Error;
};

struct EmptyWindow : Error {
    using Error::Error;
};

/// No real Hadamard matrix of the requested order is available from the
/// Sylvester construction. Carries the offending order.
struct UnsupportedOrder : Error {
    explicit UnsupportedOrder(int order_, const std::string& what_)
        : Error(what_), order(order_) {}
    int order;
};

struct NotOrthogonal : Error {
    using Error::Error;
};

struct NotBalanced : Error {
    using Error::Error;
};

struct OrderMismatch : Error {
    using Error::Error;
};

struct RaggedMacronode : Error {
    using Error::Error;
};

struct NotAMatching : Error {
    using Error::Error;
};

struct DimensionMismatch : Error {
    using Error::Error;
};

struct OracleSizeExceeded : Error {
    using Error::Error;
};

struct NotPositiveDefinite : Error {
    using Error::Error;
};

struct BadPartition : Error {
    using Error::Error;
};

struct ParseError : Error {
    using Error::Error;
};

struct ValidationError : Error {
    using Error::Error;
};

struct IoError : Error {
    using Error::Error;
};

}  // namespace comblat
