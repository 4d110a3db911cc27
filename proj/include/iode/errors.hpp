#ifndef IODE_ERRORS_HPP
#define IODE_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace iode {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// grossnum
struct CapExceeded : Error {
    using Error::Error;
};
struct DivisionByZero : Error {
    using Error::Error;
};

// elemfun
struct DomainError : Error {
    using Error::Error;
};
struct InfinitePartUnsupported : Error {
    using Error::Error;
};

// taylor engine
struct ContaminatedDifference : Error {
    using Error::Error;
};
struct InconsistentLedger : Error {
    using Error::Error;
};
struct InsufficientNodes : Error {
    using Error::Error;
};
struct RhsEvaluationError : Error {
    using Error::Error;
};

// parser
struct SyntaxError : Error {
    SyntaxError(const std::string& what, std::size_t position)
        : Error(what + " (at position " + std::to_string(position) + ")"), pos(position) {}
    std::size_t pos;
};
struct UnknownIdentifier : Error {
    using Error::Error;
};

} // namespace iode

#endif
