#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace du4 {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct DegreeMismatch : Error {
    using Error::Error;
};

struct ReducibleModulus : Error {
    using Error::Error;
};

struct UnsupportedN : Error {
    using Error::Error;
};

struct NonDivisor : Error {
    using Error::Error;
};

struct NoThirdRoot : Error {
    using Error::Error;
};

struct ContextMismatch : Error {
    using Error::Error;
};

struct NotAPermutation : Error {
    std::uint32_t witness;  // first duplicated image value
    NotAPermutation(const std::string& msg, std::uint32_t w) : Error(msg), witness(w) {}
};

struct InadmissibleSet : Error {
    std::uint32_t witness;  // violating element
    InadmissibleSet(const std::string& msg, std::uint32_t w) : Error(msg), witness(w) {}
};

struct OddDegree : Error {
    using Error::Error;
};

struct PreconditionViolated : Error {
    using Error::Error;
};

struct UnsolvableSubspace : Error {
    using Error::Error;
};

struct TraceZeroB : Error {
    using Error::Error;
};

struct SetNotClosed : Error {
    using Error::Error;
};

}  // namespace du4
