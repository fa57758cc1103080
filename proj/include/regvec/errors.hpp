#pragma once
#include <stdexcept>
#include <string>

namespace regvec {

// Base for every error the library raises on purpose.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// A documented precondition does not hold.
class ContractViolation : public Error {
public:
    using Error::Error;
};

// Input is geometrically degenerate (dependent vertices, u = ±e, empty arc...).
class DegenerateInput : public ContractViolation {
public:
    using ContractViolation::ContractViolation;
};

// A numerical routine failed to converge or produced a non-finite value.
class NumericFailure : public Error {
public:
    using Error::Error;
};

// A verifier found violations (validator, graph cover, certificate checks).
class VerificationFailure : public Error {
public:
    using Error::Error;
};

// Malformed input file.
class ParseError : public Error {
public:
    using Error::Error;
};

inline void require(bool cond, const std::string& what) {
    if (!cond) throw ContractViolation(what);
}

}  // namespace regvec
