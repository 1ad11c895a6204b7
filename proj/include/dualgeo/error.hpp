#pragma once

#include <stdexcept>
#include <string>

namespace dualgeo {

// Bad input: violated type invariants, malformed documents, out-of-range
// arguments. CLI maps this to exit code 1.
class ValidationError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Overflow or a non-finite value where the contract requires a finite one.
class NumericError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// A condition that cannot happen with valid inputs; indicates a bug.
// CLI maps this to exit code 3.
class InternalError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

} // namespace dualgeo
