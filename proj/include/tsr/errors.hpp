#pragma once

#include <stdexcept>
#include <string>

namespace tsr {

/// Bad input: schema violations, failed preconditions, unsupported data.
class ValidationError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A computed result contradicts an invariant the library relies on.
class InvariantError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace tsr
