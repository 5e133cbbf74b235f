#pragma once

#include <stdexcept>
#include <string>

namespace gammaext {

/// Malformed request: bad dimensions, unparsable expressions, out-of-range parameters.
class InputError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// The request is well formed but exceeds the configured size ceiling.
class InfeasibleError : public std::runtime_error {
public:
    InfeasibleError(const std::string& what, long long required)
        : std::runtime_error(what), required_(required) {}
    long long required() const { return required_; }

private:
    long long required_;
};

/// A structural law (associativity, d^2 = 0, module axioms, ...) failed.
class InvariantError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Valid input that this implementation does not handle (e.g. duals of infinite spaces).
class UnsupportedError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace gammaext
