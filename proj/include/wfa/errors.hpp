#pragma once

#include <stdexcept>
#include <string>

namespace wfa {

/// Base class of every error raised by the library.
class error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A word mentions a symbol outside the automaton's alphabet, or two
/// automata disagree on their alphabets.
class alphabet_error : public error {
public:
    using error::error;
};

/// Vector/matrix dimensions do not line up.
class shape_error : public error {
public:
    using error::error;
};

/// The requested operation needs a semiring capability that is missing.
/// `capability()` names the flag (e.g. "supports_equivalence_decision").
class unsupported_semiring : public error {
public:
    unsupported_semiring(std::string semiring, std::string capability)
        : error("semiring '" + semiring + "' lacks capability " + capability),
          semiring_(std::move(semiring)), capability_(std::move(capability)) {}

    const std::string& semiring() const noexcept { return semiring_; }
    const std::string& capability() const noexcept { return capability_; }

private:
    std::string semiring_;
    std::string capability_;
};

/// Malformed input document. The message carries the JSON path.
class schema_error : public error {
public:
    using error::error;
};

/// A caller-side contract was not met (e.g. witness requested for an
/// inequivalent pair, or a non-simulation handed to the Bloom harness).
class precondition_error : public error {
public:
    using error::error;
};

/// An internal invariant broke. Always a bug.
class invariant_violation : public error {
public:
    using error::error;
};

} // namespace wfa
