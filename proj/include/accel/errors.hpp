#pragma once

#include <stdexcept>
#include <string>

namespace accel {

/// Base of every error raised by the library. The CLI maps this family to
/// exit code 1 except for ConfigError (exit code 2).
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A numeric argument violated a precondition (non-positive mass, bad range...).
class InvalidArgument : public Error {
public:
    using Error::Error;
};

/// |x| exceeded the initial finger overlap; C2 would go negative.
class DisplacementExceedsOverlap : public Error {
public:
    using Error::Error;
};

/// An underdamped-only formula was called with zeta outside (0, 1).
class NotUnderdamped : public Error {
public:
    using Error::Error;
};

/// Integration step violates the dt <= 1/(50 f_n) resolution guard.
class StepTooLarge : public Error {
public:
    using Error::Error;
};

/// A waveform sample or an integrated state was NaN or infinite.
class NonFiniteValue : public Error {
public:
    using Error::Error;
};

/// Trajectory ends outside the settling band.
class NeverSettles : public Error {
public:
    using Error::Error;
};

/// Frequency response has no interior maximum.
class FlatResponse : public Error {
public:
    using Error::Error;
};

/// Bisection bounds do not bracket the target.
class NotBracketed : public Error {
public:
    using Error::Error;
};

class IoError : public Error {
public:
    using Error::Error;
};

class ConfigError : public Error {
public:
    enum class Kind {
        UnknownKey,
        MissingRequiredKey,
        BadUnit,
        NonNumeric,
        InvariantViolation,
        Syntax,
        Io,
    };

    ConfigError(Kind kind, int line, const std::string& message)
        : Error("line " + std::to_string(line) + ": " + message), kind_(kind), line_(line) {}

    Kind kind() const noexcept { return kind_; }
    int line() const noexcept { return line_; }

private:
    Kind kind_;
    int line_;
};

}  // namespace accel
