#pragma once

#include <stdexcept>
#include <string>

namespace mildns {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Array sizes or grids that do not agree.
class DimensionError : public Error {
public:
    using Error::Error;
};

/// A homogeneous operator was applied to a field with a nonzero mean.
class ZeroModeError : public Error {
public:
    using Error::Error;
};

/// Argument outside the admissible range (negative time, bad exponent, ...).
class DomainError : public Error {
public:
    using Error::Error;
};

/// An estimate's hypothesis does not hold for the requested parameters.
class HypothesisError : public Error {
public:
    using Error::Error;
};

/// Integral that does not converge under the requested exponents.
class DivergentIntegralError : public HypothesisError {
public:
    using HypothesisError::HypothesisError;
};

/// Invalid experiment configuration; `path()` names the offending key.
class ConfigError : public Error {
public:
    ConfigError(std::string path, const std::string& message)
        : Error(path + ": " + message), path_(std::move(path)) {}

    const std::string& path() const noexcept { return path_; }

private:
    std::string path_;
};

/// Time stepper produced a non-finite state.
class BlowUpError : public Error {
public:
    BlowUpError(double last_valid_time, const std::string& message)
        : Error(message), last_valid_time_(last_valid_time) {}

    double last_valid_time() const noexcept { return last_valid_time_; }

private:
    double last_valid_time_;
};

} // namespace mildns
