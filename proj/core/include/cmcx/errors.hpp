#pragma once

#include <stdexcept>
#include <string>

namespace cmcx {

/// Base class for all library errors. `code()` is a stable,
/// machine-readable identifier; `what()` carries the human message.
class Error : public std::runtime_error {
public:
    Error(std::string code, const std::string& message)
        : std::runtime_error(message), code_(std::move(code)) {}

    const std::string& code() const noexcept { return code_; }

private:
    std::string code_;
};

class IndexOutOfRange : public Error {
public:
    explicit IndexOutOfRange(const std::string& message)
        : Error("IndexOutOfRange", message) {}
};

class NonStochasticRow : public Error {
public:
    NonStochasticRow(int u, int i, double row_sum);

    int control = 0;
    int state = 0;
    double row_sum = 0.0;
};

class NegativeProbability : public Error {
public:
    NegativeProbability(int u, int i, int j);

    int control = 0;
    int state = 0;
    int next_state = 0;
};

class InvalidProbability : public Error {
public:
    explicit InvalidProbability(const std::string& message)
        : Error("InvalidProbability", message) {}
};

class InvalidStateCount : public Error {
public:
    explicit InvalidStateCount(const std::string& message)
        : Error("InvalidStateCount", message) {}
};

class InvalidPrior : public Error {
public:
    explicit InvalidPrior(const std::string& message)
        : Error("InvalidPrior", message) {}
};

class LengthMismatch : public Error {
public:
    explicit LengthMismatch(const std::string& message)
        : Error("LengthMismatch", message) {}
};

class UnsupportedSupport : public Error {
public:
    explicit UnsupportedSupport(const std::string& message)
        : Error("UnsupportedSupport", message) {}
};

class ShapeMismatch : public Error {
public:
    explicit ShapeMismatch(const std::string& message)
        : Error("ShapeMismatch", message) {}
};

class HorizonExceeded : public Error {
public:
    explicit HorizonExceeded(const std::string& message)
        : Error("HorizonExceeded", message) {}
};

class IntractableHorizon : public Error {
public:
    explicit IntractableHorizon(const std::string& message)
        : Error("IntractableHorizon", message) {}
};

class ParseError : public Error {
public:
    explicit ParseError(const std::string& location_and_message)
        : Error("ParseError", location_and_message) {}
};

class SingularSystem : public Error {
public:
    explicit SingularSystem(const std::string& message)
        : Error("SingularSystem", message) {}
};

class ConfigError : public Error {
public:
    explicit ConfigError(const std::string& message)
        : Error("ConfigError", message) {}
};

class IoError : public Error {
public:
    explicit IoError(const std::string& message)
        : Error("IoError", message) {}
};

}  // namespace cmcx
