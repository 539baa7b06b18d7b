#pragma once
#include <stdexcept>
#include <string>

namespace phaseless {

/// Base class for all library errors.
struct Error : std::runtime_error {
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

struct GridMismatch : Error {
    explicit GridMismatch(const std::string& msg) : Error("grid mismatch: " + msg) {}
};

struct AsymmetricGrid : Error {
    explicit AsymmetricGrid(const std::string& msg) : Error("asymmetric grid: " + msg) {}
};

struct UnsupportedWindow : Error {
    explicit UnsupportedWindow(const std::string& msg) : Error("unsupported window: " + msg) {}
};

struct OrderOverflow : Error {
    explicit OrderOverflow(const std::string& msg) : Error("order overflow: " + msg) {}
};

struct TruncationBudgetExceeded : Error {
    explicit TruncationBudgetExceeded(const std::string& msg)
        : Error("truncation budget exceeded: " + msg) {}
};

struct GridMultipleViolation : Error {
    explicit GridMultipleViolation(const std::string& msg)
        : Error("shift is not a grid multiple: " + msg) {}
};

struct NonRealWindow : Error {
    explicit NonRealWindow(const std::string& msg) : Error("window is not real-valued: " + msg) {}
};

struct InvalidCoefficients : Error {
    explicit InvalidCoefficients(const std::string& msg)
        : Error("invalid coefficients: " + msg) {}
};

struct NotEmbeddable : Error {
    explicit NotEmbeddable(const std::string& msg) : Error("not embeddable: " + msg) {}
};

struct DegenerateInput : Error {
    explicit DegenerateInput(const std::string& msg) : Error("degenerate input: " + msg) {}
};

struct ConfigError : Error {
    explicit ConfigError(const std::string& msg) : Error("config error: " + msg) {}
};

struct IoError : Error {
    explicit IoError(const std::string& msg) : Error("io error: " + msg) {}
};

}  // namespace phaseless
