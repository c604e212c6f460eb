#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace inertphase {

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Malformed scenario text (not valid JSON, wrong value types).
class ParseError : public Error {
public:
    using Error::Error;
};

// A request that violates a documented precondition or physical premise.
// Carries every violated guard when raised by scenario validation.
class ConfigError : public Error {
public:
    explicit ConfigError(const std::string& what) : Error(what), issues_{what} {}
    explicit ConfigError(std::vector<std::string> issues)
        : Error(join(issues)), issues_(std::move(issues)) {}

    const std::vector<std::string>& issues() const noexcept { return issues_; }

private:
    static std::string join(const std::vector<std::string>& issues) {
        std::string out;
        for (const auto& s : issues) {
            if (!out.empty()) out += "; ";
            out += s;
        }
        return out;
    }

    std::vector<std::string> issues_;
};

// Step-halving diagnostics say the requested tolerance was not met.
class ConvergenceError : public Error {
public:
    using Error::Error;
};

// The run left the regime the model describes (e.g. the ring fluid stalls).
class PhysicalValidityError : public Error {
public:
    using Error::Error;
};

// NaN or Inf produced inside an integrator.
class NumericalError : public Error {
public:
    using Error::Error;
};

}  // namespace inertphase
