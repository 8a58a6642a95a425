#pragma once

#include <stdexcept>
#include <string>

namespace slowlight {

// Configuration problems (bad key, bad value, bad file). Carries enough
// context for the CLI to print "file:line: key: message" and exit 1.
class ConfigError : public std::runtime_error {
public:
    ConfigError(std::string message, int line = 0, std::string key = {})
        : std::runtime_error(format(message, line, key)),
          line_(line), key_(std::move(key)) {}

    int line() const noexcept { return line_; }
    const std::string& key() const noexcept { return key_; }

private:
    static std::string format(const std::string& msg, int line, const std::string& key) {
        std::string s;
        if (line > 0) s += "line " + std::to_string(line) + ": ";
        if (!key.empty()) s += key + ": ";
        return s + msg;
    }
    int line_;
    std::string key_;
};

// Numerical failures (non-convergence, resolution violations, ambiguous
// extractions). Names the module and operation so the CLI's exit-2 path can
// report where the run died.
class NumericalError : public std::runtime_error {
public:
    NumericalError(std::string module, std::string operation, std::string message)
        : std::runtime_error(module + "." + operation + ": " + message),
          module_(std::move(module)), operation_(std::move(operation)) {}

    const std::string& module() const noexcept { return module_; }
    const std::string& operation() const noexcept { return operation_; }

private:
    std::string module_;
    std::string operation_;
};

// Fit non-convergence; carries the last iterate so callers can inspect or
// report it.
class FitError : public NumericalError {
public:
    FitError(std::string message, double center, double width, double depth, double baseline)
        : NumericalError("analysis", "fit_lorentzian_hole", std::move(message)),
          center_(center), width_(width), depth_(depth), baseline_(baseline) {}

    double last_center() const noexcept { return center_; }
    double last_width() const noexcept { return width_; }
    double last_depth() const noexcept { return depth_; }
    double last_baseline() const noexcept { return baseline_; }

private:
    double center_, width_, depth_, baseline_;
};

} // namespace slowlight
