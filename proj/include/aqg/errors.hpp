#pragma once

#include <stdexcept>
#include <string>

namespace aqg {

/// Thrown when a trajectory produces non-finite values or crosses the
/// configured norm ceiling. Carries the time at which the run failed.
class BlowupError : public std::runtime_error {
  public:
    explicit BlowupError(double t, const std::string& what)
        : std::runtime_error(what), t_(t) {}
    double time() const { return t_; }

  private:
    double t_;
};

/// Configuration file error with a 1-based line anchor (0 = whole file).
class ConfigError : public std::runtime_error {
  public:
    ConfigError(int line, const std::string& what)
        : std::runtime_error(what), line_(line) {}
    int line() const { return line_; }

  private:
    int line_;
};

}  // namespace aqg
