#pragma once

#include <stdexcept>
#include <string>

namespace o2loop {

/// Invalid configuration or parameter file content.
class config_error : public std::runtime_error {
public:
    explicit config_error(const std::string& what) : std::runtime_error(what) {}
};

/// Plant state left the model's physical domain (integrator step rejection).
class domain_error : public std::runtime_error {
public:
    explicit domain_error(const std::string& what) : std::runtime_error(what) {}
};

/// Estimation window malformed (too short or wrong span).
class window_error : public std::runtime_error {
public:
    explicit window_error(const std::string& what) : std::runtime_error(what) {}
};

/// A closed-loop run could not be completed; carries the failing time.
class aborted_run : public std::runtime_error {
public:
    aborted_run(const std::string& what, double t_fail)
        : std::runtime_error(what), t_fail_(t_fail) {}
    double t_fail() const { return t_fail_; }

private:
    double t_fail_;
};

}  // namespace o2loop
