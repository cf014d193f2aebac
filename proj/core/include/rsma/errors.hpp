#pragma once

#include <stdexcept>
#include <string>
#include <utility>

namespace rsma {

// Every library failure derives from Error so callers can map categories to
// process exit codes without string matching.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Argument outside the mathematical domain of a function (x <= 0 for E_m, ...).
class DomainError : public Error {
public:
    using Error::Error;
};

// Invalid ScenarioConfig / SweepSpec / run parameters. `field` names the
// offending key when there is one.
class ConfigError : public Error {
public:
    ConfigError(std::string field, const std::string& what)
        : Error(field.empty() ? what : field + ": " + what), field_(std::move(field)) {}
    explicit ConfigError(const std::string& what) : Error(what) {}

    const std::string& field() const noexcept { return field_; }

private:
    std::string field_;
};

// A CSIT matrix whose numerical rank is below K.
class DegenerateChannelError : public Error {
public:
    using Error::Error;
};

// Moment match or rounding produced parameters outside the analytic model
// (non-positive matched moment, round(d_hat K) too small).
class DegenerateModelError : public Error {
public:
    using Error::Error;
};

class IoError : public Error {
public:
    using Error::Error;
};

}  // namespace rsma
