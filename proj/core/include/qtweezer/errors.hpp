#pragma once

#include <stdexcept>
#include <string>

namespace qtweezer {

/// Malformed or invalid configuration. `field()` names the offending key.
class ConfigError : public std::runtime_error {
public:
    ConfigError(std::string field, const std::string& message)
        : std::runtime_error(field.empty() ? message : field + ": " + message)
        , field_(std::move(field)) {}

    const std::string& field() const noexcept { return field_; }

private:
    std::string field_;
};

/// Quadrature or solver failure. `subject()` names the mode or quantity involved.
class NumericalError : public std::runtime_error {
public:
    NumericalError(std::string subject, const std::string& message)
        : std::runtime_error(subject.empty() ? message : subject + ": " + message)
        , subject_(std::move(subject)) {}

    const std::string& subject() const noexcept { return subject_; }

private:
    std::string subject_;
};

} // namespace qtweezer
