#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace ctb {

/// Invalid grid or argument outside the domain of a formula.
class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// A linear solve hit a zero pivot.
class SolverError : public std::runtime_error {
public:
    SolverError(const std::string& what, std::size_t row)
        : std::runtime_error(what + " (row " + std::to_string(row) + ")"), row_(row) {}

    std::size_t row() const noexcept { return row_; }

private:
    std::size_t row_;
};

/// A series did not reach its truncation tolerance within the term budget.
class ConvergenceError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Bad user configuration; the message names the offending field.
class ConfigError : public std::invalid_argument {
public:
    ConfigError(const std::string& field, const std::string& why)
        : std::invalid_argument(field + ": " + why), field_(field) {}

    const std::string& field() const noexcept { return field_; }

private:
    std::string field_;
};

}  // namespace ctb
