#pragma once

#include <stdexcept>
#include <string>

namespace logwave {

/// Invalid argument or parameter outside the mathematical domain of an
/// operation (non-finite input, T-t outside (0,1), exponent <= -1, ...).
class DomainError : public std::domain_error {
public:
    explicit DomainError(const std::string& what) : std::domain_error(what) {}
};

/// A numerical procedure failed to reach its requested tolerance.
class NumericError : public std::runtime_error {
public:
    NumericError(const std::string& what, double achieved)
        : std::runtime_error(what + " (achieved tolerance " + std::to_string(achieved) + ")"),
          achieved_tolerance(achieved) {}
    double achieved_tolerance;
};

/// ODE integration aborted; carries the last accepted state.
class IntegrationError : public std::runtime_error {
public:
    IntegrationError(const std::string& what, double t, double v, double v_prime)
        : std::runtime_error(what), last_t(t), last_v(v), last_v_prime(v_prime) {}
    double last_t, last_v, last_v_prime;
};

} // namespace logwave
