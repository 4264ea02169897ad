#ifndef FERMIEOS_ERRORS_HPP
#define FERMIEOS_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace fermieos {

/// Bad arguments: non-finite inputs, violated preconditions, malformed files.
class InvalidInput : public std::invalid_argument {
public:
    explicit InvalidInput(const std::string& what) : std::invalid_argument(what) {}
};

/// A solver or quadrature failed to reach its tolerance. Carries the
/// achieved error estimate where available.
class NumericError : public std::runtime_error {
public:
    explicit NumericError(const std::string& what, double achieved = -1.0)
        : std::runtime_error(what), achieved_error(achieved) {}
    double achieved_error;
};

/// Inputs are formally valid but outside the regime the formula covers.
class OutOfValidity : public std::domain_error {
public:
    explicit OutOfValidity(const std::string& what) : std::domain_error(what) {}
};

/// A grid or lattice is too coarse to represent the requested object.
class ResolutionError : public std::runtime_error {
public:
    explicit ResolutionError(const std::string& what) : std::runtime_error(what) {}
};

} // namespace fermieos

#endif
