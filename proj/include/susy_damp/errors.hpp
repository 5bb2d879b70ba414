#pragma once

#include <stdexcept>
#include <string>

namespace susy_damp {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Parameters violate a type invariant (beta <= 0, gamma == 0, inconsistent spec, ...).
class ParameterError : public Error {
public:
    using Error::Error;
};

/// An inverse-function argument fell outside its domain; the requested
/// parametrization cannot represent this solution.
class DomainError : public Error {
public:
    using Error::Error;
};

/// Evaluation point lies inside the guard band around the blow-up instant -1/gamma.
class SingularTime : public Error {
public:
    SingularTime(double t, double t_star);

    double t() const noexcept { return t_; }
    double t_star() const noexcept { return t_star_; }

private:
    double t_;
    double t_star_;
};

/// Operation is not defined for the damping regime of the given parameters.
class RegimeError : public Error {
public:
    using Error::Error;
};

/// A finite-difference stencil could not be placed on one side of the pole.
class DerivativeUnavailable : public Error {
public:
    using Error::Error;
};

/// An integration interval contains the blow-up instant.
class SingularInterval : public Error {
public:
    using Error::Error;
};

/// The adaptive integrator could not make progress.
class StepFailure : public Error {
public:
    using Error::Error;
};

}  // namespace susy_damp
