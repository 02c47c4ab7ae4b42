#ifndef LOGDECAY_ERRORS_HPP
#define LOGDECAY_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace logdecay {

/// Argument left the branch domain arg z in (-pi/2, 3pi/2).
struct BranchDomainError : std::domain_error {
    using std::domain_error::domain_error;
};

/// Spectral parameter hit an eigenvalue/resonance (Wronskian collapsed).
struct AtSpectrumError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Quadrature or extrapolation failed to reach the requested tolerance.
struct AccuracyError : std::runtime_error {
    AccuracyError(const std::string& what, double achieved)
        : std::runtime_error(what), achieved_tolerance(achieved) {}
    double achieved_tolerance;
};

/// Contour/moment specification violates its invariants.
struct SpecError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

/// Grid does not align with model interfaces, or is otherwise unusable.
struct GridError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

/// Time step violates the stability bound of the explicit scheme.
struct StabilityError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Least-squares design matrix is numerically degenerate.
struct FitDegeneracyError : std::runtime_error {
    FitDegeneracyError(const std::string& what, double cond)
        : std::runtime_error(what), condition_number(cond) {}
    double condition_number;
};

/// A detected p-resonance has no time profile available for subtraction.
struct IncompleteSplitError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Time series too short for the requested decay fit.
struct InsufficientDataError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

/// Construction inputs violate a documented precondition.
struct ConstructionError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

} // namespace logdecay

#endif
