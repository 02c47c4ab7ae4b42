#ifndef LOGDECAY_BRANCH_HPP
#define LOGDECAY_BRANCH_HPP

#include <cmath>
#include <complex>

#include "logdecay/errors.hpp"

namespace logdecay {

/// Complex spectral parameter restricted to arg z in (-pi/2, 3pi/2).
///
/// All logarithms and fractional powers of the parameter use this branch;
/// the negative imaginary axis is the excluded ray and construction there
/// is rejected.  z = 0 itself is representable (its arg is unused) so that
/// entire functions like J_m can still be evaluated at the origin.
class BranchedComplex {
  public:
    explicit BranchedComplex(std::complex<double> v) : value_(v) {
        if (v.real() == 0.0 && v.imag() < 0.0)
            throw BranchDomainError("argument on the excluded ray arg z = -pi/2");
    }
    BranchedComplex(double re, double im) : BranchedComplex(std::complex<double>(re, im)) {}

    std::complex<double> value() const { return value_; }

    /// Argument in (-pi/2, 3pi/2).
    double arg() const {
        double a = std::atan2(value_.imag(), value_.real());
        if (a <= -0.5 * M_PI) a += 2.0 * M_PI;
        return a;
    }

    double abs() const { return std::abs(value_); }

  private:
    std::complex<double> value_;
};

/// log z on the branch arg z in (-pi/2, 3pi/2).
inline std::complex<double> branch_log(const BranchedComplex& z) {
    if (z.abs() == 0.0) throw BranchDomainError("branch_log at z = 0");
    return {std::log(z.abs()), z.arg()};
}

/// log(b z); the arg of the product is arg_branch(z) + Arg(b).
inline std::complex<double> branch_log(const BranchedComplex& z, std::complex<double> b) {
    if (z.abs() == 0.0 || std::abs(b) == 0.0)
        throw BranchDomainError("branch_log(b z) with vanishing factor");
    return {std::log(z.abs() * std::abs(b)), z.arg() + std::arg(b)};
}

/// z^nu with the branch argument.
inline std::complex<double> branch_pow(const BranchedComplex& z, double nu) {
    if (z.abs() == 0.0) {
        if (nu > 0.0) return 0.0;
        if (nu == 0.0) return 1.0;
        throw BranchDomainError("branch_pow: negative power of 0");
    }
    return std::exp(nu * branch_log(z));
}

/// sqrt z with arg(result) in (-pi/4, 3pi/4).
inline std::complex<double> branch_sqrt(const BranchedComplex& z) {
    double r = std::sqrt(z.abs());
    double a = 0.5 * z.arg();
    return {r * std::cos(a), r * std::sin(a)};
}

} // namespace logdecay

#endif
