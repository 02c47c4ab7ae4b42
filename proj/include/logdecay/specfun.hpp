#ifndef LOGDECAY_SPECFUN_HPP
#define LOGDECAY_SPECFUN_HPP

#include <complex>

#include "logdecay/branch.hpp"

namespace logdecay::specfun {

/// Index (order, n) of the n-th positive zero j_{order,n}.
struct BesselZeroIndex {
    int order;  // 0 or 1
    int index;  // n >= 1
};

/// J_order(z) for order 0 or 1 on the branch domain.  Power series up to
/// |z| = 16, Hankel asymptotics beyond (long double internally; relative
/// accuracy ~1e-13 on |z| <= 50 away from zeros).
std::complex<double> bessel_j(int order, const BranchedComplex& z);

/// Y_order(z); the log term uses the (-pi/2, 3pi/2) branch, which is the
/// analytic continuation across the upper half plane.
std::complex<double> bessel_y(int order, const BranchedComplex& z);

/// H^(1)_order(z) = J + iY, analytic on the branch domain; z = 0 rejected.
std::complex<double> hankel1(int order, const BranchedComplex& z);

/// Real-axis fast paths.
double bessel_j(int order, double x);
double bessel_y(int order, double x);  // x > 0

enum class Modified { I, K };

/// I_order(x) (x >= 0) or K_order(x) (x > 0), order 0 or 1.
double bessel_ik(int order, Modified kind, double x);

/// n-th positive zero of J_order, |error| <= 1e-12.
double bessel_zero(const BesselZeroIndex& idx);

/// Derivatives via the standard recurrences J0' = -J1, J1' = J0 - J1/z.
std::complex<double> bessel_j_deriv(int order, const BranchedComplex& z);
std::complex<double> bessel_y_deriv(int order, const BranchedComplex& z);
std::complex<double> hankel1_deriv(int order, const BranchedComplex& z);
double bessel_i_deriv(int order, double x);
double bessel_k_deriv(int order, double x);

// General small integer order (0 <= m <= 8), as needed by the per-mode radial
// solvers: series below the crossover radius, order recurrence above it.
std::complex<double> cyl_j(int m, const BranchedComplex& z);
std::complex<double> cyl_y(int m, const BranchedComplex& z);
std::complex<double> cyl_h1(int m, const BranchedComplex& z);
std::complex<double> cyl_j_deriv(int m, const BranchedComplex& z);
std::complex<double> cyl_y_deriv(int m, const BranchedComplex& z);
std::complex<double> cyl_h1_deriv(int m, const BranchedComplex& z);
double mod_i(int m, double x);
double mod_k(int m, double x);
double mod_i_deriv(int m, double x);
double mod_k_deriv(int m, double x);

} // namespace logdecay::specfun

#endif
