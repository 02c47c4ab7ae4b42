#ifndef LOGDECAY_CONTOUR_HPP
#define LOGDECAY_CONTOUR_HPP

#include <Eigen/Core>
#include <cmath>
#include <complex>

namespace logdecay::contour {

/// Deformation geometry: r(t) = log(t)/A, gamma(r) = (1/C) e^{-C' r}, and the
/// semicircle radius eta of the origin detour.
struct ContourSpec {
    double A = 4.0;
    double C = 1.0;
    double Cprime = 1.0;
    double t = 100.0;
    double eta = 0.05;

    double r_of_t() const { return std::log(t) / A; }
    double gamma_depth() const { return std::exp(-Cprime * r_of_t()) / C; }
    void validate() const;  // A > C', t >= 2, 0 < eta < r(t)
};

/// One term e^{-i t lambda} lambda^nu log^k(b lambda); negative k means
/// reciprocal log powers (k = -1 is the p-resonance profile).
struct MomentSpec {
    double nu = 0.0;
    int k = 0;
    std::complex<double> b{0.0, -1.0};
};

/// Sobolev-scale indices of the remainder bound exponent 2(s+p-q)+1.
struct RemainderBudget {
    double s = 0.0, p = 0.0, q = 0.0;
    double exponent() const { return 2.0 * (s + p - q) + 1.0; }
    void validate() const;  // s,p,q >= 0 and s+p >= q
};

/// Oriented path: vertical up from -eta - i gamma, upper semicircle through
/// i eta, vertical down to eta - i gamma.
struct ContourPath {
    double eta = 0.0, gamma = 0.0;
    std::complex<double> start() const { return {-eta, -gamma}; }
    std::complex<double> apex() const { return {0.0, eta}; }
    std::complex<double> end() const { return {eta, -gamma}; }
    double length() const { return 2.0 * gamma + M_PI * eta; }

    /// Point at arclength s in [0, length()].
    std::complex<double> at(double s) const;
};

ContourPath build_contour(const ContourSpec& spec);

struct MomentResult {
    std::complex<double> value;
    double error_estimate = 0.0;
    long evaluations = 0;
    bool quad_precision = false;
};

/// Per-piece values of the moment (endpoint-suppression diagnostics).
struct MomentBreakdown {
    std::complex<double> verticals;
    std::complex<double> semicircle;
};
MomentBreakdown moment_pieces(const ContourSpec& spec, const MomentSpec& mom);

/// Quadrature of the moment along Gamma_eta.  Switches to 128-bit floats when
/// t*eta makes the semicircle cancellation exceed double range; throws
/// AccuracyError beyond the quad-precision budget or when the error estimate
/// misses 1e-10 (1 + |result|).
MomentResult moment(const ContourSpec& spec, const MomentSpec& mom);

/// J(t) = lim_{eta->0} (1/2pi) moment(nu=-2, reciprocal log), evaluated at a
/// time-safe eta with acceptance by successive halving; requires arg b = -pi/2.
double jm_profile(const ContourSpec& spec, std::complex<double> b);

/// Envelope log(t)^{-(2(s+p-q)+1)} on a time grid.
Eigen::ArrayXd remainder_window(const RemainderBudget& budget, const Eigen::ArrayXd& t_grid);

/// Empirical constant relating the lambda^{-2} moment to the linear-in-t
/// zero-eigenvalue term: the factor c with t = Re[c (-1/2pi) moment] for the
/// rank-one toy with P = 0.  Reported, never assumed.
std::complex<double> zero_eigen_calibration(double t);

} // namespace logdecay::contour

#endif
