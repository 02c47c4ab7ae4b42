#ifndef LOGDECAY_RADIAL_HPP
#define LOGDECAY_RADIAL_HPP

#include <complex>
#include <vector>

#include "logdecay/branch.hpp"
#include "logdecay/grid.hpp"
#include "logdecay/models.hpp"

namespace logdecay::radial {

inline constexpr int kMaxMode = 4;

/// Per-mode radial problem (P_m - lambda^2) at spectral frequency lambda.
struct ModeProblem {
    models::RadialModel model;
    int mode = 0;
    BranchedComplex lambda;

    ModeProblem(models::RadialModel m, int mode_, BranchedComplex lam);
};

enum class Cyl { J, Y, H1 };

/// Piecewise cylinder-function combination c1 Z1(kappa r) + c2 Z2(kappa r).
struct SolutionRegion {
    double lo = 0.0, hi = 0.0;
    std::complex<double> kappa;
    Cyl k1 = Cyl::J, k2 = Cyl::Y;
    std::complex<double> c1{1.0, 0.0}, c2{0.0, 0.0};
};

class PiecewiseSolution {
  public:
    PiecewiseSolution() = default;
    PiecewiseSolution(int order, std::vector<SolutionRegion> regions)
        : order_(order), regions_(std::move(regions)) {}

    std::complex<double> value(double r) const;
    std::complex<double> deriv(double r) const;
    int order() const { return order_; }

  private:
    const SolutionRegion& region_at(double r) const;
    int order_ = 0;
    std::vector<SolutionRegion> regions_;
};

/// Variation-of-parameters kernel of (P_m - lambda^2)^{-1}:
/// g(r, r') = u_reg(r_<) u_out(r_>) / W with W = -r (u_reg u_out' - u_reg' u_out).
struct GreensKernel {
    PiecewiseSolution regular;
    PiecewiseSolution outgoing;
    std::complex<double> wronskian;

    std::complex<double> operator()(double r, double rp) const {
        double lo = std::min(r, rp), hi = std::max(r, rp);
        return regular.value(lo) * outgoing.value(hi) / wronskian;
    }
};

/// Build the regular/outgoing pair; throws AtSpectrumError when the
/// Wronskian magnitude falls below 1e-13.
GreensKernel solve_mode(const ModeProblem& problem);

/// u = R(lambda) f by interface-aligned composite Simpson; output on f's
/// grid family extended to r_out.
RadialSamples<std::complex<double>>
apply_resolvent(const ModeProblem& problem,
                const RadialSamples<std::complex<double>>& f, double r_out);
RadialSamples<std::complex<double>>
apply_resolvent(const ModeProblem& problem, const RadialSamples<double>& f,
                double r_out);

/// (R(lambda) f)(r) at selected radii only (cheap path for sweeps).
std::vector<std::complex<double>>
resolvent_at(const ModeProblem& problem, const RadialSamples<double>& f,
             const std::vector<double>& radii);

/// Negative eigenvalue with its normalized radial profile.
struct BoundState {
    double energy = 0.0;  // E < 0
    int mode = 0;
    models::RadialModel model;
    double interior_scale = 1.0;  // profile = interior_scale * Z_m(kappa r) inside
    double exterior_scale = 1.0;  // profile = exterior_scale * K_m(y r) outside

    double profile(double r) const;

    /// <f, phi> against the r dr measure.
    double project(const RadialSamples<double>& f) const;
};

/// All matching-determinant roots in the mode's search window, refined to
/// |dE| <= 1e-10.  Empty result is normal.
std::vector<BoundState> find_bound_states(const models::RadialModel& model, int mode);

/// Matching determinant of the bound-state problem at energy E < 0
/// (exposed for bracketing diagnostics and tests).
double bound_determinant(const models::RadialModel& model, int mode, double E);

/// Normalized zero-energy matching determinant of the interior solution
/// against the outer decay r^{-|m|}; vanishes exactly at a p-resonance.
double threshold_determinant(const models::RadialModel& model, int mode);

} // namespace logdecay::radial

#endif
