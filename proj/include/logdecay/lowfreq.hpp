#ifndef LOGDECAY_LOWFREQ_HPP
#define LOGDECAY_LOWFREQ_HPP

#include <complex>
#include <utility>
#include <vector>

#include "logdecay/branch.hpp"
#include "logdecay/grid.hpp"
#include "logdecay/models.hpp"

namespace logdecay::lowfreq {

/// One term of the small-lambda resolvent model.  k = -1 with nu = -2 is the
/// p-resonance term 1/(lambda^2 log(lambda b)).
struct ExpansionTerm {
    double nu = 0.0;
    int k = 0;
    std::complex<double> b{0.0, 0.0};
    std::complex<double> coeff{0.0, 0.0};
};

struct ExpansionFit {
    std::vector<ExpansionTerm> terms;
    int M = 0;  // significant reciprocal-log terms in this sample set (0 or 1)
    std::complex<double> zero_eigen_amp{0.0, 0.0};
    double residual = 0.0;
    double condition_number = 0.0;
    double singular_ratio = 0.0;  // reciprocal-log amplitude / dominant amplitude

    /// Branch constant of the p-resonance term (the fitted b).
    std::complex<double> branch_b() const;
    /// Amplitude of the p-resonance term.
    std::complex<double> presonance_coeff() const;
};

/// Observable <g, R(lambda) f> for a fixed positive window g, one value per
/// lambda.  When `window` is null a bump on the outer part of f's grid is
/// used.  Samples must approach 0 along rays inside the branch domain.
std::vector<std::complex<double>>
sample_lowfreq(const models::RadialModel& model, int mode,
               const RadialSamples<double>& f,
               const std::vector<BranchedComplex>& lambdas,
               const RadialSamples<double>* window = nullptr);

/// Least squares over c_-2/l^2 + c_p/(l^2 log(l b)) + c_l log l + c_0 via the
/// linearized normal form; needs >= 24 samples spanning >= 2 decades on >= 2
/// rays.  The reciprocal-log term is kept only when it is significant against
/// the dominant amplitude.
ExpansionFit
fit_expansion(const std::vector<std::pair<std::complex<double>, std::complex<double>>>& samples);

/// Convenience: log-spaced moduli on the given rays (arg values in radians).
std::vector<BranchedComplex> lambda_grid(double abs_min, double abs_max, int per_ray,
                                         const std::vector<double>& ray_args);

/// Run the sampler and fitter for modes +1 and -1 and count the significant
/// reciprocal-log terms; M <= 2 by construction.
struct PresonanceScan {
    ExpansionFit fit_plus, fit_minus;
    int M = 0;
};
PresonanceScan detect_presonances(const models::RadialModel& model,
                                  const RadialSamples<double>& f);

} // namespace logdecay::lowfreq

#endif
