#ifndef LOGDECAY_WAVE_HPP
#define LOGDECAY_WAVE_HPP

#include <Eigen/Core>
#include <vector>

#include "logdecay/grid.hpp"
#include "logdecay/lowfreq.hpp"
#include "logdecay/models.hpp"
#include "logdecay/radial.hpp"

namespace logdecay::wave {

/// Conservation-form discretization of P_m = -(1/r)(r u')' + (m^2/r^2 + V) u
/// on [r0, L) with a Dirichlet wall at L.  The same matrix backs the leapfrog
/// stepper and the dense eigendecomposition evolution, so the two agree up to
/// time discretization alone.
struct DiscreteRadialOp {
    RadialGrid grid;       // unknowns (wall node excluded)
    Eigen::VectorXd mass;  // lumped r dr weights
    Eigen::VectorXd diag;  // stiffness + potential diagonal
    Eigen::VectorXd off;   // sub/super diagonal (size n-1)

    /// out = M^{-1} K u.
    void apply(const Eigen::VectorXd& u, Eigen::VectorXd& out) const;

    /// Upper bound on the spectrum of M^{-1} K (Gershgorin on the
    /// symmetrized form).
    double max_eigen_bound() const;

    /// Symmetric similar matrix B = M^{-1/2} K M^{-1/2} (dense; oracle use).
    Eigen::MatrixXd dense_symmetric() const;
};

DiscreteRadialOp build_operator(const models::RadialModel& model, int mode,
                                double L, double h);

struct EvolveConfig {
    double h = 0.02;
    double cfl = 0.85;      // dt = cfl * 2/sqrt(lambda_max)
    double L = 0.0;         // 0: causal auto size r_support + r_obs + T + 2
    int max_samples = 4096; // cap on recorded time samples
    bool allow_reflections = false;  // permit L below the causal bound
};

/// Per-angular-mode space-time solution samples at the observers.
struct WaveField {
    int mode = 0;
    RadialGrid r_grid;
    double cfl = 0.0;
    double dt = 0.0;
    Eigen::VectorXd times;
    std::vector<double> observers;        // snapped to grid nodes
    Eigen::MatrixXd values;               // times x observers
    RadialSamples<double> initial_data;   // d_t u(0) = f
    double energy_drift = 0.0;            // relative drift of the discrete invariant
};

/// Leapfrog evolution of (d_tt + P_m) u = 0, u(0) = 0, u_t(0) = f.
WaveField evolve_fd(const models::RadialModel& model, int mode,
                    const RadialSamples<double>& f, double T,
                    const std::vector<double>& observers,
                    const EvolveConfig& cfg = {});

struct SpectralConfig {
    double lambda_max = 6.0;
    double lambda_cut_factor = 0.01;  // lambda_c = factor / t_max
    double split_point = 0.25;        // geometric panels below, oscillatory above
    bool analytic_threshold_tail = true;
};

/// Stone's-formula evolution: bound-state terms plus (2/pi) int sin(t lambda)
/// Im[R(lambda + i0) f] d lambda with panels refined geometrically toward 0
/// and an analytic log-tail when a threshold resonance is detected.
WaveField evolve_spectral(const models::RadialModel& model, int mode,
                          const RadialSamples<double>& f,
                          const Eigen::VectorXd& times,
                          const std::vector<double>& observers,
                          const SpectralConfig& cfg = {});

/// Eigendecomposition evolution of the same discrete operator (brute force;
/// small instances only).
WaveField evolve_dense(const models::RadialModel& model, int mode,
                       const RadialSamples<double>& f,
                       const Eigen::VectorXd& times,
                       const std::vector<double>& observers, double L, double h);

/// u = u_d + u_z + u_r bookkeeping at the observers.
struct DecaySplit {
    Eigen::MatrixXd u_d, u_z, u_r;  // times x observers
    double fit_alpha = 0.0;         // coefficient of t/log t fitted on u
    std::complex<double> used_branch_b{0.0, 0.0};
    double zero_eigen_linear = 0.0; // amplitude of the t Pi_0 f term (0 here)
};

/// Subtract the closed-form point-spectrum growth and the fitted zero-energy
/// profile from the measured field.
DecaySplit decompose(const WaveField& field, const models::RadialModel& model,
                     const lowfreq::ExpansionFit& fit,
                     const std::vector<radial::BoundState>& bound);

enum class DecayLaw { TOverLog, LogPower };

struct DecayFit {
    DecayLaw law = DecayLaw::TOverLog;
    double alpha = 0.0;       // least-squares coefficient of t/log t
    double residual = 0.0;    // relative RMS about the fitted law
    int log_power = 0;
    bool passed = false;      // LogPower: weighted sup decreasing over dyadic windows
    std::vector<double> window_sups;
};

/// Fit alpha t/log t, or check the log(t)^M-weighted sup over dyadic windows.
DecayFit fit_decay(const Eigen::VectorXd& t, const Eigen::VectorXd& u,
                   DecayLaw law, int log_power = 1);

/// Expansion-normalized p-resonant profile of the model (outer part exactly
/// 1/r), used for <f, U> pairings.
double expansion_state(const models::RadialModel& model, double r);

/// <f, U> against r dr with the expansion-normalized state.
double pair_with_state(const models::RadialModel& model, const RadialSamples<double>& f);

} // namespace logdecay::wave

#endif
