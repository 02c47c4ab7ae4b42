#ifndef LOGDECAY_MODELS_HPP
#define LOGDECAY_MODELS_HPP

#include <Eigen/Core>
#include <functional>
#include <map>
#include <string>
#include <utility>
#include <vector>

namespace logdecay::models {

enum class Kind { Free, RoundWell, DeltaRing, RobinDisc };

/// One of the radially symmetric operator families.
///
///   RoundWell: V(r) = -a^2 on r < R (a > 0)
///   DeltaRing: V(r) = a delta(r - R), realized as a derivative jump
///   RobinDisc: free Laplacian on r > rho with u'(rho) + sigma u(rho) = 0
///   Free:      V = 0 on r > 0
struct RadialModel {
    Kind kind = Kind::Free;
    double a = 0.0;      // well amplitude / ring coupling
    double R = 0.0;      // interface radius
    double rho = 0.0;    // obstacle radius
    double sigma = 0.0;  // Robin coefficient

    static RadialModel free();
    static RadialModel round_well(double a, double R);
    static RadialModel delta_ring(double a, double R);
    static RadialModel robin_disc(double rho, double sigma);

    /// Left end of the radial domain (0, or rho for the Robin disc).
    double inner_radius() const { return kind == Kind::RobinDisc ? rho : 0.0; }

    /// Bounded part of the potential (the delta ring is excluded here and
    /// handled as an interface condition).
    double potential(double r) const {
        return (kind == Kind::RoundWell && r < R) ? -a * a : 0.0;
    }

    /// Radius of the interface the solvers must align grids with, 0 if none.
    double interface_radius() const {
        return (kind == Kind::RoundWell || kind == Kind::DeltaRing) ? R : 0.0;
    }

    std::string name() const;

    /// Key-value config serialization consumed by the CLI.
    std::map<std::string, std::string> to_config() const;
    static RadialModel from_config(const std::map<std::string, std::string>& kv);
};

/// Zero-energy state with its spatial decay class.
struct ResonantState {
    int mode = 1;               // angular index m
    double inner_coeff = 1.0;   // C (well) or A (ring)
    double outer_coeff = 1.0;   // B: profile ~ B r^{-decay_class} at infinity
    int decay_class = 1;        // d with profile ~ r^{-d}; p-resonant means d = 1
    std::function<double(double)> radial_profile;
    std::function<double(double)> radial_profile_deriv;

    /// Profile rescaled so the outer behaviour is exactly r^{-d}; this is the
    /// normalization under which the rank-one resolvent term is U (x) U.
    double expansion_profile(double r) const { return radial_profile(r) / outer_coeff; }
};

/// Round well at the n-th resonant amplitude a = j_{0,n}/R.
std::pair<RadialModel, ResonantState> round_well_presonance(double R, int n);

/// Delta ring at the resonant coupling a = -2/R.
std::pair<RadialModel, ResonantState> delta_ring_presonance(double R);

/// Robin disc at sigma = 1/rho; returns the two modes m = +1, -1.
std::pair<RadialModel, std::vector<ResonantState>> robin_disc_presonance(double rho);

/// Residual of the Robin condition profile'(rho) + sigma profile(rho) = 0
/// for a state sampled at the boundary.
double robin_residual(const RadialModel& model, const ResonantState& state);

/// 2D grid data of the variable-wave-speed construction.
struct VwsGrid {
    double h = 0.0;   // spacing
    int n = 0;        // nodes per side; x_i = -extent + i h, symmetric
    double extent = 0.0;
    double a0 = 1.0;
    Eigen::ArrayXXd c, chi, u_p, V;

    double x(int i) const { return -extent + i * h; }
};

/// Build u_p = (1 - chi) x1/|x|^2 + chi a0 x1 and V = c^2 (Delta u_p)/u_p on
/// the grid.  `c` and `chi` are node samples on the same grid; chi must be 1
/// near the origin, valued in [0,1], compactly supported inside the grid, and
/// have vanishing d(chi)/dx1 on the line x1 = 0.
VwsGrid vws_construct(const Eigen::ArrayXXd& c, const Eigen::ArrayXXd& chi,
                      double a0, double h);

/// Sampling front end: builds the grid on [-extent, extent]^2 then delegates.
VwsGrid vws_construct(const std::function<double(double, double)>& c,
                      const std::function<double(double, double)>& chi,
                      double a0, double h, double extent);

/// Default cutoff of the construction: a plateau product that depends only on
/// x2 in a strip around x1 = 0 (so the derivative condition holds exactly).
double vws_default_chi(double x1, double x2);

/// max_ij |(-c^2 Delta_h + V) u_p| over interior nodes.
double vws_residual(const VwsGrid& g);

} // namespace logdecay::models

#endif
