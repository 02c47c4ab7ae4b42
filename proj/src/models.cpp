#include "logdecay/models.hpp"

#include <cmath>
#include <sstream>

#include "logdecay/bump.hpp"
#include "logdecay/errors.hpp"
#include "logdecay/specfun.hpp"

namespace logdecay::models {

RadialModel RadialModel::free() { return {}; }

RadialModel RadialModel::round_well(double a, double R) {
    if (R <= 0.0) throw ConstructionError("round well needs R > 0");
    if (a <= 0.0) throw ConstructionError("round well amplitude a must be > 0");
    RadialModel m;
    m.kind = Kind::RoundWell;
    m.a = a;
    m.R = R;
    return m;
}

RadialModel RadialModel::delta_ring(double a, double R) {
    if (R <= 0.0) throw ConstructionError("delta ring needs R > 0");
    RadialModel m;
    m.kind = Kind::DeltaRing;
    m.a = a;
    m.R = R;
    return m;
}

RadialModel RadialModel::robin_disc(double rho, double sigma) {
    if (rho <= 0.0) throw ConstructionError("Robin disc needs rho > 0");
    RadialModel m;
    m.kind = Kind::RobinDisc;
    m.rho = rho;
    m.sigma = sigma;
    return m;
}

std::string RadialModel::name() const {
    switch (kind) {
        case Kind::Free: return "free";
        case Kind::RoundWell: return "round-well";
        case Kind::DeltaRing: return "delta-ring";
        case Kind::RobinDisc: return "robin-disc";
    }
    return "?";
}

std::map<std::string, std::string> RadialModel::to_config() const {
    std::map<std::string, std::string> kv;
    auto num = [](double v) {
        std::ostringstream os;
        os.precision(17);
        os << v;
        return os.str();
    };
    kv["variant"] = name();
    switch (kind) {
        case Kind::Free: break;
        case Kind::RoundWell:
        case Kind::DeltaRing:
            kv["a"] = num(a);
            kv["R"] = num(R);
            break;
        case Kind::RobinDisc:
            kv["rho"] = num(rho);
            kv["sigma"] = num(sigma);
            break;
    }
    return kv;
}

RadialModel RadialModel::from_config(const std::map<std::string, std::string>& kv) {
    auto get = [&](const char* key) -> double {
        auto it = kv.find(key);
        if (it == kv.end()) throw ConstructionError(std::string("missing model key: ") + key);
        return std::stod(it->second);
    };
    auto it = kv.find("variant");
    if (it == kv.end()) throw ConstructionError("missing model key: variant");
    const std::string& v = it->second;
    if (v == "free") return free();
    if (v == "round-well") return round_well(get("a"), get("R"));
    if (v == "delta-ring") return delta_ring(get("a"), get("R"));
    if (v == "robin-disc") return robin_disc(get("rho"), get("sigma"));
    throw ConstructionError("unknown model variant: " + v);
}

std::pair<RadialModel, ResonantState> round_well_presonance(double R, int n) {
    if (R <= 0.0 || n < 1) throw ConstructionError("round_well_presonance needs R > 0, n >= 1");
    double j0n = specfun::bessel_zero({0, n});
    double a = j0n / R;
    double C = 1.0 / (R * specfun::bessel_j(1, a * R));
    RadialModel model = RadialModel::round_well(a, R);
    ResonantState st;
    st.mode = 1;
    st.inner_coeff = C;
    st.outer_coeff = 1.0;
    st.decay_class = 1;
    st.radial_profile = [a, R, C](double r) {
        return r < R ? C * specfun::bessel_j(1, a * r) : 1.0 / r;
    };
    st.radial_profile_deriv = [a, R, C](double r) {
        if (r < R) {
            double x = a * r;
            double j1p = x == 0.0 ? 0.5 : specfun::bessel_j(0, x) - specfun::bessel_j(1, x) / x;
            return C * a * j1p;
        }
        return -1.0 / (r * r);
    };
    return {model, st};
}

std::pair<RadialModel, ResonantState> delta_ring_presonance(double R) {
    if (R <= 0.0) throw ConstructionError("delta_ring_presonance needs R > 0");
    double a = -2.0 / R;
    RadialModel model = RadialModel::delta_ring(a, R);
    ResonantState st;
    st.mode = 1;
    st.inner_coeff = 1.0;     // A: f = r inside
    st.outer_coeff = R * R;   // B: f = R^2/r outside (continuity A R = B/R)
    st.decay_class = 1;
    st.radial_profile = [R](double r) { return r < R ? r : R * R / r; };
    st.radial_profile_deriv = [R](double r) { return r < R ? 1.0 : -R * R / (r * r); };
    return {model, st};
}

std::pair<RadialModel, std::vector<ResonantState>> robin_disc_presonance(double rho) {
    if (rho <= 0.0) throw ConstructionError("robin_disc_presonance needs rho > 0");
    RadialModel model = RadialModel::robin_disc(rho, 1.0 / rho);
    std::vector<ResonantState> states;
    for (int m : {+1, -1}) {
        ResonantState st;
        st.mode = m;  // real forms cos(theta)/r and sin(theta)/r
        st.inner_coeff = 1.0;
        st.outer_coeff = 1.0;
        st.decay_class = 1;
        st.radial_profile = [](double r) { return 1.0 / r; };
        st.radial_profile_deriv = [](double r) { return -1.0 / (r * r); };
        states.push_back(std::move(st));
    }
    return {model, states};
}

double robin_residual(const RadialModel& model, const ResonantState& state) {
    double rho = model.rho;
    double f0 = state.radial_profile(rho);
    double d;
    if (state.radial_profile_deriv) {
        d = state.radial_profile_deriv(rho);
    } else {
        // one-sided 2nd-order fallback for states without a closed-form slope
        double eps = 1e-6 * rho;
        double f1 = state.radial_profile(rho + eps);
        double f2 = state.radial_profile(rho + 2.0 * eps);
        d = (-3.0 * f0 + 4.0 * f1 - f2) / (2.0 * eps);
    }
    return d + model.sigma * f0;
}

double vws_default_chi(double x1, double x2) {
    // depends only on x2 for |x1| <= 1, so d(chi)/dx1 vanishes on x1 = 0
    return plateau(std::fabs(x1), 1.0, 2.0) * plateau(std::fabs(x2), 1.0, 2.0);
}

VwsGrid vws_construct(const std::function<double(double, double)>& c,
                      const std::function<double(double, double)>& chi,
                      double a0, double h, double extent) {
    int half = (int)std::lround(extent / h);
    double ext = half * h;
    int n = 2 * half + 1;
    Eigen::ArrayXXd cs(n, n), xs(n, n);
    for (int i = 0; i < n; ++i) {
        double x1 = -ext + i * h;
        for (int j = 0; j < n; ++j) {
            double x2 = -ext + j * h;
            cs(i, j) = c(x1, x2);
            xs(i, j) = chi(x1, x2);
        }
    }
    return vws_construct(cs, xs, a0, h);
}

VwsGrid vws_construct(const Eigen::ArrayXXd& c, const Eigen::ArrayXXd& chi,
                      double a0, double h) {
    const int n = (int)chi.rows();
    if (chi.cols() != n || c.rows() != n || c.cols() != n)
        throw ConstructionError("vws_construct: c and chi must be square and congruent");
    if (n % 2 == 0) throw ConstructionError("vws_construct: need an odd grid (origin on a node)");
    if (a0 <= 0.0) throw ConstructionError("vws_construct: a0 must be > 0");
    if ((c <= 0.0).any()) throw ConstructionError("vws_construct: wave speed must be positive");
    if ((chi < -1e-12).any() || (chi > 1.0 + 1e-12).any())
        throw ConstructionError("vws_construct: chi must take values in [0, 1]");

    VwsGrid g;
    g.h = h;
    g.n = n;
    g.extent = (n - 1) / 2 * h;
    g.a0 = a0;
    g.c = c;
    g.chi = chi;

    const int i0 = (n - 1) / 2;  // index of x = 0
    if (std::fabs(chi(i0, i0) - 1.0) > 1e-12)
        throw ConstructionError("vws_construct: chi must equal 1 near the origin");
    // compact support: chi vanishes on the boundary ring
    for (int k = 0; k < n; ++k)
        if (chi(0, k) != 0.0 || chi(n - 1, k) != 0.0 || chi(k, 0) != 0.0 || chi(k, n - 1) != 0.0)
            throw ConstructionError("vws_construct: chi must vanish on the grid boundary");
    // sampled check of (d chi/dx1)(0, x2) = 0; the quotient would be singular
    // on the symmetry line otherwise
    for (int j = 1; j + 1 < n; ++j) {
        double d = (chi(i0 + 1, j) - chi(i0 - 1, j)) / (2.0 * h);
        if (std::fabs(d) > 1e-10)
            throw ConstructionError("vws_construct: d(chi)/dx1 must vanish on x1 = 0");
    }

    auto x = [&](int i) { return g.x(i); };

    // u_p = (1 - chi) x1/|x|^2 + chi a0 x1; exactly zero on the line x1 = 0
    g.u_p.setZero(n, n);
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            double x1 = x(i), x2 = x(j);
            if (x1 == 0.0) continue;
            double r2 = x1 * x1 + x2 * x2;
            g.u_p(i, j) = (1.0 - chi(i, j)) * x1 / r2 + chi(i, j) * a0 * x1;
        }
    }

    // Delta u_p from the closed form; chi derivatives by central differences.
    // -Delta u_p = (D chi)(x1/|x|^2 - a0 x1) + 2 chi_x1 ((x2^2-x1^2)/|x|^4 - a0)
    //              + 4 chi_x2 x1 x2 / |x|^4
    Eigen::ArrayXXd lap_up = Eigen::ArrayXXd::Zero(n, n);
    for (int i = 1; i + 1 < n; ++i) {
        for (int j = 1; j + 1 < n; ++j) {
            double x1 = x(i), x2 = x(j);
            double r2 = x1 * x1 + x2 * x2;
            if (r2 == 0.0) continue;  // chi == 1 there; all chi-derivative factors vanish
            double cx1 = (chi(i + 1, j) - chi(i - 1, j)) / (2.0 * h);
            double cx2 = (chi(i, j + 1) - chi(i, j - 1)) / (2.0 * h);
            double lap_chi = (chi(i + 1, j) + chi(i - 1, j) + chi(i, j + 1) + chi(i, j - 1) -
                              4.0 * chi(i, j)) / (h * h);
            double r4 = r2 * r2;
            double neg_lap = lap_chi * (x1 / r2 - a0 * x1) +
                             2.0 * cx1 * ((x2 * x2 - x1 * x1) / r4 - a0) +
                             4.0 * cx2 * x1 * x2 / r4;
            lap_up(i, j) = -neg_lap;
        }
    }

    // V = c^2 (Delta u_p)/u_p with a guarded quotient; on the symmetry line
    // both numerator and denominator vanish to first order in x1 and the
    // limit is (d_x1 Delta u_p)/(d_x1 u_p), which only involves x2-derivatives
    // of chi there.
    const double guard = 1e-8 * g.u_p.abs().maxCoeff();
    g.V.setZero(n, n);
    for (int i = 1; i + 1 < n; ++i) {
        for (int j = 1; j + 1 < n; ++j) {
            double c2 = c(i, j) * c(i, j);
            if (std::fabs(g.u_p(i, j)) > guard) {
                g.V(i, j) = c2 * lap_up(i, j) / g.u_p(i, j);
            } else {
                double x2 = x(j);
                if (x2 == 0.0) continue;  // chi == 1 near the origin: V = 0
                double r2 = x2 * x2;
                double cx2 = (chi(i, j + 1) - chi(i, j - 1)) / (2.0 * h);
                double cx2x2 = (chi(i, j + 1) - 2.0 * chi(i, j) + chi(i, j - 1)) / (h * h);
                double dnum = cx2x2 * (1.0 / r2 - a0) + 4.0 * cx2 * x2 / (r2 * r2);
                double dden = (1.0 - chi(i, j)) / r2 + chi(i, j) * a0;
                g.V(i, j) = -c2 * dnum / dden;
            }
        }
    }
    return g;
}

double vws_residual(const VwsGrid& g) {
    const int n = g.n;
    double worst = 0.0;
    for (int i = 1; i + 1 < n; ++i) {
        for (int j = 1; j + 1 < n; ++j) {
            double lap_h = (g.u_p(i + 1, j) + g.u_p(i - 1, j) + g.u_p(i, j + 1) +
                            g.u_p(i, j - 1) - 4.0 * g.u_p(i, j)) / (g.h * g.h);
            double res = -g.c(i, j) * g.c(i, j) * lap_h + g.V(i, j) * g.u_p(i, j);
            worst = std::max(worst, std::fabs(res));
        }
    }
    return worst;
}

} // namespace logdecay::models
