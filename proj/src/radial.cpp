#include "logdecay/radial.hpp"

#include <algorithm>
#include <cmath>

#include "logdecay/errors.hpp"
#include "logdecay/specfun.hpp"

namespace logdecay::radial {

namespace {

using Cpx = std::complex<double>;
using models::Kind;
using models::RadialModel;

constexpr double kWronskianFloor = 1e-13;

Cpx cyl(Cyl kind, int m, Cpx x) {
    BranchedComplex z(x);
    switch (kind) {
        case Cyl::J: return specfun::cyl_j(m, z);
        case Cyl::Y: return specfun::cyl_y(m, z);
        case Cyl::H1: return specfun::cyl_h1(m, z);
    }
    return {};
}

Cpx dcyl(Cyl kind, int m, Cpx x) {
    BranchedComplex z(x);
    switch (kind) {
        case Cyl::J: return specfun::cyl_j_deriv(m, z);
        case Cyl::Y: return specfun::cyl_y_deriv(m, z);
        case Cyl::H1: return specfun::cyl_h1_deriv(m, z);
    }
    return {};
}

/// Wronskian Z1 Z2' - Z1' Z2 of the basis pair at argument x (exact values:
/// W(J,Y) = 2/(pi x), W(J,H1) = 2i/(pi x)).
Cpx basis_wronskian(Cyl k1, Cyl k2, Cpx x) {
    if (k1 == Cyl::J && k2 == Cyl::Y) return 2.0 / (M_PI * x);
    if (k1 == Cyl::J && k2 == Cyl::H1) return Cpx(0.0, 2.0) / (M_PI * x);
    throw std::logic_error("unsupported basis pair");
}

/// Solve c1 Z1(kappa R) + c2 Z2(kappa R) = v, kappa(c1 Z1' + c2 Z2') = d.
void match_into(SolutionRegion& reg, int m, double R, Cpx v, Cpx d) {
    Cpx x = reg.kappa * R;
    Cpx z1 = cyl(reg.k1, m, x), z2 = cyl(reg.k2, m, x);
    Cpx dz1 = reg.kappa * dcyl(reg.k1, m, x), dz2 = reg.kappa * dcyl(reg.k2, m, x);
    Cpx det = reg.kappa * basis_wronskian(reg.k1, reg.k2, x);
    reg.c1 = (v * dz2 - d * z2) / det;
    reg.c2 = (d * z1 - v * dz1) / det;
}

struct ValueDeriv {
    Cpx v, d;
};

ValueDeriv eval_region(const SolutionRegion& reg, int m, double r) {
    Cpx x = reg.kappa * r;
    Cpx v = reg.c1 * cyl(reg.k1, m, x) + reg.c2 * cyl(reg.k2, m, x);
    Cpx d = reg.kappa * (reg.c1 * dcyl(reg.k1, m, x) + reg.c2 * dcyl(reg.k2, m, x));
    return {v, d};
}

} // namespace

ModeProblem::ModeProblem(models::RadialModel m, int mode_, BranchedComplex lam)
    : model(std::move(m)), mode(mode_), lambda(lam) {
    if (std::abs(mode) > kMaxMode)
        throw ConstructionError("mode exceeds the configured m_max");
}

const SolutionRegion& PiecewiseSolution::region_at(double r) const {
    for (const auto& reg : regions_)
        if (r < reg.hi || &reg == &regions_.back()) return reg;
    return regions_.back();
}

std::complex<double> PiecewiseSolution::value(double r) const {
    return eval_region(region_at(r), order_, r).v;
}

std::complex<double> PiecewiseSolution::deriv(double r) const {
    return eval_region(region_at(r), order_, r).d;
}

GreensKernel solve_mode(const ModeProblem& problem) {
    const RadialModel& model = problem.model;
    const int m = std::abs(problem.mode);
    const Cpx lam = problem.lambda.value();
    if (std::abs(lam) == 0.0)
        throw AtSpectrumError("solve_mode at lambda = 0; use the threshold determinant");

    const double inf = std::numeric_limits<double>::infinity();
    PiecewiseSolution regular, outgoing;

    switch (model.kind) {
        case Kind::Free: {
            regular = PiecewiseSolution(m, {{0.0, inf, lam, Cyl::J, Cyl::Y, 1.0, 0.0}});
            outgoing = PiecewiseSolution(m, {{0.0, inf, lam, Cyl::J, Cyl::H1, 0.0, 1.0}});
            break;
        }
        case Kind::RoundWell: {
            // interior wavenumber sqrt(lambda^2 + a^2), principal branch
            Cpx kin = std::sqrt(lam * lam + model.a * model.a);
            SolutionRegion in{0.0, model.R, kin, Cyl::J, Cyl::Y, 1.0, 0.0};
            SolutionRegion out{model.R, inf, lam, Cyl::J, Cyl::H1, 0.0, 0.0};
            auto vd = eval_region(in, m, model.R);
            match_into(out, m, model.R, vd.v, vd.d);
            regular = PiecewiseSolution(m, {in, out});

            SolutionRegion oin{0.0, model.R, kin, Cyl::J, Cyl::Y, 0.0, 0.0};
            SolutionRegion oout{model.R, inf, lam, Cyl::J, Cyl::H1, 0.0, 1.0};
            auto ovd = eval_region(oout, m, model.R);
            match_into(oin, m, model.R, ovd.v, ovd.d);
            outgoing = PiecewiseSolution(m, {oin, oout});
            break;
        }
        case Kind::DeltaRing: {
            // jump f'(R+) - f'(R-) = a f(R), fields otherwise free
            SolutionRegion in{0.0, model.R, lam, Cyl::J, Cyl::Y, 1.0, 0.0};
            SolutionRegion out{model.R, inf, lam, Cyl::J, Cyl::H1, 0.0, 0.0};
            auto vd = eval_region(in, m, model.R);
            match_into(out, m, model.R, vd.v, vd.d + model.a * vd.v);
            regular = PiecewiseSolution(m, {in, out});

            SolutionRegion oin{0.0, model.R, lam, Cyl::J, Cyl::Y, 0.0, 0.0};
            SolutionRegion oout{model.R, inf, lam, Cyl::J, Cyl::H1, 0.0, 1.0};
            auto ovd = eval_region(oout, m, model.R);
            match_into(oin, m, model.R, ovd.v, ovd.d - model.a * ovd.v);
            outgoing = PiecewiseSolution(m, {oin, oout});
            break;
        }
        case Kind::RobinDisc: {
            // "regular" replaced by the solution with u'(rho) + sigma u(rho) = 0
            BranchedComplex xr(lam * model.rho);
            Cpx jc = lam * specfun::cyl_j_deriv(m, xr) + model.sigma * specfun::cyl_j(m, xr);
            Cpx yc = lam * specfun::cyl_y_deriv(m, xr) + model.sigma * specfun::cyl_y(m, xr);
            regular = PiecewiseSolution(m, {{model.rho, inf, lam, Cyl::J, Cyl::Y, yc, -jc}});
            outgoing = PiecewiseSolution(m, {{model.rho, inf, lam, Cyl::J, Cyl::H1, 0.0, 1.0}});
            break;
        }
    }

    // W = -r (u1 u2' - u1' u2), r-independent; evaluate in the outer region
    double rw = std::max({model.R, model.rho, 0.0}) + 1.0;
    Cpx u1 = regular.value(rw), du1 = regular.deriv(rw);
    Cpx u2 = outgoing.value(rw), du2 = outgoing.deriv(rw);
    Cpx w = -rw * (u1 * du2 - du1 * u2);
    if (std::abs(w) < kWronskianFloor)
        throw AtSpectrumError("Wronskian below 1e-13: lambda^2 is at the spectrum");

    GreensKernel kernel;
    kernel.regular = std::move(regular);
    kernel.outgoing = std::move(outgoing);
    kernel.wronskian = w;
    return kernel;
}

namespace {

/// Simpson over value samples with mandatory breaks at the given indices.
Cpx simpson_with_breaks(const Eigen::VectorXcd& v, double h, const std::vector<int>& breaks) {
    Cpx total = 0.0;
    int prev = 0;
    for (int b : breaks) {
        if (b > prev) {
            total += simpson(v.segment(prev, b - prev + 1), h);
            prev = b;
        }
    }
    if (prev + 1 < (int)v.size()) total += simpson(v.segment(prev, v.size() - prev), h);
    return total;
}

std::vector<int> interface_indices(const RadialModel& model, const RadialGrid& grid) {
    std::vector<int> idx;
    double ri = model.interface_radius();
    if (ri > 0.0) {
        if (!grid.contains_node(ri))
            throw GridError("grid must place a node exactly at the interface radius");
        idx.push_back(grid.index_of(ri));
    }
    return idx;
}

} // namespace

RadialSamples<std::complex<double>>
apply_resolvent(const ModeProblem& problem,
                const RadialSamples<std::complex<double>>& f, double r_out) {
    const GreensKernel kernel = solve_mode(problem);
    const RadialGrid& fg = f.grid;
    const int m = std::abs(problem.mode);

    int n_out = (int)std::lround((r_out - fg.r0) / fg.h) + 1;
    int n_all = std::max(n_out, fg.n);
    RadialGrid grid{fg.r0, fg.h, n_all};

    Eigen::VectorXcd u1(n_all), u2(n_all), fv = Eigen::VectorXcd::Zero(n_all);
    fv.head(fg.n) = f.values;
    for (int i = 0; i < n_all; ++i) {
        double r = grid.r(i);
        if (r == 0.0) {
            // u2 ~ H1 is singular at 0 but only ever multiplies the r = 0
            // integrand weight; the regular solution is J-type there
            u1[i] = (m == 0) ? kernel.regular.value(1e-12 * grid.h) : Cpx(0.0, 0.0);
            u2[i] = 0.0;
        } else {
            u1[i] = kernel.regular.value(r);
            u2[i] = kernel.outgoing.value(r);
        }
    }

    std::vector<int> breaks = interface_indices(problem.model, grid);

    Eigen::VectorXcd g1(fg.n), g2(fg.n);
    for (int i = 0; i < fg.n; ++i) {
        double r = fg.r(i);
        g1[i] = u1[i] * fv[i] * r;
        g2[i] = u2[i] * fv[i] * r;
    }

    RadialSamples<Cpx> out;
    out.grid = {fg.r0, fg.h, n_out};
    out.values.resize(n_out);
    for (int j = 0; j < n_out; ++j) {
        std::vector<int> br1, br2;
        for (int b : breaks) {
            if (b <= j) br1.push_back(b);
            else br2.push_back(b - j);
        }
        Cpx inner = 0.0, outer = 0.0;
        int jcap = std::min(j, fg.n - 1);
        if (jcap >= 1) inner = simpson_with_breaks(g1.head(jcap + 1), fg.h, br1);
        if (j < fg.n - 1) {
            Eigen::VectorXcd tail = g2.segment(j, fg.n - j);
            outer = simpson_with_breaks(tail, fg.h, br2);
        }
        out.values[j] = (u2[j] * inner + u1[j] * outer) / kernel.wronskian;
    }
    return out;
}

RadialSamples<std::complex<double>>
apply_resolvent(const ModeProblem& problem, const RadialSamples<double>& f, double r_out) {
    RadialSamples<Cpx> fc;
    fc.grid = f.grid;
    fc.values = f.values.cast<Cpx>();
    return apply_resolvent(problem, fc, r_out);
}

std::vector<std::complex<double>>
resolvent_at(const ModeProblem& problem, const RadialSamples<double>& f,
             const std::vector<double>& radii) {
    const GreensKernel kernel = solve_mode(problem);
    const RadialGrid& fg = f.grid;
    Eigen::VectorXcd u1(fg.n), u2(fg.n);
    for (int i = 0; i < fg.n; ++i) {
        double r = fg.r(i);
        u1[i] = r == 0.0 ? (std::abs(problem.mode) == 0 ? kernel.regular.value(1e-12 * fg.h)
                                                        : Cpx(0.0, 0.0))
                         : kernel.regular.value(r);
        u2[i] = r == 0.0 ? Cpx(0.0, 0.0) : kernel.outgoing.value(r);
    }
    std::vector<int> breaks = interface_indices(problem.model, fg);
    Eigen::VectorXcd g1(fg.n), g2(fg.n);
    for (int i = 0; i < fg.n; ++i) {
        g1[i] = u1[i] * f.values[i] * fg.r(i);
        g2[i] = u2[i] * f.values[i] * fg.r(i);
    }

    std::vector<Cpx> result;
    result.reserve(radii.size());
    for (double robs : radii) {
        int j;
        bool on_grid = fg.contains_node(robs);
        Cpx u1o, u2o;
        if (on_grid) {
            j = fg.index_of(robs);
            u1o = u1[j];
            u2o = u2[j];
        } else {
            if (robs < fg.r_end())
                throw GridError("observer inside the source grid must be a node");
            j = fg.n - 1;
            u1o = kernel.regular.value(robs);
            u2o = kernel.outgoing.value(robs);
        }
        std::vector<int> br1, br2;
        for (int b : breaks) {
            if (b <= j) br1.push_back(b);
            else br2.push_back(b - j);
        }
        Cpx inner = j >= 1 ? simpson_with_breaks(g1.head(j + 1), fg.h, br1) : Cpx(0.0);
        Cpx outer = 0.0;
        if (j < fg.n - 1) {
            Eigen::VectorXcd tail = g2.segment(j, fg.n - j);
            outer = simpson_with_breaks(tail, fg.h, br2);
        }
        result.push_back((u2o * inner + u1o * outer) / kernel.wronskian);
    }
    return result;
}

// --- bound states -----------------------------------------------------------

double bound_determinant(const RadialModel& model, int mode, double E) {
    const int m = std::abs(mode);
    const double y = std::sqrt(-E);
    switch (model.kind) {
        case Kind::Free:
            return 1.0;  // no matching condition; spectrum is [0, inf)
        case Kind::RoundWell: {
            double kap = std::sqrt(model.a * model.a + E);
            double u = specfun::cyl_j(m, BranchedComplex(kap * model.R, 0.0)).real();
            double du = kap * specfun::cyl_j_deriv(m, BranchedComplex(kap * model.R, 0.0)).real();
            double v = specfun::mod_k(m, y * model.R);
            double dv = y * specfun::mod_k_deriv(m, y * model.R);
            return u * dv - du * v;
        }
        case Kind::DeltaRing: {
            double u = specfun::mod_i(m, y * model.R);
            double du = y * specfun::mod_i_deriv(m, y * model.R);
            double v = specfun::mod_k(m, y * model.R);
            double dv = y * specfun::mod_k_deriv(m, y * model.R);
            return u * dv - du * v - model.a * u * v;
        }
        case Kind::RobinDisc: {
            double v = specfun::mod_k(m, y * model.rho);
            double dv = y * specfun::mod_k_deriv(m, y * model.rho);
            return dv + model.sigma * v;
        }
    }
    return 1.0;
}

namespace {

double brent_root(const std::function<double(double)>& f, double a, double b,
                  double fa, double fb, double tol) {
    // standard Brent bracketing refinement
    double c = a, fc = fa, d = b - a, e = d;
    for (int iter = 0; iter < 200; ++iter) {
        if (std::fabs(fc) < std::fabs(fb)) {
            a = b; b = c; c = a;
            fa = fb; fb = fc; fc = fa;
        }
        double tol1 = 2.0 * 1e-16 * std::fabs(b) + 0.5 * tol;
        double xm = 0.5 * (c - b);
        if (std::fabs(xm) <= tol1 || fb == 0.0) return b;
        if (std::fabs(e) >= tol1 && std::fabs(fa) > std::fabs(fb)) {
            double s = fb / fa, p, q;
            if (a == c) {
                p = 2.0 * xm * s;
                q = 1.0 - s;
            } else {
                double qq = fa / fc, r = fb / fc;
                p = s * (2.0 * xm * qq * (qq - r) - (b - a) * (r - 1.0));
                q = (qq - 1.0) * (r - 1.0) * (s - 1.0);
            }
            if (p > 0.0) q = -q;
            p = std::fabs(p);
            if (2.0 * p < std::min(3.0 * xm * q - std::fabs(tol1 * q), std::fabs(e * q))) {
                e = d;
                d = p / q;
            } else {
                d = xm;
                e = d;
            }
        } else {
            d = xm;
            e = d;
        }
        a = b;
        fa = fb;
        b += std::fabs(d) > tol1 ? d : (xm > 0 ? tol1 : -tol1);
        fb = f(b);
        if ((fb > 0.0) == (fc > 0.0)) {
            c = a;
            fc = fa;
            d = b - a;
            e = d;
        }
    }
    return b;
}

} // namespace

std::vector<BoundState> find_bound_states(const RadialModel& model, int mode) {
    std::vector<BoundState> states;
    if (model.kind == Kind::Free) return states;
    const int m = std::abs(mode);

    double e_deep, e_shallow = 1e-9;
    if (model.kind == Kind::RoundWell)
        e_deep = model.a * model.a * (1.0 - 1e-9);  // no states below the well depth
    else
        e_deep = 25.0;

    auto det = [&](double E) { return bound_determinant(model, mode, E); };

    // sign-change bracketing on a 64-point log grid in |E|
    const int kGrid = 64;
    std::vector<double> es(kGrid);
    for (int i = 0; i < kGrid; ++i) {
        double t = double(i) / (kGrid - 1);
        es[i] = -std::exp(std::log(e_deep) + t * (std::log(e_shallow) - std::log(e_deep)));
    }
    for (int i = 0; i + 1 < kGrid; ++i) {
        double fa = det(es[i]), fb = det(es[i + 1]);
        if (fa == 0.0 || (fa > 0.0) == (fb > 0.0)) continue;
        double root = brent_root(det, es[i], es[i + 1], fa, fb, 1e-12);
        BoundState bs;
        bs.energy = root;
        bs.mode = mode;
        bs.model = model;

        // match interior/exterior scales: continuity at the interface, then
        // normalize against the r dr measure
        double y = std::sqrt(-root);
        if (model.kind == Kind::RobinDisc) {
            bs.interior_scale = 0.0;
            bs.exterior_scale = 1.0;
        } else {
            double uin = model.kind == Kind::RoundWell
                             ? specfun::cyl_j(m, BranchedComplex(
                                       std::sqrt(model.a * model.a + root) * model.R, 0.0)).real()
                             : specfun::mod_i(m, y * model.R);
            double vout = specfun::mod_k(m, y * model.R);
            bs.interior_scale = 1.0;
            bs.exterior_scale = uin / vout;
        }
        // normalize
        double rmax = (model.interface_radius() > 0 ? model.interface_radius() : model.rho) +
                      42.0 / y;
        double h = std::min(1e-3 * rmax, 5e-3);
        double r0 = model.inner_radius();
        // keep interfaces on nodes
        if (model.interface_radius() > 0.0)
            h = model.interface_radius() / std::ceil(model.interface_radius() / h);
        auto phi2 = sample_on_grid(
            [&](double r) {
                double p = bs.profile(r);
                return p * p * r;
            },
            r0, rmax, h);
        double nrm2 = simpson(phi2.values, h);
        double scale = 1.0 / std::sqrt(nrm2);
        bs.interior_scale *= scale;
        bs.exterior_scale *= scale;
        states.push_back(std::move(bs));
    }
    return states;
}

double BoundState::profile(double r) const {
    const int m = std::abs(mode);
    double y = std::sqrt(-energy);
    switch (model.kind) {
        case Kind::Free:
            return 0.0;
        case Kind::RoundWell:
            if (r < model.R) {
                double kap = std::sqrt(model.a * model.a + energy);
                return interior_scale * specfun::cyl_j(m, BranchedComplex(kap * r, 0.0)).real();
            }
            return exterior_scale * specfun::mod_k(m, y * r);
        case Kind::DeltaRing:
            if (r < model.R) return interior_scale * specfun::mod_i(m, y * r);
            return exterior_scale * specfun::mod_k(m, y * r);
        case Kind::RobinDisc:
            return exterior_scale * specfun::mod_k(m, y * r);
    }
    return 0.0;
}

double BoundState::project(const RadialSamples<double>& f) const {
    Eigen::VectorXd prod(f.grid.n);
    for (int i = 0; i < f.grid.n; ++i) {
        double r = f.grid.r(i);
        prod[i] = f.values[i] * profile(r) * r;
    }
    return simpson(prod, f.grid.h);
}

double threshold_determinant(const models::RadialModel& model, int mode) {
    const int m = std::abs(mode);
    switch (model.kind) {
        case Kind::Free:
            return 1.0;  // r^m never matches r^-m
        case Kind::RoundWell: {
            // interior J_m(a r) against outer r^{-m}
            double x = model.a * model.R;
            double u = specfun::cyl_j(m, BranchedComplex(x, 0.0)).real();
            double du = model.a * specfun::cyl_j_deriv(m, BranchedComplex(x, 0.0)).real();
            double v = std::pow(model.R, -m);
            double dv = -m * std::pow(model.R, -m - 1);
            double D = u * dv - du * v;
            double scale = std::fabs(u * dv) + std::fabs(du * v) + 1e-300;
            return D / scale;
        }
        case Kind::DeltaRing: {
            // interior r^m, outer r^{-m}, with the derivative jump a f(R)
            double D = -(2.0 * m / model.R + model.a);
            double scale = 2.0 * m / model.R + std::fabs(model.a) + 1e-300;
            return D / scale;
        }
        case Kind::RobinDisc: {
            // outer r^{-m} against the boundary residual f'(rho) + sigma f(rho)
            double D = -m / model.rho + model.sigma;
            double scale = m / model.rho + std::fabs(model.sigma) + 1e-300;
            return D / scale;
        }
    }
    return 1.0;
}

} // namespace logdecay::radial
