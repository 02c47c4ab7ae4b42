#include "logdecay/wave.hpp"

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>

#include "logdecay/contour.hpp"
#include "logdecay/errors.hpp"
#include "logdecay/quadrature.hpp"
#include "logdecay/specfun.hpp"

namespace logdecay::wave {

namespace {

using models::Kind;
using models::RadialModel;

} // namespace

DiscreteRadialOp build_operator(const RadialModel& model, int mode, double L, double h) {
    const int m = std::abs(mode);
    const double r0 = model.inner_radius();

    // interfaces must sit on nodes
    double ri = model.interface_radius();
    if (ri > 0.0) {
        double k = (ri - r0) / h;
        if (std::fabs(k - std::lround(k)) > 1e-9)
            throw GridError("grid spacing does not align with the interface radius");
    }

    int n_wall = (int)std::lround((L - r0) / h);  // wall node index relative to r0
    // m = 0 keeps the r = 0 node (Neumann regularity); |m| >= 1 drops it
    int first = (r0 == 0.0 && m >= 1) ? 1 : 0;
    int n = n_wall - first;  // unknowns: first .. n_wall-1
    if (n < 3) throw GridError("wave grid too small");

    DiscreteRadialOp op;
    op.grid = {r0 + first * h, h, n};
    op.mass.resize(n);
    op.diag.setZero(n);
    op.off.setZero(n - 1);

    auto rr = [&](double k) { return r0 + k * h; };  // node/half-node radius

    for (int i = 0; i < n; ++i) {
        int gi = i + first;  // global node index from r0
        double r = rr(gi);
        // lumped mass: cell [r - h/2, r + h/2] (half cell at the left edge)
        if (r == 0.0)
            op.mass[i] = h * h / 8.0;
        else if (gi == 0)
            op.mass[i] = r * h / 2.0 + h * h / 8.0;  // boundary half cell
        else
            op.mass[i] = r * h;

        // stiffness: flux faces at r +- h/2
        double left_face = (gi == 0) ? 0.0 : rr(gi - 0.5) / h;
        double right_face = rr(gi + 0.5) / h;
        op.diag[i] += left_face + right_face;
        if (i + 1 < n) op.off[i] -= right_face;
        // the wall node (gi = n_wall) is Dirichlet: coupling dropped, its
        // face term stays in the diagonal

        // centrifugal + potential, mass weighted
        double v = model.potential(r);
        if (model.kind == Kind::RoundWell && ri > 0.0 &&
            std::fabs(r - ri) < 0.5 * h)
            v = -0.5 * model.a * model.a;  // cell average at the jump node
        double cent = (r == 0.0) ? 0.0 : double(m) * double(m) / (r * r);
        op.diag[i] += op.mass[i] * (cent + v);
    }

    // Dirichlet regularity for |m| >= 1 at r = 0 is implicit: the dropped
    // node contributes only through the left face term already in diag[0]

    if (model.kind == Kind::DeltaRing) {
        int ir = op.grid.index_of(model.R);
        op.diag[ir] += model.a * model.R;  // energy a R u(R)^2
    }
    if (model.kind == Kind::RobinDisc) {
        op.diag[0] += model.sigma * model.rho;  // boundary energy sigma rho u(rho)^2
    }
    return op;
}

void DiscreteRadialOp::apply(const Eigen::VectorXd& u, Eigen::VectorXd& out) const {
    const int n = grid.n;
    out.resize(n);
    out[0] = diag[0] * u[0] + off[0] * u[1];
    for (int i = 1; i + 1 < n; ++i)
        out[i] = off[i - 1] * u[i - 1] + diag[i] * u[i] + off[i] * u[i + 1];
    out[n - 1] = off[n - 2] * u[n - 2] + diag[n - 1] * u[n - 1];
    out.array() /= mass.array();
}

double DiscreteRadialOp::max_eigen_bound() const {
    const int n = grid.n;
    double bound = 0.0;
    for (int i = 0; i < n; ++i) {
        double row = std::fabs(diag[i]);
        if (i > 0) row += std::fabs(off[i - 1]) * std::sqrt(mass[i] / mass[i - 1]);
        if (i + 1 < n) row += std::fabs(off[i]) * std::sqrt(mass[i] / mass[i + 1]);
        bound = std::max(bound, row / mass[i]);
    }
    return bound;
}

Eigen::MatrixXd DiscreteRadialOp::dense_symmetric() const {
    const int n = grid.n;
    Eigen::MatrixXd B = Eigen::MatrixXd::Zero(n, n);
    for (int i = 0; i < n; ++i) {
        B(i, i) = diag[i] / mass[i];
        if (i + 1 < n) {
            double v = off[i] / std::sqrt(mass[i] * mass[i + 1]);
            B(i, i + 1) = v;
            B(i + 1, i) = v;
        }
    }
    return B;
}

namespace {

void check_alignment(const RadialSamples<double>& f, const DiscreteRadialOp& op) {
    if (std::fabs(f.grid.h - op.grid.h) > 1e-12 * op.grid.h)
        throw GridError("initial data grid spacing must match the solver grid");
    double k = (f.grid.r0 - op.grid.r0) / op.grid.h;
    if (std::fabs(k - std::lround(k)) > 1e-9)
        throw GridError("initial data grid offset must sit on solver nodes");
}

Eigen::VectorXd embed(const RadialSamples<double>& f, const DiscreteRadialOp& op) {
    Eigen::VectorXd v = Eigen::VectorXd::Zero(op.grid.n);
    int shift = (int)std::lround((f.grid.r0 - op.grid.r0) / op.grid.h);
    for (int i = 0; i < f.grid.n; ++i) {
        int j = i + shift;
        if (j >= 0 && j < op.grid.n) v[j] = f.values[i];
    }
    return v;
}

std::vector<int> snap_observers(const std::vector<double>& observers,
                                const DiscreteRadialOp& op,
                                std::vector<double>* snapped) {
    std::vector<int> idx;
    for (double robs : observers) {
        int i = (int)std::lround((robs - op.grid.r0) / op.grid.h);
        if (i < 0 || i >= op.grid.n) throw GridError("observer outside the grid");
        idx.push_back(i);
        snapped->push_back(op.grid.r(i));
    }
    return idx;
}

double causal_length(const RadialSamples<double>& f, const std::vector<double>& observers,
                     double T) {
    double r_support = f.grid.r_end();
    double r_obs = observers.empty() ? 0.0 : *std::max_element(observers.begin(), observers.end());
    return r_support + r_obs + T + 2.0;
}

} // namespace

WaveField evolve_fd(const RadialModel& model, int mode, const RadialSamples<double>& f,
                    double T, const std::vector<double>& observers, const EvolveConfig& cfg) {
    if (cfg.cfl > 0.9) throw StabilityError("cfl must be <= 0.9");
    double L = cfg.L;
    double causal = causal_length(f, observers, T);
    if (L == 0.0) L = causal;
    if (!cfg.allow_reflections && L < causal - 1e-9)
        throw GridError("domain truncation is causally visible at the observers");

    DiscreteRadialOp op = build_operator(model, mode, L, cfg.h);
    check_alignment(f, op);

    const double dt = cfg.cfl * 2.0 / std::sqrt(op.max_eigen_bound());
    const long nsteps = (long)std::ceil(T / dt);
    const long stride = std::max(1L, nsteps / std::max(1, cfg.max_samples - 1));

    Eigen::VectorXd fv = embed(f, op);
    Eigen::VectorXd pf;
    op.apply(fv, pf);

    Eigen::VectorXd um = Eigen::VectorXd::Zero(op.grid.n);       // u(0) = 0
    Eigen::VectorXd uc = dt * fv - (dt * dt * dt / 6.0) * pf;    // u(dt)
    Eigen::VectorXd work(op.grid.n);

    WaveField field;
    field.mode = mode;
    field.r_grid = op.grid;
    field.cfl = cfg.cfl;
    field.dt = dt;
    field.initial_data = f;
    std::vector<int> obs_idx = snap_observers(observers, op, &field.observers);

    std::vector<double> times;
    std::vector<Eigen::VectorXd> rows;
    auto record = [&](long step, const Eigen::VectorXd& u) {
        times.push_back(step * dt);
        Eigen::VectorXd row(obs_idx.size());
        for (std::size_t k = 0; k < obs_idx.size(); ++k) row[k] = u[obs_idx[k]];
        rows.push_back(std::move(row));
    };
    record(0, um);

    // discrete invariant 0.5 v' M v + 0.5 u^{n+1}' K u^n, conserved exactly
    auto energy = [&](const Eigen::VectorXd& a, const Eigen::VectorXd& b) {
        Eigen::VectorXd v = (b - a) / dt;
        double kin = 0.5 * v.dot(op.mass.asDiagonal() * v);
        Eigen::VectorXd kb;
        op.apply(a, kb);
        kb.array() *= op.mass.array();
        return kin + 0.5 * b.dot(kb);
    };
    const double e0 = energy(um, uc);
    double emax_dev = 0.0;

    for (long step = 1; step <= nsteps; ++step) {
        if (step % stride == 0 || (step == nsteps && nsteps % stride != 0))
            record(step, uc);
        op.apply(uc, work);
        work = 2.0 * uc - um - (dt * dt) * work;
        um.swap(uc);
        uc.swap(work);
        if (step % (stride * 16) == 0) {
            double e = energy(um, uc);
            emax_dev = std::max(emax_dev, std::fabs(e - e0) / (std::fabs(e0) + 1e-300));
        }
    }
    field.energy_drift = emax_dev;

    field.times = Eigen::Map<Eigen::VectorXd>(times.data(), times.size());
    field.values.resize(times.size(), obs_idx.size());
    for (std::size_t i = 0; i < rows.size(); ++i)
        field.values.row((Eigen::Index)i) = rows[i].transpose();
    return field;
}

WaveField evolve_dense(const RadialModel& model, int mode, const RadialSamples<double>& f,
                       const Eigen::VectorXd& times, const std::vector<double>& observers,
                       double L, double h) {
    DiscreteRadialOp op = build_operator(model, mode, L, h);
    check_alignment(f, op);
    Eigen::MatrixXd B = op.dense_symmetric();
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(B);
    if (es.info() != Eigen::Success) throw std::runtime_error("dense eigensolver failed");

    // f in the symmetrized variables v = M^{1/2} u
    Eigen::VectorXd fv = embed(f, op);
    Eigen::VectorXd fw = op.mass.cwiseSqrt().asDiagonal() * fv;
    Eigen::VectorXd coeffs = es.eigenvectors().transpose() * fw;

    WaveField field;
    field.mode = mode;
    field.r_grid = op.grid;
    field.times = times;
    field.initial_data = f;
    std::vector<int> obs_idx = snap_observers(observers, op, &field.observers);
    field.values.resize(times.size(), obs_idx.size());

    Eigen::VectorXd mu = es.eigenvalues();
    for (Eigen::Index it = 0; it < times.size(); ++it) {
        double t = times[it];
        Eigen::VectorXd amp(mu.size());
        for (Eigen::Index j = 0; j < mu.size(); ++j) {
            double m = mu[j];
            if (m > 1e-14) {
                double s = std::sqrt(m);
                amp[j] = std::sin(t * s) / s;
            } else if (m < -1e-14) {
                double s = std::sqrt(-m);
                amp[j] = std::sinh(t * s) / s;
            } else {
                amp[j] = t;
            }
        }
        Eigen::VectorXd vt = es.eigenvectors() * (amp.asDiagonal() * coeffs);
        Eigen::VectorXd ut = vt.array() / op.mass.array().sqrt();
        for (std::size_t k = 0; k < obs_idx.size(); ++k)
            field.values(it, k) = ut[obs_idx[k]];
    }
    return field;
}

namespace {

struct ThresholdTail {
    bool active = false;
    double log_abs_b = 0.0;
    std::vector<double> amplitude;  // A per observer
};

/// Detect Im[R f] ~ A / (lambda^2 (ln^2(lambda|b|) + pi^2/4)) from samples at
/// three small lambdas; rejects regular behaviour (s varying like lambda^2).
ThresholdTail detect_tail(const RadialModel& model, int mode,
                          const RadialSamples<double>& f,
                          const std::vector<double>& observers, double lambda_c) {
    ThresholdTail tail;
    std::array<double, 3> lams{lambda_c, 2.0 * lambda_c, 4.0 * lambda_c};
    std::vector<std::array<double, 3>> s(observers.size());
    for (int j = 0; j < 3; ++j) {
        radial::ModeProblem prob(model, mode, BranchedComplex(lams[j], 0.0));
        auto vals = radial::resolvent_at(prob, f, observers);
        for (std::size_t k = 0; k < observers.size(); ++k)
            s[k][j] = vals[k].imag() * lams[j] * lams[j];
    }
    // pick the strongest observer for the b fit
    std::size_t kbest = 0;
    double best = 0.0;
    for (std::size_t k = 0; k < observers.size(); ++k) {
        double m = std::min({std::fabs(s[k][0]), std::fabs(s[k][1]), std::fabs(s[k][2])});
        if (m > best) {
            best = m;
            kbest = k;
        }
    }
    if (best <= 0.0) return tail;
    // slow variation in lambda distinguishes the threshold profile
    double ratio = std::max({s[kbest][0], s[kbest][1], s[kbest][2]}) /
                   std::min({s[kbest][0], s[kbest][1], s[kbest][2]});
    if (!(ratio > 0.0) || ratio > 3.0) return tail;

    // 1/s = (ln lambda + ln|b|)^2/A + pi^2/(4A): parabola in ln lambda
    double x0 = std::log(lams[0]), x1 = std::log(lams[1]), x2 = std::log(lams[2]);
    double y0 = 1.0 / s[kbest][0], y1 = 1.0 / s[kbest][1], y2 = 1.0 / s[kbest][2];
    double d01 = (y1 - y0) / (x1 - x0), d12 = (y2 - y1) / (x2 - x1);
    double alpha = (d12 - d01) / (x2 - x0);  // = 1/A
    if (!(alpha > 0.0)) return tail;
    double beta = d01 - alpha * (x0 + x1);  // = 2 ln|b| / A
    double lnb = 0.5 * beta / alpha;
    if (std::fabs(lnb) > 8.0) return tail;

    tail.active = true;
    tail.log_abs_b = lnb;
    tail.amplitude.resize(observers.size());
    for (std::size_t k = 0; k < observers.size(); ++k) {
        // A_k from the mid sample with the shared |b|
        double L = std::log(lams[1]) + lnb;
        tail.amplitude[k] = s[k][1] * (L * L + M_PI * M_PI / 4.0);
    }
    return tail;
}

} // namespace

WaveField evolve_spectral(const RadialModel& model, int mode, const RadialSamples<double>& f,
                          const Eigen::VectorXd& times, const std::vector<double>& observers,
                          const SpectralConfig& cfg) {
    const double t_max = times.size() ? times.maxCoeff() : 1.0;
    const double lambda_c = cfg.lambda_cut_factor / std::max(t_max, 1.0);

    WaveField field;
    field.mode = mode;
    field.r_grid = f.grid;
    field.times = times;
    field.observers = observers;
    field.initial_data = f;
    field.values.setZero(times.size(), (Eigen::Index)observers.size());

    // point spectrum: sinh growth terms
    auto bound = radial::find_bound_states(model, mode);
    for (const auto& bs : bound) {
        double y = std::sqrt(-bs.energy);
        double w = bs.project(f);
        for (Eigen::Index it = 0; it < times.size(); ++it) {
            double amp = std::sinh(y * times[it]) / y * w;
            for (std::size_t k = 0; k < observers.size(); ++k)
                field.values(it, k) += amp * bs.profile(observers[k]);
        }
    }

    // continuous spectrum: collect quadrature nodes over [lambda_c, lambda_max]
    struct Node {
        double lam, w;
    };
    std::vector<Node> nodes;
    {
        const auto& gk = quad::GkTable<double>::get();
        double r_span = f.grid.r_end() +
                        (observers.empty() ? 0.0
                                           : *std::max_element(observers.begin(), observers.end()));
        double osc_panel = M_PI / (t_max + 2.0 * r_span);
        auto add_panel = [&](double a, double b) {
            double c = 0.5 * (a + b), hw = 0.5 * (b - a);
            nodes.push_back({c, gk.wk[7] * hw});
            for (int i = 0; i < 7; ++i) {
                nodes.push_back({c + hw * gk.x[i], gk.wk[i] * hw});
                nodes.push_back({c - hw * gk.x[i], gk.wk[i] * hw});
            }
        };
        auto fill = [&](double a, double b, double max_panel) {
            int np = std::max(1, (int)std::ceil((b - a) / max_panel));
            for (int i = 0; i < np; ++i)
                add_panel(a + (b - a) * i / np, a + (b - a) * (i + 1) / np);
        };
        // geometric refinement toward 0
        double lo = lambda_c;
        while (lo < cfg.split_point) {
            double hi = std::min(2.0 * lo, cfg.split_point);
            fill(lo, hi, osc_panel);
            lo = hi;
        }
        fill(cfg.split_point, cfg.lambda_max, osc_panel);
    }

    // Im[R f] at every node; one resolvent solve serves all observers
    Eigen::MatrixXd density((Eigen::Index)nodes.size(), (Eigen::Index)observers.size());
    for (std::size_t i = 0; i < nodes.size(); ++i) {
        radial::ModeProblem prob(model, mode, BranchedComplex(nodes[i].lam, 0.0));
        auto vals = radial::resolvent_at(prob, f, observers);
        for (std::size_t k = 0; k < observers.size(); ++k)
            density((Eigen::Index)i, (Eigen::Index)k) = vals[k].imag();
    }
    for (Eigen::Index it = 0; it < times.size(); ++it) {
        double t = times[it];
        for (std::size_t k = 0; k < observers.size(); ++k) {
            double acc = 0.0;
            for (std::size_t i = 0; i < nodes.size(); ++i)
                acc += nodes[i].w * std::sin(t * nodes[i].lam) *
                       density((Eigen::Index)i, (Eigen::Index)k);
            field.values(it, k) += (2.0 / M_PI) * acc;
        }
    }

    // analytic tail of the threshold log singularity on [0, lambda_c]
    if (cfg.analytic_threshold_tail && std::abs(mode) >= 1) {
        ThresholdTail tail = detect_tail(model, mode, f, observers, lambda_c);
        if (tail.active) {
            double arg = (2.0 / M_PI) * (std::log(lambda_c) + tail.log_abs_b);
            double window = (2.0 / M_PI) * (M_PI / 2.0 + std::atan(arg));
            for (Eigen::Index it = 0; it < times.size(); ++it) {
                double t = times[it];
                for (std::size_t k = 0; k < observers.size(); ++k)
                    field.values(it, k) += (2.0 / M_PI) * tail.amplitude[k] * t * window;
            }
        }
    }
    return field;
}

double expansion_state(const RadialModel& model, double r) {
    switch (model.kind) {
        case Kind::Free:
            return 0.0;
        case Kind::RoundWell: {
            double g1 = specfun::bessel_j(1, model.a * model.R);
            if (r < model.R) return specfun::bessel_j(1, model.a * r) / (model.R * g1);
            return 1.0 / r;
        }
        case Kind::DeltaRing:
            return r < model.R ? r / (model.R * model.R) : 1.0 / r;
        case Kind::RobinDisc:
            return r < model.rho ? 0.0 : 1.0 / r;
    }
    return 0.0;
}

double pair_with_state(const RadialModel& model, const RadialSamples<double>& f) {
    Eigen::VectorXd prod(f.grid.n);
    for (int i = 0; i < f.grid.n; ++i) {
        double r = f.grid.r(i);
        prod[i] = f.values[i] * expansion_state(model, r) * r;
    }
    return simpson(prod, f.grid.h);
}

DecaySplit decompose(const WaveField& field, const RadialModel& model,
                     const lowfreq::ExpansionFit& fit,
                     const std::vector<radial::BoundState>& bound) {
    const Eigen::Index nt = field.times.size();
    const Eigen::Index nk = (Eigen::Index)field.observers.size();
    DecaySplit split;
    split.u_d.setZero(nt, nk);
    split.u_z.setZero(nt, nk);

    for (const auto& bs : bound) {
        if (bs.mode != field.mode) continue;
        double y = std::sqrt(-bs.energy);
        double w = bs.project(field.initial_data);
        for (Eigen::Index it = 0; it < nt; ++it) {
            double amp = std::sinh(y * field.times[it]) / y * w;
            for (Eigen::Index k = 0; k < nk; ++k)
                split.u_d(it, k) += amp * bs.profile(field.observers[k]);
        }
    }

    if (fit.M >= 1) {
        std::complex<double> b = fit.branch_b();
        if (!(std::abs(b) > 0.0) || !std::isfinite(std::abs(b)))
            throw IncompleteSplitError("p-resonance detected but no usable branch constant");
        // the profile integral needs arg b = -pi/2 exactly; snap the modulus
        std::complex<double> b_used(0.0, -std::abs(b));
        split.used_branch_b = b_used;
        double fu = pair_with_state(model, field.initial_data);

        // J(t) ln(t)/t varies slowly in ln t; evaluate on a coarse log grid
        // and interpolate instead of one contour run per sample
        double tmax = field.times[nt - 1];
        if (tmax >= 2.0) {
            contour::ContourSpec cs;
            const int ngrid = 48;
            double l0 = std::log(2.0), l1 = std::log(std::max(tmax, 2.0) * 1.0000001);
            Eigen::VectorXd lts(ngrid), qs(ngrid);
            for (int i = 0; i < ngrid; ++i) {
                lts[i] = l0 + (l1 - l0) * i / (ngrid - 1);
                cs.t = std::exp(lts[i]);
                qs[i] = contour::jm_profile(cs, b_used) * lts[i] / cs.t;
            }
            auto jm_interp = [&](double t) {
                double lt = std::log(t);
                int i = std::min(ngrid - 2, std::max(0, (int)((lt - l0) / (l1 - l0) * (ngrid - 1))));
                double w = (lt - lts[i]) / (lts[i + 1] - lts[i]);
                double q = qs[i] * (1.0 - w) + qs[i + 1] * w;
                return q * t / lt;
            };
            for (Eigen::Index it = 0; it < nt; ++it) {
                double t = field.times[it];
                if (t < 2.0) continue;  // profile defined for t >= 2
                double J = jm_interp(t);
                for (Eigen::Index k = 0; k < nk; ++k)
                    split.u_z(it, k) += fu * J * expansion_state(model, field.observers[k]);
            }
        }
    }

    split.u_r = field.values - split.u_d - split.u_z;

    // alpha of t/log t over the later part of the series (first observer)
    if (nt >= 8) {
        Eigen::Index start = nt / 2;
        Eigen::VectorXd tt = field.times.segment(start, nt - start);
        Eigen::VectorXd uu = field.values.col(0).segment(start, nt - start);
        if (tt[0] > 2.0 && tt[tt.size() - 1] / std::max(tt[0], 1e-300) >= 1.5) {
            split.fit_alpha = fit_decay(tt, uu, DecayLaw::TOverLog).alpha;
        }
    }
    return split;
}

DecayFit fit_decay(const Eigen::VectorXd& t, const Eigen::VectorXd& u, DecayLaw law,
                   int log_power) {
    if (t.size() != u.size() || t.size() < 8)
        throw InsufficientDataError("fit_decay needs at least 8 samples");
    double t0 = t.minCoeff(), t1 = t.maxCoeff();
    if (t0 <= 1.0) throw InsufficientDataError("fit_decay needs t > 1 samples");

    DecayFit fit;
    fit.law = law;
    if (law == DecayLaw::TOverLog) {
        if (t1 / t0 < 1.5)
            throw InsufficientDataError("fit_decay window too short for t/log t");
        double num = 0.0, den = 0.0;
        for (Eigen::Index i = 0; i < t.size(); ++i) {
            double g = t[i] / std::log(t[i]);
            num += u[i] * g;
            den += g * g;
        }
        fit.alpha = num / den;
        double scale = 0.0, res = 0.0;
        for (Eigen::Index i = 0; i < t.size(); ++i) {
            double g = fit.alpha * t[i] / std::log(t[i]);
            res += (u[i] - g) * (u[i] - g);
            scale = std::max(scale, std::fabs(u[i]));
        }
        fit.residual = std::sqrt(res / t.size()) / (scale + 1e-300);
        fit.passed = true;
        return fit;
    }

    // LogPower: sup of |u| log(t)^M over dyadic windows must decrease
    if (t1 / t0 < 4.0)
        throw InsufficientDataError("fit_decay needs >= 2 dyadic windows");
    fit.log_power = log_power;
    double lo = t0;
    while (lo < t1 - 1e-12) {
        double hi = std::min(2.0 * lo, t1);
        double sup = 0.0;
        bool any = false;
        for (Eigen::Index i = 0; i < t.size(); ++i) {
            if (t[i] >= lo && t[i] <= hi) {
                sup = std::max(sup, std::fabs(u[i]) * std::pow(std::log(t[i]), log_power));
                any = true;
            }
        }
        if (any) fit.window_sups.push_back(sup);
        lo = hi;
    }
    fit.passed = fit.window_sups.size() >= 2;
    for (std::size_t i = 0; i + 1 < fit.window_sups.size(); ++i)
        if (fit.window_sups[i + 1] >= fit.window_sups[i]) fit.passed = false;
    return fit;
}

} // namespace logdecay::wave
