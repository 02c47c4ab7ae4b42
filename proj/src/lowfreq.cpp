#include "logdecay/lowfreq.hpp"

#include <Eigen/Dense>
#include <Eigen/SVD>
#include <algorithm>
#include <cmath>

#include "logdecay/bump.hpp"
#include "logdecay/errors.hpp"
#include "logdecay/radial.hpp"

namespace logdecay::lowfreq {

namespace {

using Cpx = std::complex<double>;

struct ModelEval {
    Cpx c2{}, cp{}, beta{};
    Cpx cl2{}, cl{}, c0{};   // lambda^2 (cl2 L^2 + cl L + c0)
    Cpx d2{}, d1{}, d0{};    // lambda^4 (d2 L^2 + d1 L + d0)
    bool with_p = false;

    /// y = lambda^2 F in the fitted variables.
    Cpx y(Cpx lam, Cpx L) const {
        Cpx l2 = lam * lam;
        Cpx v = c2 + l2 * (cl2 * L * L + cl * L + c0) +
                l2 * l2 * (d2 * L * L + d1 * L + d0);
        if (with_p) v += cp / (L + beta);
        return v;
    }
};

double rel_rms(const std::vector<std::pair<Cpx, Cpx>>& samples,
               const std::vector<Cpx>& Ls, const ModelEval& m,
               const Eigen::VectorXd* w = nullptr) {
    double num = 0.0, scale = 0.0;
    for (std::size_t i = 0; i < samples.size(); ++i) {
        Cpx lam = samples[i].first;
        Cpx yi = lam * lam * samples[i].second;
        double wi = w ? (*w)[(Eigen::Index)i] : 1.0;
        num += wi * wi * std::norm(yi - m.y(lam, Ls[i]));
        scale = std::max(scale, wi * std::abs(yi));
    }
    return std::sqrt(num / samples.size()) / (scale + 1e-300);
}

/// Column-normalized least squares; returns the solution and condition number.
Eigen::VectorXcd solve_ls(Eigen::MatrixXcd A, const Eigen::VectorXcd& rhs, double* cond) {
    Eigen::VectorXd scale(A.cols());
    for (int j = 0; j < A.cols(); ++j) {
        scale[j] = A.col(j).cwiseAbs().maxCoeff();
        if (scale[j] == 0.0) scale[j] = 1.0;
        A.col(j) /= scale[j];
    }
    Eigen::JacobiSVD<Eigen::MatrixXcd> svd(A, Eigen::ComputeThinU | Eigen::ComputeThinV);
    double smax = svd.singularValues()(0);
    double smin = svd.singularValues()(svd.singularValues().size() - 1);
    *cond = smax / (smin + 1e-300);
    Eigen::VectorXcd x = svd.solve(rhs);
    for (int j = 0; j < A.cols(); ++j) x[j] /= scale[j];
    return x;
}

} // namespace

std::complex<double> ExpansionFit::branch_b() const {
    for (const auto& t : terms)
        if (t.k == -1) return t.b;
    return {0.0, 0.0};
}

std::complex<double> ExpansionFit::presonance_coeff() const {
    for (const auto& t : terms)
        if (t.k == -1) return t.coeff;
    return {0.0, 0.0};
}

std::vector<std::complex<double>>
sample_lowfreq(const models::RadialModel& model, int mode,
               const RadialSamples<double>& f,
               const std::vector<BranchedComplex>& lambdas,
               const RadialSamples<double>* window) {
    const double r0 = f.grid.r0;
    double g_lo = r0 + 0.25, g_hi = r0 + 2.75;
    double r_out = window ? window->grid.r_end() : g_hi;

    std::vector<Cpx> out;
    out.reserve(lambdas.size());
    for (const auto& lam : lambdas) {
        radial::ModeProblem prob(model, mode, lam);
        auto u = radial::apply_resolvent(prob, f, r_out);
        Cpx acc = 0.0;
        if (window) {
            if (std::fabs(window->grid.h - f.grid.h) > 1e-12 * f.grid.h)
                throw GridError("window must share the sample grid spacing");
            Eigen::VectorXcd prod(u.grid.n);
            for (int i = 0; i < u.grid.n; ++i) {
                double r = u.grid.r(i);
                double g = window->grid.contains_node(r)
                               ? window->values[window->grid.index_of(r)]
                               : 0.0;
                prod[i] = u.values[i] * g * r;
            }
            acc = simpson(prod, u.grid.h);
        } else {
            Eigen::VectorXcd prod(u.grid.n);
            for (int i = 0; i < u.grid.n; ++i) {
                double r = u.grid.r(i);
                prod[i] = u.values[i] * bump(r, g_lo, g_hi) * r;
            }
            acc = simpson(prod, u.grid.h);
        }
        out.push_back(acc);
    }
    return out;
}

ExpansionFit
fit_expansion(const std::vector<std::pair<Cpx, Cpx>>& samples) {
    const int n = (int)samples.size();
    if (n < 24) throw InsufficientDataError("fit_expansion needs >= 24 samples");

    std::vector<Cpx> Ls;
    Ls.reserve(n);
    double amin = 1e300, amax = 0.0;
    std::vector<double> args;
    for (const auto& [lam, F] : samples) {
        BranchedComplex bl(lam);
        Ls.push_back(branch_log(bl));
        amin = std::min(amin, std::abs(lam));
        amax = std::max(amax, std::abs(lam));
        double a = bl.arg();
        bool seen = false;
        for (double aa : args) seen = seen || std::fabs(aa - a) < 1e-9;
        if (!seen) args.push_back(a);
    }
    if (amax / amin < 99.0)
        throw InsufficientDataError("fit_expansion needs >= 2 decades of |lambda|");
    if (args.size() < 2)
        throw InsufficientDataError("fit_expansion needs samples on >= 2 rays");

    Eigen::VectorXcd y(n);
    for (int i = 0; i < n; ++i) {
        Cpx lam = samples[i].first;
        y[i] = lam * lam * samples[i].second;
    }
    double ymax = y.cwiseAbs().maxCoeff();
    Eigen::VectorXd wrow(n);
    for (int i = 0; i < n; ++i)
        wrow[i] = 1.0 / std::max(std::abs(y[i]), 1e-3 * ymax);

    // restricted model: regular background through the lambda^4 log block
    Eigen::MatrixXcd Ar(n, 7);
    for (int i = 0; i < n; ++i) {
        Cpx lam2 = samples[i].first * samples[i].first;
        Ar(i, 0) = 1.0;
        Ar(i, 1) = lam2 * Ls[i] * Ls[i];
        Ar(i, 2) = lam2 * Ls[i];
        Ar(i, 3) = lam2;
        Ar(i, 4) = lam2 * lam2 * Ls[i] * Ls[i];
        Ar(i, 5) = lam2 * lam2 * Ls[i];
        Ar(i, 6) = lam2 * lam2;
    }
    double cond_r = 0.0;
    Eigen::VectorXcd xr = solve_ls(wrow.asDiagonal() * Ar, wrow.asDiagonal() * y, &cond_r);
    ModelEval restricted;
    restricted.c2 = xr[0];
    restricted.cl2 = xr[1];
    restricted.cl = xr[2];
    restricted.c0 = xr[3];
    restricted.d2 = xr[4];
    restricted.d1 = xr[5];
    restricted.d0 = xr[6];
    double resid_restricted = rel_rms(samples, Ls, restricted, &wrow);

    // full model by variable projection: for fixed beta the model is linear
    // in the amplitudes, so scan beta = log b over a grid and keep the best
    // conditional least-squares fit, then polish by Gauss-Newton
    double cond_f = 0.0;
    auto conditional_fit = [&](Cpx beta, double* cond) {
        Eigen::MatrixXcd A(n, 8);
        for (int i = 0; i < n; ++i) {
            Cpx lam2 = samples[i].first * samples[i].first;
            A(i, 0) = 1.0;
            A(i, 1) = 1.0 / (Ls[i] + beta);
            A(i, 2) = lam2 * Ls[i] * Ls[i];
            A(i, 3) = lam2 * Ls[i];
            A(i, 4) = lam2;
            A(i, 5) = lam2 * lam2 * Ls[i] * Ls[i];
            A(i, 6) = lam2 * lam2 * Ls[i];
            A(i, 7) = lam2 * lam2;
        }
        Eigen::VectorXcd x = solve_ls(wrow.asDiagonal() * A, wrow.asDiagonal() * y, cond);
        ModelEval m;
        m.c2 = x[0];
        m.cp = x[1];
        m.beta = beta;
        m.cl2 = x[2];
        m.cl = x[3];
        m.c0 = x[4];
        m.d2 = x[5];
        m.d1 = x[6];
        m.d0 = x[7];
        m.with_p = true;
        return m;
    };

    // a genuine branch constant keeps the zero of L + beta far from the
    // sampled window; candidates whose pole enters it are overfitting noise
    auto pole_distance = [&](Cpx beta) {
        double d = 1e300;
        for (const auto& L : Ls) d = std::min(d, std::abs(L + beta));
        return d;
    };

    ModelEval full;
    double resid_full = 1e300;
    for (int ib = 0; ib <= 32; ++ib) {
        for (int ia = 0; ia < 24; ++ia) {
            Cpx beta(-4.0 + 8.0 * ib / 32.0, -M_PI + 2.0 * M_PI * ia / 24.0);
            if (pole_distance(beta) < 1.0) continue;
            double cond = 0.0;
            ModelEval m = conditional_fit(beta, &cond);
            double r = rel_rms(samples, Ls, m, &wrow);
            if (r < resid_full) {
                resid_full = r;
                full = m;
                cond_f = cond;
            }
        }
    }
    if (!std::isfinite(resid_full))
        throw FitDegeneracyError("fit_expansion: degenerate design matrix", cond_f);

    // Gauss-Newton polish on all nine parameters
    for (int iter = 0; iter < 40; ++iter) {
        Eigen::MatrixXcd J(n, 9);
        Eigen::VectorXcd r(n);
        for (int i = 0; i < n; ++i) {
            Cpx lam = samples[i].first, lam2 = lam * lam;
            Cpx Lb = Ls[i] + full.beta;
            r[i] = y[i] - full.y(lam, Ls[i]);
            J(i, 0) = 1.0;
            J(i, 1) = 1.0 / Lb;
            J(i, 2) = -full.cp / (Lb * Lb);
            J(i, 3) = lam2 * Ls[i] * Ls[i];
            J(i, 4) = lam2 * Ls[i];
            J(i, 5) = lam2;
            J(i, 6) = lam2 * lam2 * Ls[i] * Ls[i];
            J(i, 7) = lam2 * lam2 * Ls[i];
            J(i, 8) = lam2 * lam2;
        }
        double cond = 0.0;
        Eigen::VectorXcd dx = solve_ls(wrow.asDiagonal() * J, wrow.asDiagonal() * r, &cond);
        ModelEval trial = full;
        double step = 1.0;
        bool improved = false;
        for (int back = 0; back < 8; ++back) {
            trial.c2 = full.c2 + step * dx[0];
            trial.cp = full.cp + step * dx[1];
            trial.beta = full.beta + step * dx[2];
            trial.cl2 = full.cl2 + step * dx[3];
            trial.cl = full.cl + step * dx[4];
            trial.c0 = full.c0 + step * dx[5];
            trial.d2 = full.d2 + step * dx[6];
            trial.d1 = full.d1 + step * dx[7];
            trial.d0 = full.d0 + step * dx[8];
            double rt = rel_rms(samples, Ls, trial, &wrow);
            if (rt < resid_full && pole_distance(trial.beta) >= 1.0) {
                full = trial;
                resid_full = rt;
                cond_f = cond;
                improved = true;
                break;
            }
            step *= 0.5;
        }
        if (!improved || dx.norm() < 1e-13) break;
    }

    // significance of the reciprocal-log term, measured in the data's norm
    Cpx Lmed = Ls[n / 2];
    double t_p = std::abs(full.cp / (Lmed + full.beta));
    double lam_med = std::sqrt(amin * amax);
    double t_bg = lam_med * lam_med *
                  std::abs(full.cl2 * Lmed * Lmed + full.cl * Lmed + full.c0);
    double t_dom = std::max({std::abs(full.c2), t_bg, t_p});
    double y_rms = std::sqrt(y.squaredNorm() / double(n));
    bool significant = resid_full < 0.5 * resid_restricted && t_p > 1e-2 * t_dom &&
                       std::abs(full.beta) < 20.0;

    ExpansionFit fit;
    fit.condition_number = cond_f;
    if (significant) {
        Cpx b = std::exp(full.beta);
        fit.M = 1;
        fit.zero_eigen_amp = full.c2;
        fit.residual = resid_full;
        double p_rms = 0.0;
        for (int i = 0; i < n; ++i) p_rms += std::norm(full.cp / (Ls[i] + full.beta));
        p_rms = std::sqrt(p_rms / double(n));
        fit.singular_ratio = p_rms / (y_rms + 1e-300);
        fit.terms = {{-2.0, 0, {0.0, 0.0}, full.c2},
                     {-2.0, -1, b, full.cp},
                     {0.0, 1, {0.0, 0.0}, full.cl},
                     {0.0, 0, {0.0, 0.0}, full.c0}};
    } else {
        // no significant singular log term; the identifiable singular content
        // is the restricted-fit residual projected on the part of the
        // reference column 1/(L + log(-i)) orthogonal to the regular basis
        Cpx beta0 = std::log(Cpx(0.0, -1.0));
        Eigen::VectorXcd rres(n), q(n);
        for (int i = 0; i < n; ++i) {
            rres[i] = y[i] - restricted.y(samples[i].first, Ls[i]);
            q[i] = 1.0 / (Ls[i] + beta0);
        }
        double cond_q = 0.0;
        Eigen::VectorXcd zq = solve_ls(Ar, q, &cond_q);
        Eigen::VectorXcd q_perp = q - Ar * zq;
        Cpx cp_orth = q_perp.squaredNorm() > 0.0
                          ? Cpx(q_perp.dot(rres)) / q_perp.squaredNorm()
                          : Cpx(0.0);
        double t_p_orth = std::abs(cp_orth) * q_perp.norm() / std::sqrt(double(n));
        fit.M = 0;
        fit.zero_eigen_amp = restricted.c2;
        fit.residual = resid_restricted;
        fit.singular_ratio = t_p_orth / (y_rms + 1e-300);
        fit.terms = {{-2.0, 0, {0.0, 0.0}, restricted.c2},
                     {-2.0, -1, {0.0, -1.0}, cp_orth},
                     {0.0, 1, {0.0, 0.0}, restricted.cl},
                     {0.0, 0, {0.0, 0.0}, restricted.c0}};
    }
    return fit;
}

std::vector<BranchedComplex> lambda_grid(double abs_min, double abs_max, int per_ray,
                                         const std::vector<double>& ray_args) {
    std::vector<BranchedComplex> grid;
    for (double a : ray_args) {
        for (int i = 0; i < per_ray; ++i) {
            double t = per_ray == 1 ? 0.0 : double(i) / (per_ray - 1);
            double mod = std::exp(std::log(abs_min) + t * (std::log(abs_max) - std::log(abs_min)));
            grid.emplace_back(mod * std::cos(a), mod * std::sin(a));
        }
    }
    return grid;
}

PresonanceScan detect_presonances(const models::RadialModel& model,
                                  const RadialSamples<double>& f) {
    auto grid = lambda_grid(1e-4, 1e-1, 24, {M_PI / 2.0, M_PI / 4.0, 3.0 * M_PI / 4.0});
    PresonanceScan scan;
    for (int mode : {+1, -1}) {
        auto vals = sample_lowfreq(model, mode, f, grid);
        std::vector<std::pair<Cpx, Cpx>> samples;
        samples.reserve(grid.size());
        for (std::size_t i = 0; i < grid.size(); ++i)
            samples.emplace_back(grid[i].value(), vals[i]);
        auto fit = fit_expansion(samples);
        if (mode > 0)
            scan.fit_plus = fit;
        else
            scan.fit_minus = fit;
    }
    scan.M = std::min(2, scan.fit_plus.M + scan.fit_minus.M);
    return scan;
}

} // namespace logdecay::lowfreq
