#include "logdecay/acceptance.hpp"

#include <Eigen/Core>
#include <algorithm>
#include <chrono>
#include <cmath>
#include <functional>
#include <sstream>

#include "logdecay/bump.hpp"
#include "logdecay/contour.hpp"
#include "logdecay/errors.hpp"
#include "logdecay/grid.hpp"
#include "logdecay/lowfreq.hpp"
#include "logdecay/models.hpp"
#include "logdecay/parallel.hpp"
#include "logdecay/radial.hpp"
#include "logdecay/specfun.hpp"
#include "logdecay/wave.hpp"

namespace logdecay::acceptance {

namespace {

using models::RadialModel;

struct Check {
    std::ostringstream msg;
    bool ok = true;

    void expect(bool cond, const std::string& what) {
        if (!cond) {
            ok = false;
            msg << (msg.tellp() > 0 ? "; " : "") << what;
        }
    }
    void note(const std::string& what) {
        msg << (msg.tellp() > 0 ? "; " : "") << what;
    }
};

std::string fmt(double v) {
    std::ostringstream os;
    os.precision(4);
    os << v;
    return os.str();
}

RadialSamples<double> gaussian_data(double center, double sigma, double h) {
    double hi = center + sigma * std::sqrt(37.0);
    return sample_on_grid(
        [&](double r) {
            double w = (r - center) / sigma;
            double v = std::exp(-w * w);
            return v < 1e-16 ? 0.0 : v;
        },
        0.0, hi, h);
}

// 1. closed-form resonance conditions across radii
void criterion_resonance(Check& c) {
    for (double R : {0.5, 1.0, 2.0}) {
        auto [well, wst] = models::round_well_presonance(R, 1);
        double j0 = std::fabs(specfun::bessel_j(0, well.a * R));
        double cont = std::fabs(wst.inner_coeff * specfun::bessel_j(1, well.a * R) - 1.0 / R);
        double j1p = specfun::bessel_j(0, well.a * R) -
                     specfun::bessel_j(1, well.a * R) / (well.a * R);
        double deriv = std::fabs(wst.inner_coeff * well.a * j1p + 1.0 / (R * R));
        c.expect(j0 <= 1e-12, "well R=" + fmt(R) + ": |J0(aR)| = " + fmt(j0));
        c.expect(cont <= 1e-10, "well R=" + fmt(R) + ": continuity " + fmt(cont));
        c.expect(deriv <= 1e-10, "well R=" + fmt(R) + ": derivative " + fmt(deriv));

        auto [ring, rst] = models::delta_ring_presonance(R);
        double lhs = -rst.outer_coeff / (R * R) - rst.inner_coeff;
        double rhs = ring.a * rst.radial_profile(R);
        c.expect(std::fabs(lhs - rhs) <= 1e-14 * std::max(1.0, std::fabs(rhs)),
                 "ring R=" + fmt(R) + ": jump " + fmt(std::fabs(lhs - rhs)));
        c.expect(std::fabs(rst.inner_coeff * R - rst.outer_coeff / R) == 0.0,
                 "ring R=" + fmt(R) + ": continuity");

        auto [disc, dstates] = models::robin_disc_presonance(R);
        c.expect(dstates.size() == 2, "disc rho=" + fmt(R) + ": state count");
        for (const auto& st : dstates) {
            double res = std::fabs(models::robin_residual(disc, st));
            c.expect(res <= 1e-12, "disc rho=" + fmt(R) + ": residual " + fmt(res));
        }
    }
}

// 2. time profile asymptotics J(t) log(t)/t -> 1
void criterion_jm_asymptotics(Check& c) {
    std::complex<double> b(0.0, -1.0);
    std::vector<double> qs;
    for (double lt : {6.0, 8.0, 10.0, 12.0}) {
        contour::ContourSpec spec;
        spec.t = std::exp(lt);
        qs.push_back(contour::jm_profile(spec, b) * lt / spec.t);
    }
    c.expect(qs[2] >= 0.8 && qs[2] <= 1.2, "J(e^10) log t/t = " + fmt(qs[2]));
    for (std::size_t i = 0; i + 1 < qs.size(); ++i)
        c.expect(std::fabs(qs[i + 1] - 1.0) < std::fabs(qs[i] - 1.0),
                 "|J log t/t - 1| not decreasing at step " + std::to_string(i));
    c.note("q = {" + fmt(qs[0]) + ", " + fmt(qs[1]) + ", " + fmt(qs[2]) + ", " + fmt(qs[3]) + "}");
}

// 3. eta-independence of every moment in the test matrix
void criterion_path_independence(Check& c) {
    // (t, eta) per regime: the singular integrands run at the hard
    // cancellation point of the examples; entire ones at a computable scale
    for (double nu : {0.0, -2.0}) {
        for (int k : {0, 1, -1}) {
            for (std::complex<double> b : {std::complex<double>(0.0, -1.0),
                                           std::complex<double>(0.0, -2.0)}) {
                contour::ContourSpec spec;
                contour::MomentSpec mom{nu, k, b};
                bool entire = (k == 0 && nu >= 0.0);
                // eta per regime: nu = -2 runs at the hard cancellation point
                // of the worked example; the small log-only moments keep the
                // apex mass within reach of their tighter absolute target
                spec.t = entire ? 100.0 : 1000.0;
                if (entire)
                    spec.eta = 0.1;
                else if (nu <= -2.0)
                    spec.eta = 0.05;
                else
                    spec.eta = 0.02;
                auto m1 = contour::moment(spec, mom);
                spec.eta *= 0.5;
                auto m2 = contour::moment(spec, mom);
                // an entire integrand has no branch point: its moment is
                // endpoint-suppressed to ~e^{-t gamma} ~ 1e-14 and is
                // compared at an absolute floor, not against itself
                double floor = entire ? 1e-6 : 0.0;
                double rel = std::abs(m1.value - m2.value) /
                             std::max(std::abs(m1.value), floor);
                std::ostringstream name;
                name << "nu=" << nu << " k=" << k << " b=" << b.imag() << "i";
                c.expect(rel <= 1e-8, name.str() + ": rel diff " + fmt(rel));
            }
        }
    }
}

// 4. time-domain vs Stone's formula vs dense diagonalization
void criterion_oracle_equivalence(Check& c, int workers) {
    double j01 = specfun::bessel_zero({0, 1});
    struct Case {
        std::string name;
        RadialModel model;
    };
    std::vector<Case> cases{
        {"free", RadialModel::free()},
        {"well@res", RadialModel::round_well(j01, 1.0)},
        {"well@0.5res", RadialModel::round_well(0.5 * j01, 1.0)},
        {"ring@res", RadialModel::delta_ring(-2.0, 1.0)},
    };
    struct Job {
        Case cs;
        int mode;
    };
    std::vector<Job> jobs;
    for (const auto& cs : cases)
        for (int mode : {0, 1}) jobs.push_back({cs, mode});

    std::vector<std::string> failures(jobs.size());
    parallel_for((int)jobs.size(), workers, [&](int ji) {
        const auto& [cs, mode] = jobs[ji];
        std::ostringstream fail;
        try {
            auto f = gaussian_data(3.5, 1.5, 0.02);
            wave::EvolveConfig cfg;
            cfg.h = 0.02;
            cfg.cfl = 0.9;
            auto fd = wave::evolve_fd(cs.model, mode, f, 200.0, {2.0, 5.0}, cfg);
            auto sp = wave::evolve_spectral(cs.model, mode, f, fd.times, fd.observers);
            double scale = fd.values.cwiseAbs().maxCoeff();
            double err = (fd.values - sp.values).cwiseAbs().maxCoeff() / scale;
            if (!(err <= 1e-3))
                fail << cs.name << " m=" << mode << ": fd vs spectral " << fmt(err);

            // small-instance brute force against the same discrete operator
            auto fs = gaussian_data(3.5, 1.5, 0.05);
            wave::EvolveConfig scfg;
            scfg.h = 0.05;
            scfg.L = 40.0;
            scfg.cfl = 0.1;
            scfg.allow_reflections = true;
            auto fds = wave::evolve_fd(cs.model, mode, fs, 50.0, {2.0, 5.0}, scfg);
            auto dn = wave::evolve_dense(cs.model, mode, fs, fds.times, fds.observers,
                                         40.0, 0.05);
            double sscale = fds.values.cwiseAbs().maxCoeff();
            double serr = (fds.values - dn.values).cwiseAbs().maxCoeff() / sscale;
            if (!(serr <= 1e-4))
                fail << (fail.tellp() > 0 ? "; " : "") << cs.name << " m=" << mode
                     << ": fd vs dense " << fmt(serr);
        } catch (const std::exception& e) {
            fail << cs.name << " m=" << mode << ": " << e.what();
        }
        failures[ji] = fail.str();
    });
    for (const auto& f : failures) c.expect(f.empty(), f);
}

// 5. threshold growth alpha t/log t and its collapse under projection
void criterion_threshold_growth(Check& c) {
    double j01 = specfun::bessel_zero({0, 1});
    auto model = RadialModel::round_well(j01, 1.0);
    const double h = 0.05, T = 4000.0;

    auto f = gaussian_data(3.0, 1.2, h);
    auto g = gaussian_data(5.0, 1.0, h);
    double fu = wave::pair_with_state(model, f);
    double gu = wave::pair_with_state(model, g);
    // project out the resonant pairing, then restore the L2 norm
    RadialSamples<double> fperp;
    {
        int n = std::max(f.grid.n, g.grid.n);
        fperp.grid = {0.0, h, n};
        fperp.values.setZero(n);
        fperp.values.head(f.grid.n) = f.values;
        fperp.values.head(g.grid.n) -= (fu / gu) * g.values;
        double nf = f.values.norm(), np = fperp.values.norm();
        fperp.values *= nf / np;
    }

    wave::EvolveConfig cfg;
    cfg.h = h;
    auto run_alpha = [&](const RadialSamples<double>& data, std::vector<double>* alphas) {
        auto field = wave::evolve_fd(model, 1, data, T, {2.0}, cfg);
        for (double t0 : {500.0, 1000.0, 2000.0}) {
            std::vector<double> tv, uv;
            for (Eigen::Index i = 0; i < field.times.size(); ++i)
                if (field.times[i] >= t0 && field.times[i] <= 2.0 * t0) {
                    tv.push_back(field.times[i]);
                    uv.push_back(field.values(i, 0));
                }
            Eigen::Map<Eigen::VectorXd> tt(tv.data(), tv.size()), uu(uv.data(), uv.size());
            alphas->push_back(wave::fit_decay(tt, uu, wave::DecayLaw::TOverLog).alpha);
        }
    };

    std::vector<double> alphas, alphas_perp;
    run_alpha(f, &alphas);
    run_alpha(fperp, &alphas_perp);

    double amax = *std::max_element(alphas.begin(), alphas.end());
    double amin = *std::min_element(alphas.begin(), alphas.end());
    c.expect(amax / amin - 1.0 <= 0.10,
             "alpha windows spread " + fmt(amax / amin - 1.0) + " > 10%");
    double ap = 0.0;
    for (double a : alphas_perp) ap = std::max(ap, std::fabs(a));
    c.expect(std::fabs(alphas[2]) >= 20.0 * ap,
             "projection collapse only " + fmt(std::fabs(alphas[2]) / (ap + 1e-300)) + "x");
    c.note("alpha = {" + fmt(alphas[0]) + ", " + fmt(alphas[1]) + ", " + fmt(alphas[2]) +
           "}, projected max " + fmt(ap));
}

// 6. sinh law of the m = 0 bound state
void criterion_bound_state(Check& c) {
    double j01 = specfun::bessel_zero({0, 1});
    auto model = RadialModel::round_well(j01, 1.0);
    auto states = radial::find_bound_states(model, 0);
    c.expect(states.size() == 1, "bound state count " + std::to_string(states.size()));
    if (states.empty()) return;
    const auto& bs = states[0];

    const double h = 0.01;
    auto f = gaussian_data(1.2, 0.5, h);
    wave::EvolveConfig cfg;
    cfg.h = h;
    auto field = wave::evolve_fd(model, 0, f, 40.0, {1.0}, cfg);

    double w = bs.project(f);
    double y = std::sqrt(-bs.energy);
    double worst = 0.0;
    for (Eigen::Index i = 0; i < field.times.size(); ++i) {
        double t = field.times[i];
        if (t < 10.0 || t > 40.0) continue;
        double ud = std::sinh(y * t) / y * w * bs.profile(field.observers[0]);
        worst = std::max(worst, std::fabs(field.values(i, 0) - ud) / std::fabs(ud));
    }
    c.expect(worst <= 1e-2, "sinh mismatch " + fmt(worst));
    c.note("E = " + fmt(bs.energy) + ", rel mismatch " + fmt(worst));
}

// 7. low-frequency expansion fit on and off resonance
void criterion_lowfreq_fit(Check& c) {
    double j01 = specfun::bessel_zero({0, 1});
    auto f = sample_on_grid([](double r) { return bump(r, 0.5, 2.5); }, 0.0, 3.0, 0.01);

    auto resonant = RadialModel::round_well(j01, 1.0);
    auto scan = lowfreq::detect_presonances(resonant, f);
    c.expect(scan.fit_plus.M == 1 && scan.fit_minus.M == 1,
             "resonant M per mode = (" + std::to_string(scan.fit_plus.M) + "," +
                 std::to_string(scan.fit_minus.M) + ")");
    for (const auto* fit : {&scan.fit_plus, &scan.fit_minus}) {
        double arg = std::arg(fit->branch_b());
        c.expect(std::fabs(arg + M_PI / 2.0) <= 0.1, "arg b = " + fmt(arg));
    }
    c.note("b = " + fmt(scan.fit_plus.branch_b().real()) + " " +
           fmt(scan.fit_plus.branch_b().imag()) + "i");

    for (double frac : {0.5, 0.8}) {
        auto off = RadialModel::round_well(frac * j01, 1.0);
        auto oscan = lowfreq::detect_presonances(off, f);
        c.expect(oscan.M == 0, "off-resonance " + fmt(frac) + ": M = " +
                                   std::to_string(oscan.M));
        c.expect(oscan.fit_plus.singular_ratio <= 1e-3,
                 "off-resonance " + fmt(frac) +
                     ": singular ratio " + fmt(oscan.fit_plus.singular_ratio));
    }
}

// 8. variable wave speed construction: second-order consistency
void criterion_vws(Check& c) {
    auto chi = [](double x1, double x2) { return models::vws_default_chi(x1, x2); };
    auto c_const = [](double, double) { return 1.0; };
    auto c_var = [](double x1, double x2) {
        return 1.0 + 0.25 * std::cos(x1) * std::exp(-(x1 * x1 + x2 * x2) / 4.0);
    };
    for (int variable : {0, 1}) {
        auto cf = variable ? std::function<double(double, double)>(c_var)
                           : std::function<double(double, double)>(c_const);
        double r1 = models::vws_residual(models::vws_construct(cf, chi, 1.0, 0.04, 3.0));
        double r2 = models::vws_residual(models::vws_construct(cf, chi, 1.0, 0.02, 3.0));
        double ratio = r1 / r2;
        c.expect(ratio >= 3.5 && ratio <= 4.5,
                 std::string(variable ? "variable" : "constant") + " c: ratio " + fmt(ratio));
        c.note(std::string(variable ? "var" : "const") + " ratio " + fmt(ratio));
    }
}

// 9. logarithmic remainder envelope on decaying configurations
void criterion_remainder_envelope(Check& c, int workers) {
    double j01 = specfun::bessel_zero({0, 1});
    struct Job {
        std::string name;
        RadialModel model;
        int mode;
    };
    std::vector<Job> jobs{{"free m=0", RadialModel::free(), 0},
                          {"free m=1", RadialModel::free(), 1},
                          {"well@0.5res m=1", RadialModel::round_well(0.5 * j01, 1.0), 1}};
    std::vector<std::string> failures(jobs.size());
    parallel_for((int)jobs.size(), workers, [&](int ji) {
        std::ostringstream fail;
        try {
            auto f = gaussian_data(3.0, 1.0, 0.05);
            wave::EvolveConfig cfg;
            cfg.h = 0.05;
            auto field = wave::evolve_fd(jobs[ji].model, jobs[ji].mode, f, 820.0, {2.5}, cfg);
            std::vector<double> tv, uv;
            for (Eigen::Index i = 0; i < field.times.size(); ++i)
                if (field.times[i] >= 50.0 && field.times[i] <= 800.0) {
                    tv.push_back(field.times[i]);
                    uv.push_back(field.values(i, 0));
                }
            Eigen::Map<Eigen::VectorXd> tt(tv.data(), tv.size()), uu(uv.data(), uv.size());
            for (int M : {1, 2}) {
                auto fit = wave::fit_decay(tt, uu, wave::DecayLaw::LogPower, M);
                if (!fit.passed)
                    fail << (fail.tellp() > 0 ? "; " : "") << jobs[ji].name
                         << ": log_power(" << M << ") trend fails";
            }
        } catch (const std::exception& e) {
            fail << jobs[ji].name << ": " << e.what();
        }
        failures[ji] = fail.str();
    });
    for (const auto& f : failures) c.expect(f.empty(), f);
}

} // namespace

std::vector<CriterionResult> run_all(const Options& opt, std::ostream& log) {
    int workers = resolve_workers(opt.workers);
    struct Entry {
        int id;
        const char* name;
        std::function<void(Check&)> fn;
    };
    std::vector<Entry> entries{
        {1, "resonance conditions", [](Check& c) { criterion_resonance(c); }},
        {2, "time profile asymptotics", [](Check& c) { criterion_jm_asymptotics(c); }},
        {3, "contour path independence", [](Check& c) { criterion_path_independence(c); }},
        {4, "oracle equivalence",
         [workers](Check& c) { criterion_oracle_equivalence(c, workers); }},
        {5, "threshold growth", [](Check& c) { criterion_threshold_growth(c); }},
        {6, "bound-state sinh law", [](Check& c) { criterion_bound_state(c); }},
        {7, "low-frequency fit", [](Check& c) { criterion_lowfreq_fit(c); }},
        {8, "variable wave speed consistency", [](Check& c) { criterion_vws(c); }},
        {9, "remainder envelope",
         [workers](Check& c) { criterion_remainder_envelope(c, workers); }},
    };

    std::vector<CriterionResult> results;
    for (const auto& e : entries) {
        if (!opt.only.empty() &&
            std::find(opt.only.begin(), opt.only.end(), e.id) == opt.only.end())
            continue;
        Check check;
        auto start = std::chrono::steady_clock::now();
        try {
            e.fn(check);
        } catch (const std::exception& ex) {
            check.expect(false, std::string("exception: ") + ex.what());
        }
        double secs = std::chrono::duration<double>(
                          std::chrono::steady_clock::now() - start).count();
        CriterionResult r{e.id, e.name, check.ok, check.msg.str(), secs};
        log << (r.passed ? "PASS" : "FAIL") << " criterion " << r.id << " (" << r.name
            << ")";
        if (!r.details.empty()) log << ": " << r.details;
        log << " [" << fmt(secs) << " s]" << std::endl;
        results.push_back(std::move(r));
    }
    return results;
}

} // namespace logdecay::acceptance
