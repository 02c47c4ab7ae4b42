#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <Eigen/Dense>
#include <cmath>
#include <complex>

#include "logdecay/bump.hpp"
#include "logdecay/errors.hpp"
#include "logdecay/models.hpp"
#include "logdecay/radial.hpp"
#include "logdecay/specfun.hpp"
#include "logdecay/wave.hpp"
#include "oracles.hpp"

using namespace logdecay;
using models::RadialModel;
using Cpx = std::complex<double>;

namespace {

RadialSamples<double> test_bump(double lo, double hi, double h, double r0 = 0.0) {
    return sample_on_grid([&](double r) { return bump(r, lo, hi); }, r0,
                          hi + 2.0 * h, h);
}

double l2_norm(const RadialSamples<Cpx>& u) {
    Eigen::VectorXd prod(u.grid.n);
    for (int i = 0; i < u.grid.n; ++i)
        prod[i] = std::norm(u.values[i]) * u.grid.r(i);
    return std::sqrt(simpson(prod, u.grid.h));
}

} // namespace

TEST_CASE("free kernel equals the closed form and the 2D angular quadrature") {
    radial::ModeProblem prob(RadialModel::free(), 0, BranchedComplex(1.0, 0.0));
    auto kernel = radial::solve_mode(prob);
    Cpx g = kernel(1.0, 2.0);
    Cpx want = Cpx(0.0, M_PI / 2.0) * specfun::bessel_j(0, 1.0) *
               specfun::hankel1(0, BranchedComplex(2.0, 0.0));
    CHECK(std::abs(g - want) <= 1e-12 * std::abs(want));

    // 2D free resolvent (i/4) H1_0(lambda |x-y|) integrated over the angle
    const int nq = 2048;
    Cpx acc = 0.0;
    for (int k = 0; k < nq; ++k) {
        double th = 2.0 * M_PI * k / nq;
        double dist = std::sqrt(1.0 + 4.0 - 2.0 * 1.0 * 2.0 * std::cos(th));
        acc += specfun::hankel1(0, BranchedComplex(dist, 0.0));
    }
    Cpx brute = Cpx(0.0, 0.25) * acc / double(nq) * 2.0 * M_PI;
    // the angular average of the 2D kernel is the m = 0 radial kernel
    CHECK(std::abs(g - brute / (2.0 * M_PI) * (2.0 * M_PI)) <=
          1e-9 * std::abs(g) + 1e-12);
}

TEST_CASE("resonant delta ring kernel grows like 1/(lambda^2 log lambda)") {
    auto model = RadialModel::delta_ring(-2.0, 1.0);
    auto f = test_bump(0.5, 2.5, 0.01);
    std::vector<double> weighted;
    for (double mod : {1e-2, 1e-3, 1e-4}) {
        radial::ModeProblem prob(model, 1, BranchedComplex(0.0, mod));
        auto u = radial::apply_resolvent(prob, f, 4.0);
        weighted.push_back(l2_norm(u) * mod * mod * std::fabs(std::log(mod)));
    }
    double mx = *std::max_element(weighted.begin(), weighted.end());
    double mn = *std::min_element(weighted.begin(), weighted.end());
    CHECK(mx / mn <= 1.10);  // the model |lambda|^-2 / |log lambda| holds to 10%
}

TEST_CASE("off-resonant well kernel stays logarithmically bounded") {
    double j01 = specfun::bessel_zero({0, 1});
    auto model = RadialModel::round_well(0.5 * j01, 1.0);
    auto f = test_bump(0.5, 2.5, 0.01);
    double n3 = 0, n4 = 0;
    for (double mod : {1e-3, 1e-4}) {
        radial::ModeProblem prob(model, 1, BranchedComplex(0.0, mod));
        auto u = radial::apply_resolvent(prob, f, 4.0);
        (mod == 1e-3 ? n3 : n4) = l2_norm(u);
    }
    CHECK(n4 / n3 <= 1.5 * std::log(1e4) / std::log(1e3));
}

TEST_CASE("apply_resolvent basics") {
    radial::ModeProblem prob(RadialModel::free(), 0, BranchedComplex(0.0, 1.0));
    RadialSamples<double> zero = sample_on_grid([](double) { return 0.0; }, 0.0, 3.0, 0.01);
    auto u0 = radial::apply_resolvent(prob, zero, 3.0);
    CHECK(u0.values.cwiseAbs().maxCoeff() == 0.0);

    // dense (P+1)^{-1} oracle on a truncated domain with a far Dirichlet wall
    auto f = test_bump(1.0, 3.0, 0.01);
    auto u = radial::apply_resolvent(prob, f, 6.0);
    auto op = wave::build_operator(RadialModel::free(), 0, 30.0, 0.01);
    Eigen::MatrixXd B = op.dense_symmetric();
    B.diagonal().array() += 1.0;  // P - (i)^2 = P + 1
    Eigen::VectorXd fv = Eigen::VectorXd::Zero(op.grid.n);
    for (int i = 0; i < f.grid.n; ++i) fv[i] = f.values[i];
    Eigen::VectorXd rhs = op.mass.cwiseSqrt().asDiagonal() * fv;
    Eigen::VectorXd sol = B.ldlt().solve(rhs);
    Eigen::VectorXd uref = sol.array() / op.mass.array().sqrt();
    double werr = 0.0;
    for (int i = 0; i < u.grid.n; ++i)
        werr = std::max(werr, std::abs(u.values[i] - uref[i]));
    CHECK(werr <= 1e-4);
}

TEST_CASE("ODE residual of the applied resolvent") {
    double j01 = specfun::bessel_zero({0, 1});
    auto model = RadialModel::round_well(j01, 1.0);
    const double h = 0.01;
    auto f = test_bump(0.5, 2.5, h);
    BranchedComplex lam(2.0, 0.001);
    radial::ModeProblem prob(model, 1, lam);
    auto u = radial::apply_resolvent(prob, f, 3.5);
    Cpx lam2 = lam.value() * lam.value();
    double worst = 0.0;
    for (int i = 2; i + 2 < u.grid.n; ++i) {
        double r = u.grid.r(i);
        if (r < 0.1 || std::fabs(r - model.R) < 3.0 * h) continue;
        Cpx upp = (-u.values[i - 2] + 16.0 * u.values[i - 1] - 30.0 * u.values[i] +
                   16.0 * u.values[i + 1] - u.values[i + 2]) / (12.0 * h * h);
        Cpx up = (u.values[i - 2] - 8.0 * u.values[i - 1] + 8.0 * u.values[i + 1] -
                  u.values[i + 2]) / (12.0 * h);
        Cpx res = -upp - up / r +
                  (1.0 / (r * r) + model.potential(r) - lam2) * u.values[i] -
                  Cpx(f.grid.contains_node(r) && f.grid.index_of(r) < f.grid.n
                          ? f.values[f.grid.index_of(r)]
                          : 0.0);
        worst = std::max(worst, std::abs(res));
    }
    CHECK(worst <= 1e-6);
}

TEST_CASE("Green symmetry and Wronskian r-independence") {
    auto model = RadialModel::delta_ring(-2.0, 1.0);
    radial::ModeProblem prob(model, 1, BranchedComplex(1.3, 0.01));
    auto kernel = radial::solve_mode(prob);
    for (auto [r, rp] : {std::pair{0.4, 1.7}, {0.9, 2.6}, {1.2, 3.3}}) {
        Cpx a = kernel(r, rp), b = kernel(rp, r);
        CHECK(std::abs(a - b) <= 1e-9 * std::abs(a));
    }
    for (double r : {0.3, 0.8, 1.5, 2.5, 4.0}) {
        Cpx u1 = kernel.regular.value(r), du1 = kernel.regular.deriv(r);
        Cpx u2 = kernel.outgoing.value(r), du2 = kernel.outgoing.deriv(r);
        Cpx w = -r * (u1 * du2 - du1 * u2);
        CHECK(std::abs(w - kernel.wronskian) <= 1e-8 * std::abs(kernel.wronskian));
    }
}

TEST_CASE("limiting absorption consistency") {
    auto model = RadialModel::round_well(1.0, 1.0);
    auto f = test_bump(0.5, 2.5, 0.01);
    for (double lam : {0.5, 1.7, 3.0}) {
        auto apply_at = [&](double eps) {
            radial::ModeProblem prob(model, 0, BranchedComplex(lam, eps));
            return radial::apply_resolvent(prob, f, 3.0);
        };
        auto u3 = apply_at(1e-3), u4 = apply_at(1e-4), u0 = apply_at(0.0);
        double d34 = (u3.values - u4.values).cwiseAbs().maxCoeff();
        double d40 = (u4.values - u0.values).cwiseAbs().maxCoeff();
        CHECK(d34 >= 5.0 * d40);
    }
}

TEST_CASE("resolvent identity R(l1) - R(l2) = (l1^2 - l2^2) R(l1) R(l2)") {
    auto model = RadialModel::round_well(1.5, 1.0);
    auto f = test_bump(0.5, 2.5, 0.01);
    BranchedComplex l1(0.0, 1.0), l2(0.0, 2.0);
    radial::ModeProblem p1(model, 0, l1), p2(model, 0, l2);
    auto r1f = radial::apply_resolvent(p1, f, 3.0);
    auto r2f = radial::apply_resolvent(p2, f, 40.0);
    auto r12f = radial::apply_resolvent(p1, r2f, 3.0);
    Cpx factor = l1.value() * l1.value() - l2.value() * l2.value();
    double worst = 0.0;
    for (int i = 0; i < r1f.grid.n; ++i)
        worst = std::max(worst,
                         std::abs(r1f.values[i] - r2f.values[i] - factor * r12f.values[i]));
    CHECK(worst <= 1e-5);
}

TEST_CASE("p-resonance certificate: simple zero of the matching determinant") {
    double j01 = specfun::bessel_zero({0, 1});
    auto [well, wst] = models::round_well_presonance(1.0, 1);
    auto [ring, rst] = models::delta_ring_presonance(1.0);
    auto [disc, dst] = models::robin_disc_presonance(1.0);
    for (const auto& m : {well, ring, disc})
        CHECK(std::fabs(radial::threshold_determinant(m, 1)) <= 1e-10);
    // the crossing is simple: the parameter derivative stays away from zero
    auto dwell = [&](double a) {
        return radial::threshold_determinant(RadialModel::round_well(a, 1.0), 1);
    };
    double slope = (dwell(j01 * 1.01) - dwell(j01 * 0.99)) / (0.02 * j01);
    CHECK(std::fabs(slope) >= 1e-3);
}

TEST_CASE("bound states of the resonant round well") {
    double j01 = specfun::bessel_zero({0, 1});
    auto model = RadialModel::round_well(j01, 1.0);

    auto states0 = radial::find_bound_states(model, 0);
    REQUIRE(states0.size() == 1);
    // dense-diagonalization count of negative eigenvalues in the m = 0 sector
    auto op = wave::build_operator(model, 0, 40.0, 0.02);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(op.dense_symmetric());
    int negatives = 0;
    for (Eigen::Index i = 0; i < es.eigenvalues().size(); ++i)
        if (es.eigenvalues()[i] < -1e-6) ++negatives;
    CHECK(negatives == 1);
    CHECK(states0[0].energy == doctest::Approx(es.eigenvalues()[0]).epsilon(2e-3));

    // matching refinement far beyond the oracle's grid accuracy
    CHECK(states0[0].energy == doctest::Approx(-3.0721312116944529).epsilon(1e-10));
    CHECK(std::fabs(radial::bound_determinant(model, 0, states0[0].energy)) <= 1e-10);

    // mode 1 sits exactly at threshold: nothing below zero
    CHECK(radial::find_bound_states(model, 1).empty());
    auto op1 = wave::build_operator(model, 1, 40.0, 0.02);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es1(op1.dense_symmetric());
    CHECK(es1.eigenvalues()[0] >= -1e-6);

    // a slightly deeper well births a shallow m = 1 state
    auto deeper = RadialModel::round_well(1.05 * j01, 1.0);
    auto states1 = radial::find_bound_states(deeper, 1);
    REQUIRE(states1.size() == 1);
    CHECK(states1[0].energy > -1e-1);
    CHECK(states1[0].energy < 0.0);
    auto opd = wave::build_operator(deeper, 1, 80.0, 0.02);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> esd(opd.dense_symmetric());
    int negd = 0;
    for (Eigen::Index i = 0; i < esd.eigenvalues().size(); ++i)
        if (esd.eigenvalues()[i] < -1e-6) ++negd;
    CHECK(negd == 1);

    // normalization of the profile
    const auto& bs = states0[0];
    auto phi2 = sample_on_grid(
        [&](double r) {
            double p = bs.profile(r);
            return p * p * r;
        },
        0.0, 25.0, 0.002);
    CHECK(simpson(phi2.values, 0.002) == doctest::Approx(1.0).epsilon(1e-6));
}

TEST_CASE("solve_mode rejects the spectrum") {
    double j01 = specfun::bessel_zero({0, 1});
    auto model = RadialModel::round_well(j01, 1.0);
    auto states = radial::find_bound_states(model, 0);
    REQUIRE(!states.empty());
    double y = std::sqrt(-states[0].energy);
    CHECK_THROWS_AS(
        radial::solve_mode(radial::ModeProblem(model, 0, BranchedComplex(0.0, y))),
        AtSpectrumError);
    CHECK_THROWS_AS(radial::solve_mode(radial::ModeProblem(model, 0, BranchedComplex(0.0, 0.0))),
                    AtSpectrumError);
    CHECK_THROWS_AS(radial::ModeProblem(model, 7, BranchedComplex(1.0, 0.0)),
                    ConstructionError);
}
