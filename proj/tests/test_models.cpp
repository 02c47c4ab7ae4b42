#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "logdecay/bump.hpp"
#include "logdecay/errors.hpp"
#include "logdecay/models.hpp"
#include "logdecay/quadrature.hpp"
#include "logdecay/radial.hpp"
#include "logdecay/specfun.hpp"
#include "oracles.hpp"

using namespace logdecay;
using models::RadialModel;

TEST_CASE("round well resonance parameters") {
    auto [model, st] = models::round_well_presonance(1.0, 1);
    CHECK(model.a == doctest::Approx(2.404825557695773).epsilon(1e-14));
    CHECK(st.inner_coeff == doctest::Approx(1.0 / 0.5191474972894669).epsilon(1e-13));
    CHECK(st.decay_class == 1);

    auto [m2, st2] = models::round_well_presonance(2.0, 1);
    CHECK(m2.a == doctest::Approx(1.2024127788478865).epsilon(1e-14));

    // continuity from both sides at R
    double inner = st.inner_coeff * specfun::bessel_j(1, model.a * model.R);
    CHECK(inner == doctest::Approx(1.0 / model.R).epsilon(1e-13));
    CHECK(st.radial_profile(model.R) == doctest::Approx(1.0 / model.R));
    // derivative continuity
    CHECK(st.radial_profile_deriv(model.R * (1.0 - 1e-9)) ==
          doctest::Approx(-1.0 / (model.R * model.R)).epsilon(1e-6));
}

TEST_CASE("delta ring resonance parameters") {
    auto [model, st] = models::delta_ring_presonance(1.0);
    CHECK(model.a == -2.0);
    // f'(1+) - f'(1-) = -1 - 1 = -2 = a f(1)
    double jump = st.radial_profile_deriv(1.0 + 1e-12) - st.radial_profile_deriv(1.0 - 1e-12);
    CHECK(jump == doctest::Approx(model.a * st.radial_profile(1.0)).epsilon(1e-12));

    auto [m2, st2] = models::delta_ring_presonance(2.0);
    CHECK(m2.a == -1.0);
    // continuity A R = B / R with A = 1, B = R^2
    CHECK(st2.inner_coeff * 2.0 == doctest::Approx(st2.outer_coeff / 2.0));
}

TEST_CASE("Robin disc resonance") {
    auto [model, states] = models::robin_disc_presonance(1.0);
    CHECK(model.sigma == 1.0);
    CHECK(states.size() == 2);
    CHECK(states[0].mode == -states[1].mode);
    for (const auto& st : states) {
        CHECK(st.radial_profile(2.0) == doctest::Approx(0.5));
        CHECK(std::fabs(models::robin_residual(model, st)) <= 1e-12);
    }
    auto [m2, s2] = models::robin_disc_presonance(0.5);
    CHECK(m2.sigma == 2.0);
}

TEST_CASE("p-resonant states are L^q exactly for q > 2") {
    auto [model, st] = models::round_well_presonance(1.0, 1);
    // tail integrals int_1^X |f|^q r dr via the log substitution r = e^s
    auto tail = [&](double q, double X) {
        auto f = [&](double s) {
            double r = std::exp(s);
            double v = std::fabs(st.radial_profile(r));
            return std::pow(v, q) * r * r;  // r dr = e^{2s} ds
        };
        return quad::adaptive_gk<double>(f, 0.0, std::log(X), 1e-12, 1e-10).value;
    };
    // q = 3: the truncated integrals converge
    double i3a = tail(3.0, 1e2), i3b = tail(3.0, 1e6);
    CHECK(std::fabs(i3b - i3a) <= 1e-3 * std::fabs(i3b));
    // q = 2: log growth of the cutoff within 5%
    double i2a = tail(2.0, 1e2), i2b = tail(2.0, 1e4), i2c = tail(2.0, 1e6);
    CHECK((i2b - i2a) == doctest::Approx(std::log(1e4 / 1e2)).epsilon(0.05));
    CHECK((i2c - i2b) == doctest::Approx(std::log(1e6 / 1e4)).epsilon(0.05));
}

TEST_CASE("no false resonance off the critical amplitude") {
    double j01 = specfun::bessel_zero({0, 1});
    auto model = RadialModel::round_well(0.9 * j01, 1.0);
    CHECK(std::fabs(radial::threshold_determinant(model, 1)) >= 1e-3);
}

TEST_CASE("model config round trip") {
    auto m = RadialModel::delta_ring(-2.0, 1.5);
    auto kv = m.to_config();
    auto back = RadialModel::from_config(kv);
    CHECK(back.kind == m.kind);
    CHECK(back.a == m.a);
    CHECK(back.R == m.R);
    CHECK_THROWS_AS(RadialModel::from_config({{"variant", "cube"}}), ConstructionError);
    CHECK_THROWS_AS(RadialModel::round_well(-1.0, 1.0), ConstructionError);
}

TEST_CASE("vws construction") {
    auto chi = [](double x1, double x2) { return models::vws_default_chi(x1, x2); };
    auto cfun = [](double, double) { return 1.0; };
    auto g = models::vws_construct(cfun, chi, 1.0, 0.05, 3.0);

    const int i0 = (g.n - 1) / 2;
    // u_p vanishes exactly on the symmetry line
    for (int j = 0; j < g.n; ++j) CHECK(g.u_p(i0, j) == 0.0);

    // chi == 1 region: u_p = a0 x1 and V = 0
    int inear = i0 + (int)std::lround(0.5 / g.h);
    CHECK(g.chi(inear, i0) == 1.0);
    CHECK(g.u_p(inear, i0) == doctest::Approx(0.5).epsilon(1e-14));
    CHECK(g.V(inear, i0) == 0.0);

    // chi == 0 region: x1/|x|^2 is harmonic, V = 0
    int ifar = i0 + (int)std::lround(2.5 / g.h);
    CHECK(g.chi(ifar, i0) == 0.0);
    CHECK(g.V(ifar, i0) == 0.0);

    // V supported inside supp(grad chi) plus a stencil width
    for (int i = 1; i + 1 < g.n; ++i)
        for (int j = 1; j + 1 < g.n; ++j)
            if (g.V(i, j) != 0.0) {
                double a1 = std::fabs(g.x(i)), a2 = std::fabs(g.x(j));
                CHECK(std::max(a1, a2) >= 1.0 - g.h);
                CHECK(std::max(a1, a2) <= 2.0 + 2.0 * g.h);
            }

    // second-order consistency of the construction
    double r1 = models::vws_residual(models::vws_construct(cfun, chi, 1.0, 0.04, 3.0));
    double r2 = models::vws_residual(models::vws_construct(cfun, chi, 1.0, 0.02, 3.0));
    CHECK(r1 / r2 >= 3.5);
    CHECK(r1 / r2 <= 4.5);
}

TEST_CASE("vws rejects a cutoff with nonzero d(chi)/dx1 on the line") {
    auto bad_chi = [](double x1, double x2) {
        // plateau shifted so the x1-derivative is nonzero at x1 = 0
        return plateau(std::fabs(x1 - 0.65), 0.25, 1.6) * plateau(std::fabs(x2), 1.0, 2.0);
    };
    auto cfun = [](double, double) { return 1.0; };
    CHECK_THROWS_AS(models::vws_construct(cfun, bad_chi, 1.0, 0.05, 3.0), ConstructionError);
}
