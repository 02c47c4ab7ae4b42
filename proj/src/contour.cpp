#include "logdecay/contour.hpp"

#include <quadmath.h>

#include <algorithm>
#include <vector>

#include "logdecay/errors.hpp"
#include "logdecay/quadrature.hpp"

namespace logdecay::quad {
template <>
__float128 parse_real<__float128>(const char* s) {
    return strtoflt128(s, nullptr);
}
} // namespace logdecay::quad

namespace logdecay::contour {

namespace {

// ---- scalar traits ----------------------------------------------------------

template <class R>
struct Ops;

template <>
struct Ops<double> {
    static double exp(double x) { return std::exp(x); }
    static double log(double x) { return std::log(x); }
    static double sin(double x) { return std::sin(x); }
    static double cos(double x) { return std::cos(x); }
    static double atan2(double y, double x) { return std::atan2(y, x); }
    static double hypot(double x, double y) { return std::hypot(x, y); }
    static constexpr double pi() { return M_PI; }
};

template <>
struct Ops<__float128> {
    static __float128 exp(__float128 x) { return expq(x); }
    static __float128 log(__float128 x) { return logq(x); }
    static __float128 sin(__float128 x) { return sinq(x); }
    static __float128 cos(__float128 x) { return cosq(x); }
    static __float128 atan2(__float128 y, __float128 x) { return atan2q(y, x); }
    static __float128 hypot(__float128 x, __float128 y) { return hypotq(x, y); }
    static __float128 pi() { return M_PIq; }
};

template <class R>
struct Cx {
    R re{}, im{};
    Cx() = default;
    Cx(R r, R i) : re(r), im(i) {}
    explicit Cx(R r) : re(r), im(R(0)) {}

    Cx operator+(const Cx& o) const { return {re + o.re, im + o.im}; }
    Cx operator-(const Cx& o) const { return {re - o.re, im - o.im}; }
    Cx operator*(const Cx& o) const {
        return {re * o.re - im * o.im, re * o.im + im * o.re};
    }
    Cx operator*(R s) const { return {re * s, im * s}; }
    Cx operator/(const Cx& o) const {
        R d = o.re * o.re + o.im * o.im;
        return {(re * o.re + im * o.im) / d, (im * o.re - re * o.im) / d};
    }
};

template <class R>
Cx<R> cis(R phase) {
    return {Ops<R>::cos(phase), Ops<R>::sin(phase)};
}

template <class R>
R cx_abs(const Cx<R>& z) {
    return Ops<R>::hypot(z.re, z.im);
}

// found by ADL from the generic integrator
template <class R>
R quad_abs(const Cx<R>& v) {
    return cx_abs(v);
}

/// Branch argument in (-pi/2, 3pi/2).
template <class R>
R branch_arg(const Cx<R>& z) {
    R a = Ops<R>::atan2(z.im, z.re);
    if (a <= -Ops<R>::pi() / R(2)) a += R(2) * Ops<R>::pi();
    return a;
}

/// e^{-i t lambda} lambda^nu log^k(b lambda) with the (-pi/2, 3pi/2) branch.
template <class R>
struct Integrand {
    R t;
    double nu;
    int k;
    R log_abs_b;
    R arg_b;

    Cx<R> operator()(const Cx<R>& lam) const {
        // e^{-it lambda} = e^{t Im lambda} (cos(t Re lambda) - i sin(t Re lambda))
        R mag = Ops<R>::exp(t * lam.im);
        Cx<R> val = cis(-t * lam.re) * mag;

        if (nu != 0.0) {
            int ni = int(nu);
            if (double(ni) == nu && ni >= -4 && ni <= 4) {
                Cx<R> p{R(1), R(0)};
                for (int i = 0; i < (ni < 0 ? -ni : ni); ++i) p = p * lam;
                val = ni > 0 ? val * p : val / p;
            } else {
                R lg = Ops<R>::log(cx_abs(lam));
                R ar = branch_arg(lam);
                R m = Ops<R>::exp(R(nu) * lg);
                val = val * (cis(R(nu) * ar) * m);
            }
        }
        if (k != 0) {
            Cx<R> L{Ops<R>::log(cx_abs(lam)) + log_abs_b, branch_arg(lam) + arg_b};
            Cx<R> p{R(1), R(0)};
            for (int i = 0; i < (k < 0 ? -k : k); ++i) p = p * L;
            val = k > 0 ? val * p : val / p;
        }
        return val;
    }
};

template <class R>
struct PieceSum {
    Cx<R> value{};
    Cx<R> verticals{};
    Cx<R> semicircle{};
    R error{};
    long evals = 0;
};

template <class R, class F>
void accumulate(PieceSum<R>& acc, F&& f, R a, R b, R max_panel) {
    auto res = quad::adaptive_gk<R>(f, a, b, R(0), R(1e-12), 52, max_panel);
    acc.value = acc.value + res.value;
    acc.error += res.error;
    acc.evals += res.evaluations;
}

/// Quadrature over the three pieces of Gamma_eta, orientation left-to-right.
template <class R>
PieceSum<R> integrate_path(const Integrand<R>& f, R eta, R gamma, R t) {
    PieceSum<R> acc;

    // geometric breakpoints resolving the e^{-t s} decay down the verticals
    std::vector<R> sv{R(0)};
    for (R s = R(1) / t; s < gamma; s = s * R(4)) sv.push_back(s);
    sv.push_back(gamma);

    // left vertical: lambda = -eta - i(gamma - s), s in [0, gamma], d lambda = i ds
    for (std::size_t i = 0; i + 1 < sv.size(); ++i) {
        auto g = [&](R s) {
            Cx<R> v = f(Cx<R>{-eta, -(gamma - s)});
            return Cx<R>{-v.im, v.re};  // * i
        };
        accumulate(acc, g, sv[i], sv[i + 1], R(0));
    }
    // right vertical: lambda = eta - i s, s in [0, gamma], d lambda = -i ds
    for (std::size_t i = 0; i + 1 < sv.size(); ++i) {
        auto g = [&](R s) {
            Cx<R> v = f(Cx<R>{eta, -s});
            return Cx<R>{v.im, -v.re};  // * (-i)
        };
        accumulate(acc, g, sv[i], sv[i + 1], R(0));
    }
    acc.verticals = acc.value;
    // semicircle, theta from pi to 0; p = pi - theta increases along the path
    {
        R pi = Ops<R>::pi();
        R max_dp = pi / (R(4) * t * eta);  // arc panels no wider than pi/(4t)
        if (max_dp > pi / R(8)) max_dp = pi / R(8);
        auto g = [&](R p) {
            Cx<R> lam = cis(pi - p) * eta;
            Cx<R> v = f(lam);
            return v * Cx<R>{lam.im, -lam.re};  // d lambda = -i lambda dp
        };
        accumulate(acc, g, R(0), pi, max_dp);
    }
    acc.semicircle = acc.value - acc.verticals;
    return acc;
}

MomentResult run_moment_double(const ContourSpec& spec, const MomentSpec& mom) {
    Integrand<double> f{spec.t, mom.nu, mom.k, std::log(std::abs(mom.b)), std::arg(mom.b)};
    auto acc = integrate_path<double>(f, spec.eta, spec.gamma_depth(), spec.t);
    return {std::complex<double>(acc.value.re, acc.value.im), acc.error, acc.evals, false};
}

MomentResult run_moment_quad(const ContourSpec& spec, const MomentSpec& mom) {
    using R = __float128;
    Integrand<R> f{R(spec.t), mom.nu, mom.k, logq(R(std::abs(mom.b))), R(std::arg(mom.b))};
    auto acc = integrate_path<R>(f, R(spec.eta), R(spec.gamma_depth()), R(spec.t));
    return {std::complex<double>(double(acc.value.re), double(acc.value.im)),
            double(acc.error), acc.evals, true};
}

} // namespace

void ContourSpec::validate() const {
    if (!(A > Cprime)) throw SpecError("contour requires A > C'");
    if (!(C > 0.0) || !(Cprime > 0.0)) throw SpecError("contour constants must be positive");
    if (!(t >= 2.0)) throw SpecError("contour time must satisfy t >= 2");
    if (!(eta > 0.0)) throw SpecError("semicircle radius eta must be positive");
    if (!(r_of_t() > eta)) throw SpecError("contour requires r(t) > eta");
}

void RemainderBudget::validate() const {
    if (s < 0.0 || p < 0.0 || q < 0.0) throw SpecError("Sobolev indices must be >= 0");
    if (s + p < q) throw SpecError("remainder budget requires s + p >= q");
}

std::complex<double> ContourPath::at(double s) const {
    if (s <= gamma) return {-eta, -(gamma - s)};
    if (s <= gamma + M_PI * eta) {
        double theta = M_PI - (s - gamma) / eta;
        return {eta * std::cos(theta), eta * std::sin(theta)};
    }
    return {eta, -(s - gamma - M_PI * eta)};
}

ContourPath build_contour(const ContourSpec& spec) {
    spec.validate();
    return {spec.eta, spec.gamma_depth()};
}

MomentBreakdown moment_pieces(const ContourSpec& spec, const MomentSpec& mom) {
    spec.validate();
    using R = __float128;
    Integrand<R> f{R(spec.t), mom.nu, mom.k, logq(R(std::abs(mom.b))), R(std::arg(mom.b))};
    auto acc = integrate_path<R>(f, R(spec.eta), R(spec.gamma_depth()), R(spec.t));
    return {std::complex<double>(double(acc.verticals.re), double(acc.verticals.im)),
            std::complex<double>(double(acc.semicircle.re), double(acc.semicircle.im))};
}

MomentResult moment(const ContourSpec& spec, const MomentSpec& mom) {
    spec.validate();
    if (mom.k != 0) {
        if (std::abs(mom.b) == 0.0) throw SpecError("log term requires b != 0");
        // keep the zero of log(b lambda) strictly outside the contour
        if (!(spec.eta < 1.0 / (2.0 * std::abs(mom.b))))
            throw SpecError("moment requires eta < 1/(2|b|)");
    }
    const double teta = spec.t * spec.eta;
    if (teta > 60.0)
        throw AccuracyError("moment: t*eta too large even for quad precision", teta);
    MomentResult res{};
    bool have = false;
    if (teta <= 20.0) {
        res = run_moment_double(spec, mom);
        // keep the double result only when it is relatively accurate; tiny
        // moments with large apex cancellation need the wide mantissa
        have = res.error_estimate <= 1e-10 * std::abs(res.value);
    }
    if (!have) {
        // the semicircle apex carries e^{t eta}-sized oscillatory mass whose
        // cancellation double precision cannot always resolve
        res = run_moment_quad(spec, mom);
    }
    if (res.error_estimate > 1e-10 * (1.0 + std::abs(res.value)))
        throw AccuracyError("moment quadrature did not reach tolerance", res.error_estimate);
    return res;
}

double jm_profile(const ContourSpec& spec, std::complex<double> b) {
    spec.validate();
    if (std::abs(std::arg(b) + 0.5 * M_PI) > 1e-9)
        throw SpecError("jm_profile requires arg b = -pi/2");

    // the eta -> 0+ limit is realized by successive halving from a
    // time-safe radius (small t*eta keeps the apex factor e^{t eta} tame)
    ContourSpec s = spec;
    s.eta = std::min({spec.eta, 0.5 / spec.t, 1.0 / (4.0 * std::abs(b))});
    MomentSpec mom{-2.0, -1, b};

    MomentResult prev = moment(s, mom);
    for (int halving = 0; halving < 40; ++halving) {
        s.eta *= 0.5;
        MomentResult cur = moment(s, mom);
        double rel = std::abs(cur.value - prev.value) / (std::abs(cur.value) + 1e-300);
        if (rel <= 1e-8) {
            double imag_resid = std::abs(cur.value.imag()) / (std::abs(cur.value) + 1e-300);
            if (imag_resid > 1e-6)
                throw AccuracyError("jm_profile: imaginary residual indicates a "
                                    "branch/orientation fault", imag_resid);
            return cur.value.real() / (2.0 * M_PI);
        }
        prev = cur;
    }
    throw AccuracyError("jm_profile: eta halving did not converge", s.eta);
}

Eigen::ArrayXd remainder_window(const RemainderBudget& budget, const Eigen::ArrayXd& t_grid) {
    budget.validate();
    double e = budget.exponent();
    return t_grid.log().pow(-e);
}

std::complex<double> zero_eigen_calibration(double t) {
    ContourSpec spec;
    spec.t = t;
    spec.eta = 0.5 / t;
    MomentSpec mom{-2.0, 0, {0.0, -1.0}};
    MomentResult m = moment(spec, mom);
    // rank-one toy with P = 0: sin(t sqrt(P))/sqrt(P) f = t f, and the
    // theorem's u_z prefactor is (1/2pi) A_{-2,0} = -(1/2pi); the returned
    // factor closes the loop t = Re[c (-1/2pi) moment]
    return -2.0 * M_PI * t / m.value;
}

} // namespace logdecay::contour
