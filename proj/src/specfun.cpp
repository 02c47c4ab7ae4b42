#include "logdecay/specfun.hpp"

#include <cmath>
#include <stdexcept>

#include "logdecay/errors.hpp"
#include "logdecay/quadrature.hpp"

namespace logdecay::specfun {

namespace {

using CLD = std::complex<long double>;

constexpr long double kPi = 3.14159265358979323846264338327950288L;
// Euler-Mascheroni, 20+ digits.
constexpr long double kEulerGamma = 0.57721566490153286060651209L;
// series / asymptotics crossover radius
constexpr long double kSeriesRadius = 16.0L;

long double brarg(CLD z) {
    long double a = std::atan2(z.imag(), z.real());
    if (a <= -0.5L * kPi) a += 2.0L * kPi;
    return a;
}

/// log z on the working branch.
CLD brlog(CLD z) { return {std::log(std::abs(z)), brarg(z)}; }

/// sqrt z with half the branch argument.
CLD brsqrt(CLD z) {
    long double r = std::sqrt(std::abs(z));
    long double a = 0.5L * brarg(z);
    return {r * std::cos(a), r * std::sin(a)};
}

// --- power series, |z| <= kSeriesRadius ------------------------------------

CLD j0_series(CLD z) {
    CLD q = 0.25L * z * z;  // (z/2)^2
    CLD term(1.0L, 0.0L), sum = term;
    for (int k = 1; k < 200; ++k) {
        term *= -q / CLD((long double)k * k);
        sum += term;
        if (std::abs(term) < 1e-22L * std::abs(sum) + 1e-40L) break;
    }
    return sum;
}

CLD j1_series(CLD z) {
    CLD q = 0.25L * z * z;
    CLD term(1.0L, 0.0L), sum = term;
    for (int k = 1; k < 200; ++k) {
        term *= -q / CLD((long double)k * (k + 1));
        sum += term;
        if (std::abs(term) < 1e-22L * std::abs(sum) + 1e-40L) break;
    }
    return 0.5L * z * sum;
}

// Y0 = (2/pi)[(log(z/2) + gamma) J0 + sum_{k>=1} (-1)^{k+1} H_k q^k/(k!)^2]
CLD y0_series(CLD z) {
    CLD q = 0.25L * z * z;
    CLD term(1.0L, 0.0L), sum(0.0L, 0.0L);
    long double hk = 0.0L;
    for (int k = 1; k < 200; ++k) {
        term *= q / CLD((long double)k * k);
        hk += 1.0L / k;
        CLD add = ((k & 1) ? term : -term) * hk;
        sum += add;
        if (std::abs(add) < 1e-22L * (std::abs(sum) + 1.0L)) break;
    }
    CLD lg = brlog(0.5L * z) + kEulerGamma;
    return (2.0L / kPi) * (lg * j0_series(z) + sum);
}

// Y1 = (2/pi) log(z/2) J1 - 2/(pi z)
//      - (z/(2 pi)) sum_k (-1)^k (H_k + H_{k+1} - 2 gamma ... ) q^k/(k!(k+1)!)
// written with psi(k+1)+psi(k+2) = -2 gamma + H_k + H_{k+1}.
CLD y1_series(CLD z) {
    CLD q = 0.25L * z * z;
    CLD term(1.0L, 0.0L);
    long double hk = 0.0L, hk1 = 1.0L;
    CLD sum = term * (hk + hk1);  // k = 0
    long double sign = -1.0L;
    for (int k = 1; k < 200; ++k) {
        term *= q / CLD((long double)k * (k + 1));
        hk += 1.0L / k;
        hk1 += 1.0L / (k + 1);
        CLD add = sign * term * (hk + hk1);
        sum += add;
        sign = -sign;
        if (std::abs(add) < 1e-22L * (std::abs(sum) + 1.0L)) break;
    }
    CLD lg = brlog(0.5L * z) + kEulerGamma;
    return (2.0L / kPi) * lg * j1_series(z) - 2.0L / (kPi * z) -
           (z / (2.0L * kPi)) * sum;
}

// --- Hankel asymptotics, |z| > kSeriesRadius --------------------------------
// H^(1,2)_nu(z) ~ sqrt(2/(pi z)) e^{+-i(z - nu pi/2 - pi/4)} sum (+-i)^k a_k(nu)/z^k
// a_k(nu) = prod_{j=1..k} (4 nu^2 - (2j-1)^2) / (k! 8^k)

CLD hankel_asym(int order, CLD z, int sign) {
    long double mu = 4.0L * order * order;
    CLD isign = sign > 0 ? CLD(0.0L, 1.0L) : CLD(0.0L, -1.0L);
    CLD term(1.0L, 0.0L), sum = term;
    long double last = 1e300L;
    for (int k = 1; k < 60; ++k) {
        long double num = mu - (long double)(2 * k - 1) * (2 * k - 1);
        term *= isign * CLD(num / (8.0L * k)) / z;
        long double mag = std::abs(term);
        if (mag > last) break;  // asymptotic series turned
        sum += term;
        last = mag;
        if (mag < 1e-20L * std::abs(sum)) break;
    }
    CLD phase = z - CLD(0.5L * kPi * order + 0.25L * kPi);
    CLD expo = std::exp(CLD(0.0L, sign > 0 ? 1.0L : -1.0L) * phase);
    CLD amp = brsqrt(2.0L / (kPi * z));
    return amp * expo * sum;
}

struct JY {
    CLD j, y;
};

JY eval_jy(int order, CLD z);

/// right half plane, |z| large: J, Y from the two Hankel expansions.
JY jy_large_right(int order, CLD z) {
    CLD h1 = hankel_asym(order, z, +1);
    CLD h2 = hankel_asym(order, z, -1);
    return {0.5L * (h1 + h2), CLD(0.0L, -0.5L) * (h1 - h2)};
}

JY eval_jy(int order, CLD z) {
    if (std::abs(z) <= kSeriesRadius) {
        if (order == 0) return {j0_series(z), y0_series(z)};
        return {j1_series(z), y1_series(z)};
    }
    if (z.real() >= 0.0L) return jy_large_right(order, z);
    // continuation through the upper half plane: z = w e^{i pi}
    CLD w = -z;
    JY base = std::abs(w) <= kSeriesRadius
                  ? (order == 0 ? JY{j0_series(w), y0_series(w)}
                                : JY{j1_series(w), y1_series(w)})
                  : jy_large_right(order, w);
    long double s = (order == 0) ? 1.0L : -1.0L;  // (-1)^n
    CLD j = s * base.j;
    CLD y = s * (base.y + CLD(0.0L, 2.0L) * base.j);
    return {j, y};
}

CLD eval_h1(int order, CLD z) {
    if (std::abs(z) > kSeriesRadius && brarg(z) < 0.9L * kPi)
        return hankel_asym(order, z, +1);
    JY v = eval_jy(order, z);
    return v.j + CLD(0.0L, 1.0L) * v.y;
}

void check_order(int order) {
    if (order != 0 && order != 1)
        throw std::invalid_argument("cylinder function order must be 0 or 1");
}

std::complex<double> dn(CLD v) { return {double(v.real()), double(v.imag())}; }

CLD to_ld(std::complex<double> v) { return {v.real(), v.imag()}; }

} // namespace

std::complex<double> bessel_j(int order, const BranchedComplex& z) {
    check_order(order);
    return dn(eval_jy(order, to_ld(z.value())).j);
}

std::complex<double> bessel_y(int order, const BranchedComplex& z) {
    check_order(order);
    if (z.abs() == 0.0) throw BranchDomainError("Y singular at z = 0");
    return dn(eval_jy(order, to_ld(z.value())).y);
}

std::complex<double> hankel1(int order, const BranchedComplex& z) {
    check_order(order);
    if (z.abs() == 0.0) throw BranchDomainError("H^(1) singular at z = 0");
    return dn(eval_h1(order, to_ld(z.value())));
}

double bessel_j(int order, double x) {
    check_order(order);
    // parity keeps the real path real
    double s = (x < 0.0 && order == 1) ? -1.0 : 1.0;
    return s * dn(eval_jy(order, CLD(std::fabs(x), 0.0L)).j).real();
}

double bessel_y(int order, double x) {
    check_order(order);
    if (x <= 0.0) throw std::domain_error("Y defined for x > 0 on the real line");
    return dn(eval_jy(order, CLD(x, 0.0L)).y).real();
}

namespace {

long double i_series(int order, long double x) {
    long double q = 0.25L * x * x;
    long double term = 1.0L, sum = 1.0L;
    for (int k = 1; k < 400; ++k) {
        term *= q / ((long double)k * (k + order));
        sum += term;
        if (term < 1e-21L * sum) break;
    }
    return order == 0 ? sum : 0.5L * x * sum;
}

// K via the ascending series for small x (mild cancellation only).
long double k_series(int order, long double x) {
    long double q = 0.25L * x * x;
    long double lg = std::log(0.5L * x) + kEulerGamma;
    if (order == 0) {
        long double term = 1.0L, sum = 0.0L, hk = 0.0L;
        for (int k = 1; k < 200; ++k) {
            term *= q / ((long double)k * k);
            hk += 1.0L / k;
            sum += term * hk;
            if (term * hk < 1e-21L * (sum + 1.0L)) break;
        }
        return -lg * i_series(0, x) + sum;
    }
    // K1 = 1/x + (log(x/2)+gamma) I1 - (x/4) sum (H_k + H_{k+1}) q^k/(k!(k+1)!)
    long double term = 1.0L, hk = 0.0L, hk1 = 1.0L;
    long double sum = term * (hk + hk1);
    for (int k = 1; k < 200; ++k) {
        term *= q / ((long double)k * (k + 1));
        hk += 1.0L / k;
        hk1 += 1.0L / (k + 1);
        sum += term * (hk + hk1);
        if (term * (hk + hk1) < 1e-21L * (sum + 1.0L)) break;
    }
    return 1.0L / x + lg * i_series(1, x) - 0.25L * x * sum;
}

// K_nu(x) = int_0^inf e^{-x cosh u} cosh(nu u) du, x not small.
double k_quadrature(int order, double x) {
    if (x > 700.0) return 0.0;  // underflows; never reached by the solvers
    double umax = std::acosh(746.0 / x);  // e^{-746} is past double underflow
    auto f = [&](double u) {
        double c = std::cosh(u);
        return std::exp(-x * c) * (order == 0 ? 1.0 : c);
    };
    auto res = quad::adaptive_gk<double>(f, 0.0, umax, 1e-300, 1e-14);
    return res.value;
}

} // namespace

double bessel_ik(int order, Modified kind, double x) {
    check_order(order);
    if (kind == Modified::I) {
        if (x < 0.0) throw std::domain_error("I requires x >= 0");
        return double(i_series(order, (long double)x));
    }
    if (x <= 0.0) throw std::domain_error("K requires x > 0");
    if (x <= 2.0) return double(k_series(order, (long double)x));
    return k_quadrature(order, x);
}

double bessel_zero(const BesselZeroIndex& idx) {
    check_order(idx.order);
    if (idx.index < 1) throw std::invalid_argument("zero index must be >= 1");
    // McMahon initial guess, then Newton with a bisection guard.
    double beta = (idx.index + 0.5 * idx.order - 0.25) * M_PI;
    double mu = 4.0 * idx.order * idx.order;
    double x = beta - (mu - 1.0) / (8.0 * beta);
    double lo = x - 0.5, hi = x + 0.5;
    auto f = [&](double t) { return bessel_j(idx.order, t); };
    auto df = [&](double t) {
        return idx.order == 0 ? -bessel_j(1, t) : bessel_j(0, t) - bessel_j(1, t) / t;
    };
    double flo = f(lo), fhi = f(hi);
    for (int it = 0; it < 100; ++it) {
        double fx = f(x);
        double step = fx / df(x);
        double xn = x - step;
        if (!(xn > lo && xn < hi)) {
            // bisection fallback on the bracketing interval
            if ((flo < 0.0) != (fx < 0.0)) {
                hi = x;
                fhi = fx;
            } else {
                lo = x;
                flo = fx;
            }
            xn = 0.5 * (lo + hi);
        }
        if (std::fabs(xn - x) < 1e-15 * x) {
            x = xn;
            break;
        }
        x = xn;
    }
    (void)fhi;
    return x;
}

std::complex<double> bessel_j_deriv(int order, const BranchedComplex& z) {
    check_order(order);
    if (order == 0) return -bessel_j(1, z);
    std::complex<double> zz = z.value();
    if (std::abs(zz) == 0.0) return 0.5;  // J1'(0) = 1/2
    return bessel_j(0, z) - bessel_j(1, z) / zz;
}

std::complex<double> bessel_y_deriv(int order, const BranchedComplex& z) {
    check_order(order);
    if (order == 0) return -bessel_y(1, z);
    return bessel_y(0, z) - bessel_y(1, z) / z.value();
}

std::complex<double> hankel1_deriv(int order, const BranchedComplex& z) {
    check_order(order);
    if (order == 0) return -hankel1(1, z);
    return hankel1(0, z) - hankel1(1, z) / z.value();
}

double bessel_i_deriv(int order, double x) {
    check_order(order);
    if (order == 0) return bessel_ik(1, Modified::I, x);
    if (x == 0.0) return 0.5;
    return bessel_ik(0, Modified::I, x) - bessel_ik(1, Modified::I, x) / x;
}

double bessel_k_deriv(int order, double x) {
    check_order(order);
    if (order == 0) return -bessel_ik(1, Modified::K, x);
    return -bessel_ik(0, Modified::K, x) - bessel_ik(1, Modified::K, x) / x;
}

namespace {

void check_small_order(int m) {
    if (m < 0 || m > 8) throw std::invalid_argument("general-order helpers take 0 <= m <= 8");
}

CLD jm_series(int m, CLD z) {
    CLD q = 0.25L * z * z;
    CLD term(1.0L, 0.0L), sum = term;
    for (int k = 1; k < 240; ++k) {
        term *= -q / CLD((long double)k * (k + m));
        sum += term;
        if (std::abs(term) < 1e-22L * std::abs(sum) + 1e-40L) break;
    }
    CLD pref(1.0L, 0.0L);
    for (int j = 1; j <= m; ++j) pref *= 0.5L * z / CLD((long double)j);
    return pref * sum;
}

long double im_series(int m, long double x) {
    long double q = 0.25L * x * x;
    long double term = 1.0L, sum = 1.0L;
    for (int k = 1; k < 400; ++k) {
        term *= q / ((long double)k * (k + m));
        sum += term;
        if (term < 1e-21L * sum) break;
    }
    long double pref = 1.0L;
    for (int j = 1; j <= m; ++j) pref *= 0.5L * x / j;
    return pref * sum;
}

} // namespace

std::complex<double> cyl_j(int m, const BranchedComplex& z) {
    check_small_order(m);
    if (m <= 1) return bessel_j(m, z);
    CLD zz = to_ld(z.value());
    if (std::abs(zz) <= kSeriesRadius) return dn(jm_series(m, zz));
    // |z| > 16 >> m: upward recurrence is benign here
    CLD jm1 = eval_jy(0, zz).j, jm2;
    CLD j = eval_jy(1, zz).j;
    for (int k = 1; k < m; ++k) {
        jm2 = jm1;
        jm1 = j;
        j = CLD(2.0L * k) / zz * jm1 - jm2;
    }
    return dn(j);
}

std::complex<double> cyl_y(int m, const BranchedComplex& z) {
    check_small_order(m);
    if (m <= 1) return bessel_y(m, z);
    // Y grows with the order: upward recurrence is stable everywhere
    CLD zz = to_ld(z.value());
    CLD ym1 = eval_jy(0, zz).y, ym2;
    CLD y = eval_jy(1, zz).y;
    for (int k = 1; k < m; ++k) {
        ym2 = ym1;
        ym1 = y;
        y = CLD(2.0L * k) / zz * ym1 - ym2;
    }
    return dn(y);
}

std::complex<double> cyl_h1(int m, const BranchedComplex& z) {
    return cyl_j(m, z) + std::complex<double>(0.0, 1.0) * cyl_y(m, z);
}

std::complex<double> cyl_j_deriv(int m, const BranchedComplex& z) {
    if (m == 0) return -cyl_j(1, z);
    std::complex<double> zz = z.value();
    if (std::abs(zz) == 0.0) return m == 1 ? 0.5 : 0.0;
    return cyl_j(m - 1, z) - double(m) / zz * cyl_j(m, z);
}

std::complex<double> cyl_y_deriv(int m, const BranchedComplex& z) {
    if (m == 0) return -cyl_y(1, z);
    return cyl_y(m - 1, z) - double(m) / z.value() * cyl_y(m, z);
}

std::complex<double> cyl_h1_deriv(int m, const BranchedComplex& z) {
    if (m == 0) return -cyl_h1(1, z);
    return cyl_h1(m - 1, z) - double(m) / z.value() * cyl_h1(m, z);
}

double mod_i(int m, double x) {
    check_small_order(m);
    if (x < 0.0) throw std::domain_error("I requires x >= 0");
    return double(im_series(m, (long double)x));
}

double mod_k(int m, double x) {
    check_small_order(m);
    if (m <= 1) return bessel_ik(m, Modified::K, x);
    // upward recurrence, stable for K
    double km1 = bessel_ik(0, Modified::K, x);
    double k = bessel_ik(1, Modified::K, x);
    for (int j = 1; j < m; ++j) {
        double km2 = km1;
        km1 = k;
        k = 2.0 * j / x * km1 + km2;
    }
    return k;
}

double mod_i_deriv(int m, double x) {
    if (m == 0) return mod_i(1, x);
    if (x == 0.0) return m == 1 ? 0.5 : 0.0;
    return mod_i(m - 1, x) - m / x * mod_i(m, x);
}

double mod_k_deriv(int m, double x) {
    if (m == 0) return -mod_k(1, x);
    return -mod_k(m - 1, x) - m / x * mod_k(m, x);
}

} // namespace logdecay::specfun
