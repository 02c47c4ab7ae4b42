// Test-side oracles, independent of the library's evaluation paths: power
// series in 128-bit floats, bisection zero finding, finite differences, and
// a brute-force angular quadrature of the 2D free resolvent.
#ifndef LOGDECAY_TESTS_ORACLES_HPP
#define LOGDECAY_TESTS_ORACLES_HPP

#include <quadmath.h>

#include <cmath>
#include <complex>
#include <functional>

namespace oracle {

using f128 = __float128;

// J_m by the defining power series; |z| <= 35 keeps ~20 good digits in f128.
inline f128 bessel_j_series(int m, f128 x) {
    f128 q = x * x / 4.0Q;
    f128 term = 1.0Q, sum = 1.0Q;
    for (int k = 1; k < 400; ++k) {
        term *= -q / (f128(k) * f128(k + m));
        sum += term;
        if (fabsq(term) < 1e-36Q * fabsq(sum) + 1e-60Q) break;
    }
    f128 pref = 1.0Q;
    for (int j = 1; j <= m; ++j) pref *= x / (2.0Q * j);
    return pref * sum;
}

// Y0/Y1 by the ascending series (real positive x).
inline f128 bessel_y_series(int m, f128 x) {
    const f128 kGamma = 0.577215664901532860606512090082402431Q;
    const f128 kPi = M_PIq;
    f128 q = x * x / 4.0Q;
    f128 lg = logq(x / 2.0Q) + kGamma;
    if (m == 0) {
        f128 term = 1.0Q, sum = 0.0Q, hk = 0.0Q, sign = 1.0Q;
        for (int k = 1; k < 400; ++k) {
            term *= q / (f128(k) * f128(k));
            hk += 1.0Q / k;
            sum += sign * term * hk;
            sign = -sign;
            if (fabsq(term * hk) < 1e-36Q * (fabsq(sum) + 1.0Q)) break;
        }
        return (2.0Q / kPi) * (lg * bessel_j_series(0, x) + sum);
    }
    f128 term = 1.0Q, hk = 0.0Q, hk1 = 1.0Q;
    f128 sum = term * (hk + hk1);
    f128 sign = -1.0Q;
    for (int k = 1; k < 400; ++k) {
        term *= q / (f128(k) * f128(k + 1));
        hk += 1.0Q / k;
        hk1 += 1.0Q / (k + 1);
        sum += sign * term * (hk + hk1);
        sign = -sign;
        if (fabsq(term) * (hk + hk1) < 1e-36Q * (fabsq(sum) + 1.0Q)) break;
    }
    return (2.0Q / kPi) * lg * bessel_j_series(1, x) - 2.0Q / (kPi * x) -
           (x / (2.0Q * kPi)) * sum;
}

inline double bessel_j_oracle(int m, double x) {
    return (double)bessel_j_series(m, (f128)x);
}
inline double bessel_y_oracle(int m, double x) {
    return (double)bessel_y_series(m, (f128)x);
}

/// Bisection on [a, b] to ~1e-15 relative.
inline double bisect(const std::function<double(double)>& f, double a, double b) {
    double fa = f(a);
    for (int i = 0; i < 200; ++i) {
        double m = 0.5 * (a + b);
        double fm = f(m);
        if ((fa < 0.0) == (fm < 0.0)) {
            a = m;
            fa = fm;
        } else {
            b = m;
        }
        if (b - a < 1e-15 * b) break;
    }
    return 0.5 * (a + b);
}

/// n-th positive zero of J_m from the series oracle, bracketing by scan.
inline double bessel_zero_oracle(int m, int n) {
    double x = 0.05, prev = bessel_j_oracle(m, x);
    int found = 0;
    for (double step = 0.05; x < 60.0; x += step) {
        double cur = bessel_j_oracle(m, x + step);
        if ((prev < 0.0) != (cur < 0.0)) {
            ++found;
            if (found == n)
                return bisect([&](double t) { return bessel_j_oracle(m, t); }, x, x + step);
        }
        prev = cur;
    }
    return -1.0;
}

/// 5-point central first derivative, O(h^4).
template <class F>
auto deriv5(F&& f, double x, double h) {
    return (f(x - 2 * h) - 8.0 * f(x - h) + 8.0 * f(x + h) - f(x + 2 * h)) / (12.0 * h);
}

/// 5-point central second derivative, O(h^4).
template <class F>
auto deriv2_5(F&& f, double x, double h) {
    return (-f(x - 2 * h) + 16.0 * f(x - h) - 30.0 * f(x) + 16.0 * f(x + h) - f(x + 2 * h)) /
           (12.0 * h * h);
}

} // namespace oracle

#endif
