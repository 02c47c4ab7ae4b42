#ifndef LOGDECAY_BUMP_HPP
#define LOGDECAY_BUMP_HPP

#include <cmath>

namespace logdecay {

/// C-infinity bump supported on (a, b), peak value 1 at the midpoint:
/// exp(1 - 1/(1 - w^2)) with w the normalized coordinate.
inline double bump(double r, double a, double b) {
    double w = (2.0 * r - a - b) / (b - a);
    if (w <= -1.0 || w >= 1.0) return 0.0;
    return std::exp(1.0 - 1.0 / (1.0 - w * w));
}

/// Smooth plateau profile: 1 for s <= s0, 0 for s >= s1, monotone between.
/// Built from the standard smooth-step quotient g(u)/(g(u)+g(1-u)).
inline double plateau(double s, double s0, double s1) {
    if (s <= s0) return 1.0;
    if (s >= s1) return 0.0;
    double u = (s1 - s) / (s1 - s0);
    auto g = [](double x) { return x > 0.0 ? std::exp(-1.0 / x) : 0.0; };
    return g(u) / (g(u) + g(1.0 - u));
}

} // namespace logdecay

#endif
