#ifndef LOGDECAY_GRID_HPP
#define LOGDECAY_GRID_HPP

#include <Eigen/Core>
#include <cmath>
#include <functional>

#include "logdecay/errors.hpp"

namespace logdecay {

/// Uniform radial grid r_i = r0 + i h, i = 0..n-1.
struct RadialGrid {
    double r0 = 0.0;
    double h = 0.0;
    int n = 0;

    double r(int i) const { return r0 + i * h; }
    double r_end() const { return r(n - 1); }

    /// Index of the node nearest to r; throws if r is not a node.
    int index_of(double rr, double tol_frac = 1e-6) const {
        double k = (rr - r0) / h;
        int i = (int)std::lround(k);
        if (i < 0 || i >= n || std::fabs(k - i) > tol_frac)
            throw GridError("radius is not a grid node");
        return i;
    }

    bool contains_node(double rr, double tol_frac = 1e-6) const {
        double k = (rr - r0) / h;
        int i = (int)std::lround(k);
        return i >= 0 && i < n && std::fabs(k - i) <= tol_frac;
    }
};

/// Sampled radial function on a uniform grid.
template <class Scalar>
struct RadialSamples {
    RadialGrid grid;
    Eigen::Vector<Scalar, Eigen::Dynamic> values;

    Scalar operator[](int i) const { return values[i]; }
};

/// Sample a callable on [r0, r1] with spacing h (r1 snapped to the grid).
template <class F>
auto sample_on_grid(F&& f, double r0, double r1, double h) {
    using Scalar = decltype(f(r0));
    int n = (int)std::lround((r1 - r0) / h) + 1;
    RadialSamples<Scalar> s;
    s.grid = {r0, h, n};
    s.values.resize(n);
    for (int i = 0; i < n; ++i) s.values[i] = f(s.grid.r(i));
    return s;
}

/// Composite Simpson over samples v_0..v_{n-1} with spacing h.  An odd
/// interval count is finished with the 3/8 rule; n = 2 falls back to the
/// trapezoid.
template <class Derived>
auto simpson(const Eigen::MatrixBase<Derived>& v, double h) ->
    typename Derived::Scalar {
    using Scalar = typename Derived::Scalar;
    const int n = (int)v.size();
    if (n < 2) return Scalar(0);
    if (n == 2) return Scalar(0.5 * h) * (v[0] + v[1]);
    const int m = n - 1;  // interval count
    Scalar total(0);
    // pairs cover everything when m is even, all but the last three otherwise
    const int pair_end = (m % 2 == 0) ? n - 1 : n - 4;
    for (int i = 0; i + 2 <= pair_end; i += 2)
        total += Scalar(h / 3.0) * (v[i] + Scalar(4) * v[i + 1] + v[i + 2]);
    if (m % 2 != 0)
        total += Scalar(3.0 * h / 8.0) *
                 (v[n - 4] + Scalar(3) * (v[n - 3] + v[n - 2]) + v[n - 1]);
    return total;
}

/// int f(r) g(r) r dr over the common grid of f (g evaluated on f's nodes).
template <class Scalar, class G>
Scalar pair_weighted(const RadialSamples<Scalar>& f, G&& g) {
    Eigen::Vector<Scalar, Eigen::Dynamic> prod(f.grid.n);
    for (int i = 0; i < f.grid.n; ++i) {
        double r = f.grid.r(i);
        prod[i] = f.values[i] * Scalar(g(r)) * Scalar(r);
    }
    return simpson(prod, f.grid.h);
}

} // namespace logdecay

#endif
