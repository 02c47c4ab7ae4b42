#ifndef LOGDECAY_QUADRATURE_HPP
#define LOGDECAY_QUADRATURE_HPP

#include <array>
#include <cmath>
#include <complex>
#include <cstdlib>
#include <limits>
#include <queue>
#include <vector>

namespace logdecay::quad {

// Gauss-Kronrod 7/15 tables, 36 significant digits so the same strings can
// seed double, long double and __float128 instantiations.  Order: positive
// abscissae descending, then the center node.
inline constexpr const char* kGk15NodeStr[8] = {
    "0.991455371120812639206854697526328517",
    "0.949107912342758524526189684047851262",
    "0.864864423359769072789712788640926201",
    "0.741531185599394439863864773280788407",
    "0.586087235467691130294144838258729598",
    "0.405845151377397166906606412076961463",
    "0.207784955007898467600689403773244913",
    "0.0"};
inline constexpr const char* kGk15WeightStr[8] = {
    "0.022935322010529224963732008058969592",
    "0.0630920926299785532907006631892042867",
    "0.104790010322250183839876322541518017",
    "0.14065325971552591874518959051023792",
    "0.169004726639267902826583426598550284",
    "0.190350578064785409913256402421013683",
    "0.204432940075298892414161999234649085",
    "0.209482141084727828012999174891714264"};
inline constexpr const char* kG7WeightStr[8] = {
    "0.0",
    "0.129484966168869693270611432679082018",
    "0.0",
    "0.279705391489276667901467771423779582",
    "0.0",
    "0.381830050505118944950369775488975134",
    "0.0",
    "0.417959183673469387755102040816326531"};

template <class Real>
Real parse_real(const char* s);

template <>
inline double parse_real<double>(const char* s) { return std::strtod(s, nullptr); }
template <>
inline long double parse_real<long double>(const char* s) { return std::strtold(s, nullptr); }

template <class Real>
struct GkTable {
    std::array<Real, 8> x, wk, wg;
    GkTable() {
        for (int i = 0; i < 8; ++i) {
            x[i] = parse_real<Real>(kGk15NodeStr[i]);
            wk[i] = parse_real<Real>(kGk15WeightStr[i]);
            wg[i] = parse_real<Real>(kG7WeightStr[i]);
        }
    }
    static const GkTable& get() {
        static const GkTable t;
        return t;
    }
};

inline double quad_abs(double v) { return std::fabs(v); }
inline double quad_abs(const std::complex<double>& v) { return std::abs(v); }

template <class Value, class Real>
struct QuadResult {
    Value value{};
    Real error{};       // truncation estimate plus the rounding floor
    long evaluations = 0;
    bool converged = true;
};

/// One GK15 panel on [a, b]; err is the |K15 - G7| estimate and maxf the
/// largest integrand magnitude seen (for the rounding floor).
template <class Real, class F>
auto gk15_panel(F&& f, Real a, Real b, Real& err, Real& maxf, long& evals) {
    const auto& t = GkTable<Real>::get();
    using Value = decltype(f(a));
    const Real c = (a + b) / Real(2);
    const Real hw = (b - a) / Real(2);
    Value fc = f(c);
    maxf = quad_abs(fc);
    Value sk = fc * t.wk[7];
    Value sg = fc * t.wg[7];
    evals += 1;
    for (int i = 0; i < 7; ++i) {
        Value fp = f(c + hw * t.x[i]);
        Value fm = f(c - hw * t.x[i]);
        Real m = quad_abs(fp) + quad_abs(fm);
        if (m > maxf) maxf = m;
        sk = sk + (fp + fm) * t.wk[i];
        if (t.wg[i] != Real(0)) sg = sg + (fp + fm) * t.wg[i];
        evals += 2;
    }
    Value k15 = sk * hw;
    err = quad_abs(k15 - sg * hw);
    return k15;
}

/// Adaptive bisection on [a, b] with a worst-panel priority queue.
/// `max_panel > 0` pre-splits the interval so no initial panel exceeds that
/// width (for oscillatory integrands whose period the error estimator would
/// otherwise miss).  Splitting stops once the truncation estimate drops to
/// the rounding floor of the accumulated integrand magnitudes.
template <class Real, class F>
auto adaptive_gk(F&& f, Real a, Real b, Real abs_tol, Real rel_tol,
                 int max_depth = 48, Real max_panel = Real(0),
                 long max_evaluations = 4000000) {
    using Value = decltype(f(a));
    struct Seg {
        Real a, b, err, floor;
        Value val;
        int depth;
        bool operator<(const Seg& o) const { return err < o.err; }
    };
    const Real eps = std::numeric_limits<Real>::epsilon();
    std::priority_queue<Seg> heap;
    long evals = 0;
    Value total{};
    Real err_total{}, floor_total{};

    auto make_seg = [&](Real pa, Real pb, int depth) {
        Real err, maxf;
        Value v = gk15_panel(f, pa, pb, err, maxf, evals);
        Seg s{pa, pb, err, Real(4) * eps * maxf * (pb - pa), v, depth};
        total = total + s.val;
        err_total += s.err;
        floor_total += s.floor;
        return s;
    };

    int npre = 1;
    if (max_panel > Real(0)) {
        Real ratio = (b - a) / max_panel;
        npre = ratio > Real(1) ? int(double(ratio)) + 1 : 1;
        if (npre > 1 << 20) npre = 1 << 20;
    }
    for (int i = 0; i < npre; ++i)
        heap.push(make_seg(a + (b - a) * Real(i) / Real(npre),
                           a + (b - a) * Real(i + 1) / Real(npre), 0));

    bool converged = true;
    for (;;) {
        Real target = abs_tol + rel_tol * quad_abs(total);
        if (err_total <= target) break;
        if (err_total <= floor_total) break;  // rounding-limited, not improvable
        if (evals >= max_evaluations || heap.top().depth >= max_depth) {
            converged = false;
            break;
        }
        Seg s = heap.top();
        heap.pop();
        total = total - s.val;
        err_total -= s.err;
        floor_total -= s.floor;
        Real mid = (s.a + s.b) / Real(2);
        heap.push(make_seg(s.a, mid, s.depth + 1));
        heap.push(make_seg(mid, s.b, s.depth + 1));
    }
    return QuadResult<Value, Real>{total, err_total + floor_total, evals, converged};
}

} // namespace logdecay::quad

#endif
