#pragma once

// Adaptive Gauss-Kronrod (7/15) integration with global bisection of the
// worst sub-interval. Infinite ranges are folded onto (0, 1] by x = c +/- (1-t)/t.

#include <algorithm>
#include <cmath>
#include <limits>
#include <queue>
#include <vector>

#include "error.hpp"

namespace lnre {

struct QuadOptions {
    double abs_tol = 1e-10;
    double rel_tol = 1e-12;
    int max_intervals = 4000;
};

struct QuadResult {
    double value = 0.0;
    double abs_error = 0.0;
    int intervals = 0;
    bool converged = true;
};

namespace detail {

inline constexpr double gk_x[8] = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.0};
inline constexpr double gk_wk[8] = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
inline constexpr double gk_wg[4] = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct Segment {
    double a, b, value, error;
    bool operator<(const Segment& o) const { return error < o.error; }
};

template <class F>
Segment gk15(const F& f, double a, double b) {
    const double c = 0.5 * (a + b);
    const double h = 0.5 * (b - a);
    double fv1[7], fv2[7];
    const double fc = f(c);
    double resk = fc * gk_wk[7];
    double resg = fc * gk_wg[3];
    double resabs = std::fabs(resk);
    for (int j = 0; j < 7; ++j) {
        const double dx = h * gk_x[j];
        fv1[j] = f(c - dx);
        fv2[j] = f(c + dx);
        const double s = fv1[j] + fv2[j];
        resk += gk_wk[j] * s;
        resabs += gk_wk[j] * (std::fabs(fv1[j]) + std::fabs(fv2[j]));
        if (j % 2 == 1) resg += gk_wg[j / 2] * s;
    }
    const double mean = 0.5 * resk;
    double resasc = gk_wk[7] * std::fabs(fc - mean);
    for (int j = 0; j < 7; ++j)
        resasc += gk_wk[j] * (std::fabs(fv1[j] - mean) + std::fabs(fv2[j] - mean));
    const double ah = std::fabs(h);
    resk *= h;
    resabs *= ah;
    resasc *= ah;
    double err = std::fabs((resk - resg * h));
    if (resasc != 0.0 && err != 0.0) err = resasc * std::min(1.0, std::pow(200.0 * err / resasc, 1.5));
    constexpr double eps = std::numeric_limits<double>::epsilon();
    if (resabs > std::numeric_limits<double>::min() / (50.0 * eps)) err = std::max(50.0 * eps * resabs, err);
    if (!std::isfinite(resk)) err = std::numeric_limits<double>::infinity();
    return {a, b, resk, err};
}

template <class F>
QuadResult adapt_finite(const F& f, double a, double b, const QuadOptions& opt) {
    QuadResult r;
    if (a == b) return r;
    std::priority_queue<Segment> heap;
    Segment s0 = gk15(f, a, b);
    heap.push(s0);
    double total = s0.value, err = s0.error;
    int n = 1;
    while (err > std::max(opt.abs_tol, opt.rel_tol * std::fabs(total))) {
        if (n >= opt.max_intervals) break;
        Segment w = heap.top();
        const double mid = 0.5 * (w.a + w.b);
        if (!(mid > w.a && mid < w.b)) break;
        heap.pop();
        Segment l = gk15(f, w.a, mid), rr = gk15(f, mid, w.b);
        total += l.value + rr.value - w.value;
        err += l.error + rr.error - w.error;
        heap.push(l);
        heap.push(rr);
        ++n;
        if (!std::isfinite(total)) break;
    }
    // recompute sums from the leaves to shed accumulated cancellation
    std::vector<Segment> leaves;
    leaves.reserve(heap.size());
    while (!heap.empty()) { leaves.push_back(heap.top()); heap.pop(); }
    std::sort(leaves.begin(), leaves.end(), [](const Segment& x, const Segment& y) { return x.a < y.a; });
    total = 0.0;
    err = 0.0;
    for (const auto& s : leaves) { total += s.value; err += s.error; }
    r.value = total;
    r.abs_error = err;
    r.intervals = n;
    r.converged = std::isfinite(total) && err <= std::max(opt.abs_tol, opt.rel_tol * std::fabs(total));
    return r;
}

} // namespace detail

// Integrate f over [a, b]; either end may be infinite.
template <class F>
QuadResult integrate(const F& f, double a, double b, const QuadOptions& opt = {}) {
    const bool ia = std::isinf(a), ib = std::isinf(b);
    if (a > b) {
        QuadResult r = integrate(f, b, a, opt);
        r.value = -r.value;
        return r;
    }
    if (!ia && !ib) return detail::adapt_finite(f, a, b, opt);
    if (ia && ib) {
        QuadOptions half = opt;
        half.abs_tol *= 0.5;
        QuadResult l = integrate(f, a, 0.0, half), u = integrate(f, 0.0, b, half);
        return {l.value + u.value, l.abs_error + u.abs_error, l.intervals + u.intervals, l.converged && u.converged};
    }
    if (ib) {
        auto g = [&](double t) {
            const double x = a + (1.0 - t) / t;
            const double v = f(x);
            return v == 0.0 ? 0.0 : v / (t * t);
        };
        return detail::adapt_finite(g, 0.0, 1.0, opt);
    }
    auto g = [&](double t) {
        const double x = b - (1.0 - t) / t;
        const double v = f(x);
        return v == 0.0 ? 0.0 : v / (t * t);
    };
    return detail::adapt_finite(g, 0.0, 1.0, opt);
}

// Integrate over [a, b] split at the given interior points (kinks, support edges).
template <class F>
QuadResult integrate_pieces(const F& f, double a, double b, std::vector<double> breaks, const QuadOptions& opt = {}) {
    std::vector<double> pts{a};
    std::sort(breaks.begin(), breaks.end());
    for (double x : breaks)
        if (x > pts.back() && x < b) pts.push_back(x);
    pts.push_back(b);
    QuadOptions piece = opt;
    piece.abs_tol = opt.abs_tol / static_cast<double>(pts.size() - 1);
    QuadResult r;
    for (std::size_t i = 0; i + 1 < pts.size(); ++i) {
        QuadResult p = integrate(f, pts[i], pts[i + 1], piece);
        r.value += p.value;
        r.abs_error += p.abs_error;
        r.intervals += p.intervals;
        r.converged = r.converged && p.converged;
    }
    return r;
}

// Throwing wrapper: unconverged infinite-range integrals are reported as
// NonIntegrable, unconverged finite ones as QuadratureFailure.
template <class F>
QuadResult integrate_checked(const F& f, double a, double b, std::vector<double> breaks = {},
                             const QuadOptions& opt = {}) {
    QuadResult r = integrate_pieces(f, a, b, std::move(breaks), opt);
    if (!std::isfinite(r.value)) fail(Errc::NonIntegrable, "integral is not finite");
    if (!r.converged) {
        // a loose acceptance keeps slowly-converging but finite integrals usable
        const double loose = std::max(1e3 * opt.abs_tol, 1e-8 * std::fabs(r.value));
        if (r.abs_error <= loose) return r;
        if (std::isinf(a) || std::isinf(b)) fail(Errc::NonIntegrable, "tail integral did not converge");
        fail(Errc::QuadratureFailure, "error estimate exceeds tolerance");
    }
    return r;
}

} // namespace lnre
