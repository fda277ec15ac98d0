#pragma once

#include <algorithm>
#include <cmath>
#include <vector>

#include "density.hpp"
#include "error.hpp"
#include "quadrature.hpp"
#include "tuning.hpp"

namespace lnre {

enum class DivergenceMethod { quadrature, exact_sum };

struct DivergenceValue {
    double value = 0.0;
    DivergenceMethod method = DivergenceMethod::quadrature;
    double abs_error = 0.0;
};

namespace detail {

inline void check_kinds(const ScalarDensity& g, const ScalarDensity& f) {
    if (g.discrete() != f.discrete()) fail(Errc::InvalidParams, "cannot mix discrete and continuous densities");
}

// f must be positive wherever g is
inline void check_support_cover(const ScalarDensity& g, const ScalarDensity& f) {
    if (g.discrete()) {
        for (double y : g.support.points)
            if (g(y) > 0.0 && !(f(y) > 0.0)) fail(Errc::SupportMismatch, "g > 0 where f = 0");
        return;
    }
    if (g.support.lower < f.support.lower || g.support.upper > f.support.upper)
        fail(Errc::SupportMismatch, "support of g exceeds support of f");
}


// Integral of phi over the support of `on`, split at every kink of both densities.
template <class Phi>
QuadResult integral_on(const ScalarDensity& on, const ScalarDensity& other, const Phi& phi) {
    if (on.discrete()) return integrate_over(on, phi);
    std::vector<double> br = on.breaks;
    br.insert(br.end(), other.breaks.begin(), other.breaks.end());
    if (std::isfinite(other.support.lower)) br.push_back(other.support.lower);
    if (std::isfinite(other.support.upper)) br.push_back(other.support.upper);
    return integrate_checked(phi, on.support.lower, on.support.upper, br);
}

inline DivergenceValue make_value(double v, const ScalarDensity& g, double err) {
    if (!std::isfinite(v)) fail(Errc::NonIntegrable, "divergence is not finite");
    return {v, g.discrete() ? DivergenceMethod::exact_sum : DivergenceMethod::quadrature, g.discrete() ? 0.0 : err};
}

// g^b f^e at y; f == 0 inside its own support is tail underflow and dropped
inline double power_term(double gy, double b, const ScalarDensity& f, double y, double e) {
    const double fy = f(y);
    if (!(fy > 0.0)) {
        if (e < 0.0 && f.support.contains(y)) return 0.0;
        return std::pow(gy, b) * std::pow(fy, e);
    }
    // log space avoids 0 * inf when one factor underflows and the other overflows
    return std::exp(b * std::log(gy) + e * std::log(fy));
}

inline double safe_log(double x) {
    if (!(x > 0.0)) fail(Errc::LogOfNonPositive, "log of a non-positive integral");
    return std::log(x);
}

} // namespace detail

inline DivergenceValue kld(const ScalarDensity& g, const ScalarDensity& f) {
    detail::check_kinds(g, f);
    detail::check_support_cover(g, f);
    auto r = detail::integral_on(g, f, [&](double y) {
        const double gy = g(y);
        if (!(gy > 0.0)) return 0.0;
        const double fy = f(y);
        if (!(fy > 0.0)) {
            // underflow deep in a tail: the term is below double resolution
            if (f.support.contains(y)) return 0.0;
            fail(Errc::SupportMismatch, "g > 0 where f = 0");
        }
        return gy * (std::log(gy) - std::log(fy));
    });
    return detail::make_value(r.value, g, r.abs_error);
}

inline DivergenceValue dpd(const ScalarDensity& g, const ScalarDensity& f, const TuningPair& t) {
    const double a = t.alpha;
    if (a == 1.0) return kld(g, f);
    detail::check_kinds(g, f);
    if (a < 1.0) detail::check_support_cover(g, f);
    auto i1 = detail::integral_on(g, f, [&](double y) {
        const double gy = g(y);
        if (!(gy > 0.0)) return 0.0;
        return detail::power_term(gy, 1.0, f, y, a - 1.0);
    });
    auto i2 = detail::integral_on(g, f, [&](double y) { return std::pow(g(y), a); });
    auto i3 = detail::integral_on(f, g, [&](double y) { return std::pow(f(y), a); });
    const double v = a / (1.0 - a) * i1.value - 1.0 / (1.0 - a) * i2.value + i3.value;
    const double e = std::fabs(a / (1.0 - a)) * i1.abs_error + std::fabs(1.0 / (1.0 - a)) * i2.abs_error + i3.abs_error;
    return detail::make_value(v, g, e);
}

inline DivergenceValue ldpd(const ScalarDensity& g, const ScalarDensity& f, const TuningPair& t) {
    const double a = t.alpha;
    if (a == 1.0) return kld(g, f);
    detail::check_kinds(g, f);
    if (a < 1.0) detail::check_support_cover(g, f);
    auto i1 = detail::integral_on(g, f, [&](double y) {
        const double gy = g(y);
        if (!(gy > 0.0)) return 0.0;
        return detail::power_term(gy, 1.0, f, y, a - 1.0);
    });
    auto i2 = detail::integral_on(g, f, [&](double y) { return std::pow(g(y), a); });
    auto i3 = detail::integral_on(f, g, [&](double y) { return std::pow(f(y), a); });
    const double v = a / (1.0 - a) * detail::safe_log(i1.value) - 1.0 / (1.0 - a) * detail::safe_log(i2.value) +
                     detail::safe_log(i3.value);
    const double e = std::fabs(a / (1.0 - a)) * i1.abs_error / i1.value +
                     std::fabs(1.0 / (1.0 - a)) * i2.abs_error / i2.value + i3.abs_error / i3.value;
    return detail::make_value(v, g, e);
}

inline DivergenceValue lnre(const ScalarDensity& g, const ScalarDensity& f, const TuningPair& t) {
    const double a = t.alpha, b = t.beta;
    detail::check_kinds(g, f);
    if (t.limit_branch()) {
        if (a == 1.0) return kld(g, f);
        detail::check_support_cover(g, f);
        auto num = detail::integral_on(g, f, [&](double y) {
            const double gy = g(y);
            const double fy = f(y);
            if (!(gy > 0.0) || !(fy > 0.0)) return 0.0;
            return std::pow(gy, a) * (std::log(gy) - std::log(fy));
        });
        auto ga = detail::integral_on(g, f, [&](double y) { return std::pow(g(y), a); });
        auto fa = detail::integral_on(f, g, [&](double y) { return std::pow(f(y), a); });
        const double v = num.value / ga.value + (detail::safe_log(fa.value) - detail::safe_log(ga.value)) / a;
        const double e = num.abs_error / ga.value + (fa.abs_error / fa.value + ga.abs_error / ga.value) / a;
        return detail::make_value(v, g, e);
    }
    if (b == 0.0) fail(Errc::InvalidTuning, "beta = 0 is not supported");
    if (a < b) detail::check_support_cover(g, f);
    auto i1 = detail::integral_on(g, f, [&](double y) {
        const double gy = g(y);
        if (!(gy > 0.0)) return 0.0;
        return detail::power_term(gy, b, f, y, a - b);
    });
    auto i2 = detail::integral_on(g, f, [&](double y) { return std::pow(g(y), a); });
    auto i3 = detail::integral_on(f, g, [&](double y) { return std::pow(f(y), a); });
    const double c1 = a / (b * (b - a)), c2 = 1.0 / (b - a), c3 = 1.0 / b;
    const double v = c1 * detail::safe_log(i1.value) - c2 * detail::safe_log(i2.value) + c3 * detail::safe_log(i3.value);
    const double e = std::fabs(c1) * i1.abs_error / i1.value + std::fabs(c2) * i2.abs_error / i2.value +
                     std::fabs(c3) * i3.abs_error / i3.value;
    return detail::make_value(v, g, e);
}

} // namespace lnre
