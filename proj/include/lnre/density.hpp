#pragma once

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <numbers>
#include <string>
#include <utility>
#include <vector>

#include "error.hpp"
#include "quadrature.hpp"

namespace lnre {

inline constexpr double inf = std::numeric_limits<double>::infinity();

enum class DensityKind { continuous, discrete };

struct Support {
    DensityKind kind = DensityKind::continuous;
    double lower = -inf;
    double upper = inf;
    std::vector<double> points; // discrete only

    static Support interval(double lo, double hi) { return {DensityKind::continuous, lo, hi, {}}; }
    static Support finite(std::vector<double> pts) {
        std::sort(pts.begin(), pts.end());
        return {DensityKind::discrete, pts.front(), pts.back(), std::move(pts)};
    }
    bool discrete() const { return kind == DensityKind::discrete; }
    bool contains(double y) const {
        if (discrete()) return std::find(points.begin(), points.end(), y) != points.end();
        return y >= lower && y <= upper;
    }
};

struct ScalarDensity {
    std::function<double(double)> pdf;
    Support support;
    std::vector<double> breaks; // interior points where the pdf is not smooth
    std::string name;

    double operator()(double y) const { return support.contains(y) ? pdf(y) : 0.0; }
    bool discrete() const { return support.discrete(); }
};

inline ScalarDensity normal_density(double mean, double var) {
    if (!(var > 0.0)) fail(Errc::InvalidParams, "normal variance must be positive");
    const double c = 1.0 / std::sqrt(2.0 * std::numbers::pi * var);
    return {[=](double y) { return c * std::exp(-0.5 * (y - mean) * (y - mean) / var); },
            Support::interval(-inf, inf), {mean}, "normal"};
}

inline ScalarDensity discrete_density(std::vector<double> points, std::vector<double> probs, std::string name = "discrete") {
    if (points.empty() || points.size() != probs.size()) fail(Errc::InvalidParams, "points/probs size mismatch");
    for (double p : probs)
        if (!(p >= 0.0)) fail(Errc::InvalidParams, "negative probability");
    std::vector<std::pair<double, double>> pp;
    for (std::size_t i = 0; i < points.size(); ++i) pp.emplace_back(points[i], probs[i]);
    std::sort(pp.begin(), pp.end());
    std::vector<double> xs, ps;
    for (auto& [x, p] : pp) { xs.push_back(x); ps.push_back(p); }
    auto pdf = [xs, ps](double y) {
        auto it = std::lower_bound(xs.begin(), xs.end(), y);
        if (it == xs.end() || *it != y) return 0.0;
        return ps[static_cast<std::size_t>(it - xs.begin())];
    };
    return {pdf, Support::finite(xs), {}, std::move(name)};
}

inline ScalarDensity bernoulli_density(double p) {
    if (!(p >= 0.0 && p <= 1.0)) fail(Errc::InvalidParams, "Bernoulli p outside [0,1]");
    return discrete_density({0.0, 1.0}, {1.0 - p, p}, "bernoulli");
}

// Integral (continuous) or sum (discrete) of phi(y) over the support of d.
template <class Phi>
QuadResult integrate_over(const ScalarDensity& d, const Phi& phi, const QuadOptions& opt = {}) {
    if (d.discrete()) {
        QuadResult r;
        for (double y : d.support.points) r.value += phi(y);
        r.intervals = 0;
        return r;
    }
    return integrate_checked(phi, d.support.lower, d.support.upper, d.breaks, opt);
}

inline double total_mass(const ScalarDensity& d) {
    return integrate_over(d, [&](double y) { return d(y); }).value;
}

} // namespace lnre
