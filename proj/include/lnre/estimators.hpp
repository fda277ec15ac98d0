#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <numeric>
#include <string>
#include <utility>
#include <vector>

#include "error.hpp"
#include "kde.hpp"
#include "models.hpp"
#include "quadrature.hpp"
#include "tuning.hpp"

namespace lnre {

struct LocalMaximizer {
    std::size_t cell = 0;
    double lower = 0.0;
    double upper = 0.0;
    double candidate = 0.0;
    double objective = 0.0;
};

struct EstimateRecord {
    std::vector<std::string> names;
    std::vector<double> estimate;
    double beta = 1.0;
    double alpha = 1.0;
    double objective = 0.0;
    std::size_t best_cell = 0;
    std::vector<LocalMaximizer> local_maximizers;
    std::map<std::string, double> diagnostics;

    double value(const std::string& name) const {
        for (std::size_t i = 0; i < names.size(); ++i)
            if (names[i] == name) return estimate[i];
        fail(Errc::InvalidParams, "estimate has no component " + name);
    }
};

// ---- Student-t closed form -------------------------------------------------

inline double c1_constant(double nu, double beta) {
    if (!(nu > 0.0)) fail(Errc::TuningOutOfRange, "C1 needs nu > 0");
    if (!(beta > 3.0 / (nu + 1.0))) fail(Errc::TuningOutOfRange, "C1 needs beta > 3/(nu+1)");
    const double q = 0.5 * (nu + 1.0) * beta;
    return 1.0 - ((nu + 1.0) / nu) * (q - 1.5) / (q - 1.0);
}

// The defining ratio of integrals behind C1, by quadrature.
inline double c1_by_quadrature(double nu, double beta) {
    if (!(nu > 0.0) || !(beta > 3.0 / (nu + 1.0))) fail(Errc::TuningOutOfRange, "C1 needs beta > 3/(nu+1)");
    const double q = 0.5 * (nu + 1.0) * beta;
    QuadOptions o;
    o.abs_tol = 1e-13;
    o.rel_tol = 1e-13;
    const auto num = integrate_checked([&](double t) { return (t * t - 1.0) * std::pow(nu + t * t, -q); }, -inf, inf,
                                       {}, o);
    const auto den = integrate_checked([&](double t) { return std::pow(nu + t * t, 1.0 - q); }, -inf, inf, {}, o);
    return num.value / den.value;
}

// LNRE likelihood of a Student model on a weighted sample, closed-form norm.
inline double student_lnre_likelihood(const WeightedSample& ws, const StudentParams& p, const TuningPair& t) {
    const double e = t.alpha - t.beta;
    double s = 0.0;
    bool any = false;
    for (std::size_t j = 0; j < ws.size(); ++j) {
        const double lf = student_logpdf(ws.values[j], p);
        if (!std::isfinite(lf)) {
            if (e < 0.0) fail(Errc::SupportMismatch, "observation outside the model support");
            continue;
        }
        any = true;
        s += ws.weights[j] * std::exp(e * lf);
    }
    if (!any) fail(Errc::AllOutsideSupport, "every observation lies outside the model support");
    s /= static_cast<double>(ws.size());
    return std::log(s) / e - std::log(student_power_integral(p, t.alpha)) / t.alpha;
}

inline EstimateRecord mlnree_student_t(const WeightedSample& ws, double nu, double beta) {
    if (!(nu > 1.0)) fail(Errc::InvalidParams, "Student-t estimator needs nu > 1");
    if (ws.size() < 2) fail(Errc::DegenerateSample, "need at least two observations");
    const double c1 = c1_constant(nu, beta);
    const double sw = ws.weight_sum();
    double t1 = 0.0;
    for (std::size_t j = 0; j < ws.size(); ++j) t1 += ws.weights[j] * ws.values[j];
    t1 /= sw;
    double v = 0.0, t2 = 0.0;
    for (std::size_t j = 0; j < ws.size(); ++j) {
        const double z = ws.values[j] - t1;
        v += ws.weights[j] * z * z;
        t2 += ws.weights[j] * ws.values[j] * ws.values[j];
    }
    v /= sw;
    t2 /= sw;
    if (!(v > 0.0)) fail(Errc::DegenerateSample, "weighted variance is zero");
    const double factor = (1.0 - c1) / (1.0 + nu * c1);
    EstimateRecord r;
    r.names = {"mu", "sigma2"};
    r.estimate = {t1, factor * v};
    r.beta = beta;
    r.alpha = student_alpha(nu, beta);
    r.diagnostics = {{"C1", c1}, {"factor", factor}, {"T1", t1}, {"T2", t2}, {"nu", nu}};
    r.objective = student_lnre_likelihood(ws, {t1, factor * v, nu}, TuningPair(r.alpha, beta));
    r.local_maximizers.push_back({0, -inf, inf, t1, r.objective});
    return r;
}

inline EstimateRecord mlnree_student_t(const std::vector<double>& sample, double nu, double beta,
                                       const BandwidthRule& rule) {
    if (!(nu > 1.0)) fail(Errc::InvalidParams, "Student-t estimator needs nu > 1");
    c1_constant(nu, beta);
    if (sample.size() < 2) fail(Errc::DegenerateSample, "need at least two observations");
    auto r = mlnree_student_t(power_weights(sample, rule, beta), nu, beta);
    if (beta != 1.0) r.diagnostics["bandwidth"] = kde_fit(sample, rule).bandwidth();
    return r;
}

// ---- interval partitions ---------------------------------------------------

struct PartitionCell {
    double lower = 0.0;
    double upper = 0.0;
    std::vector<std::size_t> active; // indices into the input interval list
};

struct IntervalPartition {
    std::vector<double> breakpoints;
    std::vector<PartitionCell> cells;
};

// Sweep over the sorted distinct endpoints; a cell keeps interval j active
// when the cell lies inside it. Upper ends may be +inf.
inline IntervalPartition build_partition(const std::vector<std::pair<double, double>>& intervals) {
    if (intervals.empty()) fail(Errc::EmptyInput, "no intervals");
    IntervalPartition p;
    bool unbounded = false;
    for (const auto& [lo, hi] : intervals) {
        if (!std::isfinite(lo) || std::isnan(hi) || hi < lo) fail(Errc::InvalidParams, "malformed interval");
        p.breakpoints.push_back(lo);
        if (std::isfinite(hi))
            p.breakpoints.push_back(hi);
        else
            unbounded = true;
    }
    std::sort(p.breakpoints.begin(), p.breakpoints.end());
    p.breakpoints.erase(std::unique(p.breakpoints.begin(), p.breakpoints.end()), p.breakpoints.end());
    auto active_for = [&](double lo, double hi) {
        std::vector<std::size_t> a;
        for (std::size_t j = 0; j < intervals.size(); ++j)
            if (intervals[j].first <= lo && hi <= intervals[j].second) a.push_back(j);
        return a;
    };
    for (std::size_t k = 0; k + 1 < p.breakpoints.size(); ++k) {
        auto a = active_for(p.breakpoints[k], p.breakpoints[k + 1]);
        if (!a.empty()) p.cells.push_back({p.breakpoints[k], p.breakpoints[k + 1], std::move(a)});
    }
    if (unbounded) {
        auto a = active_for(p.breakpoints.back(), inf);
        if (!a.empty()) p.cells.push_back({p.breakpoints.back(), inf, std::move(a)});
    }
    if (p.breakpoints.size() == 1 && !unbounded) {
        // every interval is the same single point
        p.cells.push_back({p.breakpoints[0], p.breakpoints[0], active_for(p.breakpoints[0], p.breakpoints[0])});
    }
    return p;
}

namespace detail {

inline void check_r_tuning(double nu, double beta) {
    if (!(nu < -1.0)) fail(Errc::TuningOutOfRange, "Student-r estimators need nu < -1");
    if (!(student_alpha(nu, beta) > 0.0)) fail(Errc::TuningOutOfRange, "alpha = beta - 2/(nu+1) must be positive");
}

// strict improvement beyond the tie tolerance; ties keep the earlier (smaller) cell
inline bool improves(double cand, double best) {
    if (!std::isfinite(best)) return cand > best;
    return cand > best + 1e-12 * std::max(1.0, std::fabs(best));
}

} // namespace detail

// Full location objective sum_j w_j [1 + l (y_j - mu)^2 / sigma2]_+.
inline double student_r_location_objective(const WeightedSample& ws, double nu, double sigma2, double mu) {
    const double l = 1.0 / nu;
    double s = 0.0;
    for (std::size_t j = 0; j < ws.size(); ++j) {
        const double z = ws.values[j] - mu;
        s += ws.weights[j] * std::max(0.0, 1.0 + l * z * z / sigma2);
    }
    return s;
}

// Full scale objective (sigma2)^(-a) sum_j w_j [1 + l (y_j - mu)^2 / sigma2]_+.
inline double student_r_scale_objective(const WeightedSample& ws, double nu, double mu, double beta, double sigma2) {
    const double alpha = student_alpha(nu, beta);
    const double a = (alpha - beta) / (2.0 * alpha);
    const double l = 1.0 / nu;
    double s = 0.0;
    for (std::size_t j = 0; j < ws.size(); ++j) {
        const double z = ws.values[j] - mu;
        s += ws.weights[j] * std::max(0.0, 1.0 + l * z * z / sigma2);
    }
    return std::pow(sigma2, -a) * s;
}

inline EstimateRecord mlnree_student_r_location(const WeightedSample& ws, double nu, double sigma2, double beta) {
    detail::check_r_tuning(nu, beta);
    if (!(sigma2 > 0.0)) fail(Errc::InvalidParams, "sigma2 must be positive");
    if (ws.size() == 0) fail(Errc::EmptyInput, "empty sample");
    const double r = std::sqrt(-nu * sigma2), l = 1.0 / nu;
    std::vector<std::pair<double, double>> iv;
    for (double y : ws.values) iv.emplace_back(y - r, y + r);
    const auto part = build_partition(iv);
    if (part.cells.empty()) fail(Errc::NoFeasibleCell, "partition has no cells");
    EstimateRecord rec;
    rec.names = {"mu"};
    rec.beta = beta;
    rec.alpha = student_alpha(nu, beta);
    double best = -inf;
    for (std::size_t c = 0; c < part.cells.size(); ++c) {
        const auto& cell = part.cells[c];
        double sw = 0.0, swy = 0.0;
        for (auto j : cell.active) {
            sw += ws.weights[j];
            swy += ws.weights[j] * ws.values[j];
        }
        const double cand = std::clamp(swy / sw, cell.lower, cell.upper);
        double obj = 0.0;
        for (auto j : cell.active) {
            const double z = ws.values[j] - cand;
            obj += ws.weights[j] * (1.0 + l * z * z / sigma2);
        }
        rec.local_maximizers.push_back({c, cell.lower, cell.upper, cand, obj});
        if (detail::improves(obj, best)) {
            best = obj;
            rec.best_cell = c;
        }
    }
    rec.objective = best;
    rec.estimate = {rec.local_maximizers[rec.best_cell].candidate};
    rec.diagnostics = {{"l", l}, {"d", std::sqrt(-nu)}, {"nu", nu}, {"sigma2", sigma2},
                       {"cells", static_cast<double>(part.cells.size())}};
    return rec;
}

inline EstimateRecord mlnree_student_r_location(const std::vector<double>& sample, double nu, double sigma2,
                                                double beta, const BandwidthRule& rule) {
    detail::check_r_tuning(nu, beta);
    if (sample.empty()) fail(Errc::EmptyInput, "empty sample");
    const bool all_equal = std::all_of(sample.begin(), sample.end(), [&](double v) { return v == sample.front(); });
    if (all_equal) {
        EstimateRecord rec = mlnree_student_r_location(unit_weights(sample), nu, sigma2, beta);
        rec.beta = beta;
        rec.alpha = student_alpha(nu, beta);
        return rec;
    }
    auto rec = mlnree_student_r_location(power_weights(sample, rule, beta), nu, sigma2, beta);
    if (beta != 1.0) rec.diagnostics["bandwidth"] = kde_fit(sample, rule).bandwidth();
    return rec;
}

inline double scale_stationary_factor(double nu, double beta) {
    return (1.0 - student_alpha(nu, beta) * (nu + 1.0)) / (-nu);
}

inline EstimateRecord mlnree_student_r_scale(const WeightedSample& ws, double nu, double mu, double beta) {
    detail::check_r_tuning(nu, beta);
    if (ws.size() == 0) fail(Errc::EmptyInput, "empty sample");
    const double alpha = student_alpha(nu, beta);
    const double a = (alpha - beta) / (2.0 * alpha), l = 1.0 / nu;
    const double factor = scale_stationary_factor(nu, beta);
    // order by |y - mu|
    std::vector<std::size_t> order(ws.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(), [&](std::size_t i, std::size_t j) {
        return std::fabs(ws.values[i] - mu) < std::fabs(ws.values[j] - mu);
    });
    std::vector<double> d2, w;
    for (auto i : order) {
        const double z = ws.values[i] - mu;
        d2.push_back(z * z);
        w.push_back(ws.weights[i]);
    }
    std::vector<std::pair<double, double>> iv;
    for (double d : d2) iv.emplace_back(d / (-nu), inf);
    const auto part = build_partition(iv);
    if (part.cells.empty()) fail(Errc::NoFeasibleCell, "partition has no cells");
    EstimateRecord rec;
    rec.names = {"sigma2"};
    rec.beta = beta;
    rec.alpha = alpha;
    double best = -inf;
    for (std::size_t c = 0; c < part.cells.size(); ++c) {
        const auto& cell = part.cells[c];
        double sw = 0.0, sb = 0.0;
        for (auto j : cell.active) {
            sw += w[j];
            sb += w[j] * d2[j];
        }
        const double s_star = factor * sb / sw;
        const double cand = std::isfinite(cell.upper) ? std::clamp(s_star, cell.lower, cell.upper)
                                                      : std::max(s_star, cell.lower);
        if (!(cand > 0.0)) fail(Errc::DegenerateSample, "an observation equals mu; the scale objective is unbounded");
        double s = 0.0;
        for (auto j : cell.active) s += w[j] * (1.0 + l * d2[j] / cand);
        const double obj = std::pow(cand, -a) * s;
        rec.local_maximizers.push_back({c, cell.lower, cell.upper, cand, obj});
        if (detail::improves(obj, best)) {
            best = obj;
            rec.best_cell = c;
        }
    }
    rec.objective = best;
    rec.estimate = {rec.local_maximizers[rec.best_cell].candidate};
    rec.diagnostics = {{"l", l},   {"d", std::sqrt(-nu)}, {"stationary_factor", factor}, {"a", a},
                       {"nu", nu}, {"mu", mu},            {"cells", static_cast<double>(part.cells.size())}};
    return rec;
}

inline EstimateRecord mlnree_student_r_scale(const std::vector<double>& sample, double nu, double mu, double beta,
                                             const BandwidthRule& rule) {
    detail::check_r_tuning(nu, beta);
    if (sample.empty()) fail(Errc::EmptyInput, "empty sample");
    if (std::all_of(sample.begin(), sample.end(), [&](double v) { return v == sample.front(); }))
        fail(Errc::DegenerateSample, "all observations are equal");
    auto rec = mlnree_student_r_scale(power_weights(sample, rule, beta), nu, mu, beta);
    if (beta != 1.0) rec.diagnostics["bandwidth"] = kde_fit(sample, rule).bandwidth();
    return rec;
}

// Partition used by the scale path, exposed for reporting.
inline IntervalPartition scale_partition(const std::vector<double>& sample, double nu, double mu) {
    std::vector<double> d;
    for (double y : sample) d.push_back((y - mu) * (y - mu) / (-nu));
    std::sort(d.begin(), d.end());
    std::vector<std::pair<double, double>> iv;
    for (double v : d) iv.emplace_back(v, inf);
    return build_partition(iv);
}

inline IntervalPartition location_partition(const std::vector<double>& sample, double nu, double sigma2) {
    const double r = std::sqrt(-nu * sigma2);
    std::vector<std::pair<double, double>> iv;
    for (double y : sample) iv.emplace_back(y - r, y + r);
    return build_partition(iv);
}

} // namespace lnre
