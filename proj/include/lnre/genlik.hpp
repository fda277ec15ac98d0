#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <limits>
#include <vector>

#include "density.hpp"
#include "error.hpp"
#include "kde.hpp"
#include "quadrature.hpp"
#include "tuning.hpp"

namespace lnre {

enum class GenLikType { ML, DPD, LDPD, LNRE };

struct GenLikKind {
    GenLikType type = GenLikType::ML;
    TuningPair t;

    static GenLikKind ml() { return {}; }
    static GenLikKind dpd(double alpha) { return {GenLikType::DPD, TuningPair(alpha, 1.0)}; }
    static GenLikKind ldpd(double alpha) { return {GenLikType::LDPD, TuningPair(alpha, 1.0)}; }
    static GenLikKind lnre(double alpha, double beta) { return {GenLikType::LNRE, TuningPair(alpha, beta)}; }
};

inline double power_integral(const ScalarDensity& f, double alpha) {
    auto r = integrate_over(f, [&](double y) {
        const double v = f(y);
        return v > 0.0 ? std::pow(v, alpha) : 0.0;
    });
    if (!std::isfinite(r.value)) fail(Errc::NonIntegrable, "power integral diverges");
    return r.value;
}

inline double alpha_norm(const ScalarDensity& f, double alpha) {
    if (!(alpha > 0.0)) fail(Errc::InvalidTuning, "alpha must be positive");
    const double v = power_integral(f, alpha);
    if (!(v > 0.0)) fail(Errc::LogOfNonPositive, "power integral is not positive");
    return std::pow(v, 1.0 / alpha);
}

namespace detail {

// Generalized likelihood from the model values at the observations.
// `fa` is the integral of f^alpha (ignored for ML).
inline double genlik_from_values(const GenLikKind& kind, const std::vector<double>& fy, const std::vector<double>& w,
                                 double fa) {
    const double n = static_cast<double>(fy.size());
    if (fy.empty()) fail(Errc::EmptyInput, "empty sample");
    const double a = kind.t.alpha;
    auto log_mean_ml = [&]() {
        double s = 0.0;
        for (double v : fy) {
            if (!(v > 0.0)) fail(Errc::LogOfNonPositive, "observation has zero model density");
            s += std::log(v);
        }
        return s / n;
    };
    switch (kind.type) {
    case GenLikType::ML:
        return log_mean_ml();
    case GenLikType::DPD: {
        if (a == 1.0) return log_mean_ml();
        double s = 0.0;
        for (double v : fy) s += (a * std::pow(v, a - 1.0) - 1.0) / (a - 1.0);
        return s / n - fa;
    }
    case GenLikType::LDPD: {
        if (a == 1.0) return log_mean_ml();
        double s = 0.0;
        for (double v : fy) s += std::pow(v, a - 1.0);
        s /= n;
        if (!(s > 0.0) || !std::isfinite(s)) fail(Errc::LogOfNonPositive, "Jones likelihood argument not positive");
        return std::log(s) / (a - 1.0) - std::log(fa) / a;
    }
    case GenLikType::LNRE: {
        const double b = kind.t.beta;
        if (kind.t.limit_branch()) {
            // weighted mean log-density; lambda-free constants dropped
            double s = 0.0, sw = 0.0;
            for (std::size_t j = 0; j < fy.size(); ++j) {
                if (!(fy[j] > 0.0)) fail(Errc::LogOfNonPositive, "observation has zero model density");
                s += w[j] * std::log(fy[j]);
                sw += w[j];
            }
            return s / sw - std::log(fa) / a;
        }
        const double e = a - b;
        double s = 0.0;
        bool any = false;
        for (std::size_t j = 0; j < fy.size(); ++j) {
            if (fy[j] > 0.0) {
                any = true;
                s += w[j] * std::pow(fy[j], e);
            } else if (e < 0.0) {
                fail(Errc::SupportMismatch, "observation outside the model support with alpha < beta");
            }
        }
        if (!any) fail(Errc::AllOutsideSupport, "every observation lies outside the model support");
        s /= n;
        if (!(s > 0.0) || !std::isfinite(s)) fail(Errc::LogOfNonPositive, "LNRE likelihood argument not positive");
        return std::log(s) / e - std::log(fa) / a;
    }
    }
    return std::numeric_limits<double>::quiet_NaN();
}

} // namespace detail

// L_G evaluated on a weighted sample for the model density f.
inline double generalized_likelihood(const GenLikKind& kind, const WeightedSample& ws, const ScalarDensity& f) {
    std::vector<double> fy;
    fy.reserve(ws.size());
    for (double y : ws.values) fy.push_back(f(y));
    const double fa = kind.type == GenLikType::ML ? 1.0 : power_integral(f, kind.t.alpha);
    return detail::genlik_from_values(kind, fy, ws.weights, fa);
}

template <class Family, class Lambda>
double generalized_likelihood(const GenLikKind& kind, const WeightedSample& ws, const Family& fam, const Lambda& lam) {
    return generalized_likelihood(kind, ws, fam(lam));
}

// Pairwise summation keeps the reduction order fixed.
inline double pairwise_sum(const double* x, std::size_t n) {
    if (n <= 8) {
        double s = 0.0;
        for (std::size_t i = 0; i < n; ++i) s += x[i];
        return s;
    }
    const std::size_t h = n / 2;
    return pairwise_sum(x, h) + pairwise_sum(x + h, n - h);
}

struct DeformedPMF {
    std::size_t n = 0;
    std::vector<double> space;                  // S
    std::vector<std::vector<double>> outcomes;  // S^n in lexicographic order
    std::vector<double> probs;

    std::size_t size() const { return probs.size(); }
};

inline std::vector<std::vector<double>> enumerate_tuples(const std::vector<double>& space, std::size_t n) {
    if (space.empty() || n == 0) fail(Errc::EmptyInput, "empty space or n = 0");
    const double total = std::pow(static_cast<double>(space.size()), static_cast<double>(n));
    if (total > 1e6) fail(Errc::EnumerationTooLarge, "|S|^n exceeds 10^6");
    const auto count = static_cast<std::size_t>(total + 0.5);
    std::vector<std::vector<double>> out;
    out.reserve(count);
    std::vector<std::size_t> idx(n, 0);
    for (std::size_t c = 0; c < count; ++c) {
        std::vector<double> t(n);
        for (std::size_t k = 0; k < n; ++k) t[k] = space[idx[k]];
        out.push_back(std::move(t));
        for (std::size_t k = n; k-- > 0;) {
            if (++idx[k] < space.size()) break;
            idx[k] = 0;
        }
    }
    return out;
}

// Empirical-pmf power weights ghat(y_j)^(beta-1) for a realized tuple.
inline std::vector<double> empirical_weights(const std::vector<double>& tuple, double beta) {
    std::vector<double> w(tuple.size(), 1.0);
    if (beta == 1.0) return w;
    const double n = static_cast<double>(tuple.size());
    for (std::size_t j = 0; j < tuple.size(); ++j) {
        const double c = static_cast<double>(std::count(tuple.begin(), tuple.end(), tuple[j]));
        w[j] = std::pow(c / n, beta - 1.0);
    }
    return w;
}

// Deformed distribution proportional to exp(L_G) over S^n, S the finite support of f.
inline DeformedPMF deformed_pmf(const GenLikKind& kind, const ScalarDensity& f, std::size_t n) {
    if (!f.discrete()) fail(Errc::InvalidParams, "deformed pmf needs a finite support");
    DeformedPMF pmf;
    pmf.n = n;
    pmf.space = f.support.points;
    pmf.outcomes = enumerate_tuples(pmf.space, n);
    const double fa = kind.type == GenLikType::ML ? 1.0 : power_integral(f, kind.t.alpha);
    std::vector<double> logw(pmf.outcomes.size());
    double top = -std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < pmf.outcomes.size(); ++i) {
        const auto& t = pmf.outcomes[i];
        std::vector<double> fy(n);
        for (std::size_t j = 0; j < n; ++j) fy[j] = f(t[j]);
        const double beta = kind.type == GenLikType::LNRE ? kind.t.beta : 1.0;
        double L;
        try {
            L = detail::genlik_from_values(kind, fy, empirical_weights(t, beta), fa);
        } catch (const Error& e) {
            if (e.code() != Errc::LogOfNonPositive && e.code() != Errc::AllOutsideSupport) throw;
            L = -std::numeric_limits<double>::infinity();
        }
        logw[i] = L;
        top = std::max(top, L);
    }
    if (!std::isfinite(top)) fail(Errc::DegenerateNormalizer, "every outcome has zero deformed mass");
    pmf.probs.resize(logw.size());
    for (std::size_t i = 0; i < logw.size(); ++i) pmf.probs[i] = std::exp(logw[i] - top);
    const double z = pairwise_sum(pmf.probs.data(), pmf.probs.size());
    if (!(z > 0.0) || !std::isfinite(z)) fail(Errc::DegenerateNormalizer, "normalizer is not finite");
    for (auto& p : pmf.probs) p /= z;
    return pmf;
}

template <class Family>
DeformedPMF deformed_pmf(const GenLikKind& kind, const Family& fam, std::size_t n, double lambda) {
    return deformed_pmf(kind, fam(lambda), n);
}

// Left minus right side of the LNRE estimating equation, one entry per
// parameter component. `score` maps y to the gradient of log f.
inline std::vector<double> estimating_equation_residual(
    const WeightedSample& ws, const ScalarDensity& f, const std::function<std::vector<double>(double)>& score,
    const TuningPair& t) {
    const double e = t.alpha - t.beta;
    std::vector<double> lhs;
    double den = 0.0;
    for (std::size_t j = 0; j < ws.size(); ++j) {
        const double fy = f(ws.values[j]);
        if (!(fy > 0.0)) continue;
        const double c = ws.weights[j] * std::pow(fy, e);
        const auto u = score(ws.values[j]);
        if (lhs.empty()) lhs.assign(u.size(), 0.0);
        for (std::size_t i = 0; i < u.size(); ++i) lhs[i] += c * u[i];
        den += c;
    }
    if (lhs.empty()) fail(Errc::AllOutsideSupport, "no observation inside the model support");
    const double fa = power_integral(f, t.alpha);
    std::vector<double> res(lhs.size());
    for (std::size_t i = 0; i < lhs.size(); ++i) {
        auto r = integrate_over(f, [&](double y) {
            const double fy = f(y);
            if (!(fy > 0.0)) return 0.0;
            return std::pow(fy, t.alpha) * score(y)[i];
        });
        res[i] = lhs[i] / den - r.value / fa;
    }
    return res;
}

} // namespace lnre
