#pragma once

#include <cmath>
#include <cstdint>
#include <functional>
#include <numbers>
#include <random>
#include <utility>
#include <vector>

#include "density.hpp"
#include "error.hpp"
#include "quadrature.hpp"
#include "tuning.hpp"

namespace lnre {

// Student family: nu > 0 is the t-branch, nu < 0 the compact r-branch.
struct StudentParams {
    double mu = 0.0;
    double sigma2 = 1.0;
    double nu = 3.0;

    void validate() const {
        if (!(sigma2 > 0.0) || !std::isfinite(sigma2)) fail(Errc::InvalidParams, "sigma2 must be positive");
        if (nu == 0.0 || !std::isfinite(nu)) fail(Errc::InvalidParams, "nu must be finite and non-zero");
        if (!std::isfinite(mu)) fail(Errc::InvalidParams, "mu must be finite");
    }
    bool r_branch() const { return nu < 0.0; }
    // half-width of the r-branch support
    double radius() const { return r_branch() ? std::sqrt(-nu * sigma2) : inf; }
    double lower() const { return mu - radius(); }
    double upper() const { return mu + radius(); }
};

inline double student_log_normalizer(const StudentParams& p) {
    p.validate();
    const double nu = p.nu;
    if (nu > 0.0)
        return std::lgamma(0.5 * (nu + 1.0)) - std::lgamma(0.5 * nu) - 0.5 * std::log(std::numbers::pi * nu * p.sigma2);
    return std::lgamma(1.0 - 0.5 * nu) - std::lgamma(0.5 * (1.0 - nu)) - 0.5 * std::log(-std::numbers::pi * nu * p.sigma2);
}

// 1 + (y-mu)^2/(nu sigma2); non-positive outside the r-branch support
inline double student_bracket(double y, const StudentParams& p) {
    const double z = y - p.mu;
    return 1.0 + z * z / (p.nu * p.sigma2);
}

inline bool student_in_support(double y, const StudentParams& p) {
    return !p.r_branch() || student_bracket(y, p) > 0.0;
}

inline double student_logpdf(double y, const StudentParams& p) {
    const double b = student_bracket(y, p);
    if (!(b > 0.0)) return -inf;
    return student_log_normalizer(p) - 0.5 * (p.nu + 1.0) * std::log(b);
}

inline double student_pdf(double y, const StudentParams& p) {
    p.validate();
    const double b = student_bracket(y, p);
    if (!(b > 0.0)) return 0.0;
    return std::exp(student_log_normalizer(p) - 0.5 * (p.nu + 1.0) * std::log(b));
}

// Gradient of log pdf in (mu, sigma2).
inline std::pair<double, double> student_score(double y, const StudentParams& p) {
    p.validate();
    const double b = student_bracket(y, p);
    if (!(b > 0.0)) fail(Errc::OutsideSupport, "score requested outside the support");
    const double z = y - p.mu, s2 = p.sigma2;
    return {(p.nu + 1.0) * z / (p.nu * s2 * b), (z * z - s2) / (2.0 * s2 * s2 * b)};
}

// Closed form of the integral of pdf^alpha over the support.
inline double student_power_integral(const StudentParams& p, double alpha) {
    p.validate();
    const double logF = student_log_normalizer(p);
    const double s = std::sqrt(p.sigma2);
    double a2;
    double logscale;
    if (p.nu > 0.0) {
        a2 = 0.5 * alpha * (p.nu + 1.0) - 0.5;
        logscale = std::log(s * std::sqrt(p.nu));
    } else {
        a2 = 0.5 * alpha * (-p.nu - 1.0) + 1.0;
        logscale = std::log(s * std::sqrt(-p.nu));
    }
    if (!(a2 > 0.0)) fail(Errc::NonIntegrable, "power integral of the Student density diverges");
    const double logbeta = std::lgamma(0.5) + std::lgamma(a2) - std::lgamma(0.5 + a2);
    return std::exp(alpha * logF + logscale + logbeta);
}

inline ScalarDensity student_density(const StudentParams& p) {
    p.validate();
    ScalarDensity d;
    d.pdf = [p](double y) { return student_pdf(y, p); };
    d.support = Support::interval(p.lower(), p.upper());
    d.breaks = {p.mu};
    d.name = p.r_branch() ? "student-r" : "student-t";
    return d;
}

template <class Rng>
double student_draw(Rng& rng, const StudentParams& p) {
    const double s = std::sqrt(p.sigma2);
    if (p.nu > 0.0) {
        std::student_t_distribution<double> t(p.nu);
        return p.mu + s * t(rng);
    }
    const double a = 0.5 * (1.0 - p.nu);
    std::gamma_distribution<double> g(a, 1.0);
    const double x = g(rng), z = g(rng);
    const double b = x / (x + z);
    return p.mu + s * std::sqrt(-p.nu) * (2.0 * b - 1.0);
}

inline std::vector<double> student_sample(std::size_t n, const StudentParams& p, std::uint64_t seed) {
    p.validate();
    if (n < 1) fail(Errc::InvalidParams, "sample size must be at least 1");
    std::mt19937_64 rng(seed);
    std::vector<double> out(n);
    for (auto& v : out) v = student_draw(rng, p);
    return out;
}

inline double normal_pdf(double y, double mean, double var) {
    return std::exp(-0.5 * (y - mean) * (y - mean) / var) / std::sqrt(2.0 * std::numbers::pi * var);
}

struct MixtureSpec {
    double eta = 0.0;
    StudentParams base;
    double cont_mean = 0.0;
    double cont_var = 16.0;

    void validate() const {
        if (!(eta >= 0.0 && eta <= 1.0)) fail(Errc::InvalidParams, "eta must lie in [0,1]");
        if (!(cont_var > 0.0)) fail(Errc::InvalidParams, "contaminant variance must be positive");
        base.validate();
    }
};

inline double mixture_pdf(double y, const MixtureSpec& m) {
    m.validate();
    double v = 0.0;
    if (m.eta < 1.0) v += (1.0 - m.eta) * student_pdf(y, m.base);
    if (m.eta > 0.0) v += m.eta * normal_pdf(y, m.cont_mean, m.cont_var);
    return v;
}

inline ScalarDensity mixture_density(const MixtureSpec& m) {
    m.validate();
    ScalarDensity d;
    d.pdf = [m](double y) { return mixture_pdf(y, m); };
    if (m.eta > 0.0)
        d.support = Support::interval(-inf, inf);
    else
        d.support = Support::interval(m.base.lower(), m.base.upper());
    d.breaks = {m.base.mu, m.cont_mean};
    if (m.base.r_branch()) {
        d.breaks.push_back(m.base.lower());
        d.breaks.push_back(m.base.upper());
    }
    d.name = "mixture";
    return d;
}

template <class Rng>
double mixture_draw(Rng& rng, const MixtureSpec& m) {
    std::uniform_real_distribution<double> u(0.0, 1.0);
    if (u(rng) < m.eta) {
        std::normal_distribution<double> nd(m.cont_mean, std::sqrt(m.cont_var));
        return nd(rng);
    }
    return student_draw(rng, m.base);
}

inline std::vector<double> mixture_sample(std::size_t n, const MixtureSpec& m, std::uint64_t seed) {
    m.validate();
    if (n < 1) fail(Errc::InvalidParams, "sample size must be at least 1");
    std::mt19937_64 rng(seed);
    std::vector<double> out(n);
    for (auto& v : out) v = mixture_draw(rng, m);
    return out;
}

// Power-law family N(lambda) [h(y) + w(lambda)^T f(y)]^{1/(alpha-beta)} on a
// (possibly lambda-dependent) interval support.
struct MabRepresentation {
    using Lambda = std::vector<double>;
    std::function<double(double)> h;
    std::vector<std::function<double(double)>> f_vec;
    std::function<std::vector<double>(const Lambda&)> w;
    TuningPair t;
    std::function<std::pair<double, double>(const Lambda&)> support;
    double l = 0.0; // l_{alpha,beta}
    double d = 0.0; // d_{alpha,beta}, only meaningful when l < 0

    double bracket(double y, const Lambda& lam) const {
        const auto wl = w(lam);
        double b = h(y);
        for (std::size_t i = 0; i < f_vec.size(); ++i) b += wl[i] * f_vec[i](y);
        return b;
    }
    double kernel(double y, const Lambda& lam) const {
        const auto [lo, hi] = support(lam);
        if (y <= lo || y >= hi) return 0.0;
        const double b = bracket(y, lam);
        if (!(b > 0.0)) return 0.0;
        return std::pow(b, 1.0 / (t.alpha - t.beta));
    }
    // N(lambda), from quadrature of the kernel
    double normalizer(const Lambda& lam) const {
        const auto [lo, hi] = support(lam);
        const auto r = integrate_checked([&](double y) { return kernel(y, lam); }, lo, hi);
        if (!(r.value > 0.0)) fail(Errc::DegenerateNormalizer, "kernel integrates to zero");
        return 1.0 / r.value;
    }
    double density(double y, const Lambda& lam) const { return normalizer(lam) * kernel(y, lam); }
};

inline MabRepresentation represent_student_as_mab(double nu, double beta) {
    if (nu == 0.0 || nu == -1.0 || !std::isfinite(nu)) fail(Errc::InvalidParams, "invalid nu");
    if (nu > 0.0 && !(nu > 1.0)) fail(Errc::InvalidParams, "t-branch representation needs nu > 1");
    const double alpha = student_alpha(nu, beta);
    if (!(alpha > 0.0)) fail(Errc::InvalidTuning, "alpha = beta - 2/(nu+1) must be positive");
    MabRepresentation m;
    m.t = TuningPair(alpha, beta);
    m.l = (beta - alpha) / (2.0 + alpha - beta);
    m.d = m.l < 0.0 ? std::sqrt(-1.0 / m.l) : inf;
    const double l = m.l;
    m.h = [](double) { return 1.0; };
    m.f_vec = {[](double y) { return y * y; }, [](double y) { return y; }};
    m.w = [l](const MabRepresentation::Lambda& lam) {
        const double mu = lam.at(0), s2 = lam.at(1);
        const double den = s2 + l * mu * mu;
        if (!(den > 0.0)) fail(Errc::InvalidParams, "sigma2 + l mu^2 must be positive");
        return std::vector<double>{l / den, -2.0 * mu * l / den};
    };
    m.support = [nu](const MabRepresentation::Lambda& lam) -> std::pair<double, double> {
        if (nu > 0.0) return {-inf, inf};
        const double r = std::sqrt(-nu * lam.at(1));
        return {lam.at(0) - r, lam.at(0) + r};
    };
    return m;
}

} // namespace lnre
