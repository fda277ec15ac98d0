#pragma once

#include <cmath>
#include <functional>
#include <map>
#include <vector>

#include "density.hpp"
#include "error.hpp"
#include "genlik.hpp"
#include "kde.hpp"

namespace lnre {

struct SuffStat {
    std::vector<double> components; // fbar_i / hbar
    double hbar = 0.0;
};

inline SuffStat weighted_suff_stat(const WeightedSample& ws, const std::vector<std::function<double(double)>>& f_vec,
                                   const std::function<double(double)>& h) {
    if (ws.size() == 0) fail(Errc::EmptyInput, "empty sample");
    const double n = static_cast<double>(ws.size());
    SuffStat s;
    for (std::size_t j = 0; j < ws.size(); ++j) s.hbar += ws.weights[j] * h(ws.values[j]);
    s.hbar /= n;
    if (s.hbar == 0.0 || !std::isfinite(s.hbar)) fail(Errc::ZeroHbar, "hbar is zero");
    for (const auto& fi : f_vec) {
        double fb = 0.0;
        for (std::size_t j = 0; j < ws.size(); ++j) fb += ws.weights[j] * fi(ws.values[j]);
        s.components.push_back(fb / n / s.hbar);
    }
    return s;
}

using Outcome = std::vector<double>;
using OutcomeFn = std::function<double(const Outcome&)>;

struct Moments {
    double mean = 0.0;
    double variance = 0.0;
};

template <class Stat>
Moments deformed_moments(const DeformedPMF& pmf, const Stat& stat) {
    std::vector<double> v(pmf.size());
    for (std::size_t i = 0; i < pmf.size(); ++i) v[i] = pmf.probs[i] > 0.0 ? stat(pmf.outcomes[i]) : 0.0;
    Moments m;
    for (std::size_t i = 0; i < pmf.size(); ++i) m.mean += pmf.probs[i] * v[i];
    for (std::size_t i = 0; i < pmf.size(); ++i) m.variance += pmf.probs[i] * (v[i] - m.mean) * (v[i] - m.mean);
    return m;
}

inline double outcome_mean(const Outcome& y) {
    double s = 0.0;
    for (double v : y) s += v;
    return s / static_cast<double>(y.size());
}

// Conditional deformed expectation of an estimator given T = t.
struct RaoBlackwellTable {
    std::map<double, double> table;
    std::vector<double> zero_mass_cells; // T values whose cell has no deformed mass

    double operator()(double t) const {
        auto it = table.find(t);
        if (it == table.end()) fail(Errc::ZeroMassCell, "conditional value undefined for this T cell");
        return it->second;
    }
};

template <class Est, class Stat>
RaoBlackwellTable rao_blackwellize(const DeformedPMF& pmf, const Est& estimator, const Stat& T) {
    std::map<double, std::pair<double, double>> acc; // t -> (mass, mass * estimator)
    for (std::size_t i = 0; i < pmf.size(); ++i) {
        auto& a = acc[T(pmf.outcomes[i])];
        a.first += pmf.probs[i];
        if (pmf.probs[i] > 0.0) a.second += pmf.probs[i] * estimator(pmf.outcomes[i]);
    }
    RaoBlackwellTable rb;
    for (const auto& [t, a] : acc) {
        if (a.first > 0.0)
            rb.table[t] = a.second / a.first;
        else
            rb.zero_mass_cells.push_back(t);
    }
    return rb;
}

struct FisherInfoReport {
    double lambda = 0.0;
    double i_n = 0.0;   // deformed variance of the deformed score
    double i_ab = 0.0;  // ratio information for fbar/hbar
    double tau = 0.0;   // deformed mean of the estimator
    double dtau = 0.0;
    double crlb = 0.0;  // dtau^2 / i_n
    double var_estimator = 0.0;
    double score_mean = 0.0;
};

using DeformedFamily = std::function<DeformedPMF(double)>;

namespace detail {

// Richardson-extrapolated central difference from values at lambda +/- h, +/- h/2.
inline double richardson(double fp, double fm, double fp2, double fm2, double h) {
    const double d1 = (fp - fm) / (2.0 * h);
    const double d2 = (fp2 - fm2) / h;
    return (4.0 * d2 - d1) / 3.0;
}

// Central differences at h and h/2 must agree; a gap means the step is too coarse.
inline void check_step(double fp, double fm, double fp2, double fm2, double h) {
    const double d1 = (fp - fm) / (2.0 * h), d2 = (fp2 - fm2) / h;
    if (!std::isfinite(d1) || !std::isfinite(d2) || std::fabs(d1 - d2) > 1e-3 * std::max(1.0, std::fabs(d2)))
        fail(Errc::StepTooLarge, "derivative estimates at h and h/2 disagree");
}

} // namespace detail

// Generalized Fisher information of a deformed family at lambda. `estimator`
// is fbar/hbar as a function of the outcome, `hbar` its denominator.
inline FisherInfoReport generalized_fisher_info(const DeformedFamily& family, double lambda, double step,
                                                const OutcomeFn& estimator, const OutcomeFn& hbar,
                                                const TuningPair& t) {
    if (!(step > 0.0)) fail(Errc::StepTooLarge, "step must be positive");
    const DeformedPMF p0 = family(lambda);
    const DeformedPMF pp = family(lambda + step), pm = family(lambda - step);
    const DeformedPMF pp2 = family(lambda + 0.5 * step), pm2 = family(lambda - 0.5 * step);
    const std::size_t m = p0.size();
    if (pp.size() != m || pm.size() != m || pp2.size() != m || pm2.size() != m)
        fail(Errc::InvalidParams, "family enumeration changes with lambda");

    std::vector<double> score(m, 0.0), est(m, 0.0);
    for (std::size_t i = 0; i < m; ++i) {
        if (!(p0.probs[i] > 0.0)) continue;
        const double lp = std::log(pp.probs[i]), lm = std::log(pm.probs[i]);
        const double lp2 = std::log(pp2.probs[i]), lm2 = std::log(pm2.probs[i]);
        detail::check_step(lp, lm, lp2, lm2, step);
        score[i] = detail::richardson(lp, lm, lp2, lm2, step);
        est[i] = estimator(p0.outcomes[i]);
    }
    auto tau_at = [&](const DeformedPMF& p) {
        double s = 0.0;
        for (std::size_t i = 0; i < m; ++i)
            if (p.probs[i] > 0.0) s += p.probs[i] * estimator(p.outcomes[i]);
        return s;
    };
    FisherInfoReport r;
    r.lambda = lambda;
    r.tau = tau_at(p0);
    const double tp = tau_at(pp), tm = tau_at(pm), tp2 = tau_at(pp2), tm2 = tau_at(pm2);
    detail::check_step(tp, tm, tp2, tm2, step);
    r.dtau = detail::richardson(tp, tm, tp2, tm2, step);

    const double e = t.alpha - t.beta;
    std::vector<double> q(m, 0.0); // ftilde^(alpha-beta) * score / hbar
    for (std::size_t i = 0; i < m; ++i) {
        if (!(p0.probs[i] > 0.0)) continue;
        const double hb = hbar(p0.outcomes[i]);
        if (hb == 0.0) fail(Errc::ZeroHbar, "hbar is zero on an outcome");
        q[i] = std::pow(p0.probs[i], e) * score[i] / hb;
    }
    double ms = 0.0, mq = 0.0, me = 0.0;
    for (std::size_t i = 0; i < m; ++i) {
        ms += p0.probs[i] * score[i];
        mq += p0.probs[i] * q[i];
        me += p0.probs[i] * est[i];
    }
    double vs = 0.0, vq = 0.0, cov = 0.0, ve = 0.0;
    for (std::size_t i = 0; i < m; ++i) {
        const double w = p0.probs[i];
        vs += w * (score[i] - ms) * (score[i] - ms);
        vq += w * (q[i] - mq) * (q[i] - mq);
        cov += w * (score[i] - ms) * (q[i] - mq);
        ve += w * (est[i] - me) * (est[i] - me);
    }
    r.score_mean = ms;
    r.i_n = vs;
    r.i_ab = vq > 0.0 ? cov * cov / vq : 0.0;
    r.crlb = vs > 0.0 ? r.dtau * r.dtau / vs : inf;
    r.var_estimator = ve;
    return r;
}

// Bernoulli(lambda) written as N(lambda)[1 + w(lambda) y]^(1/(alpha-beta)); the
// deformed family under the LNRE likelihood with tuning t and sample size n.
inline DeformedFamily bernoulli_deformed_family(const TuningPair& t, std::size_t n) {
    return [t, n](double lambda) {
        return deformed_pmf(GenLikKind::lnre(t.alpha, t.beta), bernoulli_density(lambda), n);
    };
}

inline double outcome_hbar(const Outcome& y, double beta) {
    const auto w = empirical_weights(y, beta);
    double s = 0.0;
    for (double v : w) s += v;
    return s / static_cast<double>(y.size());
}

inline double outcome_fbar_over_hbar(const Outcome& y, double beta) {
    const auto w = empirical_weights(y, beta);
    double s = 0.0, sw = 0.0;
    for (std::size_t j = 0; j < y.size(); ++j) {
        s += w[j] * y[j];
        sw += w[j];
    }
    return s / sw;
}

struct CounterexampleReport {
    double lambda = 0.75;
    std::vector<Outcome> outcomes;
    std::vector<double> probs;
    double e_ybar2 = 0.0;
    double e_k2 = 0.0;
    double mean_ybar = 0.0;
    double mean_k = 0.0;
    double mean_h = 0.0;
    double var_ybar = 0.0;
    double var_k = 0.0;
    bool strict = false; // Var(Ybar) > Var(k)
};

// The two-point Bernoulli family with alpha = 2, beta = 1, n = 2 at lambda = 3/4,
// comparing Ybar against k = Ybar - h/8 with h = +1 on ties and -1 otherwise.
inline CounterexampleReport bernoulli_counterexample() {
    CounterexampleReport r;
    const DeformedPMF pmf = deformed_pmf(GenLikKind::lnre(2.0, 1.0), bernoulli_density(r.lambda), 2);
    r.outcomes = pmf.outcomes;
    r.probs = pmf.probs;
    auto hfun = [](const Outcome& y) { return y[0] == y[1] ? 1.0 : -1.0; };
    auto kfun = [&](const Outcome& y) { return outcome_mean(y) - hfun(y) / 8.0; };
    const Moments my = deformed_moments(pmf, [](const Outcome& y) { return outcome_mean(y); });
    const Moments mk = deformed_moments(pmf, kfun);
    r.mean_h = deformed_moments(pmf, hfun).mean;
    r.e_ybar2 = deformed_moments(pmf, [](const Outcome& y) { return outcome_mean(y) * outcome_mean(y); }).mean;
    r.e_k2 = deformed_moments(pmf, [&](const Outcome& y) { return kfun(y) * kfun(y); }).mean;
    r.mean_ybar = my.mean;
    r.mean_k = mk.mean;
    r.var_ybar = my.variance;
    r.var_k = mk.variance;
    r.strict = r.var_ybar > r.var_k;
    return r;
}

} // namespace lnre
