#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <numbers>
#include <optional>
#include <numeric>
#include <string>
#include <thread>
#include <vector>

#include "datasets.hpp"
#include "density.hpp"
#include "error.hpp"
#include "estimators.hpp"
#include "kde.hpp"
#include "models.hpp"
#include "quadrature.hpp"
#include "rng.hpp"

namespace lnre {

enum class StudyFamily { student_t, student_r_location, student_r_scale };

struct StudyConfig {
    StudyFamily family = StudyFamily::student_t;
    std::size_t n = 50;
    std::size_t M = 1000;
    std::vector<double> eta_grid{0.0};
    std::vector<double> beta_grid{1.0};
    double nu = 3.0;
    double mu = 0.0;
    double sigma2 = 1.0;
    double cont_mean = 0.0;
    double cont_var = 16.0;
    std::uint64_t seed = 1;
    BandwidthRule bandwidth;
    unsigned threads = 0; // 0: hardware concurrency

    void validate() const {
        if (M < 1) fail(Errc::InvalidParams, "M must be at least 1");
        if (n < 2) fail(Errc::InvalidParams, "n must be at least 2");
        if (eta_grid.empty() || beta_grid.empty()) fail(Errc::InvalidParams, "grids must be non-empty");
        for (double e : eta_grid)
            if (!(e >= 0.0 && e <= 1.0)) fail(Errc::InvalidParams, "eta outside [0,1]");
        for (double b : beta_grid) {
            if (family == StudyFamily::student_t) {
                c1_constant(nu, b);
            } else if (!(nu < -1.0) || !(student_alpha(nu, b) > 0.0)) {
                fail(Errc::TuningOutOfRange, "beta not admissible for this family");
            }
        }
    }
};

struct StudyRow {
    double eta = 0.0;
    double beta = 1.0;
    std::vector<std::string> names;
    std::vector<double> mean;
    std::vector<double> se;
    std::size_t used = 0;
    std::size_t dropped = 0;
    bool best = false;
};

struct StudyTable {
    std::vector<StudyRow> rows;

    const StudyRow& at(double eta, double beta) const {
        for (const auto& r : rows)
            if (r.eta == eta && r.beta == beta) return r;
        fail(Errc::InvalidParams, "no such study row");
    }
};

namespace detail {

inline std::vector<std::string> study_names(StudyFamily f) {
    switch (f) {
    case StudyFamily::student_t: return {"mu", "sigma2"};
    case StudyFamily::student_r_location: return {"mu"};
    case StudyFamily::student_r_scale: return {"sigma2"};
    }
    return {};
}

// One replicate: estimates per beta (empty vector marks a failed fit).
inline std::vector<std::vector<double>> run_replicate(const StudyConfig& cfg, double eta, std::size_t rep) {
    MixtureSpec m{eta, {cfg.mu, cfg.sigma2, cfg.nu}, cfg.cont_mean, cfg.cont_var};
    auto rng = make_stream(cfg.seed, seed_key(eta), rep);
    std::vector<double> y(cfg.n);
    for (auto& v : y) v = mixture_draw(rng, m);
    std::vector<std::vector<double>> out(cfg.beta_grid.size());
    bool need_kde = std::any_of(cfg.beta_grid.begin(), cfg.beta_grid.end(), [](double b) { return b != 1.0; });
    std::optional<KdeEstimate> ghat;
    if (need_kde) {
        try {
            ghat.emplace(kde_fit(y, cfg.bandwidth));
        } catch (const Error&) {
            return out;
        }
    }
    for (std::size_t b = 0; b < cfg.beta_grid.size(); ++b) {
        const double beta = cfg.beta_grid[b];
        try {
            const WeightedSample ws = beta == 1.0 ? unit_weights(y) : power_weights(y, *ghat, beta);
            switch (cfg.family) {
            case StudyFamily::student_t:
                out[b] = mlnree_student_t(ws, cfg.nu, beta).estimate;
                break;
            case StudyFamily::student_r_location:
                out[b] = mlnree_student_r_location(ws, cfg.nu, cfg.sigma2, beta).estimate;
                break;
            case StudyFamily::student_r_scale:
                out[b] = mlnree_student_r_scale(ws, cfg.nu, cfg.mu, beta).estimate;
                break;
            }
        } catch (const Error&) {
            out[b].clear();
        }
    }
    return out;
}

} // namespace detail

inline StudyTable run_contamination_study(const StudyConfig& cfg) {
    cfg.validate();
    const auto names = detail::study_names(cfg.family);
    unsigned nthreads = cfg.threads ? cfg.threads : std::max(1u, std::thread::hardware_concurrency());
    nthreads = static_cast<unsigned>(std::min<std::size_t>(nthreads, cfg.M));
    StudyTable table;
    for (double eta : cfg.eta_grid) {
        std::vector<std::vector<std::vector<double>>> res(cfg.M);
        std::vector<std::thread> pool;
        for (unsigned t = 0; t < nthreads; ++t) {
            pool.emplace_back([&, t] {
                for (std::size_t rep = t; rep < cfg.M; rep += nthreads) res[rep] = detail::run_replicate(cfg, eta, rep);
            });
        }
        for (auto& th : pool) th.join();

        std::vector<StudyRow> rows;
        for (std::size_t b = 0; b < cfg.beta_grid.size(); ++b) {
            StudyRow row;
            row.eta = eta;
            row.beta = cfg.beta_grid[b];
            row.names = names;
            row.mean.assign(names.size(), 0.0);
            row.se.assign(names.size(), 0.0);
            for (std::size_t rep = 0; rep < cfg.M; ++rep) {
                if (res[rep][b].empty()) {
                    ++row.dropped;
                    continue;
                }
                ++row.used;
                for (std::size_t k = 0; k < names.size(); ++k) row.mean[k] += res[rep][b][k];
            }
            if (static_cast<double>(row.dropped) > 0.01 * static_cast<double>(cfg.M))
                fail(Errc::ReplicateFailure, "more than 1% of replicates failed");
            for (auto& v : row.mean) v /= static_cast<double>(row.used);
            if (row.used >= 2) {
                for (std::size_t k = 0; k < names.size(); ++k) {
                    double ss = 0.0;
                    for (std::size_t rep = 0; rep < cfg.M; ++rep) {
                        if (res[rep][b].empty()) continue;
                        const double z = res[rep][b][k] - row.mean[k];
                        ss += z * z;
                    }
                    const double u = static_cast<double>(row.used);
                    row.se[k] = std::sqrt(ss / (u - 1.0)) / std::sqrt(u);
                }
            }
            rows.push_back(std::move(row));
        }
        // best beta: mean of the scale (or location) component closest to the truth
        const std::size_t k = names.size() - 1;
        const double truth = names[k] == "sigma2" ? cfg.sigma2 : cfg.mu;
        std::size_t best = 0;
        for (std::size_t b = 1; b < rows.size(); ++b)
            if (std::fabs(rows[b].mean[k] - truth) < std::fabs(rows[best].mean[k] - truth)) best = b;
        rows[best].best = true;
        table.rows.insert(table.rows.end(), rows.begin(), rows.end());
    }
    return table;
}

// ---- CDF and goodness of fit ----------------------------------------------

// Cumulative quadrature on a cached grid; queries integrate the partial cell.
class NumericCdf {
public:
    NumericCdf(ScalarDensity d, double center, double scale, std::size_t cells = 128) : d_(std::move(d)) {
        if (d_.discrete()) fail(Errc::InvalidParams, "numeric CDF needs a continuous density");
        const double lo = d_.support.lower, hi = d_.support.upper;
        std::vector<double> g;
        if (std::isfinite(lo) && std::isfinite(hi)) {
            for (std::size_t k = 0; k <= cells; ++k) g.push_back(lo + (hi - lo) * static_cast<double>(k) / cells);
        } else {
            g.push_back(lo);
            for (std::size_t k = 1; k < cells; ++k) {
                const double u = static_cast<double>(k) / cells;
                const double x = center + scale * std::tan(std::numbers::pi * (u - 0.5));
                if (x > lo && x < hi) g.push_back(x);
            }
            if (std::isfinite(lo) || std::isfinite(hi)) g.push_back(std::isfinite(lo) ? lo : hi);
            g.push_back(hi);
        }
        for (double b : d_.breaks)
            if (b > lo && b < hi) g.push_back(b);
        std::sort(g.begin(), g.end());
        g.erase(std::unique(g.begin(), g.end()), g.end());
        x_ = g;
        c_.assign(x_.size(), 0.0);
        for (std::size_t k = 1; k < x_.size(); ++k) c_[k] = c_[k - 1] + piece(x_[k - 1], x_[k]);
    }

    double operator()(double y) const {
        if (std::isnan(y)) return y;
        if (y <= x_.front()) return 0.0;
        if (y >= x_.back()) return std::min(1.0, c_.back());
        const auto k = static_cast<std::size_t>(std::upper_bound(x_.begin(), x_.end(), y) - x_.begin());
        double v = c_[k - 1] + piece(x_[k - 1], y);
        v = std::clamp(v, c_[k - 1], c_[k]);
        return std::clamp(v, 0.0, 1.0);
    }
    double total() const { return c_.back(); }

private:
    double piece(double a, double b) const {
        QuadOptions o;
        o.abs_tol = 1e-12;
        const auto r = integrate([&](double t) { return d_(t); }, a, b, o);
        if (!r.converged && r.abs_error > 1e-9) fail(Errc::QuadratureFailure, "CDF cell did not converge");
        return r.value;
    }
    ScalarDensity d_;
    std::vector<double> x_, c_;
};

inline NumericCdf numeric_cdf(const ScalarDensity& d, double center = 0.0, double scale = 1.0) {
    return NumericCdf(d, center, scale);
}

inline NumericCdf numeric_cdf(const StudentParams& p) {
    return NumericCdf(student_density(p), p.mu, std::sqrt(p.sigma2));
}

struct GofReport {
    double d_ks = 0.0;
    std::map<std::string, double> params;
    double beta = 1.0;
};

template <class Cdf>
double ks_statistic(std::vector<double> sample, const Cdf& F) {
    if (sample.empty()) fail(Errc::EmptyInput, "empty sample");
    std::sort(sample.begin(), sample.end());
    const double n = static_cast<double>(sample.size());
    double d = 0.0;
    for (std::size_t i = 0; i < sample.size(); ++i) {
        const double f = F(sample[i]);
        d = std::max({d, std::fabs(static_cast<double>(i + 1) / n - f), std::fabs(static_cast<double>(i) / n - f)});
    }
    return d;
}

template <class Cdf>
GofReport ks_distance(const std::vector<double>& sample, const Cdf& F) {
    GofReport r;
    r.d_ks = ks_statistic(sample, F);
    return r;
}

// ---- Newcomb pipeline --------------------------------------------------------

struct HistogramBin {
    double lower = 0.0;
    double upper = 0.0;
    std::size_t count = 0;
    double density = 0.0;
};

// Freedman-Diaconis bins covering [min, max].
inline std::vector<HistogramBin> fd_histogram(const std::vector<double>& x) {
    if (x.size() < 2) fail(Errc::DegenerateSample, "histogram needs two values");
    const double lo = *std::min_element(x.begin(), x.end()), hi = *std::max_element(x.begin(), x.end());
    double width = 2.0 * (quantile7(x, 0.75) - quantile7(x, 0.25)) * std::pow(static_cast<double>(x.size()), -1.0 / 3.0);
    if (!(width > 0.0)) width = (hi - lo) > 0.0 ? (hi - lo) / 10.0 : 1.0;
    const auto nb = static_cast<std::size_t>(std::max(1.0, std::ceil((hi - lo) / width)));
    std::vector<HistogramBin> bins(nb);
    for (std::size_t i = 0; i < nb; ++i) {
        bins[i].lower = lo + width * static_cast<double>(i);
        bins[i].upper = lo + width * static_cast<double>(i + 1);
    }
    for (double v : x) {
        auto i = static_cast<std::size_t>(std::floor((v - lo) / width));
        if (i >= nb) i = nb - 1;
        ++bins[i].count;
    }
    for (auto& b : bins) b.density = static_cast<double>(b.count) / (static_cast<double>(x.size()) * width);
    return bins;
}

struct NewcombRow {
    double beta = 1.0;
    double sigma2 = 0.0;
    double ks = 0.0;
    bool best = false;
    EstimateRecord record;
};

struct NewcombResult {
    double mu = 0.0;
    double nu = -7.0;
    double bandwidth = 0.0;
    IntervalPartition partition;
    std::vector<NewcombRow> rows;
    std::vector<GofReport> gof;
    std::vector<HistogramBin> histogram;
    std::vector<double> curve_x;
    std::vector<std::vector<double>> curves; // one per beta
};

inline NewcombResult newcomb_pipeline(const std::vector<double>& beta_grid, const BandwidthRule& rule,
                                      const std::vector<double>& data = data::newcomb(), double nu = -7.0) {
    if (beta_grid.empty()) fail(Errc::InvalidParams, "empty beta grid");
    NewcombResult out;
    out.nu = nu;
    out.mu = std::accumulate(data.begin(), data.end(), 0.0) / static_cast<double>(data.size());
    out.partition = scale_partition(data, nu, out.mu);
    out.bandwidth = kde_fit(data, rule).bandwidth();
    const KdeEstimate ghat = kde_fit(data, rule);
    for (double beta : beta_grid) {
        const WeightedSample ws = beta == 1.0 ? unit_weights(data) : power_weights(data, ghat, beta);
        NewcombRow row;
        row.beta = beta;
        row.record = mlnree_student_r_scale(ws, nu, out.mu, beta);
        row.sigma2 = row.record.estimate[0];
        const StudentParams p{out.mu, row.sigma2, nu};
        row.ks = ks_statistic(data, numeric_cdf(p));
        GofReport g;
        g.d_ks = row.ks;
        g.beta = beta;
        g.params = {{"mu", out.mu}, {"sigma2", row.sigma2}, {"nu", nu}};
        out.gof.push_back(g);
        out.rows.push_back(std::move(row));
    }
    std::size_t best = 0;
    for (std::size_t i = 1; i < out.rows.size(); ++i)
        if (out.rows[i].ks < out.rows[best].ks) best = i;
    out.rows[best].best = true;
    out.histogram = fd_histogram(data);
    const double lo = *std::min_element(data.begin(), data.end()), hi = *std::max_element(data.begin(), data.end());
    constexpr std::size_t npts = 401;
    for (std::size_t i = 0; i < npts; ++i) out.curve_x.push_back(lo + (hi - lo) * static_cast<double>(i) / (npts - 1));
    for (const auto& row : out.rows) {
        std::vector<double> c;
        for (double x : out.curve_x) c.push_back(student_pdf(x, {out.mu, row.sigma2, nu}));
        out.curves.push_back(std::move(c));
    }
    return out;
}

} // namespace lnre
