#pragma once

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <string>
#include <vector>

#include "error.hpp"

namespace lnre {

struct BandwidthRule {
    enum class Kind { silverman, fixed } kind = Kind::silverman;
    double h = 0.0;

    static BandwidthRule silverman() { return {}; }
    static BandwidthRule fixed(double h) {
        if (!(h > 0.0) || !std::isfinite(h)) fail(Errc::InvalidParams, "bandwidth must be positive");
        return {Kind::fixed, h};
    }
    static BandwidthRule parse(const std::string& s) {
        if (s == "silverman") return silverman();
        std::size_t pos = 0;
        double h = 0.0;
        try {
            h = std::stod(s, &pos);
        } catch (const std::exception&) {
            fail(Errc::InvalidParams, "bandwidth must be 'silverman' or a positive number");
        }
        if (pos != s.size()) fail(Errc::InvalidParams, "bandwidth must be 'silverman' or a positive number");
        return fixed(h);
    }
    std::string str() const { return kind == Kind::silverman ? "silverman" : std::to_string(h); }
};

// Sample quantile, linear interpolation between order statistics (type 7).
inline double quantile7(std::vector<double> x, double p) {
    std::sort(x.begin(), x.end());
    const double pos = p * static_cast<double>(x.size() - 1);
    const auto lo = static_cast<std::size_t>(std::floor(pos));
    const auto hi = std::min(lo + 1, x.size() - 1);
    return x[lo] + (pos - static_cast<double>(lo)) * (x[hi] - x[lo]);
}

inline double sample_sd(const std::vector<double>& x) {
    const double n = static_cast<double>(x.size());
    const double m = std::accumulate(x.begin(), x.end(), 0.0) / n;
    double ss = 0.0;
    for (double v : x) ss += (v - m) * (v - m);
    return std::sqrt(ss / (n - 1.0));
}

inline double silverman_bandwidth(const std::vector<double>& x) {
    if (x.size() < 2) fail(Errc::DegenerateSample, "Silverman bandwidth needs n >= 2");
    const double sd = sample_sd(x);
    const double iqr = quantile7(x, 0.75) - quantile7(x, 0.25);
    if (sd == 0.0 && iqr == 0.0) fail(Errc::DegenerateSample, "sd and IQR are both zero");
    double spread = std::min(sd, iqr / 1.34);
    if (spread == 0.0) spread = sd;
    return 0.9 * spread * std::pow(static_cast<double>(x.size()), -0.2);
}

class KdeEstimate {
public:
    KdeEstimate(std::vector<double> centers, double h) : centers_(std::move(centers)), h_(h) {
        if (!(h_ > 0.0)) fail(Errc::InvalidParams, "bandwidth must be positive");
        if (centers_.empty()) fail(Errc::EmptyInput, "KDE needs at least one point");
    }
    double bandwidth() const { return h_; }
    const std::vector<double>& centers() const { return centers_; }
    double operator()(double y) const {
        constexpr double c = 0.3989422804014326779399460599343819; // 1/sqrt(2 pi)
        double s = 0.0;
        for (double x : centers_) {
            const double z = (y - x) / h_;
            s += std::exp(-0.5 * z * z);
        }
        return c * s / (static_cast<double>(centers_.size()) * h_);
    }

private:
    std::vector<double> centers_;
    double h_;
};

inline KdeEstimate kde_fit(const std::vector<double>& sample, const BandwidthRule& rule) {
    if (sample.empty()) fail(Errc::EmptyInput, "empty sample");
    const double h = rule.kind == BandwidthRule::Kind::fixed ? rule.h : silverman_bandwidth(sample);
    return KdeEstimate(sample, h);
}

// Observations sorted ascending with power weights ghat(y)^(beta-1).
struct WeightedSample {
    std::vector<double> values;
    std::vector<double> weights;
    double beta = 1.0;

    std::size_t size() const { return values.size(); }
    double weight_sum() const { return std::accumulate(weights.begin(), weights.end(), 0.0); }
};

inline WeightedSample unit_weights(std::vector<double> sample) {
    std::sort(sample.begin(), sample.end());
    WeightedSample ws;
    ws.weights.assign(sample.size(), 1.0);
    ws.values = std::move(sample);
    ws.beta = 1.0;
    return ws;
}

inline WeightedSample power_weights(const std::vector<double>& sample, const KdeEstimate& ghat, double beta) {
    if (beta == 1.0) return unit_weights(sample);
    WeightedSample ws;
    ws.values = sample;
    std::sort(ws.values.begin(), ws.values.end());
    ws.beta = beta;
    ws.weights.reserve(ws.values.size());
    for (double y : ws.values) {
        const double w = std::pow(ghat(y), beta - 1.0);
        if (!(w > 0.0) || !std::isfinite(w)) fail(Errc::DegenerateSample, "non-finite power weight");
        ws.weights.push_back(w);
    }
    return ws;
}

// Fits the KDE only when beta != 1.
inline WeightedSample power_weights(const std::vector<double>& sample, const BandwidthRule& rule, double beta) {
    if (beta == 1.0) return unit_weights(sample);
    return power_weights(sample, kde_fit(sample, rule), beta);
}

} // namespace lnre
