#pragma once

#include <cmath>
#include <string>

#include "error.hpp"

namespace lnre {

struct TuningPair {
    double alpha = 1.0;
    double beta = 1.0;

    TuningPair() = default;
    TuningPair(double a, double b) : alpha(a), beta(b) {
        if (!(alpha > 0.0) || !std::isfinite(alpha)) fail(Errc::InvalidTuning, "alpha must be positive");
        if (!std::isfinite(beta)) fail(Errc::InvalidTuning, "beta must be finite");
    }
    // alpha == beta selects the limiting branch of the LNRE
    bool limit_branch() const { return alpha == beta; }
};

// Pairing used for Student families: alpha = beta - 2/(nu+1).
inline double student_alpha(double nu, double beta) {
    if (nu == -1.0) fail(Errc::InvalidParams, "nu = -1 has no tuning pairing");
    return beta - 2.0 / (nu + 1.0);
}

} // namespace lnre
