#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include <lnre/divergences.hpp>
#include <lnre/models.hpp>

using namespace lnre;

namespace {

template <class Fn>
void expect_code(Errc code, Fn&& fn) {
    try {
        fn();
        ADD_FAILURE() << "expected " << errc_name(code);
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), code) << e.what();
    }
}

} // namespace

TEST(Kld, IdenticalDensitiesGiveZero) {
    const auto f = normal_density(0.3, 2.0);
    EXPECT_NEAR(kld(f, f).value, 0.0, 1e-12);
}

TEST(Kld, BernoulliExactSum) {
    const auto v = kld(bernoulli_density(0.5), bernoulli_density(0.25));
    EXPECT_NEAR(v.value, 0.5 * std::log(2.0) + 0.5 * std::log(2.0 / 3.0), 1e-15);
    EXPECT_EQ(v.method, DivergenceMethod::exact_sum);
}

TEST(Kld, NormalShift) {
    const auto v = kld(normal_density(0, 1), normal_density(1, 1));
    EXPECT_NEAR(v.value, 0.5, 1e-9);
    EXPECT_EQ(v.method, DivergenceMethod::quadrature);
}

TEST(Dpd, IdentityAndBernoulli) {
    const auto f = normal_density(-1, 0.5);
    EXPECT_NEAR(dpd(f, f, {2.0, 1.0}).value, 0.0, 1e-10);
    // sum (f^2 - 2 g f + g^2) = (0.5-0.25)^2 * 2
    EXPECT_NEAR(dpd(bernoulli_density(0.5), bernoulli_density(0.25), {2.0, 1.0}).value, 0.125, 1e-15);
}

TEST(Dpd, ApproachesKldAsAlphaGoesToOne) {
    const auto g = normal_density(0, 1), f = normal_density(1, 1);
    EXPECT_NEAR(dpd(g, f, {1.0 + 1e-6, 1.0}).value, 0.5, 1e-4);
    EXPECT_NEAR(dpd(g, f, {1.0, 1.0}).value, 0.5, 1e-9);
}

TEST(Ldpd, IdentityAndBernoulli) {
    const auto f = normal_density(0, 3);
    EXPECT_NEAR(ldpd(f, f, {0.5, 1.0}).value, 0.0, 1e-10);
    // -2 log(sum g f) + log(sum g^2) + log(sum f^2) with g = (.5,.5), f = (.75,.25)
    const double expect = -2.0 * std::log(0.5) + std::log(0.5) + std::log(0.625);
    EXPECT_NEAR(ldpd(bernoulli_density(0.5), bernoulli_density(0.25), {2.0, 1.0}).value, expect, 1e-14);
    EXPECT_NEAR(expect, std::log(1.25), 1e-14);
}

TEST(Lnre, BetaOneMatchesLdpdOnRandomPairs) {
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> um(-2, 2), uv(0.3, 3), ua(0.3, 3);
    for (int k = 0; k < 20; ++k) {
        double vg = uv(rng), vf = uv(rng);
        if (vf < vg) std::swap(vf, vg);
        const auto g = normal_density(um(rng), vg), f = normal_density(um(rng), vf);
        const double a = ua(rng);
        if (std::fabs(a - 1.0) < 1e-3) continue;
        EXPECT_NEAR(lnre::lnre(g, f, {a, 1.0}).value, ldpd(g, f, {a, 1.0}).value, 1e-10);
    }
}

TEST(Lnre, IdentityIsZeroAcrossTunings) {
    const std::vector<ScalarDensity> ds = {normal_density(0, 1), student_density({0.5, 2.0, 5.0}),
                                          student_density({0.0, 1.0, -3.0}), bernoulli_density(0.3)};
    const std::vector<TuningPair> ts = {{2.0, 1.0}, {0.5, 1.0}, {1.5, 0.7}, {0.8, 1.3}, {1.2, 1.2}};
    for (const auto& f : ds)
        for (const auto& t : ts) EXPECT_NEAR(lnre::lnre(f, f, t).value, 0.0, 1e-10) << f.name << ' ' << t.alpha << ' ' << t.beta;
}

TEST(Lnre, BernoulliCase) {
    const double v = lnre::lnre(bernoulli_density(0.5), bernoulli_density(0.25), {2.0, 1.0}).value;
    EXPECT_NEAR(v, std::log(1.25), 1e-14);
}

TEST(Lnre, DoubleLimitApproachesKld) {
    const auto g = normal_density(0, 1), f = normal_density(0.5, 1);
    const double k = kld(g, f).value;
    EXPECT_NEAR(k, 0.125, 1e-9);
    EXPECT_NEAR(lnre::lnre(g, f, {1.0 + 1e-6, 1.0 + 1e-6}).value, k, 1e-4);
    EXPECT_NEAR(lnre::lnre(g, f, {1.0 - 1e-4, 1.0 - 1e-4}).value, k, 1e-3);
}

TEST(Lnre, ContinuousAcrossTheDiagonal) {
    const auto g = normal_density(0, 1), f = normal_density(0.7, 1.5);
    const double on = lnre::lnre(g, f, {1.5, 1.5}).value;
    double prev = INFINITY;
    for (double eps : {1e-2, 1e-3, 1e-4}) {
        const double gap = std::fabs(lnre::lnre(g, f, {1.5 + eps, 1.5}).value - on);
        EXPECT_LT(gap, prev);
        prev = gap;
    }
    EXPECT_LT(prev, 1e-3);
}

TEST(Divergences, NonNegativeOnRandomPairs) {
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> um(-1.5, 1.5), uv(0.4, 2.5), ut(0.3, 3.0);
    for (int k = 0; k < 25; ++k) {
        double vg = uv(rng), vf = uv(rng);
        if (vf < vg) std::swap(vf, vg);
        const auto g = normal_density(um(rng), vg), f = normal_density(um(rng), vf);
        const double a = ut(rng), b = ut(rng);
        EXPECT_GE(kld(g, f).value, -1e-10);
        EXPECT_GE(dpd(g, f, {a, 1.0}).value, -1e-10);
        EXPECT_GE(ldpd(g, f, {a, 1.0}).value, -1e-10);
        EXPECT_GE(lnre::lnre(g, f, {a, b}).value, -1e-10);
    }
}

TEST(Divergences, SupportMismatchReported) {
    const auto g = normal_density(0, 1);
    const auto f = student_density({0.0, 1.0, -3.0});
    expect_code(Errc::SupportMismatch, [&] { kld(g, f); });
    expect_code(Errc::SupportMismatch, [&] { lnre::lnre(g, f, {0.5, 1.0}); });
}

TEST(Divergences, DivergentIntegralReported) {
    const auto cauchy = student_density({0.0, 1.0, 1.0});
    const auto f = normal_density(0, 1);
    expect_code(Errc::NonIntegrable, [&] { ldpd(cauchy, f, {0.5, 1.0}); });
}

TEST(Divergences, MixedKindsRejected) {
    expect_code(Errc::InvalidParams, [] { kld(bernoulli_density(0.5), normal_density(0, 1)); });
}

TEST(Divergences, BetaZeroRejected) {
    const auto f = normal_density(0, 1);
    expect_code(Errc::InvalidTuning, [&] { lnre::lnre(f, f, {1.0, 0.0}); });
    expect_code(Errc::InvalidTuning, [] { TuningPair(0.0, 1.0); });
}
