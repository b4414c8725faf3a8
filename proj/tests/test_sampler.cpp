#include <doctest.h>

#include <cmath>

#include "disi/vec.hpp"
#include "disi/errors.hpp"
#include "disi/mlp.hpp"
#include "disi/process.hpp"
#include "disi/sampler.hpp"
#include "oracles.hpp"

using namespace disi;

TEST_CASE("kappa limits") {
    CHECK(kappa(1.0, 0.2, 0.5) == std::sin(0.5) - std::sin(0.2));
    CHECK(kappa(1.0, 0.2, 0.5) == doctest::Approx(0.2807562078).epsilon(1e-9));
    CHECK(kappa(1.0, 0.0, 0.3) == std::sin(0.3));
    for (double g1 : {0.1, 0.7, 1.5}) {
        for (double g2 : {0.0, 0.05, 0.7, kHalfPi}) {
            CHECK(kappa(0.0, g1, g2) == 0.0);
            CHECK(std::abs(kappa(1e-4, g1, g2)) < 1e-3);
        }
    }
    CHECK_THROWS_AS(kappa(0.5, 0.0, 0.3), SingularStart);
    CHECK_THROWS_AS(kappa(1.5, 0.2, 0.3), DomainError);
}

TEST_CASE("kappa matches its definition") {
    Rng rng = make_rng(51, 0);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int k = 0; k < 500; ++k) {
        const double eta = 0.01 + 0.98 * u(rng), g1 = 0.01 + 1.5 * u(rng), g2 = 0.01 + 1.5 * u(rng);
        const double ref = oracle::kappa(eta, g1, g2);
        CHECK(std::abs(kappa(eta, g1, g2) - ref) <= 1e-12 * std::max(1.0, std::abs(ref)));
    }
}

TEST_CASE("kappa shrinks continuously as eta goes to zero") {
    for (double g2 : {0.1, 1.2}) {
        double prev = std::abs(kappa(1e-2, 0.6, g2));
        for (double eta : {1e-3, 1e-4, 1e-5, 1e-6}) {
            const double k = std::abs(kappa(eta, 0.6, g2));
            CHECK(k < prev);
            prev = k;
        }
        CHECK(prev < 1e-6);
    }
}

TEST_CASE("deterministic step keeps exact forward states") {
    Rng rng = make_rng(52, 0);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int k = 0; k < 300; ++k) {
        const GvpSchedule s(-0.9 + 1.8 * u(rng), 1.0);
        const PathPoint a{-s.phi() + 2 * s.phi() * u(rng), 0.01 + 1.5 * u(rng)};
        const PathPoint b{-s.phi() + 2 * s.phi() * u(rng), 1.55 * u(rng)};
        const PairSample p{sample_noise(rng, 2, 1.0), sample_noise(rng, 2, 1.0)};
        const Vec z = sample_noise(rng, 2, 1.0);
        const Vec out = hybrid_step(s, interpolate(s, p, z, a.r, a.g).x, p.x0, p.x1, a, b, 0.0, {});
        const Vec want = interpolate(s, p, z, b.r, b.g).x;
        for (int i = 0; i < 2; ++i) CHECK(std::abs(out[i] - want[i]) < 1e-10);
    }
}

TEST_CASE("eta = 0 ignores the noise argument") {
    const GvpSchedule s(0.3, 1.0);
    const Vec x{0.2, 0.1}, x0{1.0, 1.0}, x1{-1.0, 0.5};
    const Vec a = hybrid_step(s, x, x0, x1, {0.2, 0.8}, {0.1, 0.5}, 0.0, Vec{3.0, 3.0});
    const Vec b = hybrid_step(s, x, x0, x1, {0.2, 0.8}, {0.1, 0.5}, 0.0, {});
    CHECK(a == b);
}

TEST_CASE("regression step identities") {
    const GvpSchedule s(0.45, 1.0);
    const Vec x1{0.3, -2.0}, x0hat{1.25, 0.75};
    CHECK(regression_step(s, x1, x0hat, x1, s.phi(), -s.phi()) == x0hat);
    const Vec x{0.1, 0.2};
    CHECK(regression_step(s, x, x0hat, x1, 0.1, 0.1) == x);
    const Vec half = regression_step(s, regression_step(s, x, x0hat, x1, 0.3, 0.0), x0hat, x1, 0.0, -0.3);
    const Vec full = regression_step(s, x, x0hat, x1, 0.3, -0.3);
    for (int i = 0; i < 2; ++i) CHECK(std::abs(half[i] - full[i]) < 1e-12);
}

TEST_CASE("one-step regression returns the prediction") {
    const GvpSchedule s(0.7482, 1.0);
    Rng rng = make_rng(53, 0);
    const Mlp net({4 + 32, 16, 2}, rng, false);
    const MlpDenoiser den(2, 16, 1.0, 0.7482, net);
    for (int k = 0; k < 20; ++k) {
        const Vec x1 = sample_noise(rng, 2, 1.0);
        Rng item = make_rng(1, k);
        CHECK(restore(s, den, x1, SamplerConfig{Trajectory(Regression{}, s.phi()), 1}, item) ==
              den.predict(x1, x1, s.phi(), 0.0));
        const Vec x0 = sample_noise(rng, 2, 1.0);
        CHECK(restore(s, CheatDenoiser(x0), x1, SamplerConfig{Trajectory(Regression{}, s.phi()), 1}, item) == x0);
    }
}

TEST_CASE("sampling plans") {
    const double phi = GvpSchedule(0.5, 1.0).phi();
    SUBCASE("single stochastic step over a noiseless start") {
        const SamplingPlan p = plan_sampling({Trajectory(Elliptical{0.4}, phi), 1, 1.0});
        REQUIRE(p.steps.size() == 1);
        CHECK(p.steps[0].eta == 1.0);
        CHECK(p.steps[0].to.r == -phi);
        CHECK_THROWS_AS(plan_sampling({Trajectory(Elliptical{0.4}, phi), 1, 0.5}), ConfigError);
    }
    SUBCASE("boot step then uniform steps") {
        const SamplingPlan p = plan_sampling({Trajectory(Elliptical{0.4}, phi), 5, 0.2, 1e-3});
        REQUIRE(p.steps.size() == 5);
        CHECK(p.steps[0].eta == 1.0);
        CHECK(p.steps[0].to.t == kHalfPi - 1e-3);
        for (int i = 1; i < 5; ++i) CHECK(p.steps[i].eta == 0.2);
        CHECK(p.steps.back().to.t == -kHalfPi);
    }
    SUBCASE("linear path needs no boot") {
        const SamplingPlan p = plan_sampling({Trajectory(Linear{0.4}, phi), 3, 0.0});
        REQUIRE(p.steps.size() == 3);
        CHECK(p.steps[0].from.g == 0.4);
        CHECK(p.steps[0].eta == 0.0);
        CHECK_NOTHROW(plan_sampling({Trajectory(Linear{0.4}, phi), 1, 0.0}));
    }
    SUBCASE("delta = 0 runs the regression sampler for any eta") {
        for (double eta : {0.0, 0.5, 1.0}) {
            const SamplingPlan p = plan_sampling({Trajectory(Elliptical{0.0}, phi), 4, eta});
            CHECK(p.regression);
            CHECK(p.steps.size() == 4);
        }
    }
    SUBCASE("validation") {
        CHECK_THROWS_AS(plan_sampling({Trajectory(Elliptical{0.4}, phi), 0}), ConfigError);
        CHECK_THROWS_AS(plan_sampling({Trajectory(Elliptical{0.4}, phi), 3, -0.1}), ConfigError);
        CHECK_THROWS_AS(plan_sampling({Trajectory(Elliptical{0.4}, phi), 3, 0.0, 0.0}), ConfigError);
    }
}

TEST_CASE("eta = 0 consumes exactly the boot noise") {
    const GvpSchedule s(0.5, 1.0);
    const GaussianOracle oracle({0.5, 1.0});
    Rng used = make_rng(54, 0), fresh = make_rng(54, 0);
    restore(s, oracle, Vec{0.4, 0.1}, {Trajectory(Elliptical{0.7}, s.phi()), 25, 0.0}, used);
    sample_noise(fresh, 2, 1.0);
    CHECK(used == fresh);
}

TEST_CASE("NFE = 2 collapses to the prediction for the true clean point") {
    const GvpSchedule s(0.5, 1.0);
    const Vec x0{0.9, -0.2}, x1{0.1, 0.4};
    const CheatDenoiser cheat(x0);
    for (double delta : {kPi / 8, kPi / 4, kHalfPi}) {
        for (double eta : {0.0, 0.2, 0.5}) {
            Rng rng = make_rng(55, 0);
            CHECK(restore(s, cheat, x1, {Trajectory(Elliptical{delta}, s.phi()), 2, eta}, rng) == x0);
        }
    }
}

TEST_CASE("batch restoration: serial and parallel agree bitwise") {
    const GvpSchedule s(0.5, 1.0);
    const GaussianOracle oracle({0.5, 1.0});
    std::vector<Vec> x1s;
    Rng rng = make_rng(56, 0);
    for (int i = 0; i < 200; ++i) x1s.push_back(sample_noise(rng, 2, 1.0));
    const SamplerConfig cfg{Trajectory(Elliptical{0.6}, s.phi()), 12, 0.3, 1e-3, 77};
    const DenoiserFor f = [&](std::size_t) -> const Denoiser& { return oracle; };
    const auto serial = restore_batch(s, f, x1s, cfg, Exec::serial);
    for (int threads : {1, 2, 4}) {
        set_threads(threads);
        CHECK(restore_batch(s, f, x1s, cfg, Exec::parallel) == serial);
    }
    set_threads(1);
    Rng item = make_rng(77, 3);
    CHECK(restore(s, oracle, x1s[3], cfg, item) == serial[3]);
}

TEST_CASE("batch restoration rethrows item errors") {
    const GvpSchedule s(0.5, 1.0);
    const CheatDenoiser bad(Vec{1.0, 2.0, 3.0});
    const std::vector<Vec> x1s(40, Vec{0.1, 0.2});
    const SamplerConfig cfg{Trajectory(Elliptical{0.6}, s.phi()), 4};
    CHECK_THROWS_AS(restore_batch(s, [&](std::size_t) -> const Denoiser& { return bad; }, x1s, cfg),
                    DimensionMismatch);
}
