#include <doctest.h>

#include <cmath>
#include <utility>

#include "disi/vec.hpp"
#include "disi/denoiser.hpp"
#include "disi/errors.hpp"
#include "disi/process.hpp"
#include "disi/toydata.hpp"
#include "oracles.hpp"

using namespace disi;

TEST_CASE("cheat oracle") {
    const CheatDenoiser c(Vec{1.0, -2.0});
    CHECK(c.predict(Vec{5.0, 5.0}, Vec{0.0, 0.0}, 0.1, 0.2) == Vec{1.0, -2.0});
    CHECK_THROWS_AS(c.predict(Vec{5.0}, Vec{0.0, 0.0}, 0.1, 0.2), DimensionMismatch);
}

TEST_CASE("Gaussian oracle matches plain Gaussian conditioning") {
    Rng rng = make_rng(61, 0);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int k = 0; k < 1000; ++k) {
        const double rho = -0.95 + 1.9 * u(rng), sigma = 0.5 + 2 * u(rng);
        const GvpSchedule s(rho, sigma);
        const double r = -s.phi() + 2 * s.phi() * u(rng), g = 0.01 + 1.5 * u(rng);
        const double x = 3 * u(rng) - 1.5, x1 = 3 * u(rng) - 1.5;
        const CoeffSet c = s.coeffs(r, g);
        const double ref = oracle::posterior_mean(rho, sigma, c.lambda * c.alpha, c.lambda * c.beta, c.gamma, x1, x);
        const double got = GaussianOracle({rho, sigma}).predict(Vec{x}, Vec{x1}, r, g)[0];
        CHECK(std::abs(got - ref) < 1e-12 * std::max(1.0, std::abs(ref)));
    }
}

TEST_CASE("Gaussian oracle at the boundaries") {
    const double rho = 0.6;
    const GaussianOracle o({rho, 1.0});
    const double phi = GvpSchedule(rho, 1.0).phi();
    CHECK(o.predict(Vec{0.37}, Vec{-1.1}, -phi, 0.0)[0] == doctest::Approx(0.37).epsilon(1e-14));
    CHECK(o.predict(Vec{0.37}, Vec{-1.1}, 0.2, kHalfPi)[0] == doctest::Approx(rho * -1.1).epsilon(1e-15));
    CHECK(GaussianOracle({0.0, 1.0}).predict(Vec{2.0}, Vec{3.0}, 0.1, kHalfPi)[0] == 0.0);
}

TEST_CASE("time embedding") {
    const Vec e0 = time_embed(0.0, 32);
    for (int j = 0; j < 16; ++j) {
        CHECK(e0[j] == 0.0);
        CHECK(e0[16 + j] == 1.0);
    }
    Vec prev = time_embed(-kHalfPi, 16);
    for (int i = 1; i <= 2000; ++i) {
        const Vec cur = time_embed(-kHalfPi + kPi * i / 2000.0, 16);
        double gap = 0.0;
        for (int j = 0; j < 16; ++j) {
            CHECK(std::abs(cur[j]) <= 1.0);
            gap = std::max(gap, std::abs(cur[j] - prev[j]));
        }
        CHECK(gap > 1e-9);
        prev = cur;
    }
    CHECK_THROWS_AS(time_embed(0.1, 7), DomainError);
    CHECK_THROWS_AS(time_embed(0.1, 0), DomainError);
}

TEST_CASE("fresh network predicts zero") {
    Rng rng = make_rng(62, 0);
    const MlpDenoiser d(MlpConfig{}, 1.0, 0.5, rng);
    const Vec out = d.predict(Vec{0.3, -0.7}, Vec{1.0, 2.0}, 0.1, 0.4);
    CHECK(out == Vec{0.0, 0.0});
}

TEST_CASE("network prediction is deterministic and batch consistent") {
    Rng rng = make_rng(63, 0);
    const MlpDenoiser d(2, 8, 1.0, 0.5, Mlp({4 + 16, 12, 2}, rng, false));
    const Vec x{0.3, -0.7}, x1{1.0, 2.0};
    CHECK(d.predict(x, x1, 0.1, 0.4) == d.predict(x, x1, 0.1, 0.4));
    Eigen::MatrixXd xs(2, 1), x1s(2, 1);
    xs << 0.3, -0.7;
    x1s << 1.0, 2.0;
    const double r = 0.1, g = 0.4;
    const Eigen::MatrixXd b = d.predict_batch(xs, x1s, std::span(&r, 1), std::span(&g, 1));
    const Vec single = d.predict(x, x1, r, g);
    CHECK(std::abs(b(0, 0) - single[0]) < 1e-15);
    CHECK(std::abs(b(1, 0) - single[1]) < 1e-15);
}

TEST_CASE("denoisers are equivariant to the data scale") {
    Rng rng = make_rng(64, 0);
    const Mlp net({4 + 16, 12, 2}, rng, false);
    const MlpDenoiser d1(2, 8, 1.0, 0.5, net), d2(2, 8, 2.0, 0.5, net);
    const GaussianOracle o1({0.5, 1.0}), o2({0.5, 2.0});
    for (int k = 0; k < 50; ++k) {
        const Vec x = sample_noise(rng, 2, 1.0), x1 = sample_noise(rng, 2, 1.0);
        const Vec x2 = lincomb(2, x, 0, x), x12 = lincomb(2, x1, 0, x1);
        const Vec a = d1.predict(x, x1, 0.2, 0.6), b = d2.predict(x2, x12, 0.2, 0.6);
        const Vec oa = o1.predict(x, x1, 0.2, 0.6), ob = o2.predict(x2, x12, 0.2, 0.6);
        for (int i = 0; i < 2; ++i) {
            CHECK(std::abs(2 * a[i] - b[i]) < 1e-10);
            CHECK(std::abs(2 * oa[i] - ob[i]) < 1e-10);
        }
    }
}

TEST_CASE("Gaussian oracle has the lowest error among non-peeking predictors") {
    const double rho = 0.5;
    const ToyDataset d = make_gaussian_pairs(rho, 10000, 1.0, 65);
    const GvpSchedule s(rho, 1.0);
    const GaussianOracle o({rho, 1.0});
    Rng rng = make_rng(66, 0);
    const MlpDenoiser zero(MlpConfig{1}, 1.0, rho, rng);
    for (double r : {-0.4, 0.0, 0.4}) {
        for (double g : {0.2, 0.8, 1.4}) {
            std::vector<double> diff_zero, diff_prior;
            Rng zr = make_rng(67, 0);
            for (const PairSample& p : d.pairs) {
                const Vec z = sample_noise(zr, 1, 1.0);
                const Vec x = interpolate(s, p, z, r, g).x;
                const double eo = squared_distance(o.predict(x, p.x1, r, g), p.x0);
                diff_zero.push_back(squared_distance(zero.predict(x, p.x1, r, g), p.x0) - eo);
                diff_prior.push_back(squared_distance(Vec{rho * p.x1[0]}, p.x0) - eo);
            }
            auto mean_se = [](const std::vector<double>& v) {
                double m = 0, q = 0;
                for (double x : v) m += x;
                m /= v.size();
                for (double x : v) q += (x - m) * (x - m);
                return std::pair{m, std::sqrt(q / (v.size() - 1) / v.size())};
            };
            const auto [mz, sez] = mean_se(diff_zero);
            CHECK(mz > 3 * sez);
            // rho x1 is the limit of the oracle at high noise, so only require it is no better
            const auto [mp, sep] = mean_se(diff_prior);
            CHECK(mp > -3 * sep);
        }
    }
}

TEST_CASE("loss gradient: exact at zero error and linear in the weight") {
    Rng rng = make_rng(68, 0);
    const Mlp net({3, 5, 2}, rng, false);
    WeightedBatch b;
    b.inputs = Eigen::MatrixXd::Random(3, 4);
    b.output_scale = 1.0;
    b.targets = net.forward(b.inputs);
    b.log_weights = Eigen::VectorXd::Constant(4, 0.3);
    const LossGrad at_target = weighted_loss_and_grad(net, b);
    CHECK(at_target.grad.norm() == 0.0);

    b.targets = Eigen::MatrixXd::Random(2, 4);
    const LossGrad g1 = weighted_loss_and_grad(net, b);
    b.log_weights.array() += std::log(2.0);
    const LossGrad g2 = weighted_loss_and_grad(net, b);
    CHECK((g2.grad - 2 * g1.grad).norm() < 1e-12 * g1.grad.norm());
}

TEST_CASE("backward matches central differences with h = 1e-5") {
    Rng rng = make_rng(69, 0);
    const Mlp net({3, 6, 4, 2}, rng, false);
    const Eigen::MatrixXd in = Eigen::MatrixXd::Random(3, 5), w = Eigen::MatrixXd::Random(2, 5);
    Mlp::Tape tape;
    net.forward(in, tape);
    Eigen::VectorXd grad = Eigen::VectorXd::Zero(net.params().size());
    net.backward(tape, w, grad);
    const double h = 1e-5;
    for (Eigen::Index p = 0; p < net.params().size(); ++p) {
        Mlp a = net, b = net;
        a.params()[p] += h;
        b.params()[p] -= h;
        const double fd = ((a.forward(in).array() - b.forward(in).array()) * w.array()).sum() / (2 * h);
        CHECK(std::abs(grad[p] - fd) <= 1e-4 * std::max({std::abs(grad[p]), std::abs(fd), 1e-7}));
    }
}

TEST_CASE("network shape checks") {
    Rng rng = make_rng(70, 0);
    CHECK_THROWS_AS(Mlp({3, 2}, Eigen::VectorXd::Zero(5)), DimensionMismatch);
    CHECK(Mlp::param_count({3, 4, 2}) == 3 * 4 + 4 + 4 * 2 + 2);
    const Mlp net({3, 4, 2}, rng, true);
    CHECK(net.weight(1).isZero());
    CHECK(net.bias(1).isZero());
    CHECK_FALSE(net.weight(0).isZero());
}
