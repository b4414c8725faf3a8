#include <doctest.h>

#include <cmath>
#include <limits>

#include "disi/vec.hpp"
#include "disi/errors.hpp"
#include "disi/training.hpp"

using namespace disi;

namespace {

TrainConfig small_config(std::size_t steps, std::uint64_t seed) {
    TrainConfig cfg;
    cfg.n_steps = steps;
    cfg.seed = seed;
    cfg.net.hidden = 16;
    cfg.net.emb_dim = 8;
    return cfg;
}

}  // namespace

TEST_CASE("specialist draws lie on their trajectories") {
    const double phi = 0.5235987755982988;
    Rng rng = make_rng(71, 0);
    for (int k = 0; k < 200000; ++k) {
        const TimeDraw e = sample_time(EllipticalSpecialist{}, phi, rng);
        CHECK(e.g <= kHalfPi);
        CHECK(std::abs(e.r) <= phi);
        if (e.delta > 0) {
            const double lhs = e.r * e.r / (phi * phi) + e.g * e.g / (e.delta * e.delta);
            CHECK(std::abs(lhs - 1.0) < 1e-12);
        }
        const TimeDraw l = sample_time(LinearSpecialist{}, phi, rng);
        if (l.delta > 0) CHECK(std::abs(l.r / -phi + l.g / (l.delta / 2) - 1.0) < 1e-12);
        const TimeDraw reg = sample_time(RegressionSpecialist{}, phi, rng);
        CHECK(reg.g == 0.0);
        CHECK(std::abs(reg.r) <= phi);
    }
}

TEST_CASE("generalist samplers cover their rectangle") {
    const double phi = 0.7;
    Rng rng = make_rng(72, 0);
    std::vector<int> rbins(10, 0), gbins(10, 0);
    const int n = 100000;
    for (int k = 0; k < n; ++k) {
        const TimeDraw u = sample_time(UniformSampler{}, phi, rng);
        REQUIRE(std::abs(u.r) <= phi);
        REQUIRE(u.g >= 0.0);
        REQUIRE(u.g <= kHalfPi);
        ++rbins[std::min(9, static_cast<int>((u.r + phi) / (2 * phi) * 10))];
        ++gbins[std::min(9, static_cast<int>(u.g / kHalfPi * 10))];
        const TimeDraw ln = sample_time(LogitNormal{0.3, 1.2, -0.5, 0.8}, phi, rng);
        REQUIRE(std::abs(ln.r) <= phi);
        REQUIRE(ln.g >= 0.0);
        REQUIRE(ln.g <= kHalfPi);
    }
    for (int b = 0; b < 10; ++b) {
        CHECK(std::abs(rbins[b] - n / 10) < 0.05 * n / 10);
        CHECK(std::abs(gbins[b] - n / 10) < 0.05 * n / 10);
    }
}

TEST_CASE("weighted loss") {
    const Vec a{1.0, 2.0}, b{0.0, 0.0};
    CHECK(weighted_loss(a, b, 0.0) == doctest::Approx(5.0));
    CHECK(weighted_loss(a, a, 0.7) == doctest::Approx(-0.7));
    CHECK(weighted_loss(a, b, std::log(2.0)) == doctest::Approx(10.0 - std::log(2.0)));

    // grid scan for the minimizer
    for (double L : {0.01, 0.3, 1.0, 4.0}) {
        const Vec d{std::sqrt(L)}, z{0.0};
        double best_w = 0, best = std::numeric_limits<double>::infinity();
        for (int i = -100000; i <= 100000; ++i) {
            const double w = i * 1e-4;
            const double v = weighted_loss(d, z, w);
            if (v < best) best = v, best_w = w;
        }
        CHECK(std::abs(best_w + std::log(L)) < 2e-4);
    }
}

TEST_CASE("weighted loss gradient with respect to the log weight") {
    Rng rng = make_rng(73, 0);
    const Mlp net({3, 5, 2}, rng, false);
    WeightedBatch b;
    b.inputs = Eigen::MatrixXd::Random(3, 6);
    b.targets = Eigen::MatrixXd::Random(2, 6);
    b.log_weights = Eigen::VectorXd::Random(6);
    b.output_scale = 1.3;
    const LossGrad lg = weighted_loss_and_grad(net, b);
    const Eigen::MatrixXd err = b.output_scale * net.forward(b.inputs) - b.targets;
    const double h = 1e-6;
    for (int i = 0; i < 6; ++i) {
        const double L = err.col(i).squaredNorm();
        const double exact = (std::exp(b.log_weights[i]) * L - 1.0) / 6.0;
        WeightedBatch up = b, dn = b;
        up.log_weights[i] += h;
        dn.log_weights[i] -= h;
        const double fd = (weighted_loss_and_grad(net, up).loss - weighted_loss_and_grad(net, dn).loss) / (2 * h);
        CHECK(std::abs(lg.d_log_weights[i] - exact) < 1e-14);
        CHECK(std::abs(fd - exact) <= 1e-4 * std::max(std::abs(exact), 1e-7));
    }
}

TEST_CASE("AdamW first step") {
    AdamW opt(3, 0.1, 0.9, 0.999, 1e-8, 0.01);
    Eigen::VectorXd p(3), g(3);
    p << 1.0, -2.0, 0.5;
    g << 0.3, -0.04, 0.0;
    Eigen::VectorXd expect(3);
    for (int i = 0; i < 3; ++i) {
        expect[i] = p[i] * (1 - 0.1 * 0.01) - 0.1 * g[i] / (std::abs(g[i]) + 1e-8);
    }
    opt.step(p, g);
    CHECK(opt.steps() == 1);
    CHECK((p - expect).norm() < 1e-15);
}

TEST_CASE("training is reproducible") {
    const ToyDataset d = make_scurve_dataset(300, 0.05, 0.5, 0.1, 74);
    const TrainResult a = train(d, small_config(50, 5)), b = train(d, small_config(50, 5));
    REQUIRE(a.trace.size() == 50);
    for (std::size_t i = 0; i < 50; ++i) {
        CHECK(a.trace[i].loss == b.trace[i].loss);
        CHECK(a.trace[i].mse == b.trace[i].mse);
    }
    CHECK(a.ema_params == b.ema_params);
    const TrainResult c = train(d, small_config(50, 6));
    CHECK(c.trace.back().loss != a.trace.back().loss);
}

TEST_CASE("zero EMA decay tracks the weights") {
    const ToyDataset d = make_scurve_dataset(100, 0.05, 0.5, 0.1, 75);
    TrainConfig cfg = small_config(10, 1);
    cfg.ema_decay = 0.0;
    const TrainResult r = train(d, cfg);
    CHECK(r.ema_params == r.model.net().params());
}

TEST_CASE("disabled adaptive weighting leaves the weight net alone") {
    const ToyDataset d = make_scurve_dataset(100, 0.05, 0.5, 0.1, 76);
    TrainConfig cfg = small_config(20, 1);
    cfg.adaptive_weighting = false;
    const TrainResult r = train(d, cfg);
    CHECK(r.weight_net(0.1, 0.3) == 0.0);
    for (const LossRecord& rec : r.trace) CHECK(rec.loss == doctest::Approx(rec.mse).epsilon(1e-12));
}

TEST_CASE("training errors") {
    ToyDataset bad;
    bad.pairs.push_back({Vec{std::nan(""), 0.0}, Vec{0.1, 0.2}});
    bad.pairs.push_back({Vec{1.0, 0.0}, Vec{0.1, 0.2}});
    bad.rho_hat = 0.5;
    CHECK_THROWS_AS(train(bad, small_config(10, 1)), NonFiniteLoss);
    CHECK_THROWS_AS(train(ToyDataset{}, small_config(10, 1)), EmptyDataset);

    const ToyDataset d = make_scurve_dataset(100, 0.05, 0.5, 0.1, 77);
    TrainConfig cfg = small_config(10, 1);
    cfg.batch_size = 0;
    CHECK_THROWS_AS(train(d, cfg), ConfigError);
    cfg = small_config(0, 1);
    CHECK_THROWS_AS(train(d, cfg), ConfigError);
    cfg = small_config(10, 1);
    cfg.ema_decay = 1.0;
    CHECK_THROWS_AS(train(d, cfg), ConfigError);
    cfg = small_config(10, 1);
    cfg.net.emb_dim = 7;
    CHECK_THROWS_AS(train(d, cfg), ConfigError);
    cfg = small_config(10, 1);
    cfg.learning_rate = 0.0;
    CHECK_THROWS_AS(train(d, cfg), ConfigError);
}

TEST_CASE("loss falls over 2000 steps on the S curve") {
    const ToyDataset d = make_scurve_dataset(2000, 0.05, 0.5, 0.1, 78);
    TrainConfig cfg;
    cfg.n_steps = 2000;
    cfg.seed = 3;
    const TrainResult r = train(d, cfg);
    double head = 0, tail = 0;
    for (std::size_t i = 0; i < 100; ++i) {
        head += r.trace[i].loss;
        tail += r.trace[1900 + i].loss;
    }
    MESSAGE("head " << head / 100 << " tail " << tail / 100);
    CHECK(tail < 0.5 * head);
}
