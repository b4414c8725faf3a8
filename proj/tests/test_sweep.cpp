#include <doctest.h>

#include <sstream>

#include "disi/sweep.hpp"
#include "disi/training.hpp"
#include "disi/vec.hpp"

using namespace disi;

TEST_CASE("grid shape, NA cells and the regression row") {
    const ToyDataset test = make_gaussian_pairs(0.5, 200, 1.0, 121);
    const GvpSchedule s(test.rho_hat, 1.0);
    const GaussianOracle o({test.rho_hat, 1.0});
    SweepConfig cfg;
    cfg.seed = 5;
    const auto cells = run_sweep(s, o, test, cfg);
    REQUIRE(cells.size() == 80);
    for (const SweepCell& c : cells) {
        const bool na = c.delta > 0 && c.nfe == 1 && c.eta < 1;
        CHECK(c.applicable == !na);
        CHECK(c.mse.has_value() == !na);
        CHECK(c.outputs.empty() == na);
        if (c.delta == 0.0) {
            // same cell at eta = 0
            for (const SweepCell& ref : cells) {
                if (ref.delta == 0.0 && ref.nfe == c.nfe && ref.eta == 0.0) CHECK(ref.outputs == c.outputs);
            }
        }
    }
    std::ostringstream os;
    write_sweep_csv(os, cells);
    const std::string csv = os.str();
    CHECK(csv.rfind("delta,eta,nfe,mse,energy_distance\n", 0) == 0);
    CHECK(csv.find("0.39269908169872414,0,1,NA,NA\n") != std::string::npos);

    const auto serial = run_sweep(s, o, test, cfg, Exec::serial);
    for (std::size_t i = 0; i < cells.size(); ++i) CHECK(serial[i].outputs == cells[i].outputs);
}

TEST_CASE("eta = 0 gives the lowest MSE at 50 steps for a trained model") {
    const ToyDataset d = make_scurve_dataset(300, 0.05, 0.5, 0.1, 3);
    TrainConfig tc;
    tc.n_steps = 3000;
    tc.net.hidden = 32;
    tc.seed = 0;
    const MlpDenoiser m = train(d, tc).ema_model();
    const GvpSchedule s(d.rho_hat, 1.0);
    SweepConfig cfg;
    cfg.deltas = {kPi / 8, kPi / 4, kHalfPi};
    cfg.nfes = {50};
    cfg.seed = 1;
    const auto cells = run_sweep(s, m, d, cfg);
    for (const SweepCell& c : cells) {
        for (const SweepCell& ref : cells) {
            if (ref.delta == c.delta && ref.eta == 0.0 && c.eta > 0.0) CHECK(*ref.mse < *c.mse);
        }
    }
}
