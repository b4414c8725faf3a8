#include "disi/verify.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <map>
#include <memory>
#include <sstream>

#include "disi/dynamics.hpp"
#include "disi/errors.hpp"
#include "disi/process.hpp"
#include "disi/sampler.hpp"
#include "disi/sweep.hpp"
#include "disi/training.hpp"

namespace disi {

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
    return std::chrono::duration<double>(Clock::now() - t0).count();
}

std::string fmt(const char* what, double v) {
    std::ostringstream os;
    os << what << '=' << v;
    return os.str();
}

class Recorder {
public:
    Recorder(std::vector<CheckResult>& out, std::string group)
        : out_(out), group_(std::move(group)) {}

    /// Passes when measured <= tolerance.
    void at_most(const std::string& name, double measured, double tolerance,
                 std::string detail = {}) {
        out_.push_back({group_, name, measured <= tolerance, measured, tolerance, std::move(detail)});
    }
    /// Passes when measured < tolerance.
    void below(const std::string& name, double measured, double tolerance,
               std::string detail = {}) {
        out_.push_back({group_, name, measured < tolerance, measured, tolerance, std::move(detail)});
    }

private:
    std::vector<CheckResult>& out_;
    std::string group_;
};

double max_abs_diff(ConstSpan a, ConstSpan b) {
    double m = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
    return m;
}

// ---------------------------------------------------------------------------

void check_gvp(std::vector<CheckResult>& out, std::uint64_t seed) {
    Recorder rec(out, "gvp");
    const auto t0 = Clock::now();
    std::uint64_t stream = 0;
    for (double rho : {0.0, 0.5, 0.9}) {
        const ToyDataset ds = make_gaussian_pairs(rho, 100000, 1.0, mix_seed(seed, 100 + stream), 2);
        const GvpSchedule sched(rho, 1.0);
        const double phi = sched.phi();
        double worst = 0.0;
        std::ostringstream detail;
        for (double r : {-phi / 2.0, 0.0, phi / 2.0}) {
            for (double g : {kPi / 8.0, kPi / 4.0, 3.0 * kPi / 8.0}) {
                const double v =
                    empirical_variance(sched, ds.pairs, r, g, 100000, mix_seed(seed, stream++));
                worst = std::max(worst, std::abs(v - 1.0));
                detail << v << ' ';
            }
        }
        rec.at_most("variance_rho_" + std::to_string(rho).substr(0, 3), worst, 0.02,
                    "variances: " + detail.str());
    }
    rec.below("runtime_seconds", seconds_since(t0), 10.0);
}

void check_boundary(std::vector<CheckResult>& out, std::uint64_t seed) {
    Recorder rec(out, "boundary");
    Rng rng = make_rng(seed, 1);
    std::uniform_real_distribution<double> urho(-0.99, 0.99);
    double coeff_err = 0.0;
    double interp_err = 0.0;
    for (int k = 0; k < 50; ++k) {
        const GvpSchedule sched(urho(rng), 1.0);
        const double phi = sched.phi();
        const CoeffSet lo = sched.coeffs(-phi, 0.0);
        const CoeffSet hi = sched.coeffs(phi, 0.0);
        coeff_err = std::max({coeff_err, std::abs(lo.alpha - 1.0), std::abs(lo.beta),
                              std::abs(lo.lambda - 1.0), std::abs(lo.gamma)});
        coeff_err = std::max({coeff_err, std::abs(hi.alpha), std::abs(hi.beta - 1.0),
                              std::abs(hi.lambda - 1.0), std::abs(hi.gamma)});
        const PairSample p{sample_noise(rng, 3, 1.0), sample_noise(rng, 3, 1.0)};
        const Vec z = sample_noise(rng, 3, 1.0);
        interp_err = std::max(interp_err, max_abs_diff(interpolate(sched, p, z, -phi, 0.0).x, p.x0));
        interp_err = std::max(interp_err, max_abs_diff(interpolate(sched, p, z, phi, 0.0).x, p.x1));
    }
    rec.at_most("coefficient_boundary_tuples", coeff_err, 1e-12);
    rec.at_most("interpolate_returns_endpoints", interp_err, 1e-12);
}

void check_regression(std::vector<CheckResult>& out, std::uint64_t seed) {
    Recorder rec(out, "regression");
    Rng rng = make_rng(seed, 2);
    const double rho = 0.7482;
    const GvpSchedule sched(rho, 1.0);
    const MlpConfig mc{2, 32, 64, 2};
    const std::vector<int> widths{2 * mc.dim + 2 * mc.emb_dim, mc.hidden, mc.hidden, mc.dim};
    const MlpDenoiser net(mc.dim, mc.emb_dim, 1.0, rho, Mlp(widths, rng, false));
    for (const PathKind& kind : {PathKind{Regression{}}, PathKind{Elliptical{0.0}}}) {
        const SamplerConfig cfg{Trajectory(kind, sched.phi()), 1, 0.0, 1e-3, seed};
        double worst = 0.0;
        for (int k = 0; k < 100; ++k) {
            const Vec x1 = sample_noise(rng, 2, 1.0);
            const Vec expect = net.predict(x1, x1, sched.phi(), 0.0);
            Rng item = make_rng(seed, static_cast<std::uint64_t>(k));
            const Vec got = restore(sched, net, x1, cfg, item);
            const double scale = std::max(std::abs(expect[0]), std::abs(expect[1]));
            worst = std::max(worst, max_abs_diff(got, expect) / scale);
        }
        rec.at_most("one_step_returns_prediction_" + cfg.trajectory.name(), worst, 1e-15);
    }
}

void check_manifold(std::vector<CheckResult>& out, std::uint64_t seed) {
    Recorder rec(out, "manifold");
    Rng rng = make_rng(seed, 3);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    double worst = 0.0;
    int count = 0;
    while (count < 1000) {
        const GvpSchedule sched(-0.95 + 1.9 * unit(rng), 1.0);
        const double delta = 0.05 + (kHalfPi - 0.05) * unit(rng);
        PathKind kind;
        switch (count % 4) {
            case 0: kind = Elliptical{delta}; break;
            case 1: kind = Linear{delta}; break;
            case 2: kind = VPath{delta, 1.0 + std::floor(3.0 * unit(rng))}; break;
            default: kind = QuadBezier{delta}; break;
        }
        const Trajectory traj(kind, sched.phi());
        double u1 = unit(rng), u2 = unit(rng);
        if (u1 > u2) std::swap(u1, u2);
        const double span = traj.t_end() - traj.t_start();
        const PathPoint a = traj.point(traj.t_start() + u1 * span);
        const PathPoint b = traj.point(traj.t_start() + u2 * span);
        if (!(a.g > 1e-6)) continue;
        const PairSample p{sample_noise(rng, 3, 1.0), sample_noise(rng, 3, 1.0)};
        const Vec z = sample_noise(rng, 3, 1.0);
        const Vec x_prev = interpolate(sched, p, z, a.r, a.g).x;
        const Vec stepped = hybrid_step(sched, x_prev, p.x0, p.x1, a, b, 0.0, {});
        worst = std::max(worst, max_abs_diff(stepped, interpolate(sched, p, z, b.r, b.g).x));
        ++count;
    }
    rec.at_most("deterministic_step_stays_on_forward_state", worst, 1e-10, "1000 configurations");
}

void check_kappa(std::vector<CheckResult>& out) {
    Recorder rec(out, "kappa");
    std::vector<double> grid;
    for (int j = 0; j <= 10; ++j) grid.push_back(kHalfPi * j / 10.0);
    double eta1 = 0.0, eta0 = 0.0, small = 0.0;
    for (double g1 : grid) {
        for (double g2 : grid) {
            eta1 = std::max(eta1, std::abs(kappa(1.0, g1, g2) - (std::sin(g2) - std::sin(g1))));
            if (g1 == 0.0) continue;
            eta0 = std::max(eta0, std::abs(kappa(0.0, g1, g2)));
            small = std::max(small, std::abs(kappa(1e-4, g1, g2)));
        }
    }
    rec.at_most("eta_one_is_sine_difference", eta1, 0.0);
    rec.at_most("eta_zero_vanishes", eta0, 0.0);
    rec.below("eta_small_is_small", small, 1e-3);
}

void check_euler(std::vector<CheckResult>& out, std::uint64_t seed) {
    Recorder rec(out, "euler");
    const auto t0 = Clock::now();
    const GaussianOracle oracle({0.5, 1.0});
    const GvpSchedule sched(0.5, 1.0);
    const Trajectory traj(Elliptical{kPi / 4.0}, sched.phi());
    const SamplerConfig cfg{traj, 100, 0.0, 1e-3, seed};
    EulerOptions opts;
    opts.g_floor = 1e-3;
    opts.boot_epsilon = cfg.boot_epsilon;
    Rng xs = make_rng(seed, 4);
    double total = 0.0;
    for (std::uint64_t i = 0; i < 100; ++i) {
        const Vec x1 = sample_noise(xs, 1, 1.0);
        Rng rng = make_rng(seed, i);
        Rng peek = rng;
        const Vec z = sample_noise(peek, 1, 1.0);  // the boot step's draw
        const Vec a = restore(sched, oracle, x1, cfg, rng);
        const Vec b = euler_integrate(sched, traj, oracle, x1, z, 10000, opts);
        total += std::sqrt(squared_distance(a, b));
    }
    rec.at_most("mean_endpoint_gap", total / 100.0, 1e-3);
    rec.below("runtime_seconds", seconds_since(t0), 30.0);
}

void check_posterior(std::vector<CheckResult>& out, std::uint64_t seed) {
    Recorder rec(out, "posterior");
    const auto t0 = Clock::now();
    const GaussianOracle oracle({0.5, 1.0});
    const GvpSchedule sched(0.5, 1.0);
    const SamplerConfig cfg{Trajectory(Elliptical{kHalfPi}, sched.phi()), 100, 0.0, 1e-3, seed};
    const std::vector<Vec> x1s(20000, Vec{1.0});
    const auto ends =
        restore_batch(sched, [&](std::size_t) -> const Denoiser& { return oracle; }, x1s, cfg);
    double mean = 0.0;
    for (const Vec& e : ends) mean += e[0];
    mean /= static_cast<double>(ends.size());
    double var = 0.0;
    for (const Vec& e : ends) var += (e[0] - mean) * (e[0] - mean);
    var /= static_cast<double>(ends.size() - 1);
    rec.at_most("endpoint_mean_error", std::abs(mean - 0.5), 0.02, fmt("mean", mean));
    rec.at_most("endpoint_variance_error", std::abs(var - 0.75), 0.05, fmt("variance", var));
    rec.below("runtime_seconds", seconds_since(t0), 60.0);
}

// Relative error with a floor on the denominator; central differences carry
// roughly 1e-10 of absolute noise, so entries below the floor compare absolutely.
double rel_err(double a, double b) {
    return std::abs(a - b) / std::max({std::abs(a), std::abs(b), 1e-7});
}

void check_gradients(std::vector<CheckResult>& out, std::uint64_t seed) {
    Recorder rec(out, "gradients");
    Rng rng = make_rng(seed, 5);
    std::uniform_int_distribution<int> width(2, 8);
    std::uniform_real_distribution<double> uw(-1.0, 1.0);
    const double h = 1e-6;
    double param_err = 0.0, input_err = 0.0, wloss_err = 0.0, w_err = 0.0;
    for (int k = 0; k < 10; ++k) {
        std::vector<int> widths{width(rng)};
        const int hidden_layers = 1 + k % 3;
        for (int l = 0; l < hidden_layers; ++l) widths.push_back(width(rng));
        widths.push_back(width(rng));
        Mlp net(widths, rng, false);
        const int batch = 4;
        Eigen::MatrixXd in(widths.front(), batch), r(widths.back(), batch);
        for (Eigen::Index i = 0; i < in.size(); ++i) in.data()[i] = uw(rng) * 2.0;
        for (Eigen::Index i = 0; i < r.size(); ++i) r.data()[i] = uw(rng);

        // Linear probe L = sum(r .* net(in)).
        auto probe = [&](const Mlp& m, const Eigen::MatrixXd& x) {
            return (m.forward(x).array() * r.array()).sum();
        };
        Mlp::Tape tape;
        net.forward(in, tape);
        Eigen::VectorXd grad = Eigen::VectorXd::Zero(net.params().size());
        const Eigen::MatrixXd din = net.backward(tape, r, grad);
        for (Eigen::Index p = 0; p < net.params().size(); ++p) {
            Mlp plus = net, minus = net;
            plus.params()[p] += h;
            minus.params()[p] -= h;
            param_err = std::max(param_err, rel_err(grad[p], (probe(plus, in) - probe(minus, in)) / (2 * h)));
        }
        for (Eigen::Index i = 0; i < in.size(); ++i) {
            Eigen::MatrixXd ip = in, im = in;
            ip.data()[i] += h;
            im.data()[i] -= h;
            input_err = std::max(input_err, rel_err(din.data()[i], (probe(net, ip) - probe(net, im)) / (2 * h)));
        }

        // Weighted loss e^w ||s net - y||^2 - w.
        WeightedBatch wb;
        wb.inputs = in;
        wb.targets = Eigen::MatrixXd(widths.back(), batch);
        for (Eigen::Index i = 0; i < wb.targets.size(); ++i) wb.targets.data()[i] = uw(rng);
        wb.log_weights = Eigen::VectorXd(batch);
        for (Eigen::Index i = 0; i < batch; ++i) wb.log_weights[i] = uw(rng);
        wb.output_scale = 1.3;
        const LossGrad lg = weighted_loss_and_grad(net, wb);
        for (Eigen::Index p = 0; p < net.params().size(); ++p) {
            Mlp plus = net, minus = net;
            plus.params()[p] += h;
            minus.params()[p] -= h;
            const double fd =
                (weighted_loss_and_grad(plus, wb).loss - weighted_loss_and_grad(minus, wb).loss) / (2 * h);
            wloss_err = std::max(wloss_err, rel_err(lg.grad[p], fd));
        }
        for (Eigen::Index i = 0; i < batch; ++i) {
            WeightedBatch plus = wb, minus = wb;
            plus.log_weights[i] += h;
            minus.log_weights[i] -= h;
            const double fd =
                (weighted_loss_and_grad(net, plus).loss - weighted_loss_and_grad(net, minus).loss) / (2 * h);
            w_err = std::max(w_err, rel_err(lg.d_log_weights[i], fd));
        }
    }
    rec.below("mlp_param_gradient", param_err, 1e-4);
    rec.below("mlp_input_gradient", input_err, 1e-4);
    rec.below("weighted_loss_param_gradient", wloss_err, 1e-4);
    rec.below("weighted_loss_w_gradient", w_err, 1e-4);
}

// Trained model shared by the training and sweep groups.
struct TrainedFixture {
    ToyDataset train;
    ToyDataset test;
    std::unique_ptr<MlpDenoiser> model;  // EMA weights
    std::vector<LossRecord> trace;
    double seconds = 0.0;
};

ToyDataset slice(const ToyDataset& ds, std::size_t from, std::size_t to) {
    ToyDataset out;
    out.sigma_d = ds.sigma_d;
    out.provenance = ds.provenance;
    out.pairs.assign(ds.pairs.begin() + static_cast<long>(from), ds.pairs.begin() + static_cast<long>(to));
    out.rho_hat = estimate_rho(out.pairs);
    return out;
}

const TrainedFixture& trained_fixture(std::uint64_t seed) {
    static std::map<std::uint64_t, TrainedFixture> cache;
    auto it = cache.find(seed);
    if (it != cache.end()) return it->second;
    const auto t0 = Clock::now();
    TrainedFixture fx;
    const ToyDataset all = make_scurve_dataset(2500, 0.05, 0.5, 0.1, seed);
    fx.train = slice(all, 0, 2000);
    fx.test = slice(all, 2000, 2500);
    fx.test.rho_hat = fx.train.rho_hat;
    TrainConfig cfg;
    cfg.seed = seed;
    TrainResult res = train(fx.train, cfg);
    fx.model = std::make_unique<MlpDenoiser>(res.ema_model());
    fx.trace = std::move(res.trace);
    fx.seconds = seconds_since(t0);
    return cache.emplace(seed, std::move(fx)).first->second;
}

void check_training(std::vector<CheckResult>& out, std::uint64_t seed) {
    Recorder rec(out, "training");
    const auto t0 = Clock::now();
    const TrainedFixture& fx = trained_fixture(seed);
    const auto& tr = fx.trace;
    auto window_mean = [&](std::size_t from, std::size_t to, bool recon) {
        double s = 0.0;
        for (std::size_t i = from; i < to; ++i) s += recon ? tr[i].mse : tr[i].loss;
        return s / static_cast<double>(to - from);
    };
    const std::size_t n = tr.size();
    const double head = window_mean(0, 100, false), tail = window_mean(n - 100, n, false);
    rec.below("tail_over_head_loss", tail / head, 0.5,
              fmt("head", head) + " " + fmt("tail", tail));
    const double head_mse = window_mean(0, 100, true), tail_mse = window_mean(n - 100, n, true);
    rec.below("tail_over_head_reconstruction_error", tail_mse / head_mse, 0.5,
              fmt("head", head_mse) + " " + fmt("tail", tail_mse));

    const GvpSchedule sched(fx.model->rho(), fx.model->sigma_d());
    const Cloud clean = fx.test.clean();
    const Cloud degraded = fx.test.degraded();
    const DenoiserFor shared = [&](std::size_t) -> const Denoiser& { return *fx.model; };

    const SamplerConfig disi_r{Trajectory(Regression{}, sched.phi()), 1, 0.0, 1e-3, seed};
    const double base_mse = mse(degraded, clean);
    const double r_mse = mse(restore_batch(sched, shared, degraded, disi_r), clean);
    rec.below("disi_r_mse_over_identity_mse", r_mse / base_mse, 1.0,
              fmt("restored", r_mse) + " " + fmt("identity", base_mse));

    const SamplerConfig disi_g{Trajectory(Elliptical{kPi / 8.0}, sched.phi()), 15, 0.0, 1e-3, seed};
    const double base_ed = energy_distance(degraded, clean);
    const double g_ed = energy_distance(restore_batch(sched, shared, degraded, disi_g), clean);
    rec.below("disi_g_energy_over_degraded_energy", g_ed / base_ed, 1.0,
              fmt("restored", g_ed) + " " + fmt("degraded", base_ed));
    rec.below("runtime_seconds", fx.seconds + seconds_since(t0), 300.0);
}

void check_sweep(std::vector<CheckResult>& out, std::uint64_t seed) {
    Recorder rec(out, "sweep");
    const TrainedFixture& fx = trained_fixture(seed);
    const GvpSchedule sched(fx.model->rho(), fx.model->sigma_d());
    SweepConfig cfg;
    cfg.seed = seed;
    const auto cells = run_sweep(sched, *fx.model, fx.test, cfg);

    // The published two-step cells agree to 0.01 dB PSNR and 0.001 LPIPS
    // (at 0.055); half a unit in the last place bounds the relative spread.
    const double mse_tol = std::pow(10.0, 0.005 / 10.0) - 1.0;
    const double ed_tol = 0.0005 / 0.055;
    double mse_spread = 0.0, ed_spread = 0.0, out_spread = 0.0;
    for (const auto& c : cells) {
        if (c.nfe != 2 || c.delta == 0.0) continue;
        for (const auto& d : cells) {
            if (d.nfe != 2 || d.delta == 0.0 || d.eta != c.eta) continue;
            mse_spread = std::max(mse_spread, *c.mse / *d.mse - 1.0);
            ed_spread = std::max(ed_spread, *c.energy / *d.energy - 1.0);
            for (std::size_t i = 0; i < c.outputs.size(); ++i) {
                out_spread = std::max(out_spread, max_abs_diff(c.outputs[i], d.outputs[i]));
            }
        }
    }
    rec.at_most("nfe2_mse_spread_across_delta", mse_spread, mse_tol,
                fmt("max output gap", out_spread));
    rec.at_most("nfe2_energy_spread_across_delta", ed_spread, ed_tol);

    double eta_gap = 0.0;
    for (const auto& c : cells) {
        if (c.delta != 0.0) continue;
        for (const auto& d : cells) {
            if (d.delta != 0.0 || d.nfe != c.nfe) continue;
            for (std::size_t i = 0; i < c.outputs.size(); ++i) {
                eta_gap = std::max(eta_gap, max_abs_diff(c.outputs[i], d.outputs[i]));
            }
        }
    }
    rec.at_most("delta0_independent_of_eta", eta_gap, 0.0);

    double mismatched = 0.0;
    for (const auto& c : cells) {
        const bool expect_na = c.delta > 0.0 && c.nfe == 1 && c.eta < 1.0;
        if (expect_na == c.applicable) mismatched += 1.0;
    }
    rec.at_most("na_cells_match_table", mismatched, 0.0);
}

void check_timesampler(std::vector<CheckResult>& out, std::uint64_t seed) {
    Recorder rec(out, "timesampler");
    const double phi = GvpSchedule(0.7482, 1.0).phi();
    const std::size_t n = 1000000;
    auto violates = [&](const TimeDraw& d) {
        return d.r < -phi || d.r > phi || d.g < 0.0 || d.g > kHalfPi;
    };
    {
        Rng rng = make_rng(seed, 6);
        double err = 0.0, bad = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            const TimeDraw d = sample_time(EllipticalSpecialist{}, phi, rng);
            if (violates(d)) bad += 1.0;
            if (d.delta > 0.0) {
                err = std::max(err, std::abs((d.r / phi) * (d.r / phi) + (d.g / d.delta) * (d.g / d.delta) - 1.0));
            }
        }
        rec.at_most("elliptical_implicit_equation", err, 1e-12);
        rec.at_most("elliptical_range_violations", bad, 0.0);
    }
    {
        Rng rng = make_rng(seed, 7);
        double err = 0.0, bad = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            const TimeDraw d = sample_time(LinearSpecialist{}, phi, rng);
            if (violates(d)) bad += 1.0;
            if (d.delta > 0.0) err = std::max(err, std::abs(d.r / -phi + d.g / (d.delta / 2.0) - 1.0));
        }
        rec.at_most("linear_implicit_equation", err, 1e-12);
        rec.at_most("linear_range_violations", bad, 0.0);
    }
    {
        Rng rng = make_rng(seed, 8);
        double bad = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            const TimeDraw d = sample_time(RegressionSpecialist{}, phi, rng);
            if (violates(d) || d.g != 0.0) bad += 1.0;
        }
        rec.at_most("regression_violations", bad, 0.0);
    }
    const std::vector<std::pair<std::string, TimeSamplerKind>> generalists{
        {"uniform", UniformSampler{}},
        {"logit_normal", LogitNormal{}},
        {"logit_normal_shifted", LogitNormal{-0.5, 1.5, 0.5, 1.5}},
    };
    std::uint64_t stream = 9;
    for (const auto& [name, kind] : generalists) {
        Rng rng = make_rng(seed, stream++);
        double bad = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            if (violates(sample_time(kind, phi, rng))) bad += 1.0;
        }
        rec.at_most(name + "_range_violations", bad, 0.0);
    }
}

}  // namespace

const std::vector<CheckGroup>& check_groups() {
    static const std::vector<CheckGroup> groups{
        {"gvp", 1, "GVP variance stays at sigma_d^2"},
        {"boundary", 2, "boundary coefficients are exact"},
        {"regression", 3, "one-step regression returns the prediction"},
        {"manifold", 4, "deterministic hybrid step stays on the forward state"},
        {"kappa", 5, "kappa limits in eta"},
        {"euler", 6, "sampler agrees with the Euler reference"},
        {"posterior", 7, "endpoint law matches the Gaussian posterior"},
        {"gradients", 8, "gradients match finite differences"},
        {"training", 9, "S-curve training makes progress"},
        {"sweep", 10, "delta/eta/NFE sweep has the published grid structure"},
        {"timesampler", 11, "time samplers respect their geometry"},
    };
    return groups;
}

std::vector<CheckResult> run_checks(const VerifyOptions& opts) {
    for (const auto& name : opts.only) {
        const auto& g = check_groups();
        if (std::none_of(g.begin(), g.end(), [&](const CheckGroup& c) { return c.name == name; })) {
            throw ConfigError("verify: unknown check group '" + name + "'");
        }
    }
    auto selected = [&](const std::string& name) {
        return opts.only.empty() ||
               std::find(opts.only.begin(), opts.only.end(), name) != opts.only.end();
    };
    std::vector<CheckResult> out;
    const std::uint64_t s = opts.seed;
    if (selected("gvp")) check_gvp(out, s);
    if (selected("boundary")) check_boundary(out, s);
    if (selected("regression")) check_regression(out, s);
    if (selected("manifold")) check_manifold(out, s);
    if (selected("kappa")) check_kappa(out);
    if (selected("euler")) check_euler(out, s);
    if (selected("posterior")) check_posterior(out, s);
    if (selected("gradients")) check_gradients(out, s);
    if (selected("training")) check_training(out, s);
    if (selected("sweep")) check_sweep(out, s);
    if (selected("timesampler")) check_timesampler(out, s);
    return out;
}

nlohmann::json checks_to_json(const std::vector<CheckResult>& results) {
    nlohmann::json arr = nlohmann::json::array();
    for (const auto& r : results) {
        arr.push_back({{"check_name", r.group + "." + r.name},
                       {"group", r.group},
                       {"pass", r.pass},
                       {"measured", r.measured},
                       {"tolerance", r.tolerance},
                       {"detail", r.detail}});
    }
    return arr;
}

}  // namespace disi
