// disi: command-line front end for data generation, training, restoration and checks.
#include <CLI11.hpp>
#include <algorithm>
#include <chrono>
#include <cmath>
#include <fstream>
#include <iostream>
#include <json.hpp>
#include <map>
#include <memory>
#include <optional>
#include <sstream>

#include "disi/dynamics.hpp"
#include "disi/errors.hpp"
#include "disi/io.hpp"
#include "disi/parallel.hpp"
#include "disi/sampler.hpp"
#include "disi/sweep.hpp"
#include "disi/training.hpp"
#include "disi/verify.hpp"

using namespace disi;
namespace fs = std::filesystem;
using nlohmann::json;

namespace {

constexpr int kExitCheckFailed = 1;
constexpr int kExitConfig = 2;
constexpr int kExitIo = 3;

/// `--config FILE`: a flat JSON object whose keys are long flag names ('_' or '-'
/// separated). Values fill options not given on the command line; unknown keys
/// are errors.
std::map<const CLI::App*, std::string> g_config_paths;

void add_config(CLI::App* sub) {
    sub->add_option("--config", g_config_paths[sub],
                    "JSON file with option values; flags given on the command line win");
}

void apply_config(CLI::App* sub) {
    const std::string& path = g_config_paths[sub];
    if (path.empty()) return;
    const json j = read_json(path);
    if (!j.is_object()) throw ConfigError(path + ": config must be a JSON object");
    for (const auto& [key, value] : j.items()) {
        std::string name = key;
        std::replace(name.begin(), name.end(), '_', '-');
        CLI::Option* opt = name == "config" ? nullptr : sub->get_option_no_throw("--" + name);
        if (opt == nullptr || value.is_object()) {
            throw ConfigError(path + ": unknown key '" + key + "' for " + sub->get_name());
        }
        if (opt->count() > 0) continue;
        const auto text = [](const json& v) { return v.is_string() ? v.get<std::string>() : v.dump(); };
        std::vector<std::string> inputs;
        if (value.is_array()) {
            for (const json& v : value) inputs.push_back(text(v));
        } else {
            inputs.push_back(text(value));
        }
        try {
            opt->add_result(inputs);
            opt->run_callback();
        } catch (const CLI::Error& e) {
            throw ConfigError(path + ": bad value for '" + key + "': " + e.what());
        }
    }
}

// ---- path selection ----

struct PathArgs {
    std::string kind = "elliptical";
    double delta = kPi / 8.0;
    double p = 2.0;
};

void add_path_flags(CLI::App* sub, PathArgs& a) {
    sub->add_option("--traj,--kind", a.kind, "Path family")
        ->check(CLI::IsMember({"elliptical", "linear", "regression", "vpath", "bezier"}))
        ->capture_default_str();
    sub->add_option("--delta", a.delta, "Peak noise parameter in [0, pi/2]")->capture_default_str();
    sub->add_option("--p", a.p, "Exponent of the V path")->capture_default_str();
}

Trajectory make_trajectory(const PathArgs& a, double phi) {
    PathKind kind;
    if (a.kind == "elliptical") kind = Elliptical{a.delta};
    else if (a.kind == "linear") kind = Linear{a.delta};
    else if (a.kind == "regression") kind = Regression{};
    else if (a.kind == "vpath") kind = VPath{a.delta, a.p};
    else if (a.kind == "bezier") kind = QuadBezier{a.delta};
    else throw ConfigError("unknown path family '" + a.kind + "'");
    try {
        return Trajectory(kind, phi);
    } catch (const DomainError& e) {
        throw ConfigError(e.what());
    }
}

// ---- data sources ----

struct DataArgs {
    std::string source = "scurve";
    std::size_t n = 2000;
    double jitter = 0.05;
    double strength = 0.5;
    double noise = 0.1;
    double rho = 0.5;
    std::size_t dim = 1;
    double sigma_d = 1.0;
    std::optional<std::uint64_t> seed;
};

void add_data_flags(CLI::App* sub, DataArgs& a, const std::string& what) {
    sub->add_option("--data", a.source, what + ": 'scurve', 'gaussian' or a dataset CSV")
        ->capture_default_str();
    sub->add_option("--n", a.n, "Pairs to generate")->capture_default_str();
    sub->add_option("--jitter", a.jitter, "S curve jitter std")->capture_default_str();
    sub->add_option("--strength", a.strength, "Shear strength of the S curve degradation")
        ->capture_default_str();
    sub->add_option("--noise", a.noise, "Degradation noise std")->capture_default_str();
    sub->add_option("--rho", a.rho, "Correlation of Gaussian pairs")->capture_default_str();
    sub->add_option("--dim", a.dim, "Dimension of Gaussian pairs")->capture_default_str();
    sub->add_option("--sigma-d", a.sigma_d, "Data scale after standardization")->capture_default_str();
    sub->add_option("--data-seed", a.seed, "Seed for generated data (default: --seed)");
}

ToyDataset load_data(const DataArgs& a, std::uint64_t fallback_seed) {
    const std::uint64_t seed = a.seed.value_or(fallback_seed);
    try {
        if (a.source == "scurve") return make_scurve_dataset(a.n, a.jitter, a.strength, a.noise, seed, a.sigma_d);
        if (a.source == "gaussian") return make_gaussian_pairs(a.rho, a.n, a.sigma_d, seed, a.dim);
    } catch (const DomainError& e) {
        throw ConfigError(e.what());
    }
    return read_dataset(a.source);
}

// ---- output helpers ----

std::ofstream open_out(const fs::path& p) {
    std::ofstream os(p);
    if (!os) throw IoError("cannot open " + p.string() + " for writing");
    return os;
}

/// Writes to the file, or to stdout for "-".
template <class F>
void with_output(const std::string& path, F&& body) {
    if (path == "-") {
        body(std::cout);
        return;
    }
    std::ofstream os = open_out(path);
    body(os);
    if (!os) throw IoError("write failed: " + path);
}

std::vector<std::string> coord_header(const std::string& prefix, std::size_t dim) {
    std::vector<std::string> h;
    for (std::size_t i = 0; i < dim; ++i) h.push_back(prefix + "_" + std::to_string(i + 1));
    return h;
}

TimeSamplerKind parse_time_sampler(const std::string& name, const std::vector<double>& lognorm) {
    if (name == "elliptical") return EllipticalSpecialist{};
    if (name == "linear") return LinearSpecialist{};
    if (name == "regression") return RegressionSpecialist{};
    if (name == "uniform") return UniformSampler{};
    if (name == "lognorm") {
        if (lognorm.size() != 4) throw ConfigError("--lognorm takes m_r s_r m_g s_g");
        return LogitNormal{lognorm[0], lognorm[1], lognorm[2], lognorm[3]};
    }
    throw ConfigError("unknown time sampler '" + name + "'");
}

/// Degraded points from a cloud CSV, or the x1 half of a dataset CSV (whose
/// clean half is returned as the reference).
struct RestoreInput {
    Cloud degraded;
    std::optional<Cloud> clean;
};

RestoreInput read_restore_input(const fs::path& path) {
    const CsvTable t = read_csv(path);
    const bool paired = !t.header.empty() && t.header.front().rfind("x0_", 0) == 0;
    RestoreInput in;
    if (!paired) {
        in.degraded = t.rows;
        return in;
    }
    if (t.header.size() % 2 != 0) throw IoError(path.string() + ": odd column count for a pair file");
    const std::size_t d = t.header.size() / 2;
    in.clean.emplace();
    for (const auto& row : t.rows) {
        in.clean->push_back(Vec(row.begin(), row.begin() + static_cast<long>(d)));
        in.degraded.push_back(Vec(row.begin() + static_cast<long>(d), row.end()));
    }
    return in;
}

/// A trained checkpoint, or the Gaussian oracle when no model is given.
struct ModelArgs {
    std::string model;
    std::string oracle;
    bool raw_weights = false;
};

void add_model_flags(CLI::App* sub, ModelArgs& a) {
    auto* m = sub->add_option("--model", a.model, "Checkpoint JSON from `train`");
    auto* o = sub->add_option("--oracle", a.oracle, "Use an analytic denoiser instead of a checkpoint")
                  ->check(CLI::IsMember({"gaussian"}));
    m->excludes(o);
    sub->add_flag("--raw-weights", a.raw_weights, "Use the final weights rather than the EMA weights");
}

struct LoadedModel {
    std::unique_ptr<Denoiser> denoiser;
    double rho;
    double sigma_d;
};

LoadedModel load_model(const ModelArgs& a, double rho, double sigma_d) {
    if (!a.model.empty()) {
        const Checkpoint c = load_checkpoint(a.model);
        return {std::make_unique<MlpDenoiser>(c.model(!a.raw_weights)), c.rho, c.sigma_d};
    }
    if (a.oracle == "gaussian") return {std::make_unique<GaussianOracle>(GaussianOracleParams{rho, sigma_d}), rho, sigma_d};
    throw ConfigError("pass --model or --oracle");
}

// ---- subcommands ----

struct MakeDataArgs {
    DataArgs data;
    std::uint64_t seed = 0;
    std::string out;
};

int cmd_make_data(const MakeDataArgs& a) {
    if (a.data.source != "scurve" && a.data.source != "gaussian") {
        throw ConfigError("make-data: --data must be 'scurve' or 'gaussian'");
    }
    const ToyDataset d = load_data(a.data, a.seed);
    write_dataset(a.out, d);
    std::cerr << "wrote " << d.pairs.size() << " pairs to " << a.out << " (rho_hat " << d.rho_hat << ")\n";
    return 0;
}

struct TrainArgs {
    DataArgs data;
    TrainConfig cfg;
    std::string time_sampler = "elliptical";
    std::vector<double> lognorm{0.0, 1.0, 0.0, 1.0};
    bool no_adaptive = false;
    std::string out;
    std::string trace;
    std::size_t log_every = 1000;
};

int cmd_train(TrainArgs a) {
    a.cfg.time_sampler = parse_time_sampler(a.time_sampler, a.lognorm);
    a.cfg.adaptive_weighting = !a.no_adaptive;
    const ToyDataset d = load_data(a.data, a.cfg.seed);
    const auto t0 = std::chrono::steady_clock::now();
    const TrainResult r = train(d, a.cfg, [&](std::size_t step, const LossRecord& rec) {
        if (a.log_every > 0 && (step + 1) % a.log_every == 0) {
            std::cerr << "step " << step + 1 << "  loss " << rec.loss << "  mse " << rec.mse << '\n';
        }
    });
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    save_checkpoint(a.out, Checkpoint::from(r.model, r.ema_params));
    if (!a.trace.empty()) {
        std::vector<std::vector<double>> rows;
        for (std::size_t i = 0; i < r.trace.size(); ++i) {
            rows.push_back({static_cast<double>(i + 1), r.trace[i].loss, r.trace[i].mse});
        }
        write_csv(a.trace, {"step", "loss", "mse"}, rows);
    }
    std::cerr << "trained " << a.cfg.n_steps << " steps in " << secs << " s; checkpoint " << a.out << '\n';
    return 0;
}

struct RestoreArgs {
    ModelArgs model;
    std::string input;
    PathArgs path;
    std::size_t steps = 10;
    double eta = 0.0;
    double boot_epsilon = 1e-3;
    std::uint64_t seed = 0;
    std::string mode;
    std::string out = "-";
    double rho = 0.5;
    double sigma_d = 1.0;
};

int cmd_restore(RestoreArgs a, const CLI::App& sub) {
    // Presets: regression in one step, or a short elliptical run with booting.
    if (a.mode == "disi-r") {
        a.path.kind = "regression";
        a.steps = 1;
        a.eta = 0.0;
    } else if (a.mode == "disi-g") {
        a.path.kind = "elliptical";
        if (sub.count("--delta") == 0) a.path.delta = 0.0245;
        if (sub.count("--steps") == 0) a.steps = 10;
        a.eta = 0.0;
    }
    const LoadedModel m = load_model(a.model, a.rho, a.sigma_d);
    const GvpSchedule sched(m.rho, m.sigma_d);
    SamplerConfig cfg{make_trajectory(a.path, sched.phi()), a.steps, a.eta, a.boot_epsilon, a.seed};
    cfg.validate();
    const RestoreInput in = read_restore_input(a.input);
    if (in.degraded.empty()) throw IoError(a.input + ": no points");
    const Denoiser& den = *m.denoiser;
    const Cloud out = restore_batch(sched, [&](std::size_t) -> const Denoiser& { return den; }, in.degraded, cfg);
    with_output(a.out, [&](std::ostream& os) { write_csv(os, coord_header("x", out.front().size()), out); });
    if (in.clean) {
        std::cerr << "mse " << mse(out, *in.clean) << " (identity " << mse(in.degraded, *in.clean)
                  << "), energy distance " << energy_distance(out, *in.clean) << " (identity "
                  << energy_distance(in.degraded, *in.clean) << ")\n";
    }
    return 0;
}

struct SweepArgs {
    ModelArgs model;
    DataArgs data;
    SweepConfig cfg;
    std::string out = "-";
};

int cmd_sweep(SweepArgs a) {
    const ToyDataset test = load_data(a.data, a.cfg.seed);
    const LoadedModel m = load_model(a.model, test.rho_hat, test.sigma_d);
    const GvpSchedule sched(m.rho, m.sigma_d);
    const auto cells = run_sweep(sched, *m.denoiser, test, a.cfg);
    with_output(a.out, [&](std::ostream& os) { write_sweep_csv(os, cells); });
    return 0;
}

struct SimulateArgs {
    PathArgs path;
    std::string pairs;
    std::size_t steps = 50;
    std::uint64_t seed = 0;
    std::string out = "-";
};

int cmd_simulate(const SimulateArgs& a) {
    const ToyDataset d = read_dataset(a.pairs);
    const GvpSchedule sched(d.rho_hat, d.sigma_d);
    const TimeGrid grid = discretize(make_trajectory(a.path, sched.phi()), a.steps);
    std::vector<std::vector<double>> rows;
    for (std::size_t i = 0; i < d.pairs.size(); ++i) {
        // one noise vector per pair, shared along the path
        Rng rng = make_rng(a.seed, i);
        const Vec z = sample_noise(rng, d.dim(), d.sigma_d);
        for (const GridPoint& gp : grid) {
            const NoisyState s = interpolate(sched, d.pairs[i], z, gp.r, gp.g);
            std::vector<double> row{static_cast<double>(i), gp.t, gp.r, gp.g};
            row.insert(row.end(), s.x.begin(), s.x.end());
            rows.push_back(std::move(row));
        }
    }
    std::vector<std::string> header{"pair", "t", "r", "g"};
    for (auto& h : coord_header("x", d.dim())) header.push_back(h);
    with_output(a.out, [&](std::ostream& os) { write_csv(os, header, rows); });
    return 0;
}

struct TrajArgs {
    PathArgs path;
    std::size_t steps = 50;
    double rho = 0.5;
    std::string out = "-";
};

int cmd_traj(const TrajArgs& a) {
    const GvpSchedule sched(a.rho, 1.0);
    if (a.steps == 0) throw ConfigError("traj: --steps must be >= 1");
    std::vector<std::vector<double>> rows;
    for (const GridPoint& gp : discretize(make_trajectory(a.path, sched.phi()), a.steps)) {
        rows.push_back({gp.t, gp.r, gp.g});
    }
    with_output(a.out, [&](std::ostream& os) { write_csv(os, {"t", "r", "g"}, rows); });
    return 0;
}

struct ScheduleArgs {
    double rho = 0.5;
    double sigma_d = 1.0;
    std::size_t grid = 11;
    std::string out = "-";
};

int cmd_schedule_dump(const ScheduleArgs& a) {
    if (a.grid < 2) throw ConfigError("schedule-dump: --grid must be >= 2");
    const GvpSchedule s(a.rho, a.sigma_d);
    std::vector<std::vector<double>> rows;
    const double n = static_cast<double>(a.grid - 1);
    for (std::size_t i = 0; i < a.grid; ++i) {
        // endpoints are pinned exactly
        const double r = i == 0 ? -s.phi() : i == a.grid - 1 ? s.phi() : -s.phi() + 2 * s.phi() * i / n;
        for (std::size_t j = 0; j < a.grid; ++j) {
            const double g = j == a.grid - 1 ? kHalfPi : kHalfPi * j / n;
            const CoeffSet c = s.coeffs(r, g);
            rows.push_back({r, g, c.alpha, c.beta, c.lambda, c.gamma, s.dalpha(r), s.dbeta(r)});
        }
    }
    with_output(a.out, [&](std::ostream& os) {
        write_csv(os, {"r", "g", "alpha", "beta", "lambda", "gamma", "dalpha", "dbeta"}, rows);
    });
    return 0;
}

struct BenchArgs {
    std::string oracle = "gaussian";
    PathArgs path{"elliptical", kPi / 4.0, 2.0};
    double rho = 0.5;
    std::size_t euler_steps = 10000;
    std::vector<std::size_t> sampler_steps{10, 20, 50, 100};
    std::size_t n = 100;
    std::uint64_t seed = 0;
    std::string out = "-";
};

int cmd_bench(const BenchArgs& a) {
    const GvpSchedule sched(a.rho, 1.0);
    const GaussianOracle oracle({a.rho, 1.0});
    const Trajectory traj = make_trajectory(a.path, sched.phi());
    EulerOptions opts;
    Rng xs = make_rng(a.seed, 4);
    std::vector<Vec> x1s, zs, ref, half;
    for (std::uint64_t i = 0; i < a.n; ++i) {
        x1s.push_back(sample_noise(xs, 1, 1.0));
        Rng peek = make_rng(a.seed, i);
        zs.push_back(sample_noise(peek, 1, 1.0));  // the sampler's first draw
        ref.push_back(euler_integrate(sched, traj, oracle, x1s[i], zs[i], a.euler_steps, opts));
        half.push_back(euler_integrate(sched, traj, oracle, x1s[i], zs[i], a.euler_steps / 2, opts));
    }
    struct Row {
        std::string method;
        std::size_t steps;
        double mean_gap, max_gap;
    };
    std::vector<Row> rows;
    auto summarize = [&](const std::string& method, std::size_t steps, const std::vector<Vec>& got) {
        double sum = 0, worst = 0;
        for (std::size_t i = 0; i < got.size(); ++i) {
            const double e = std::sqrt(squared_distance(got[i], ref[i]));
            sum += e;
            worst = std::max(worst, e);
        }
        rows.push_back({method, steps, sum / static_cast<double>(got.size()), worst});
    };
    // Richardson estimate of the reference's own error: |E(n/2) - E(n)|.
    summarize("euler", a.euler_steps / 2, half);
    for (std::size_t steps : a.sampler_steps) {
        const SamplerConfig cfg{traj, steps, 0.0, opts.boot_epsilon, a.seed};
        cfg.validate();
        const auto t0 = std::chrono::steady_clock::now();
        std::vector<Vec> got;
        for (std::uint64_t i = 0; i < a.n; ++i) {
            Rng rng = make_rng(a.seed, i);
            got.push_back(restore(sched, oracle, x1s[i], cfg, rng));
        }
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        std::cerr << "sampler " << steps << " steps: " << secs << " s\n";
        summarize("sampler", steps, got);
    }
    with_output(a.out, [&](std::ostream& os) {
        os << "method,steps,mean_gap,max_gap\n";
        for (const Row& r : rows) {
            os << r.method << ',' << r.steps << ',' << format_double(r.mean_gap) << ','
               << format_double(r.max_gap) << '\n';
        }
    });
    return 0;
}

struct VerifyArgs {
    std::vector<std::string> only;
    std::uint64_t seed = VerifyOptions{}.seed;
    std::string report = "-";
};

int cmd_verify(const VerifyArgs& a) {
    const auto results = run_checks({a.only, a.seed});
    bool ok = true;
    for (const CheckResult& r : results) {
        ok = ok && r.pass;
        std::cerr << (r.pass ? "PASS " : "FAIL ") << r.group << '.' << r.name << "  measured "
                  << r.measured << "  tolerance " << r.tolerance << '\n';
    }
    with_output(a.report, [&](std::ostream& os) { os << checks_to_json(results).dump(2) << '\n'; });
    return ok ? 0 : kExitCheckFailed;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"disi: two-time stochastic interpolants for toy restoration"};
    app.footer(
        "Environment: DISI_NUM_THREADS sets the OpenMP thread count. Results do not depend on it.\n"
        "Exit codes: 0 ok, 1 check failure, 2 usage or configuration error, 3 I/O error.");
    app.require_subcommand(1);

    MakeDataArgs make_data;
    auto* s_make = app.add_subcommand("make-data", "Generate a paired toy dataset with a JSON sidecar");
    add_data_flags(s_make, make_data.data, "Generator");
    s_make->add_option("--seed", make_data.seed, "Seed")->capture_default_str();
    s_make->add_option("--out", make_data.out, "Output CSV")->required();
    add_config(s_make);

    TrainArgs tr;
    auto* s_train = app.add_subcommand("train", "Train the toy denoiser");
    add_data_flags(s_train, tr.data, "Training data");
    s_train->add_option("--time-sampler", tr.time_sampler, "Training time sampler")
        ->check(CLI::IsMember({"elliptical", "linear", "regression", "uniform", "lognorm"}))
        ->capture_default_str();
    s_train->add_option("--lognorm", tr.lognorm, "m_r s_r m_g s_g of the lognorm sampler")->expected(4);
    s_train->add_option("--steps", tr.cfg.n_steps, "Optimizer steps")->capture_default_str();
    s_train->add_option("--batch-size", tr.cfg.batch_size, "Pairs per step")->capture_default_str();
    s_train->add_option("--lr", tr.cfg.learning_rate, "Learning rate")->capture_default_str();
    s_train->add_option("--beta1", tr.cfg.beta1, "Adam beta1")->capture_default_str();
    s_train->add_option("--beta2", tr.cfg.beta2, "Adam beta2")->capture_default_str();
    s_train->add_option("--adam-epsilon", tr.cfg.adam_epsilon, "Adam epsilon")->capture_default_str();
    s_train->add_option("--weight-decay", tr.cfg.weight_decay, "Decoupled weight decay")->capture_default_str();
    s_train->add_option("--ema", tr.cfg.ema_decay, "EMA decay")->capture_default_str();
    s_train->add_flag("--no-adaptive", tr.no_adaptive, "Fix the loss weight at w = 0");
    s_train->add_option("--hidden", tr.cfg.net.hidden, "Hidden width")->capture_default_str();
    s_train->add_option("--layers", tr.cfg.net.hidden_layers, "Hidden layers")->capture_default_str();
    s_train->add_option("--emb-dim", tr.cfg.net.emb_dim, "Time embedding width per time")->capture_default_str();
    s_train->add_option("--seed", tr.cfg.seed, "Seed")->capture_default_str();
    s_train->add_option("--out", tr.out, "Checkpoint JSON")->required();
    s_train->add_option("--trace", tr.trace, "Per-step loss CSV");
    s_train->add_option("--log-every", tr.log_every, "Progress line interval, 0 for none")->capture_default_str();
    add_config(s_train);

    RestoreArgs rs;
    auto* s_restore = app.add_subcommand("restore", "Restore degraded points");
    add_model_flags(s_restore, rs.model);
    s_restore->add_option("--input", rs.input, "Degraded cloud CSV, or a pair CSV from make-data")->required();
    add_path_flags(s_restore, rs.path);
    s_restore->add_option("--steps", rs.steps, "Number of function evaluations")->capture_default_str();
    s_restore->add_option("--eta", rs.eta, "Stochasticity in [0, 1]")->capture_default_str();
    s_restore->add_option("--boot-eps", rs.boot_epsilon, "Booting offset")->capture_default_str();
    s_restore->add_option("--seed", rs.seed, "Seed")->capture_default_str();
    s_restore->add_option("--mode", rs.mode, "Preset: disi-r (regression, 1 step) or disi-g (elliptical, 10 steps)")
        ->check(CLI::IsMember({"disi-r", "disi-g"}));
    s_restore->add_option("--rho", rs.rho, "Oracle correlation")->capture_default_str();
    s_restore->add_option("--sigma-d", rs.sigma_d, "Oracle data scale")->capture_default_str();
    s_restore->add_option("--out", rs.out, "Output CSV, '-' for stdout")->capture_default_str();
    add_config(s_restore);

    SweepArgs sw;
    auto* s_sweep = app.add_subcommand("sweep", "MSE and energy distance over a (delta, eta, NFE) grid");
    add_model_flags(s_sweep, sw.model);
    add_data_flags(s_sweep, sw.data, "Test data");
    sw.data.n = 500;
    s_sweep->add_option("--deltas", sw.cfg.deltas, "Path deltas")->delimiter(',');
    s_sweep->add_option("--etas", sw.cfg.etas, "Eta values")->delimiter(',');
    s_sweep->add_option("--nfes", sw.cfg.nfes, "Step counts")->delimiter(',');
    s_sweep->add_option("--boot-eps", sw.cfg.boot_epsilon, "Booting offset")->capture_default_str();
    s_sweep->add_option("--seed", sw.cfg.seed, "Seed")->capture_default_str();
    s_sweep->add_option("--out", sw.out, "Output CSV, '-' for stdout")->capture_default_str();
    add_config(s_sweep);

    SimulateArgs sim;
    auto* s_sim = app.add_subcommand("simulate", "Forward states x(r, g) along a path for each pair");
    add_path_flags(s_sim, sim.path);
    s_sim->add_option("--pairs", sim.pairs, "Pair CSV from make-data")->required();
    s_sim->add_option("--steps", sim.steps, "Grid intervals")->capture_default_str();
    s_sim->add_option("--seed", sim.seed, "Seed")->capture_default_str();
    s_sim->add_option("--out", sim.out, "Output CSV, '-' for stdout")->capture_default_str();
    add_config(s_sim);

    TrajArgs tj;
    auto* s_traj = app.add_subcommand("traj", "Discretized (t, r, g) path");
    add_path_flags(s_traj, tj.path);
    s_traj->add_option("--steps", tj.steps, "Grid intervals")->capture_default_str();
    s_traj->add_option("--rho", tj.rho, "Correlation that fixes phi")->capture_default_str();
    s_traj->add_option("--out", tj.out, "Output CSV, '-' for stdout")->capture_default_str();
    add_config(s_traj);

    ScheduleArgs sd;
    auto* s_sched = app.add_subcommand("schedule-dump", "Coefficients over an N x N (r, g) grid");
    s_sched->add_option("--rho", sd.rho, "Correlation")->capture_default_str();
    s_sched->add_option("--sigma-d", sd.sigma_d, "Data scale")->capture_default_str();
    s_sched->add_option("--grid", sd.grid, "Points per axis")->capture_default_str();
    s_sched->add_option("--out", sd.out, "Output CSV, '-' for stdout")->capture_default_str();
    add_config(s_sched);

    BenchArgs bn;
    auto* s_bench = app.add_subcommand("bench", "Sampler convergence against a fine Euler reference");
    s_bench->add_option("--oracle", bn.oracle, "Denoiser")->check(CLI::IsMember({"gaussian"}))->capture_default_str();
    add_path_flags(s_bench, bn.path);
    s_bench->add_option("--rho", bn.rho, "Correlation")->capture_default_str();
    s_bench->add_option("--euler-steps", bn.euler_steps, "Reference Euler steps")->capture_default_str();
    s_bench->add_option("--sampler-steps", bn.sampler_steps, "Sampler step counts")->delimiter(',');
    s_bench->add_option("--n", bn.n, "Degraded points")->capture_default_str();
    s_bench->add_option("--seed", bn.seed, "Seed")->capture_default_str();
    s_bench->add_option("--out", bn.out, "Output CSV, '-' for stdout")->capture_default_str();
    add_config(s_bench);

    VerifyArgs vf;
    auto* s_verify = app.add_subcommand("verify", "Run the numerical checks and print a JSON report");
    std::string groups;
    for (const CheckGroup& g : check_groups()) groups += (groups.empty() ? "" : ", ") + g.name;
    s_verify->add_option("--only", vf.only, "Check groups to run: " + groups)->delimiter(',');
    s_verify->add_option("--seed", vf.seed, "Seed")->capture_default_str();
    s_verify->add_option("--report", vf.report, "JSON report path, '-' for stdout")->capture_default_str();
    add_config(s_verify);

    apply_thread_env();
    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::FileError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitIo;
    } catch (const CLI::ParseError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitConfig;
    } catch (const ConfigError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitConfig;
    }

    try {
        for (CLI::App* sub : app.get_subcommands()) apply_config(sub);
        if (s_make->parsed()) return cmd_make_data(make_data);
        if (s_train->parsed()) return cmd_train(tr);
        if (s_restore->parsed()) return cmd_restore(rs, *s_restore);
        if (s_sweep->parsed()) return cmd_sweep(sw);
        if (s_sim->parsed()) return cmd_simulate(sim);
        if (s_traj->parsed()) return cmd_traj(tj);
        if (s_sched->parsed()) return cmd_schedule_dump(sd);
        if (s_bench->parsed()) return cmd_bench(bn);
        if (s_verify->parsed()) return cmd_verify(vf);
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return kExitConfig;
    } catch (const DomainError& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return kExitConfig;
    } catch (const IoError& e) {
        std::cerr << "I/O error: " << e.what() << '\n';
        return kExitIo;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitCheckFailed;
    }
    return kExitConfig;
}
