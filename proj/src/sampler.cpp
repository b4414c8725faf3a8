#include "disi/sampler.hpp"

#include <cmath>
#include <exception>
#include <sstream>

#include "disi/errors.hpp"
#include "disi/process.hpp"

namespace disi {

namespace {

void check_eta(double eta) {
    if (!(eta >= 0.0 && eta <= 1.0)) {
        std::ostringstream os;
        os << "eta must lie in [0, 1], got " << eta;
        throw DomainError(os.str());
    }
}

}  // namespace

void SamplerConfig::validate() const {
    if (n_steps == 0) throw ConfigError("sampler: n_steps must be >= 1");
    if (!(eta >= 0.0 && eta <= 1.0)) throw ConfigError("sampler: eta must lie in [0, 1]");
    if (!(boot_epsilon > 0.0 && boot_epsilon < kHalfPi)) {
        throw ConfigError("sampler: boot_epsilon must lie in (0, pi/2)");
    }
    if (trajectory.is_regression()) return;
    if (trajectory.starts_noiseless()) {
        if (boot_epsilon >= std::abs(trajectory.t_end() - trajectory.t_start())) {
            throw ConfigError("sampler: boot_epsilon exceeds the path's parameter range");
        }
        if (n_steps == 1 && eta != 1.0) {
            throw ConfigError(
                "sampler: a single step on a path starting at g = 0 is only defined for eta = 1");
        }
    }
}

namespace {

double kappa_unsigned(double eta, double g1, double g2) {
    check_eta(eta);
    if (!(g1 > 0.0) && eta != 1.0) {
        throw SingularStart("hybrid step from g1 = 0 requires eta = 1");
    }
    if (eta == 0.0) return 0.0;
    const double sg1 = gen_gamma(g1);
    const double sg2 = gen_gamma(g2);
    if (eta == 1.0) return sg2 - sg1;
    const double s = std::sqrt(1.0 - eta * eta);
    const double one_minus_s = eta * eta / (1.0 + s);
    if (sg2 == 0.0) return 0.0;  // k^s = 0
    // sin g2 - k^s sin g1 = sin g2 (1 - k^(s-1)), evaluated without cancellation.
    const double log_k = std::log(sg2 / sg1);
    const double num = -sg2 * std::expm1(-one_minus_s * log_k);
    return eta * num / one_minus_s;
}

// Test builds may flip the sign to confirm the checks notice.
#ifdef DISI_MUTANT_KAPPA_SIGN
constexpr double kKappaSign = -1.0;
#else
constexpr double kKappaSign = 1.0;
#endif

}  // namespace

double kappa(double eta, double g1, double g2) { return kKappaSign * kappa_unsigned(eta, g1, g2); }

Vec hybrid_step(const GvpSchedule& sched, ConstSpan x_prev, ConstSpan x0hat, ConstSpan x1,
                PathPoint from, PathPoint to, double eta, ConstSpan z) {
    check_eta(eta);
    require_same_dim(x_prev.size(), x0hat.size(), "hybrid_step: x_prev vs x0hat");
    require_same_dim(x_prev.size(), x1.size(), "hybrid_step: x_prev vs x1");
    const CoeffSet c1 = sched.coeffs(from.r, from.g);
    const CoeffSet c2 = sched.coeffs(to.r, to.g);
    const double kap = kappa(eta, from.g, to.g);
    const double s = std::sqrt(1.0 - eta * eta);
    double ks = 1.0;
    if (s != 0.0) ks = std::pow(c2.gamma / c1.gamma, s);
    if (kap != 0.0) require_same_dim(x_prev.size(), z.size(), "hybrid_step: x_prev vs z");

    Vec out(x_prev.size());
    for (std::size_t i = 0; i < out.size(); ++i) {
        const double d1 = c1.alpha * x0hat[i] + c1.beta * x1[i];
        const double d2 = c2.alpha * x0hat[i] + c2.beta * x1[i];
        double v = ks * (x_prev[i] - c1.lambda * d1) + c2.lambda * d2;
        if (kap != 0.0) v += kap * z[i];
        out[i] = v;
    }
    return out;
}

Vec regression_step(const GvpSchedule& sched, ConstSpan x_prev, ConstSpan x0hat, ConstSpan x1,
                    double r1, double r2) {
    require_same_dim(x_prev.size(), x0hat.size(), "regression_step: x_prev vs x0hat");
    require_same_dim(x_prev.size(), x1.size(), "regression_step: x_prev vs x1");
    const double da = sched.alpha(r2) - sched.alpha(r1);
    const double db = sched.beta(r2) - sched.beta(r1);
    Vec out(x_prev.size());
    // The x1 term first: a full step from x_prev = x1 then cancels exactly.
    for (std::size_t i = 0; i < out.size(); ++i) out[i] = (x_prev[i] + db * x1[i]) + da * x0hat[i];
    return out;
}

SamplingPlan plan_sampling(const SamplerConfig& cfg) {
    cfg.validate();
    const Trajectory& traj = cfg.trajectory;
    SamplingPlan plan;
    auto add_grid = [&](const TimeGrid& grid, double eta) {
        for (std::size_t j = 0; j + 1 < grid.size(); ++j) plan.steps.push_back({grid[j], grid[j + 1], eta});
    };
    if (traj.is_regression()) {
        plan.regression = true;
        add_grid(discretize(Trajectory(Regression{}, traj.phi()), cfg.n_steps), 0.0);
        return plan;
    }
    if (traj.starts_noiseless()) {
        if (cfg.n_steps == 1) {
            add_grid(discretize(traj, 1), 1.0);
            return plan;
        }
        const double t_boot = traj.t_start() + cfg.boot_epsilon * traj.direction();
        const PathPoint s = traj.point(traj.t_start());
        const PathPoint b = traj.point(t_boot);
        plan.steps.push_back({{traj.t_start(), s.r, s.g}, {t_boot, b.r, b.g}, 1.0});
        add_grid(discretize_between(traj, t_boot, traj.t_end(), cfg.n_steps - 1), cfg.eta);
        return plan;
    }
    add_grid(discretize(traj, cfg.n_steps), cfg.eta);
    return plan;
}

Vec restore(const GvpSchedule& sched, const Denoiser& denoiser, ConstSpan x1,
            const SamplerConfig& cfg, Rng& rng) {
    const SamplingPlan plan = plan_sampling(cfg);
    const std::size_t dim = x1.size();
    Vec x(x1.begin(), x1.end());

    if (plan.regression) {
        for (const PlannedStep& st : plan.steps) {
            const Vec x0hat = denoiser.predict(x, x1, st.from.r, st.from.g);
            x = regression_step(sched, x, x0hat, x1, st.from.r, st.to.r);
        }
        return x;
    }

    const GridPoint& start = plan.steps.front().from;
    const CoeffSet c0 = sched.coeffs(start.r, start.g);
    if (c0.gamma != 0.0) {
        const Vec z = sample_noise(rng, dim, sched.sigma_d());
        for (std::size_t i = 0; i < dim; ++i) x[i] = c0.lambda * c0.beta * x1[i] + c0.gamma * z[i];
    } else {
        for (std::size_t i = 0; i < dim; ++i) x[i] = c0.lambda * c0.beta * x1[i];
    }

    Vec z;
    for (const PlannedStep& st : plan.steps) {
        const Vec x0hat = denoiser.predict(x, x1, st.from.r, st.from.g);
        const double kap = kappa(st.eta, st.from.g, st.to.g);
        if (kap != 0.0) {
            z = sample_noise(rng, dim, sched.sigma_d());
        } else {
            z.clear();
        }
        x = hybrid_step(sched, x, x0hat, x1, {st.from.r, st.from.g}, {st.to.r, st.to.g}, st.eta, z);
    }
    return x;
}

std::vector<Vec> restore_batch(const GvpSchedule& sched, const DenoiserFor& denoiser,
                               const std::vector<Vec>& x1s, const SamplerConfig& cfg, Exec exec) {
    cfg.validate();
    std::vector<Vec> out(x1s.size());
    std::exception_ptr error;
    auto run = [&](std::size_t i) {
        try {
            Rng rng = make_rng(cfg.seed, i);
            out[i] = restore(sched, denoiser(i), x1s[i], cfg, rng);
        } catch (...) {
#pragma omp critical(disi_restore_error)
            if (!error) error = std::current_exception();
        }
    };
    if (exec == Exec::parallel) {
#pragma omp parallel for schedule(dynamic, 16)
        for (std::ptrdiff_t i = 0; i < static_cast<std::ptrdiff_t>(x1s.size()); ++i) {
            run(static_cast<std::size_t>(i));
        }
    } else {
        for (std::size_t i = 0; i < x1s.size(); ++i) run(i);
    }
    if (error) std::rethrow_exception(error);
    return out;
}

}  // namespace disi
