#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "disi/denoiser.hpp"
#include "disi/parallel.hpp"
#include "disi/schedule.hpp"
#include "disi/trajectory.hpp"
#include "disi/vec.hpp"

namespace disi {

struct SamplerConfig {
    Trajectory trajectory;
    std::size_t n_steps = 10;  // NFE
    double eta = 0.0;
    double boot_epsilon = 1e-3;
    std::uint64_t seed = 0;

    /// Throws ConfigError for out-of-range values and for single-step runs on
    /// paths that start at g = 0 with eta != 1.
    void validate() const;
};

/// Noise coefficient of the hybrid step from g1 to g2.
///   s = sqrt(1 - eta^2), k = sin g2 / sin g1,
///   kappa = [eta != 0] * eta (sin g2 - k^s sin g1) / (1 - s).
/// Exactly 0 at eta = 0 and exactly sin g2 - sin g1 at eta = 1.
/// Throws SingularStart when g1 = 0 and eta < 1.
double kappa(double eta, double g1, double g2);

/// Hybrid update from (r1, g1) to (r2, g2):
///   k^s x_prev + cos g2 (alpha2 x0hat + beta2 x1) - k^s cos g1 (alpha1 x0hat + beta1 x1) + kappa z.
/// z is only read when kappa != 0 and may be empty otherwise. At eta = 1 the
/// start may lie on g1 = 0 (k^0 = 1); otherwise g1 = 0 throws SingularStart.
Vec hybrid_step(const GvpSchedule& sched, ConstSpan x_prev, ConstSpan x0hat, ConstSpan x1,
                PathPoint from, PathPoint to, double eta, ConstSpan z);

/// x_prev + (alpha(r2) - alpha(r1)) x0hat + (beta(r2) - beta(r1)) x1.
Vec regression_step(const GvpSchedule& sched, ConstSpan x_prev, ConstSpan x0hat, ConstSpan x1,
                    double r1, double r2);

/// One planned sampler step.
struct PlannedStep {
    GridPoint from;
    GridPoint to;
    double eta;  // effective eta (1 for the booting step)
};

struct SamplingPlan {
    bool regression = false;
    std::vector<PlannedStep> steps;
};

/// Time points the restore loop visits. Regression paths (and delta = 0 paths)
/// use n_steps uniform steps in r at g = 0. Paths starting at g = 0 take a
/// booting step with eta = 1 to t_start + eps * direction followed by
/// n_steps - 1 uniform steps; with n_steps = 1 the single eta = 1 step spans the
/// whole path. Other paths take n_steps uniform steps with cfg.eta.
SamplingPlan plan_sampling(const SamplerConfig& cfg);

/// Full restoration loop. Noise is drawn from rng: one N(0, sigma_d^2) vector
/// for the initial state when its noise weight is non-zero, then one per step
/// with kappa != 0, in grid order.
Vec restore(const GvpSchedule& sched, const Denoiser& denoiser, ConstSpan x1,
            const SamplerConfig& cfg, Rng& rng);

/// Restores every x1 in a batch; item i uses an rng seeded from (cfg.seed, i),
/// so results do not depend on scheduling or the thread count.
std::vector<Vec> restore_batch(const GvpSchedule& sched, const DenoiserFor& denoiser,
                               const std::vector<Vec>& x1s, const SamplerConfig& cfg,
                               Exec exec = Exec::parallel);

}  // namespace disi
