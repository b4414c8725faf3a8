#pragma once

#include <cstddef>

#include "disi/denoiser.hpp"
#include "disi/schedule.hpp"
#include "disi/trajectory.hpp"
#include "disi/vec.hpp"

namespace disi {

/// Velocities of the two-time probability-flow ODE dx = v_r dr + v_g dg.
struct VelocityPair {
    Vec v_r;
    Vec v_g;
};

/// v_g = cot(g) x - csc(g) (alpha x0_hat + beta x1), v_r = cos(g) (dalpha x0_hat + dbeta x1).
/// Throws SingularTime for g <= 0.
VelocityPair velocities(const GvpSchedule& sched, ConstSpan x, ConstSpan x0hat, ConstSpan x1,
                        double r, double g);

/// The v_r component alone; defined for every g including 0.
Vec velocity_r(const GvpSchedule& sched, ConstSpan x0hat, ConstSpan x1, double r, double g);

struct EulerOptions {
    /// Below this generation time v_g is not evaluated from its cot/csc form.
    double g_floor = 1e-3;
    /// Offset in path parameter of the booting point on paths that start at g = 0.
    double boot_epsilon = 1e-3;
};

/// Reference first-order integrator of the probability-flow ODE along a path.
///
/// Paths that start at g = 0 begin at the booting point t_start + eps * direction,
/// with state interpolate({x0_hat(start), x1}, z) (the state the hybrid sampler's
/// booting step produces); other paths start from cos g beta x1 + sin g z.
/// n_steps explicit Euler steps follow, uniform in t. Below g_floor, v_g is
/// evaluated as -sin(g) d + cos(g) u with the implied noise u held from the last
/// evaluation at or above the floor (initially z). Delta-0 paths integrate
/// the regression ODE from x1.
Vec euler_integrate(const GvpSchedule& sched, const Trajectory& traj, const Denoiser& denoiser,
                    ConstSpan x1, ConstSpan z, std::size_t n_steps,
                    const EulerOptions& opts = {});

}  // namespace disi
