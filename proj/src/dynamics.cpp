#include "disi/dynamics.hpp"

#include <cmath>
#include <sstream>

#include "disi/errors.hpp"
#include "disi/process.hpp"

namespace disi {

Vec velocity_r(const GvpSchedule& sched, ConstSpan x0hat, ConstSpan x1, double r, double g) {
    require_same_dim(x0hat.size(), x1.size(), "velocity_r");
    const CoeffDerivs d = sched.coeff_derivs(r, g);
    const double lam = gen_lambda(g);
    Vec v(x1.size());
    for (std::size_t i = 0; i < v.size(); ++i) v[i] = lam * (d.dalpha * x0hat[i] + d.dbeta * x1[i]);
    return v;
}

VelocityPair velocities(const GvpSchedule& sched, ConstSpan x, ConstSpan x0hat, ConstSpan x1,
                        double r, double g) {
    require_same_dim(x.size(), x0hat.size(), "velocities: x vs x0hat");
    require_same_dim(x.size(), x1.size(), "velocities: x vs x1");
    if (!(g > 0.0)) {
        std::ostringstream os;
        os << "v_g is singular at g = " << g;
        throw SingularTime(os.str());
    }
    const CoeffSet c = sched.coeffs(r, g);
    const double cot = c.lambda / c.gamma;
    const double csc = 1.0 / c.gamma;
    VelocityPair v{velocity_r(sched, x0hat, x1, r, g), Vec(x.size())};
    for (std::size_t i = 0; i < x.size(); ++i) {
        v.v_g[i] = cot * x[i] - csc * (c.alpha * x0hat[i] + c.beta * x1[i]);
    }
    return v;
}

Vec euler_integrate(const GvpSchedule& sched, const Trajectory& traj, const Denoiser& denoiser,
                    ConstSpan x1, ConstSpan z, std::size_t n_steps, const EulerOptions& opts) {
    if (n_steps == 0) throw DomainError("euler_integrate: n_steps must be >= 1");
    if (!(opts.g_floor > 0.0)) throw DomainError("euler_integrate: g_floor must be > 0");
    require_same_dim(x1.size(), z.size(), "euler_integrate: x1 vs z");
    const std::size_t dim = x1.size();

    if (traj.is_regression()) {
        const Trajectory reg(Regression{}, traj.phi());
        const TimeGrid grid = discretize(reg, n_steps);
        Vec x(x1.begin(), x1.end());
        for (std::size_t j = 0; j < n_steps; ++j) {
            const Vec x0hat = denoiser.predict(x, x1, grid[j].r, 0.0);
            const Vec vr = velocity_r(sched, x0hat, x1, grid[j].r, 0.0);
            const double dr = grid[j + 1].r - grid[j].r;
            for (std::size_t i = 0; i < dim; ++i) x[i] += vr[i] * dr;
        }
        return x;
    }

    TimeGrid grid;
    Vec x;
    if (traj.starts_noiseless()) {
        const PathPoint start = traj.point(traj.t_start());
        const Vec x1v(x1.begin(), x1.end());
        const Vec x0s = denoiser.predict(x1v, x1, start.r, start.g);
        const double t_boot = traj.t_start() + opts.boot_epsilon * traj.direction();
        const PathPoint b = traj.point(t_boot);
        x = interpolate(sched, PairSample{x0s, x1v}, z, b.r, b.g).x;
        grid = discretize_between(traj, t_boot, traj.t_end(), n_steps);
    } else {
        grid = discretize(traj, n_steps);
        const CoeffSet c = sched.coeffs(grid[0].r, grid[0].g);
        x.resize(dim);
        for (std::size_t i = 0; i < dim; ++i) x[i] = c.lambda * c.beta * x1[i] + c.gamma * z[i];
    }

    Vec held_noise(z.begin(), z.end());
    Vec next(dim);
    for (std::size_t j = 0; j < n_steps; ++j) {
        const double r = grid[j].r;
        const double g = grid[j].g;
        const double dr = grid[j + 1].r - r;
        const double dg = grid[j + 1].g - g;
        const Vec x0hat = denoiser.predict(x, x1, r, g);
        const Vec vr = velocity_r(sched, x0hat, x1, r, g);
        for (std::size_t i = 0; i < dim; ++i) next[i] = x[i] + vr[i] * dr;
        if (dg != 0.0) {
            const CoeffSet c = sched.coeffs(r, g);
            if (g >= opts.g_floor) {
                const VelocityPair v = velocities(sched, x, x0hat, x1, r, g);
                for (std::size_t i = 0; i < dim; ++i) {
                    const double d = c.alpha * x0hat[i] + c.beta * x1[i];
                    held_noise[i] = (x[i] - c.lambda * d) / c.gamma;
                    next[i] += v.v_g[i] * dg;
                }
            } else {
                for (std::size_t i = 0; i < dim; ++i) {
                    const double d = c.alpha * x0hat[i] + c.beta * x1[i];
                    next[i] += (-c.gamma * d + c.lambda * held_noise[i]) * dg;
                }
            }
        }
        x.swap(next);
    }
    return x;
}

}  // namespace disi
