#pragma once

#include <cstddef>
#include <string>
#include <variant>
#include <vector>

namespace disi {

/// r = phi sin t, g = delta cos t, t from pi/2 down to -pi/2.
struct Elliptical {
    double delta;
};

/// r = 2 phi t - phi, g = delta t, t from 1 down to 0.
struct Linear {
    double delta;
};

/// g = 0, r = phi (1 - 2t), t from 0 up to 1.
struct Regression {};

/// r = phi t, g = delta (1 - |t|^p), t from 1 down to -1.
struct VPath {
    double delta;
    double p;
};

/// Quadratic Bezier with control points (phi, 0), (0, delta), (-phi, 0), t from 0 up to 1.
/// Peak noise level is delta / 2 at t = 1/2.
struct QuadBezier {
    double delta;
};

using PathKind = std::variant<Elliptical, Linear, Regression, VPath, QuadBezier>;

struct PathPoint {
    double r;
    double g;
};

struct GridPoint {
    double t;
    double r;
    double g;
};

/// Ordered from the path start (r = phi, the degraded end) to the path end
/// (r = -phi, g = 0, the clean end).
using TimeGrid = std::vector<GridPoint>;

/// A parametric inference path t -> (r(t), g(t)) over the schedule rectangle.
class Trajectory {
public:
    /// Throws DomainError for delta outside [0, pi/2], p <= 0 or phi <= 0.
    Trajectory(PathKind kind, double phi);

    const PathKind& kind() const { return kind_; }
    double phi() const { return phi_; }
    /// Peak-noise parameter; 0 for Regression.
    double delta() const;
    std::string name() const;

    double t_start() const;
    double t_end() const;
    /// +1 when t increases from start to end, -1 otherwise.
    double direction() const;

    /// Throws DomainError when t lies outside [min(t_start, t_end), max(...)].
    /// Both endpoints return the exact boundary values (phi, g_start) and (-phi, 0).
    PathPoint point(double t) const;

    /// True when the path begins on g = 0 and the sampler must take a booting step.
    bool starts_noiseless() const;

    /// True for delta = 0 paths, which the sampler routes to the regression algorithm.
    bool is_regression() const;

private:
    PathKind kind_;
    double phi_;
};

/// n_steps + 1 points uniform in t from t_start to t_end.
TimeGrid discretize(const Trajectory& traj, std::size_t n_steps);

/// n_steps + 1 points uniform in t between two parameter values on the path.
TimeGrid discretize_between(const Trajectory& traj, double t_from, double t_to,
                            std::size_t n_steps);

/// Continuity class of the path's g(t).
struct Continuity {
    static constexpr int kInfinite = -1;
    int order;

    bool infinite() const { return order == kInfinite; }
    std::string label() const;
    friend bool operator==(const Continuity&, const Continuity&) = default;
};

Continuity path_continuity_order(const Trajectory& traj);

}  // namespace disi
