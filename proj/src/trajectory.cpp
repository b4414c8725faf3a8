#include "disi/trajectory.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "disi/errors.hpp"
#include "disi/vec.hpp"

namespace disi {

namespace {

template <class... Ts>
struct overloaded : Ts... {
    using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

void check_delta(double delta) {
    if (!(delta >= 0.0 && delta <= kHalfPi)) {
        std::ostringstream os;
        os << "trajectory delta must lie in [0, pi/2], got " << delta;
        throw DomainError(os.str());
    }
}

}  // namespace

Trajectory::Trajectory(PathKind kind, double phi) : kind_(kind), phi_(phi) {
    if (!(phi > 0.0) || !(phi < kHalfPi)) throw DomainError("trajectory phi must lie in (0, pi/2)");
    std::visit(overloaded{
                   [](const Elliptical& e) { check_delta(e.delta); },
                   [](const Linear& l) { check_delta(l.delta); },
                   [](const Regression&) {},
                   [](const VPath& v) {
                       check_delta(v.delta);
                       if (!(v.p > 0.0)) throw DomainError("V-path exponent p must be > 0");
                   },
                   [](const QuadBezier& b) { check_delta(b.delta); },
               },
               kind_);
}

double Trajectory::delta() const {
    return std::visit(overloaded{
                          [](const Regression&) { return 0.0; },
                          [](const auto& k) { return k.delta; },
                      },
                      kind_);
}

std::string Trajectory::name() const {
    return std::visit(overloaded{
                          [](const Elliptical&) { return std::string("elliptical"); },
                          [](const Linear&) { return std::string("linear"); },
                          [](const Regression&) { return std::string("regression"); },
                          [](const VPath&) { return std::string("vpath"); },
                          [](const QuadBezier&) { return std::string("bezier"); },
                      },
                      kind_);
}

double Trajectory::t_start() const {
    return std::visit(overloaded{
                          [](const Elliptical&) { return kHalfPi; },
                          [](const Linear&) { return 1.0; },
                          [](const Regression&) { return 0.0; },
                          [](const VPath&) { return 1.0; },
                          [](const QuadBezier&) { return 0.0; },
                      },
                      kind_);
}

double Trajectory::t_end() const {
    return std::visit(overloaded{
                          [](const Elliptical&) { return -kHalfPi; },
                          [](const Linear&) { return 0.0; },
                          [](const Regression&) { return 1.0; },
                          [](const VPath&) { return -1.0; },
                          [](const QuadBezier&) { return 1.0; },
                      },
                      kind_);
}

double Trajectory::direction() const { return t_end() > t_start() ? 1.0 : -1.0; }

bool Trajectory::starts_noiseless() const { return point(t_start()).g == 0.0; }

bool Trajectory::is_regression() const { return delta() == 0.0; }

PathPoint Trajectory::point(double t) const {
    const double lo = std::min(t_start(), t_end());
    const double hi = std::max(t_start(), t_end());
    if (!(t >= lo && t <= hi)) {
        std::ostringstream os;
        os.precision(17);
        os << name() << " path parameter t = " << t << " outside [" << lo << ", " << hi << "]";
        throw DomainError(os.str());
    }
    if (t == t_end()) return {-phi_, 0.0};
    const double phi = phi_;
    PathPoint p = std::visit(
        overloaded{
            [&](const Elliptical& e) -> PathPoint {
                if (t == kHalfPi) return {phi, 0.0};
                return {phi * std::sin(t), e.delta * std::cos(t)};
            },
            [&](const Linear& l) -> PathPoint {
                if (t == 1.0) return {phi, l.delta};
                return {2.0 * phi * t - phi, l.delta * t};
            },
            [&](const Regression&) -> PathPoint {
                if (t == 0.0) return {phi, 0.0};
                return {phi * (1.0 - 2.0 * t), 0.0};
            },
            [&](const VPath& v) -> PathPoint {
                if (t == 1.0) return {phi, 0.0};
                return {phi * t, v.delta * (1.0 - std::pow(std::abs(t), v.p))};
            },
            [&](const QuadBezier& b) -> PathPoint {
                if (t == 0.0) return {phi, 0.0};
                return {phi * (1.0 - 2.0 * t), 2.0 * t * (1.0 - t) * b.delta};
            },
        },
        kind_);
    p.r = std::clamp(p.r, -phi, phi);
    p.g = std::clamp(p.g, 0.0, kHalfPi);
    return p;
}

TimeGrid discretize_between(const Trajectory& traj, double t_from, double t_to,
                            std::size_t n_steps) {
    if (n_steps == 0) throw DomainError("discretize: n_steps must be >= 1");
    TimeGrid grid;
    grid.reserve(n_steps + 1);
    const double n = static_cast<double>(n_steps);
    for (std::size_t i = 0; i <= n_steps; ++i) {
        double t;
        if (i == 0) {
            t = t_from;
        } else if (i == n_steps) {
            t = t_to;
        } else {
            const double s = static_cast<double>(i) / n;
            t = t_from + (t_to - t_from) * s;
        }
        const PathPoint p = traj.point(t);
        grid.push_back({t, p.r, p.g});
    }
    return grid;
}

TimeGrid discretize(const Trajectory& traj, std::size_t n_steps) {
    return discretize_between(traj, traj.t_start(), traj.t_end(), n_steps);
}

std::string Continuity::label() const {
    if (infinite()) return "C_inf";
    return "C" + std::to_string(order);
}

Continuity path_continuity_order(const Trajectory& traj) {
    if (const auto* v = std::get_if<VPath>(&traj.kind())) {
        // |t|^p at t = 0: C^inf for even integers, C^(p-1) for odd integers,
        // C^floor(p) otherwise.
        const double p = v->p;
        const double ip = std::round(p);
        if (std::abs(p - ip) < 1e-12 && ip >= 1.0) {
            const long k = static_cast<long>(ip);
            if (k % 2 == 0) return {Continuity::kInfinite};
            return {static_cast<int>(k - 1)};
        }
        return {static_cast<int>(std::floor(p))};
    }
    return {Continuity::kInfinite};
}

}  // namespace disi
