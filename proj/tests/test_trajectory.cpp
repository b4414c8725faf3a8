#include <doctest.h>

#include <cmath>

#include "disi/vec.hpp"
#include "disi/errors.hpp"
#include "disi/schedule.hpp"
#include "disi/trajectory.hpp"

using namespace disi;

namespace {
const double kPhi = GvpSchedule(0.7482, 1.0).phi();
}

TEST_CASE("named points") {
    const Trajectory e(Elliptical{kPi / 4}, kPhi);
    CHECK(e.point(kHalfPi).r == kPhi);
    CHECK(e.point(kHalfPi).g == 0.0);
    CHECK(e.point(0.0).r == 0.0);
    CHECK(e.point(0.0).g == kPi / 4);
    const Trajectory l(Linear{kPi / 8}, kPhi);
    CHECK(l.point(1.0).r == kPhi);
    CHECK(l.point(1.0).g == kPi / 8);
    CHECK(l.point(0.0).r == -kPhi);
    CHECK(l.point(0.0).g == 0.0);
}

TEST_CASE("every path ends on the clean boundary") {
    for (const PathKind& k : {PathKind{Elliptical{0.3}}, PathKind{Linear{0.3}}, PathKind{Regression{}},
                              PathKind{VPath{0.3, 2.5}}, PathKind{QuadBezier{0.3}}}) {
        const Trajectory t(k, kPhi);
        CAPTURE(t.name());
        CHECK(t.point(t.t_start()).r == kPhi);
        CHECK(t.point(t.t_end()).r == -kPhi);
        CHECK(t.point(t.t_end()).g == 0.0);
        for (std::size_t n : {1, 2, 7, 100}) {
            const TimeGrid g = discretize(t, n);
            REQUIRE(g.size() == n + 1);
            CHECK(g.front().t == t.t_start());
            CHECK(g.back().t == t.t_end());
            CHECK(g.front().r == kPhi);
            CHECK(g.back().r == -kPhi);
            CHECK(g.back().g == 0.0);
        }
    }
}

TEST_CASE("implicit equations hold along the path") {
    Rng rng = make_rng(31, 0);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    double ell = 0.0, lin = 0.0;
    for (int k = 0; k < 1000; ++k) {
        const double delta = 0.01 + (kHalfPi - 0.01) * u(rng);
        const PathPoint pe = Trajectory(Elliptical{delta}, kPhi).point(-kHalfPi + kPi * u(rng));
        ell = std::max(ell, std::abs(pe.r * pe.r / (kPhi * kPhi) + pe.g * pe.g / (delta * delta) - 1));
        const PathPoint pl = Trajectory(Linear{delta}, kPhi).point(u(rng));
        lin = std::max(lin, std::abs(pl.r / -kPhi + pl.g / (delta / 2) - 1));
    }
    CHECK(ell < 1e-12);
    CHECK(lin < 1e-12);
}

TEST_CASE("uniform grids") {
    const double delta = 0.4;
    const TimeGrid e = discretize(Trajectory(Elliptical{delta}, kPhi), 2);
    CHECK(e[1].t == 0.0);
    CHECK(e[1].r == 0.0);
    CHECK(e[1].g == delta);
    const TimeGrid r = discretize(Trajectory(Regression{}, kPhi), 1);
    REQUIRE(r.size() == 2);
    CHECK(r[0].r == kPhi);
    CHECK(r[1].r == -kPhi);
    const TimeGrid l = discretize(Trajectory(Linear{kPi / 8}, kPhi), 4);
    const double expect[] = {kPi / 8, 3 * kPi / 32, kPi / 16, kPi / 32, 0.0};
    for (int i = 0; i < 5; ++i) CHECK(l[i].g == doctest::Approx(expect[i]).epsilon(1e-15));
    CHECK_THROWS_AS(discretize(Trajectory(Linear{0.1}, kPhi), 0), DomainError);
}

TEST_CASE("parameter and shape validation") {
    CHECK_THROWS_AS(Trajectory(Elliptical{-0.1}, kPhi), DomainError);
    CHECK_THROWS_AS(Trajectory(Elliptical{kHalfPi + 0.01}, kPhi), DomainError);
    CHECK_THROWS_AS(Trajectory(VPath{0.3, 0.0}, kPhi), DomainError);
    CHECK_THROWS_AS(Trajectory(Linear{0.3}, kPhi).point(1.5), DomainError);
    CHECK_THROWS_AS(Trajectory(Elliptical{0.3}, kPhi).point(-2.0), DomainError);
}

TEST_CASE("boot requirement") {
    CHECK(Trajectory(Elliptical{0.3}, kPhi).starts_noiseless());
    CHECK(Trajectory(VPath{0.3, 1}, kPhi).starts_noiseless());
    CHECK(Trajectory(QuadBezier{0.3}, kPhi).starts_noiseless());
    CHECK_FALSE(Trajectory(Linear{0.3}, kPhi).starts_noiseless());
    CHECK(Trajectory(Elliptical{0.0}, kPhi).is_regression());
    CHECK(Trajectory(Linear{0.0}, kPhi).is_regression());
}

TEST_CASE("continuity classes") {
    auto label = [](const PathKind& k) { return path_continuity_order(Trajectory(k, kPhi)).label(); };
    CHECK(label(VPath{0.3, 1.0}) == "C0");
    CHECK(label(VPath{0.3, 2.5}) == "C2");
    CHECK(label(VPath{0.3, 3.0}) == "C2");
    CHECK(label(VPath{0.3, 2.0}) == "C_inf");
    CHECK(label(Elliptical{0.3}) == "C_inf");
    CHECK(label(Linear{0.3}) == "C_inf");
    CHECK(label(QuadBezier{0.3}) == "C_inf");
}

TEST_CASE("V-path kink at t = 0 only for p = 1") {
    const double h = 1e-6;
    for (double p : {1.0, 1.5, 2.0, 2.5}) {
        const Trajectory v(VPath{0.5, p}, kPhi);
        const double right = (v.point(h).g - v.point(0.0).g) / h;
        const double left = (v.point(0.0).g - v.point(-h).g) / h;
        if (p == 1.0) {
            CHECK(std::abs(right - left) > 0.5);
        } else {
            CHECK(std::abs(right - left) < 1e-2);
        }
    }
}

TEST_CASE("Bezier passes through both ends and peaks at delta / 2") {
    const double delta = 0.9;
    const Trajectory b(QuadBezier{delta}, kPhi);
    CHECK(b.point(0.5).g == doctest::Approx(delta / 2).epsilon(1e-12));
    CHECK(std::abs(b.point(0.5).r) < 1e-12);
    for (int i = 0; i <= 100; ++i) CHECK(b.point(i / 100.0).g <= delta / 2 + 1e-12);
}
