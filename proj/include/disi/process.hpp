#pragma once

#include <cstdint>
#include <vector>

#include "disi/parallel.hpp"
#include "disi/schedule.hpp"
#include "disi/vec.hpp"

namespace disi {

/// A clean point and its degraded counterpart, both in sigma_d-standardized units.
struct PairSample {
    Vec x0;
    Vec x1;
};

struct NoisyState {
    Vec x;
    double r;
    double g;
};

/// x(r,g) = lambda(g) (alpha(r) x0 + beta(r) x1) + gamma(g) z
NoisyState interpolate(const GvpSchedule& sched, const PairSample& pair, ConstSpan z, double r,
                       double g);

/// The data part alpha(r) x0 + beta(r) x1.
Vec data_part(const GvpSchedule& sched, ConstSpan x0, ConstSpan x1, double r);

/// i.i.d. N(0, sigma_d^2) components.
Vec sample_noise(Rng& rng, std::size_t dim, double sigma_d);

/// Monte-Carlo estimate of the per-coordinate variance of x(r,g), averaged over
/// coordinates. Pairs are resampled uniformly with replacement and paired with
/// fresh noise. Samples are processed in fixed chunks seeded from (seed, chunk),
/// so the estimate does not depend on the thread count.
double empirical_variance(const GvpSchedule& sched, const std::vector<PairSample>& dataset,
                          double r, double g, std::size_t n, std::uint64_t seed,
                          Exec exec = Exec::parallel);

}  // namespace disi
