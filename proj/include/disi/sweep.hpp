#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <vector>

#include "disi/denoiser.hpp"
#include "disi/parallel.hpp"
#include "disi/sampler.hpp"
#include "disi/toydata.hpp"

namespace disi {

/// Grid of (delta, eta, NFE) cells on the Elliptical path.
struct SweepConfig {
    std::vector<double> deltas{0.0, kPi / 8.0, kPi / 4.0, kHalfPi};
    std::vector<double> etas{0.0, 0.2, 0.5, 1.0};
    std::vector<std::size_t> nfes{1, 2, 5, 15, 50};
    double boot_epsilon = 1e-3;
    std::uint64_t seed = 0;
};

struct SweepCell {
    double delta;
    double eta;
    std::size_t nfe;
    bool applicable;             // false where the sampler is undefined
    std::optional<double> mse;   // against the clean cloud
    std::optional<double> energy;
    Cloud outputs;               // restored cloud, empty when not applicable
};

/// Restores every degraded point of the test set for every cell. All cells
/// share cfg.seed, so item i sees the same noise stream (and therefore the
/// same boot noise) in every cell. delta = 0 cells run the regression sampler
/// for every eta.
std::vector<SweepCell> run_sweep(const GvpSchedule& sched, const Denoiser& denoiser,
                                 const ToyDataset& test, const SweepConfig& cfg,
                                 Exec exec = Exec::parallel);

/// Columns delta,eta,nfe,mse,energy_distance; inapplicable cells print NA.
void write_sweep_csv(std::ostream& os, const std::vector<SweepCell>& cells);

}  // namespace disi
