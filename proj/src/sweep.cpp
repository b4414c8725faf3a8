#include "disi/sweep.hpp"

#include <ostream>

#include "disi/errors.hpp"
#include "disi/io.hpp"

namespace disi {

std::vector<SweepCell> run_sweep(const GvpSchedule& sched, const Denoiser& denoiser,
                                 const ToyDataset& test, const SweepConfig& cfg, Exec exec) {
    if (test.pairs.empty()) throw EmptyDataset("run_sweep: empty test set");
    const Cloud clean = test.clean();
    const Cloud degraded = test.degraded();
    const DenoiserFor shared = [&](std::size_t) -> const Denoiser& { return denoiser; };

    std::vector<SweepCell> cells;
    for (double delta : cfg.deltas) {
        for (double eta : cfg.etas) {
            for (std::size_t nfe : cfg.nfes) {
                SamplerConfig sc{Trajectory(Elliptical{delta}, sched.phi()), nfe, eta,
                                 cfg.boot_epsilon, cfg.seed};
                SweepCell cell{delta, eta, nfe, true, std::nullopt, std::nullopt, {}};
                try {
                    sc.validate();
                } catch (const ConfigError&) {
                    cell.applicable = false;
                    cells.push_back(std::move(cell));
                    continue;
                }
                cell.outputs = restore_batch(sched, shared, degraded, sc, exec);
                cell.mse = mse(cell.outputs, clean);
                cell.energy = energy_distance(cell.outputs, clean, exec);
                cells.push_back(std::move(cell));
            }
        }
    }
    return cells;
}

void write_sweep_csv(std::ostream& os, const std::vector<SweepCell>& cells) {
    os << "delta,eta,nfe,mse,energy_distance\n";
    for (const SweepCell& c : cells) {
        os << format_double(c.delta) << ',' << format_double(c.eta) << ',' << c.nfe << ','
           << (c.mse ? format_double(*c.mse) : "NA") << ','
           << (c.energy ? format_double(*c.energy) : "NA") << '\n';
    }
}

}  // namespace disi
