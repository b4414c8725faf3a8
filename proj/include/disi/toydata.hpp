#pragma once

#include <cstdint>
#include <json.hpp>
#include <vector>

#include "disi/parallel.hpp"
#include "disi/process.hpp"
#include "disi/vec.hpp"

namespace disi {

/// A point cloud, one point per entry.
using Cloud = std::vector<Vec>;

/// Per-coordinate affine map x -> (x - mean) * scale used by standardize().
struct Standardization {
    Vec mean;
    Vec scale;

    Vec apply(ConstSpan x) const;
    Vec invert(ConstSpan x) const;
};

/// Shifts each coordinate to zero mean and scales it to population std sigma_d.
/// Throws InsufficientData for fewer than 2 points or a constant coordinate.
Cloud standardize(const Cloud& cloud, double sigma_d, Standardization* info = nullptr);

struct ToyDataset {
    std::vector<PairSample> pairs;
    double sigma_d = 1.0;
    double rho_hat = 0.0;
    nlohmann::json provenance;  // {kind, params, seed}

    Cloud clean() const;
    Cloud degraded() const;
    std::size_t dim() const { return pairs.empty() ? 0 : pairs.front().x0.size(); }
};

/// Point on the S curve for u in [0, 1]: the left half of the unit circle around
/// (0, 1) followed by the right half of the unit circle around (0, -1).
Vec scurve_point(double u);

/// n points with u ~ U(0, 1) on the S curve plus isotropic N(0, jitter^2)
/// noise, standardized to sigma_d. Throws DomainError for n < 2 or jitter < 0.
Cloud make_scurve(std::size_t n, double jitter, std::uint64_t seed, double sigma_d = 1.0,
                  Standardization* info = nullptr);

/// Shear-and-squash distortion S = [[1, strength], [0, 1 - strength / 2]] plus
/// N(0, noise^2) per coordinate, then re-standardized to the clean cloud's
/// sigma_d. Index i of the output pairs with index i of the input.
Cloud degrade(const Cloud& clean, double strength, double noise, std::uint64_t seed,
              double sigma_d = 1.0);

/// Clean S curve plus its degraded counterpart, rho estimated from the pairs.
ToyDataset make_scurve_dataset(std::size_t n, double jitter, double strength, double noise,
                               std::uint64_t seed, double sigma_d = 1.0);

/// i.i.d. pairs x0 ~ N(0, sigma_d^2 I), x1 = rho x0 + sqrt(1 - rho^2) u, u ~ N(0, sigma_d^2 I).
/// Throws DomainError unless |rho| < 1.
ToyDataset make_gaussian_pairs(double rho, std::size_t n, double sigma_d, std::uint64_t seed,
                               std::size_t dim = 1);

/// Pearson correlation per coordinate, averaged. Throws InsufficientData for
/// fewer than 2 pairs or zero variance.
double estimate_rho(const std::vector<PairSample>& pairs);

/// Mean over paired points of the squared Euclidean gap.
double mse(const Cloud& a, const Cloud& b);

/// V-statistic 2 E|A - B| - E|A - A'| - E|B - B'| over all pairs (including
/// i = j), which is zero for identical clouds and never negative.
double energy_distance(const Cloud& a, const Cloud& b, Exec exec = Exec::parallel);

}  // namespace disi
