#pragma once

#include <cstddef>
#include <cstdint>
#include <random>
#include <span>
#include <string_view>
#include <vector>

namespace disi {

using Vec = std::vector<double>;
using ConstSpan = std::span<const double>;

inline constexpr double kHalfPi = 1.57079632679489661923;
inline constexpr double kPi = 3.14159265358979323846;

/// Throws DimensionMismatch unless a and b have the same length.
void require_same_dim(std::size_t a, std::size_t b, std::string_view what);

/// out = a*x + b*y
Vec lincomb(double a, ConstSpan x, double b, ConstSpan y);

double squared_norm(ConstSpan x);
double squared_distance(ConstSpan x, ConstSpan y);

using Rng = std::mt19937_64;

/// SplitMix64 finalizer; derives statistically independent sub-seeds.
std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t stream);

inline Rng make_rng(std::uint64_t seed, std::uint64_t stream) {
    return Rng{mix_seed(seed, stream)};
}

}  // namespace disi
