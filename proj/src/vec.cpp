#include "disi/vec.hpp"

#include <string>

#include "disi/errors.hpp"

namespace disi {

NonFiniteLoss::NonFiniteLoss(long step_, double r_, double g_, double loss_)
    : Error("non-finite loss at step " + std::to_string(step_) + " (r=" + std::to_string(r_) +
            ", g=" + std::to_string(g_) + ", loss=" + std::to_string(loss_) + ")"),
      step(step_),
      r(r_),
      g(g_),
      loss(loss_) {}

void require_same_dim(std::size_t a, std::size_t b, std::string_view what) {
    if (a != b) {
        throw DimensionMismatch(std::string(what) + ": " + std::to_string(a) + " vs " +
                                std::to_string(b));
    }
}

Vec lincomb(double a, ConstSpan x, double b, ConstSpan y) {
    require_same_dim(x.size(), y.size(), "lincomb");
    Vec out(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) out[i] = a * x[i] + b * y[i];
    return out;
}

double squared_norm(ConstSpan x) {
    double s = 0.0;
    for (double v : x) s += v * v;
    return s;
}

double squared_distance(ConstSpan x, ConstSpan y) {
    require_same_dim(x.size(), y.size(), "squared_distance");
    double s = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        const double d = x[i] - y[i];
        s += d * d;
    }
    return s;
}

std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t stream) {
    std::uint64_t z = seed + 0x9E3779B97F4A7C15ULL * (stream + 1);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

}  // namespace disi
