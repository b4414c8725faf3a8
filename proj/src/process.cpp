#include "disi/process.hpp"

#include <algorithm>

#include "disi/errors.hpp"

namespace disi {

namespace {

constexpr std::size_t kChunk = 4096;

struct Moments {
    Vec sum;
    Vec sumsq;
};

Moments chunk_moments(const GvpSchedule& sched, const std::vector<PairSample>& dataset,
                      const CoeffSet& c, std::size_t count, std::uint64_t seed,
                      std::size_t chunk) {
    const std::size_t dim = dataset.front().x0.size();
    Moments m{Vec(dim, 0.0), Vec(dim, 0.0)};
    Rng rng = make_rng(seed, chunk);
    std::uniform_int_distribution<std::size_t> pick(0, dataset.size() - 1);
    std::normal_distribution<double> normal(0.0, sched.sigma_d());
    for (std::size_t s = 0; s < count; ++s) {
        const PairSample& p = dataset[pick(rng)];
        for (std::size_t i = 0; i < dim; ++i) {
            const double x =
                c.lambda * (c.alpha * p.x0[i] + c.beta * p.x1[i]) + c.gamma * normal(rng);
            m.sum[i] += x;
            m.sumsq[i] += x * x;
        }
    }
    return m;
}

}  // namespace

Vec data_part(const GvpSchedule& sched, ConstSpan x0, ConstSpan x1, double r) {
    return lincomb(sched.alpha(r), x0, sched.beta(r), x1);
}

NoisyState interpolate(const GvpSchedule& sched, const PairSample& pair, ConstSpan z, double r,
                       double g) {
    require_same_dim(pair.x0.size(), pair.x1.size(), "interpolate: x0 vs x1");
    require_same_dim(pair.x0.size(), z.size(), "interpolate: x0 vs z");
    const CoeffSet c = sched.coeffs(r, g);
    NoisyState s{Vec(z.size()), r, g};
    for (std::size_t i = 0; i < z.size(); ++i) {
        s.x[i] = c.lambda * (c.alpha * pair.x0[i] + c.beta * pair.x1[i]) + c.gamma * z[i];
    }
    return s;
}

Vec sample_noise(Rng& rng, std::size_t dim, double sigma_d) {
    if (dim == 0) throw DomainError("sample_noise: dim must be >= 1");
    std::normal_distribution<double> normal(0.0, sigma_d);
    Vec z(dim);
    for (double& v : z) v = normal(rng);
    return z;
}

double empirical_variance(const GvpSchedule& sched, const std::vector<PairSample>& dataset,
                          double r, double g, std::size_t n, std::uint64_t seed, Exec exec) {
    if (dataset.empty()) throw EmptyDataset("empirical_variance: empty dataset");
    if (n < 2) throw DomainError("empirical_variance: need n >= 2");
    const CoeffSet c = sched.coeffs(r, g);
    const std::size_t dim = dataset.front().x0.size();
    const std::size_t chunks = (n + kChunk - 1) / kChunk;
    std::vector<Moments> parts(chunks);

    auto run = [&](std::size_t k) {
        const std::size_t count = std::min(kChunk, n - k * kChunk);
        parts[k] = chunk_moments(sched, dataset, c, count, seed, k);
    };
    if (exec == Exec::parallel) {
#pragma omp parallel for schedule(dynamic)
        for (std::ptrdiff_t k = 0; k < static_cast<std::ptrdiff_t>(chunks); ++k) {
            run(static_cast<std::size_t>(k));
        }
    } else {
        for (std::size_t k = 0; k < chunks; ++k) run(k);
    }

    Vec sum(dim, 0.0), sumsq(dim, 0.0);
    for (const Moments& m : parts) {
        for (std::size_t i = 0; i < dim; ++i) {
            sum[i] += m.sum[i];
            sumsq[i] += m.sumsq[i];
        }
    }
    const double nn = static_cast<double>(n);
    double var = 0.0;
    for (std::size_t i = 0; i < dim; ++i) {
        var += (sumsq[i] - sum[i] * sum[i] / nn) / (nn - 1.0);
    }
    return var / static_cast<double>(dim);
}

}  // namespace disi
