#include "disi/toydata.hpp"

#include <cmath>

#include "disi/errors.hpp"

namespace disi {

Vec Standardization::apply(ConstSpan x) const {
    Vec out(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) out[i] = (x[i] - mean[i]) * scale[i];
    return out;
}

Vec Standardization::invert(ConstSpan x) const {
    Vec out(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) out[i] = x[i] / scale[i] + mean[i];
    return out;
}

Cloud standardize(const Cloud& cloud, double sigma_d, Standardization* info) {
    if (cloud.size() < 2) throw InsufficientData("standardize: need at least 2 points");
    const std::size_t dim = cloud.front().size();
    const double n = static_cast<double>(cloud.size());
    Standardization st{Vec(dim, 0.0), Vec(dim, 0.0)};
    for (const Vec& p : cloud) {
        require_same_dim(p.size(), dim, "standardize");
        for (std::size_t i = 0; i < dim; ++i) st.mean[i] += p[i];
    }
    for (double& m : st.mean) m /= n;
    Vec var(dim, 0.0);
    for (const Vec& p : cloud) {
        for (std::size_t i = 0; i < dim; ++i) {
            const double d = p[i] - st.mean[i];
            var[i] += d * d;
        }
    }
    for (std::size_t i = 0; i < dim; ++i) {
        const double sd = std::sqrt(var[i] / n);
        if (!(sd > 0.0)) throw InsufficientData("standardize: coordinate has zero variance");
        st.scale[i] = sigma_d / sd;
    }
    Cloud out;
    out.reserve(cloud.size());
    for (const Vec& p : cloud) out.push_back(st.apply(p));
    if (info) *info = std::move(st);
    return out;
}

Cloud ToyDataset::clean() const {
    Cloud c;
    c.reserve(pairs.size());
    for (const PairSample& p : pairs) c.push_back(p.x0);
    return c;
}

Cloud ToyDataset::degraded() const {
    Cloud c;
    c.reserve(pairs.size());
    for (const PairSample& p : pairs) c.push_back(p.x1);
    return c;
}

Vec scurve_point(double u) {
    if (u <= 0.5) {
        const double a = kHalfPi + 2.0 * kPi * u;
        return {std::cos(a), 1.0 + std::sin(a)};
    }
    const double a = kHalfPi - 2.0 * kPi * (u - 0.5);
    return {std::cos(a), -1.0 + std::sin(a)};
}

Cloud make_scurve(std::size_t n, double jitter, std::uint64_t seed, double sigma_d,
                  Standardization* info) {
    if (n < 2) throw DomainError("make_scurve: need n >= 2");
    if (!(jitter >= 0.0)) throw DomainError("make_scurve: jitter must be >= 0");
    Rng rng = make_rng(seed, 0);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    std::normal_distribution<double> normal(0.0, 1.0);
    Cloud raw;
    raw.reserve(n);
    for (std::size_t k = 0; k < n; ++k) {
        Vec p = scurve_point(unit(rng));
        if (jitter > 0.0) {
            for (double& v : p) v += jitter * normal(rng);
        }
        raw.push_back(std::move(p));
    }
    return standardize(raw, sigma_d, info);
}

Cloud degrade(const Cloud& clean, double strength, double noise, std::uint64_t seed,
              double sigma_d) {
    if (!(strength >= 0.0) || !(noise >= 0.0)) {
        throw DomainError("degrade: strength and noise must be >= 0");
    }
    Rng rng = make_rng(seed, 1);
    std::normal_distribution<double> normal(0.0, 1.0);
    Cloud out;
    out.reserve(clean.size());
    for (const Vec& p : clean) {
        if (p.size() != 2) throw DimensionMismatch("degrade: shear distortion needs 2D points");
        Vec q{p[0] + strength * p[1], (1.0 - strength / 2.0) * p[1]};
        if (noise > 0.0) {
            for (double& v : q) v += noise * normal(rng);
        }
        out.push_back(std::move(q));
    }
    return standardize(out, sigma_d);
}

ToyDataset make_scurve_dataset(std::size_t n, double jitter, double strength, double noise,
                               std::uint64_t seed, double sigma_d) {
    const Cloud clean = make_scurve(n, jitter, seed, sigma_d);
    const Cloud deg = degrade(clean, strength, noise, seed, sigma_d);
    ToyDataset ds;
    ds.sigma_d = sigma_d;
    ds.pairs.reserve(n);
    for (std::size_t i = 0; i < n; ++i) ds.pairs.push_back({clean[i], deg[i]});
    ds.rho_hat = estimate_rho(ds.pairs);
    ds.provenance = {
        {"kind", "scurve"},
        {"params",
         {{"n", n}, {"jitter", jitter}, {"degradation", "shear"}, {"strength", strength},
          {"noise", noise}}},
        {"seed", seed},
    };
    return ds;
}

ToyDataset make_gaussian_pairs(double rho, std::size_t n, double sigma_d, std::uint64_t seed,
                               std::size_t dim) {
    if (!(std::abs(rho) < 1.0)) throw DomainError("make_gaussian_pairs: need |rho| < 1");
    if (!(sigma_d > 0.0)) throw DomainError("make_gaussian_pairs: sigma_d must be > 0");
    if (n == 0 || dim == 0) throw DomainError("make_gaussian_pairs: need n, dim >= 1");
    Rng rng = make_rng(seed, 2);
    std::normal_distribution<double> normal(0.0, sigma_d);
    const double c = std::sqrt(1.0 - rho * rho);
    ToyDataset ds;
    ds.sigma_d = sigma_d;
    ds.pairs.reserve(n);
    for (std::size_t k = 0; k < n; ++k) {
        PairSample p{Vec(dim), Vec(dim)};
        for (std::size_t i = 0; i < dim; ++i) {
            p.x0[i] = normal(rng);
            p.x1[i] = rho * p.x0[i] + c * normal(rng);
        }
        ds.pairs.push_back(std::move(p));
    }
    ds.rho_hat = n >= 2 ? estimate_rho(ds.pairs) : rho;
    ds.provenance = {
        {"kind", "gaussian"},
        {"params", {{"n", n}, {"rho", rho}, {"dim", dim}}},
        {"seed", seed},
    };
    return ds;
}

double estimate_rho(const std::vector<PairSample>& pairs) {
    if (pairs.size() < 2) throw InsufficientData("estimate_rho: need at least 2 pairs");
    const std::size_t dim = pairs.front().x0.size();
    const double n = static_cast<double>(pairs.size());
    double total = 0.0;
    for (std::size_t i = 0; i < dim; ++i) {
        double m0 = 0.0, m1 = 0.0;
        for (const PairSample& p : pairs) {
            m0 += p.x0[i];
            m1 += p.x1[i];
        }
        m0 /= n;
        m1 /= n;
        double s00 = 0.0, s11 = 0.0, s01 = 0.0;
        for (const PairSample& p : pairs) {
            const double a = p.x0[i] - m0;
            const double b = p.x1[i] - m1;
            s00 += a * a;
            s11 += b * b;
            s01 += a * b;
        }
        if (!(s00 > 0.0) || !(s11 > 0.0)) {
            throw InsufficientData("estimate_rho: coordinate has zero variance");
        }
        total += s01 / std::sqrt(s00 * s11);
    }
    const double rho = total / static_cast<double>(dim);
    // Exactly (anti)correlated pairs land within rounding of +-1; report them as such.
    return std::abs(rho) > 1.0 - 1e-12 ? std::copysign(1.0, rho) : rho;
}

double mse(const Cloud& a, const Cloud& b) {
    require_same_dim(a.size(), b.size(), "mse: cloud sizes");
    if (a.empty()) throw EmptyDataset("mse: empty clouds");
    double s = 0.0;
    for (std::size_t k = 0; k < a.size(); ++k) s += squared_distance(a[k], b[k]);
    return s / static_cast<double>(a.size());
}

namespace {

/// Per-row sums of Euclidean distances from a[i] to every point of b.
Vec row_distance_sums(const Cloud& a, const Cloud& b, Exec exec) {
    Vec rows(a.size(), 0.0);
    auto row = [&](std::size_t i) {
        double s = 0.0;
        for (const Vec& q : b) s += std::sqrt(squared_distance(a[i], q));
        rows[i] = s;
    };
    if (exec == Exec::parallel) {
#pragma omp parallel for schedule(static)
        for (std::ptrdiff_t i = 0; i < static_cast<std::ptrdiff_t>(a.size()); ++i) {
            row(static_cast<std::size_t>(i));
        }
    } else {
        for (std::size_t i = 0; i < a.size(); ++i) row(i);
    }
    return rows;
}

double mean_distance(const Cloud& a, const Cloud& b, Exec exec) {
    const Vec rows = row_distance_sums(a, b, exec);
    double s = 0.0;
    for (double v : rows) s += v;
    return s / (static_cast<double>(a.size()) * static_cast<double>(b.size()));
}

}  // namespace

double energy_distance(const Cloud& a, const Cloud& b, Exec exec) {
    if (a.empty() || b.empty()) throw EmptyDataset("energy_distance: empty cloud");
    const std::size_t dim = a.front().size();
    for (const Vec& p : a) require_same_dim(p.size(), dim, "energy_distance");
    for (const Vec& p : b) require_same_dim(p.size(), dim, "energy_distance");
    const double ed =
        2.0 * mean_distance(a, b, exec) - mean_distance(a, a, exec) - mean_distance(b, b, exec);
    return ed < 0.0 ? 0.0 : ed;
}

}  // namespace disi
