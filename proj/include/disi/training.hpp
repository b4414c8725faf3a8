#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <functional>
#include <optional>
#include <variant>
#include <vector>

#include "disi/denoiser.hpp"
#include "disi/mlp.hpp"
#include "disi/toydata.hpp"
#include "disi/vec.hpp"

namespace disi {

/// Draws (r, g) from a random Elliptical path: delta ~ U(0, pi/2), t ~ U(-pi/2, pi/2).
struct EllipticalSpecialist {};
/// Draws (r, g) from a random Linear path: delta ~ U(0, pi/2), t ~ U(0, 1).
struct LinearSpecialist {};
/// r ~ U(-phi, phi), g = 0.
struct RegressionSpecialist {};
/// r ~ U(-phi, phi), g ~ U(0, pi/2) independently.
struct UniformSampler {};
/// u ~ N(m, s) per variable, squashed through the logistic function and mapped
/// affinely onto [-phi, phi] and [0, pi/2].
struct LogitNormal {
    double m_r = 0.0;
    double s_r = 1.0;
    double m_g = 0.0;
    double s_g = 1.0;
};

using TimeSamplerKind =
    std::variant<EllipticalSpecialist, LinearSpecialist, RegressionSpecialist, UniformSampler,
                 LogitNormal>;

struct TimeDraw {
    double r;
    double g;
    double delta;  // path parameter drawn by the specialist samplers, else 0
};

TimeDraw sample_time(const TimeSamplerKind& kind, double phi, Rng& rng);

/// e^w ||x0hat - x0||^2 - w
double weighted_loss(ConstSpan x0hat, ConstSpan x0, double w);

/// Learned log-weight w(r, g): [emb_16(r) ; emb_16(g)] -> 32 GELU -> 1, zero-initialized output.
class AdaptiveWeight {
public:
    static constexpr int kEmbDim = 16;
    static constexpr int kHidden = 32;

    explicit AdaptiveWeight(Rng& rng);
    AdaptiveWeight(Mlp net) : net_(std::move(net)) {}

    double operator()(double r, double g) const;
    Eigen::MatrixXd inputs(std::span<const double> rs, std::span<const double> gs) const;

    const Mlp& net() const { return net_; }
    Mlp& net() { return net_; }

private:
    Mlp net_;
};

struct TrainConfig {
    TimeSamplerKind time_sampler = EllipticalSpecialist{};
    std::size_t batch_size = 16;
    std::size_t n_steps = 20000;
    double learning_rate = 1e-4;
    double beta1 = 0.9;
    double beta2 = 0.999;
    double adam_epsilon = 1e-8;
    double weight_decay = 1e-2;
    double ema_decay = 0.9999;
    bool adaptive_weighting = true;
    std::uint64_t seed = 0;
    MlpConfig net{};

    /// Throws ConfigError.
    void validate() const;
};

/// Adam with decoupled weight decay.
class AdamW {
public:
    AdamW(std::size_t n, double lr, double beta1, double beta2, double eps, double weight_decay);
    void step(Eigen::VectorXd& params, const Eigen::VectorXd& grad);
    long steps() const { return t_; }

private:
    Eigen::VectorXd m_;
    Eigen::VectorXd v_;
    double lr_, beta1_, beta2_, eps_, wd_;
    long t_ = 0;
};

struct LossRecord {
    double loss;  // batch mean of e^w ||x0hat - x0||^2 - w
    double mse;   // batch mean of ||x0hat - x0||^2
};

struct TrainResult {
    MlpDenoiser model;
    Eigen::VectorXd ema_params;
    AdaptiveWeight weight_net;
    std::vector<LossRecord> trace;

    MlpDenoiser ema_model() const;
};

/// Optional per-step observer; receives the step index and the current record.
using TrainCallback = std::function<void(std::size_t, const LossRecord&)>;

/// Trains an MlpDenoiser on the pairs of a standardized dataset. Each step draws
/// batch_size pairs, times and noises, forms x(r,g), predicts x0 and takes one
/// AdamW step on the weighted loss for both the denoiser and (when enabled) the
/// weight network, then updates the EMA. All randomness comes from cfg.seed,
/// so traces are bitwise reproducible. Throws NonFiniteLoss.
TrainResult train(const ToyDataset& dataset, const TrainConfig& cfg,
                  const TrainCallback& callback = {});

}  // namespace disi
