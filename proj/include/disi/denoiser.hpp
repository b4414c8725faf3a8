#pragma once

#include <Eigen/Dense>
#include <functional>
#include <optional>
#include <vector>

#include "disi/mlp.hpp"
#include "disi/process.hpp"
#include "disi/schedule.hpp"
#include "disi/vec.hpp"

namespace disi {

/// Prediction contract x0_hat = sigma_d * F(x / sigma_d, x1, r, g).
/// Implementations must be reentrant: predict() may run on many threads at once.
class Denoiser {
public:
    virtual ~Denoiser() = default;
    virtual Vec predict(ConstSpan x, ConstSpan x1, double r, double g) const = 0;
};

/// Per-item denoiser lookup used by batch restoration.
using DenoiserFor = std::function<const Denoiser&(std::size_t item)>;

/// Returns the true clean point regardless of its inputs. Test-only oracle.
class CheatDenoiser final : public Denoiser {
public:
    explicit CheatDenoiser(Vec x0) : x0_(std::move(x0)) {}
    Vec predict(ConstSpan x, ConstSpan x1, double r, double g) const override;

private:
    Vec x0_;
};

struct GaussianOracleParams {
    double rho;
    double sigma_d;
};

/// Exact posterior mean E[x0 | x(r,g), x1] for zero-mean jointly Gaussian data
/// with per-coordinate correlation rho and common std sigma_d.
class GaussianOracle final : public Denoiser {
public:
    explicit GaussianOracle(GaussianOracleParams params);
    Vec predict(ConstSpan x, ConstSpan x1, double r, double g) const override;

private:
    GaussianOracleParams params_;
    GvpSchedule sched_;
};

/// Sinusoidal features [sin(w_0 t) .. sin(w_{h-1} t), cos(w_0 t) .. cos(w_{h-1} t)]
/// with w_j = 10000^(-2j / emb_dim), h = emb_dim / 2. Throws DomainError for odd emb_dim.
Vec time_embed(double t, int emb_dim);
void time_embed_into(double t, int emb_dim, double* out);

struct MlpConfig {
    int dim = 2;
    int emb_dim = 32;
    int hidden = 128;
    int hidden_layers = 2;
};

/// Toy restoration network: [x / sigma_d ; x1 / sigma_d ; emb(r) ; emb(g)] -> GELU MLP -> x0_hat / sigma_d.
class MlpDenoiser final : public Denoiser {
public:
    MlpDenoiser(const MlpConfig& cfg, double sigma_d, double rho, Rng& rng);
    MlpDenoiser(int dim, int emb_dim, double sigma_d, double rho, Mlp net);

    Vec predict(ConstSpan x, ConstSpan x1, double r, double g) const override;

    /// One network input column per sample; xs/x1s hold one sample per column.
    Eigen::MatrixXd make_inputs(const Eigen::MatrixXd& xs, const Eigen::MatrixXd& x1s,
                                std::span<const double> rs, std::span<const double> gs) const;

    /// Predictions in data units for a batch (one sample per column).
    Eigen::MatrixXd predict_batch(const Eigen::MatrixXd& xs, const Eigen::MatrixXd& x1s,
                                  std::span<const double> rs, std::span<const double> gs) const;

    int dim() const { return dim_; }
    int emb_dim() const { return emb_dim_; }
    double sigma_d() const { return sigma_d_; }
    double rho() const { return rho_; }
    const Mlp& net() const { return net_; }
    Mlp& net() { return net_; }

private:
    int dim_;
    int emb_dim_;
    double sigma_d_;
    double rho_;
    Mlp net_;
};

/// Weighted regression batch. Prediction = output_scale * net(input); the
/// per-sample loss is e^w ||prediction - target||^2 - w.
struct WeightedBatch {
    Eigen::MatrixXd inputs;   // one column per sample
    Eigen::MatrixXd targets;  // data units
    Eigen::VectorXd log_weights;
    double output_scale = 1.0;
};

struct LossGrad {
    double loss;
    Eigen::VectorXd grad;           // dL/dparams
    Eigen::VectorXd d_log_weights;  // dL/dw per sample
};

/// Batch mean of the weighted loss with exact gradients.
LossGrad weighted_loss_and_grad(const Mlp& net, const WeightedBatch& batch);

}  // namespace disi
