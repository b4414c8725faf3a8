#include "disi/denoiser.hpp"

#include <cmath>

#include "disi/errors.hpp"

namespace disi {

Vec CheatDenoiser::predict(ConstSpan x, ConstSpan x1, double, double) const {
    require_same_dim(x.size(), x0_.size(), "cheat oracle: state");
    require_same_dim(x1.size(), x0_.size(), "cheat oracle: x1");
    return x0_;
}

GaussianOracle::GaussianOracle(GaussianOracleParams params)
    : params_(params), sched_(params.rho, params.sigma_d) {}

Vec GaussianOracle::predict(ConstSpan x, ConstSpan x1, double r, double g) const {
    require_same_dim(x.size(), x1.size(), "gaussian oracle");
    const CoeffSet c = sched_.coeffs(r, g);
    const double rho = params_.rho;
    const double var_d = params_.sigma_d * params_.sigma_d;
    const double s2 = (1.0 - rho * rho) * var_d;  // Var(x0 | x1)
    const double a = c.lambda * c.alpha;           // gain of x0 in the state
    const double denom = a * a * s2 + c.gamma * c.gamma * var_d;
    Vec out(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) {
        const double m = rho * x1[i];
        if (denom == 0.0) {
            // State carries no information about x0.
            out[i] = m;
            continue;
        }
        const double y = x[i] - c.lambda * c.beta * x1[i];
        out[i] = m + a * s2 / denom * (y - a * m);
    }
    return out;
}

void time_embed_into(double t, int emb_dim, double* out) {
    if (emb_dim <= 0 || emb_dim % 2 != 0) {
        throw DomainError("time embedding width must be a positive even number, got " +
                          std::to_string(emb_dim));
    }
    const int half = emb_dim / 2;
    for (int j = 0; j < half; ++j) {
        const double freq = std::pow(10000.0, -2.0 * j / emb_dim);
        out[j] = std::sin(freq * t);
        out[half + j] = std::cos(freq * t);
    }
}

Vec time_embed(double t, int emb_dim) {
    if (emb_dim <= 0 || emb_dim % 2 != 0) {
        throw DomainError("time embedding width must be a positive even number, got " +
                          std::to_string(emb_dim));
    }
    Vec out(static_cast<std::size_t>(emb_dim));
    time_embed_into(t, emb_dim, out.data());
    return out;
}

namespace {

std::vector<int> denoiser_widths(const MlpConfig& cfg) {
    if (cfg.dim < 1) throw ConfigError("denoiser dim must be >= 1");
    if (cfg.hidden_layers < 1) throw ConfigError("denoiser needs at least one hidden layer");
    std::vector<int> w{2 * cfg.dim + 2 * cfg.emb_dim};
    for (int i = 0; i < cfg.hidden_layers; ++i) w.push_back(cfg.hidden);
    w.push_back(cfg.dim);
    return w;
}

}  // namespace

MlpDenoiser::MlpDenoiser(const MlpConfig& cfg, double sigma_d, double rho, Rng& rng)
    : dim_(cfg.dim),
      emb_dim_(cfg.emb_dim),
      sigma_d_(sigma_d),
      rho_(rho),
      net_(denoiser_widths(cfg), rng, true) {
    if (emb_dim_ <= 0 || emb_dim_ % 2 != 0) throw ConfigError("emb_dim must be positive and even");
    if (!(sigma_d > 0.0)) throw ConfigError("sigma_d must be positive");
}

MlpDenoiser::MlpDenoiser(int dim, int emb_dim, double sigma_d, double rho, Mlp net)
    : dim_(dim), emb_dim_(emb_dim), sigma_d_(sigma_d), rho_(rho), net_(std::move(net)) {
    if (net_.input_dim() != 2 * dim + 2 * emb_dim || net_.output_dim() != dim) {
        throw DimensionMismatch("MlpDenoiser: network widths do not match dim/emb_dim");
    }
}

Eigen::MatrixXd MlpDenoiser::make_inputs(const Eigen::MatrixXd& xs, const Eigen::MatrixXd& x1s,
                                         std::span<const double> rs,
                                         std::span<const double> gs) const {
    const Eigen::Index n = xs.cols();
    if (xs.rows() != dim_ || x1s.rows() != dim_ || x1s.cols() != n ||
        rs.size() != static_cast<std::size_t>(n) || gs.size() != static_cast<std::size_t>(n)) {
        throw DimensionMismatch("MlpDenoiser: batch shapes do not match");
    }
    Eigen::MatrixXd in(net_.input_dim(), n);
    const double inv = 1.0 / sigma_d_;
    for (Eigen::Index c = 0; c < n; ++c) {
        in.col(c).head(dim_) = xs.col(c) * inv;
        in.col(c).segment(dim_, dim_) = x1s.col(c) * inv;
        time_embed_into(rs[c], emb_dim_, in.col(c).data() + 2 * dim_);
        time_embed_into(gs[c], emb_dim_, in.col(c).data() + 2 * dim_ + emb_dim_);
    }
    return in;
}

Eigen::MatrixXd MlpDenoiser::predict_batch(const Eigen::MatrixXd& xs, const Eigen::MatrixXd& x1s,
                                           std::span<const double> rs,
                                           std::span<const double> gs) const {
    return sigma_d_ * net_.forward(make_inputs(xs, x1s, rs, gs));
}

Vec MlpDenoiser::predict(ConstSpan x, ConstSpan x1, double r, double g) const {
    require_same_dim(x.size(), static_cast<std::size_t>(dim_), "mlp denoiser: state");
    require_same_dim(x1.size(), static_cast<std::size_t>(dim_), "mlp denoiser: x1");
    const Eigen::Map<const Eigen::MatrixXd> xs(x.data(), dim_, 1);
    const Eigen::Map<const Eigen::MatrixXd> x1s(x1.data(), dim_, 1);
    const Eigen::MatrixXd out = predict_batch(xs, x1s, std::span(&r, 1), std::span(&g, 1));
    return Vec(out.data(), out.data() + dim_);
}

LossGrad weighted_loss_and_grad(const Mlp& net, const WeightedBatch& batch) {
    const Eigen::Index n = batch.inputs.cols();
    if (n == 0) throw DomainError("weighted loss: empty batch");
    if (batch.targets.cols() != n || batch.log_weights.size() != n ||
        batch.targets.rows() != net.output_dim()) {
        throw DimensionMismatch("weighted loss: batch shapes do not match");
    }
    Mlp::Tape tape;
    const Eigen::MatrixXd pred = batch.output_scale * net.forward(batch.inputs, tape);
    const Eigen::MatrixXd err = pred - batch.targets;
    const double inv_n = 1.0 / static_cast<double>(n);

    LossGrad out;
    out.loss = 0.0;
    out.d_log_weights.resize(n);
    Eigen::MatrixXd d_out(err.rows(), n);
    for (Eigen::Index c = 0; c < n; ++c) {
        const double w = batch.log_weights(c);
        const double ew = std::exp(w);
        const double sq = err.col(c).squaredNorm();
        out.loss += (ew * sq - w) * inv_n;
        out.d_log_weights(c) = (ew * sq - 1.0) * inv_n;
        d_out.col(c) = (2.0 * ew * batch.output_scale * inv_n) * err.col(c);
    }
    out.grad = Eigen::VectorXd::Zero(net.params().size());
    net.backward(tape, d_out, out.grad);
    return out;
}

}  // namespace disi
