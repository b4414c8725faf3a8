#include "disi/training.hpp"

#include <cmath>

#include "disi/errors.hpp"
#include "disi/process.hpp"

namespace disi {

namespace {

template <class... Ts>
struct overloaded : Ts... {
    using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

double logistic(double u) { return 1.0 / (1.0 + std::exp(-u)); }

}  // namespace

TimeDraw sample_time(const TimeSamplerKind& kind, double phi, Rng& rng) {
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    return std::visit(
        overloaded{
            [&](const EllipticalSpecialist&) {
                const double delta = kHalfPi * unit(rng);
                const double t = -kHalfPi + kPi * unit(rng);
                return TimeDraw{phi * std::sin(t), delta * std::cos(t), delta};
            },
            [&](const LinearSpecialist&) {
                const double delta = kHalfPi * unit(rng);
                const double t = unit(rng);
                return TimeDraw{2.0 * phi * t - phi, delta * t, delta};
            },
            [&](const RegressionSpecialist&) {
                return TimeDraw{-phi + 2.0 * phi * unit(rng), 0.0, 0.0};
            },
            [&](const UniformSampler&) {
                const double r = -phi + 2.0 * phi * unit(rng);
                const double g = kHalfPi * unit(rng);
                return TimeDraw{r, g, 0.0};
            },
            [&](const LogitNormal& ln) {
                std::normal_distribution<double> nr(ln.m_r, ln.s_r);
                std::normal_distribution<double> ng(ln.m_g, ln.s_g);
                const double ur = logistic(nr(rng));
                const double ug = logistic(ng(rng));
                return TimeDraw{-phi + 2.0 * phi * ur, kHalfPi * ug, 0.0};
            },
        },
        kind);
}

double weighted_loss(ConstSpan x0hat, ConstSpan x0, double w) {
    return std::exp(w) * squared_distance(x0hat, x0) - w;
}

AdaptiveWeight::AdaptiveWeight(Rng& rng) : net_({2 * kEmbDim, kHidden, 1}, rng, true) {}

Eigen::MatrixXd AdaptiveWeight::inputs(std::span<const double> rs,
                                       std::span<const double> gs) const {
    require_same_dim(rs.size(), gs.size(), "adaptive weight inputs");
    Eigen::MatrixXd in(2 * kEmbDim, static_cast<Eigen::Index>(rs.size()));
    for (std::size_t c = 0; c < rs.size(); ++c) {
        const auto col = static_cast<Eigen::Index>(c);
        time_embed_into(rs[c], kEmbDim, in.col(col).data());
        time_embed_into(gs[c], kEmbDim, in.col(col).data() + kEmbDim);
    }
    return in;
}

double AdaptiveWeight::operator()(double r, double g) const {
    return net_.forward(inputs(std::span(&r, 1), std::span(&g, 1)))(0, 0);
}

void TrainConfig::validate() const {
    if (batch_size == 0) throw ConfigError("train: batch_size must be >= 1");
    if (n_steps == 0) throw ConfigError("train: n_steps must be >= 1");
    if (!(learning_rate > 0.0)) throw ConfigError("train: learning_rate must be > 0");
    if (!(ema_decay >= 0.0 && ema_decay < 1.0)) throw ConfigError("train: ema_decay must lie in [0, 1)");
    if (!(beta1 >= 0.0 && beta1 < 1.0 && beta2 >= 0.0 && beta2 < 1.0)) {
        throw ConfigError("train: Adam betas must lie in [0, 1)");
    }
    if (!(adam_epsilon > 0.0)) throw ConfigError("train: adam epsilon must be > 0");
    if (!(weight_decay >= 0.0)) throw ConfigError("train: weight_decay must be >= 0");
    if (net.emb_dim <= 0 || net.emb_dim % 2 != 0) throw ConfigError("train: emb_dim must be even");
    if (net.hidden <= 0 || net.hidden_layers <= 0) throw ConfigError("train: bad hidden sizes");
}

AdamW::AdamW(std::size_t n, double lr, double beta1, double beta2, double eps, double weight_decay)
    : m_(Eigen::VectorXd::Zero(static_cast<Eigen::Index>(n))),
      v_(Eigen::VectorXd::Zero(static_cast<Eigen::Index>(n))),
      lr_(lr),
      beta1_(beta1),
      beta2_(beta2),
      eps_(eps),
      wd_(weight_decay) {}

void AdamW::step(Eigen::VectorXd& params, const Eigen::VectorXd& grad) {
    ++t_;
    m_ = beta1_ * m_ + (1.0 - beta1_) * grad;
    v_ = beta2_ * v_ + (1.0 - beta2_) * grad.cwiseProduct(grad);
    const double c1 = 1.0 - std::pow(beta1_, static_cast<double>(t_));
    const double c2 = 1.0 - std::pow(beta2_, static_cast<double>(t_));
    params *= 1.0 - lr_ * wd_;
    params.array() -= lr_ * (m_.array() / c1) / ((v_.array() / c2).sqrt() + eps_);
}

MlpDenoiser TrainResult::ema_model() const {
    return MlpDenoiser(model.dim(), model.emb_dim(), model.sigma_d(), model.rho(),
                       Mlp(model.net().widths(), ema_params));
}

TrainResult train(const ToyDataset& dataset, const TrainConfig& cfg, const TrainCallback& callback) {
    cfg.validate();
    if (dataset.pairs.empty()) throw EmptyDataset("train: empty dataset");
    MlpConfig net_cfg = cfg.net;
    net_cfg.dim = static_cast<int>(dataset.dim());
    const GvpSchedule sched(dataset.rho_hat, dataset.sigma_d);
    const double phi = sched.phi();

    Rng rng = make_rng(cfg.seed, 0);
    TrainResult res{MlpDenoiser(net_cfg, dataset.sigma_d, dataset.rho_hat, rng), {},
                    AdaptiveWeight(rng), {}};
    // Zero-started accumulator; ema_params holds its bias-corrected value.
    Eigen::VectorXd ema_acc = Eigen::VectorXd::Zero(res.model.net().params().size());
    double ema_weight = 0.0;  // 1 - d^t
    res.ema_params = res.model.net().params();
    res.trace.reserve(cfg.n_steps);

    Mlp& net = res.model.net();
    Mlp& wnet = res.weight_net.net();
    AdamW opt(static_cast<std::size_t>(net.params().size()), cfg.learning_rate, cfg.beta1,
              cfg.beta2, cfg.adam_epsilon, cfg.weight_decay);
    AdamW wopt(static_cast<std::size_t>(wnet.params().size()), cfg.learning_rate, cfg.beta1,
               cfg.beta2, cfg.adam_epsilon, cfg.weight_decay);

    const auto batch = static_cast<Eigen::Index>(cfg.batch_size);
    const auto dim = static_cast<Eigen::Index>(net_cfg.dim);
    std::uniform_int_distribution<std::size_t> pick(0, dataset.pairs.size() - 1);
    Eigen::MatrixXd xs(dim, batch), x1s(dim, batch), x0s(dim, batch);
    std::vector<double> rs(cfg.batch_size), gs(cfg.batch_size);

    for (std::size_t step = 0; step < cfg.n_steps; ++step) {
        for (Eigen::Index b = 0; b < batch; ++b) {
            const PairSample& p = dataset.pairs[pick(rng)];
            const TimeDraw td = sample_time(cfg.time_sampler, phi, rng);
            const Vec z = sample_noise(rng, p.x0.size(), dataset.sigma_d);
            const NoisyState s = interpolate(sched, p, z, td.r, td.g);
            rs[b] = td.r;
            gs[b] = td.g;
            for (Eigen::Index i = 0; i < dim; ++i) {
                xs(i, b) = s.x[i];
                x1s(i, b) = p.x1[i];
                x0s(i, b) = p.x0[i];
            }
        }

        WeightedBatch wb;
        wb.inputs = res.model.make_inputs(xs, x1s, rs, gs);
        wb.targets = x0s;
        wb.output_scale = dataset.sigma_d;
        Mlp::Tape wtape;
        Eigen::MatrixXd w_in;
        if (cfg.adaptive_weighting) {
            w_in = res.weight_net.inputs(rs, gs);
            wb.log_weights = wnet.forward(w_in, wtape).row(0).transpose();
        } else {
            wb.log_weights = Eigen::VectorXd::Zero(batch);
        }

        const LossGrad lg = weighted_loss_and_grad(net, wb);
        if (!std::isfinite(lg.loss)) {
            throw NonFiniteLoss(static_cast<long>(step), rs[0], gs[0], lg.loss);
        }
        // Reconstruction term alone, for monitoring.
        const Eigen::MatrixXd pred = dataset.sigma_d * net.forward(wb.inputs);
        const double batch_mse = (pred - x0s).colwise().squaredNorm().mean();

        opt.step(net.params(), lg.grad);
        if (cfg.adaptive_weighting) {
            Eigen::VectorXd wgrad = Eigen::VectorXd::Zero(wnet.params().size());
            wnet.backward(wtape, lg.d_log_weights.transpose(), wgrad);
            wopt.step(wnet.params(), wgrad);
        }
        ema_acc = cfg.ema_decay * ema_acc + (1.0 - cfg.ema_decay) * net.params();
        ema_weight = cfg.ema_decay * ema_weight + (1.0 - cfg.ema_decay);
        res.ema_params = ema_acc / ema_weight;

        const LossRecord rec{lg.loss, batch_mse};
        res.trace.push_back(rec);
        if (callback) callback(step, rec);
    }
    return res;
}

}  // namespace disi
