#include "disi/mlp.hpp"

#include <cmath>

#include "disi/errors.hpp"

namespace disi {

namespace {
constexpr double kInvSqrt2 = 0.70710678118654752440;
constexpr double kInvSqrt2Pi = 0.39894228040143267794;
}  // namespace

double gelu(double x) { return 0.5 * x * (1.0 + std::erf(x * kInvSqrt2)); }

double gelu_grad(double x) {
    return 0.5 * (1.0 + std::erf(x * kInvSqrt2)) + x * kInvSqrt2Pi * std::exp(-0.5 * x * x);
}

std::size_t Mlp::param_count(const std::vector<int>& widths) {
    std::size_t n = 0;
    for (std::size_t l = 0; l + 1 < widths.size(); ++l) {
        n += static_cast<std::size_t>(widths[l + 1]) * (static_cast<std::size_t>(widths[l]) + 1);
    }
    return n;
}

void Mlp::build_offsets() {
    if (widths_.size() < 2) throw DomainError("Mlp: need at least input and output widths");
    for (int w : widths_) {
        if (w <= 0) throw DomainError("Mlp: layer widths must be positive");
    }
    offsets_.clear();
    std::size_t off = 0;
    for (std::size_t l = 0; l + 1 < widths_.size(); ++l) {
        offsets_.push_back(off);
        off += static_cast<std::size_t>(widths_[l + 1]) * (static_cast<std::size_t>(widths_[l]) + 1);
    }
}

Mlp::Mlp(std::vector<int> widths, Rng& rng, bool zero_output) : widths_(std::move(widths)) {
    build_offsets();
    params_ = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(param_count(widths_)));
    for (std::size_t l = 0; l < num_layers(); ++l) {
        if (zero_output && l + 1 == num_layers()) break;
        const double bound = 1.0 / std::sqrt(static_cast<double>(widths_[l]));
        std::uniform_real_distribution<double> u(-bound, bound);
        auto w = weight(l);
        for (Eigen::Index i = 0; i < w.rows(); ++i)
            for (Eigen::Index j = 0; j < w.cols(); ++j) w(i, j) = u(rng);
        auto b = bias(l);
        for (Eigen::Index i = 0; i < b.size(); ++i) b(i) = u(rng);
    }
}

Mlp::Mlp(std::vector<int> widths, Eigen::VectorXd params)
    : widths_(std::move(widths)), params_(std::move(params)) {
    build_offsets();
    require_same_dim(static_cast<std::size_t>(params_.size()), param_count(widths_),
                     "Mlp parameter count");
}

Eigen::Map<const RowMatrix> Mlp::weight(std::size_t layer) const {
    return {params_.data() + offsets_[layer], widths_[layer + 1], widths_[layer]};
}

Eigen::Map<const Eigen::VectorXd> Mlp::bias(std::size_t layer) const {
    const std::size_t off =
        offsets_[layer] + static_cast<std::size_t>(widths_[layer + 1]) * widths_[layer];
    return {params_.data() + off, widths_[layer + 1]};
}

Eigen::Map<RowMatrix> Mlp::weight(std::size_t layer) {
    return {params_.data() + offsets_[layer], widths_[layer + 1], widths_[layer]};
}

Eigen::Map<Eigen::VectorXd> Mlp::bias(std::size_t layer) {
    const std::size_t off =
        offsets_[layer] + static_cast<std::size_t>(widths_[layer + 1]) * widths_[layer];
    return {params_.data() + off, widths_[layer + 1]};
}

Eigen::MatrixXd Mlp::forward(const Eigen::MatrixXd& input) const {
    Tape tape;
    return forward(input, tape);
}

Eigen::MatrixXd Mlp::forward(const Eigen::MatrixXd& input, Tape& tape) const {
    if (input.rows() != input_dim()) {
        throw DimensionMismatch("Mlp input rows " + std::to_string(input.rows()) + " vs " +
                                std::to_string(input_dim()));
    }
    tape.input = input;
    tape.pre.assign(num_layers(), {});
    tape.act.assign(num_layers() - 1, {});
    const Eigen::MatrixXd* h = &tape.input;
    for (std::size_t l = 0; l < num_layers(); ++l) {
        tape.pre[l] = weight(l) * (*h);
        tape.pre[l].colwise() += bias(l);
        if (l + 1 < num_layers()) {
            tape.act[l] = tape.pre[l].unaryExpr([](double v) { return gelu(v); });
            h = &tape.act[l];
        }
    }
    return tape.pre.back();
}

Eigen::MatrixXd Mlp::backward(const Tape& tape, const Eigen::MatrixXd& d_output,
                              Eigen::VectorXd& grad) const {
    if (grad.size() != params_.size()) grad = Eigen::VectorXd::Zero(params_.size());
    Eigen::MatrixXd delta = d_output;
    for (std::size_t l = num_layers(); l-- > 0;) {
        const Eigen::MatrixXd& h = l == 0 ? tape.input : tape.act[l - 1];
        Eigen::Map<RowMatrix> gw(grad.data() + offsets_[l], widths_[l + 1], widths_[l]);
        Eigen::Map<Eigen::VectorXd> gb(
            grad.data() + offsets_[l] + static_cast<std::size_t>(widths_[l + 1]) * widths_[l],
            widths_[l + 1]);
        gw.noalias() += delta * h.transpose();
        gb += delta.rowwise().sum();
        Eigen::MatrixXd d_in = weight(l).transpose() * delta;
        if (l > 0) {
            d_in.array() *= tape.pre[l - 1].unaryExpr([](double v) { return gelu_grad(v); }).array();
        }
        delta = std::move(d_in);
    }
    return delta;
}

}  // namespace disi
