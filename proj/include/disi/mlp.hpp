#pragma once

#include <Eigen/Dense>
#include <cstddef>
#include <vector>

#include "disi/vec.hpp"

namespace disi {

using RowMatrix = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

/// Fully connected network with GELU hidden activations and a linear output.
///
/// All parameters live in one flat vector (per layer: W row-major, then b), so
/// optimizers, EMA and finite-difference checks can treat them uniformly.
/// Batched calls take one sample per column.
class Mlp {
public:
    Mlp() = default;

    /// widths = {in, hidden..., out}. Weights and biases ~ U(-1/sqrt(fan_in), 1/sqrt(fan_in));
    /// the output layer is zero when zero_output is set.
    Mlp(std::vector<int> widths, Rng& rng, bool zero_output = true);

    /// Builds a network around existing parameters. Throws DimensionMismatch.
    Mlp(std::vector<int> widths, Eigen::VectorXd params);

    const std::vector<int>& widths() const { return widths_; }
    std::size_t num_layers() const { return widths_.size() - 1; }
    int input_dim() const { return widths_.front(); }
    int output_dim() const { return widths_.back(); }

    Eigen::VectorXd& params() { return params_; }
    const Eigen::VectorXd& params() const { return params_; }
    static std::size_t param_count(const std::vector<int>& widths);

    Eigen::Map<const RowMatrix> weight(std::size_t layer) const;
    Eigen::Map<const Eigen::VectorXd> bias(std::size_t layer) const;
    Eigen::Map<RowMatrix> weight(std::size_t layer);
    Eigen::Map<Eigen::VectorXd> bias(std::size_t layer);

    /// Pre-activations of every layer and activations of every hidden layer.
    struct Tape {
        Eigen::MatrixXd input;
        std::vector<Eigen::MatrixXd> pre;
        std::vector<Eigen::MatrixXd> act;
    };

    Eigen::MatrixXd forward(const Eigen::MatrixXd& input) const;
    Eigen::MatrixXd forward(const Eigen::MatrixXd& input, Tape& tape) const;

    /// Accumulates dL/dparams into grad (same layout as params()) given dL/doutput.
    /// Returns dL/dinput.
    Eigen::MatrixXd backward(const Tape& tape, const Eigen::MatrixXd& d_output,
                             Eigen::VectorXd& grad) const;

private:
    std::vector<int> widths_;
    std::vector<std::size_t> offsets_;
    Eigen::VectorXd params_;

    void build_offsets();
};

double gelu(double x);
double gelu_grad(double x);

}  // namespace disi
