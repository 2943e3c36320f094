#pragma once

#include <span>
#include <string>
#include <vector>

#include "mcmo/rng.hpp"

namespace mcmo {

enum class OutputActivation { Identity, Tanh };

/// Fully connected feed-forward network with Leaky-ReLU hidden layers.
/// Everything is double precision and single-threaded so a fixed seed yields
/// bit-identical training trajectories.
class DenseNetwork {
public:
    /// Weights are fan-in-scaled zero-mean uniform, biases zero.
    DenseNetwork(std::vector<int> widths, OutputActivation output_activation,
                 double leaky_slope, Rng& rng);

    int input_dim() const { return widths_.front(); }
    int output_dim() const { return widths_.back(); }
    const std::vector<int>& widths() const { return widths_; }
    OutputActivation output_activation() const { return out_act_; }
    double leaky_slope() const { return slope_; }

    int param_count() const { return static_cast<int>(params_.size()); }
    std::span<double> params() { return params_; }
    std::span<const double> params() const { return params_; }

    /// Per-evaluation scratch: layer activations and pre-activations, reused
    /// across calls to keep the training loop allocation-free.
    struct Workspace {
        std::vector<std::vector<double>> act;     // act[0] = input, act[L] = output
        std::vector<std::vector<double>> preact;  // preact[l] feeds layer l+1
        std::vector<double> delta, delta_prev;
    };
    Workspace make_workspace() const;

    /// Forward pass; the output lands in ws.act.back().
    void forward(std::span<const double> input, Workspace& ws) const;

    /// Convenience forward that allocates its own scratch.
    std::vector<double> forward(std::span<const double> input) const;

    /// Reverse-mode derivatives of dot(output, upstream) following a forward
    /// pass on `ws`. Parameter gradients are ACCUMULATED into `param_grads`
    /// (batch accumulation); the input gradient is overwritten.
    void backward(Workspace& ws, std::span<const double> upstream,
                  std::span<double> param_grads, std::span<double> input_grad) const;

    /// Binary checkpoint; reload reproduces forward outputs bit-for-bit.
    void save(const std::string& path) const;
    static DenseNetwork load(const std::string& path);

    std::size_t weight_offset(int layer) const { return w_offset_[layer]; }
    std::size_t bias_offset(int layer) const { return b_offset_[layer]; }
    int layer_count() const { return static_cast<int>(widths_.size()) - 1; }

private:
    DenseNetwork() = default;
    void init_offsets();

    std::vector<int> widths_;
    OutputActivation out_act_ = OutputActivation::Identity;
    double slope_ = 0.01;
    std::vector<double> params_;  // [W0 | b0 | W1 | b1 | ...], W row-major
    std::vector<std::size_t> w_offset_, b_offset_;
};

/// Adam accumulators for one parameter vector.
struct AdamState {
    double learning_rate;
    double beta1 = 0.9;
    double beta2 = 0.999;
    double epsilon = 1e-8;
    long step = 0;
    std::vector<double> m, v;

    AdamState(int param_count, double lr)
        : learning_rate(lr), m(param_count, 0.0), v(param_count, 0.0) {}
};

/// Bias-corrected Adam update. Throws on non-finite gradients, naming the
/// first offending index.
void adam_step(std::span<double> params, std::span<const double> grads, AdamState& state);

}  // namespace mcmo
