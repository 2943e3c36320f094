#include "mcmo/dense_network.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <stdexcept>

namespace mcmo {

namespace {

constexpr char kMagic[8] = {'M', 'C', 'M', 'O', 'N', 'E', 'T', '\x01'};

// The tanh head squashes its pre-activation through a wide tanh first:
//   a = tanh(kPreactCap * tanh(z / kPreactCap)).
// Indistinguishable from tanh(z) for |z| << cap, but the effective
// pre-activation saturates at the cap, so the output-layer gradient never
// vanishes entirely and a policy pinned at an action bound can still recover.
constexpr double kPreactCap = 4.0;

inline double squash(double z) { return std::tanh(kPreactCap * std::tanh(z / kPreactCap)); }

inline double squash_derivative_factor(double z, double a) {
    const double t = std::tanh(z / kPreactCap);
    return (1.0 - a * a) * (1.0 - t * t);
}

}  // namespace

DenseNetwork::DenseNetwork(std::vector<int> widths, OutputActivation output_activation,
                           double leaky_slope, Rng& rng)
    : widths_(std::move(widths)), out_act_(output_activation), slope_(leaky_slope) {
    if (widths_.size() < 2) throw std::invalid_argument("DenseNetwork: need input and output widths");
    for (int w : widths_) {
        if (w < 1) throw std::invalid_argument("DenseNetwork: widths must be positive");
    }
    init_offsets();
    for (int l = 0; l < layer_count(); ++l) {
        const int fan_in = widths_[l];
        const int fan_out = widths_[l + 1];
        const double scale = 1.0 / std::sqrt(static_cast<double>(fan_in));
        double* w = params_.data() + w_offset_[l];
        for (int k = 0; k < fan_out * fan_in; ++k) w[k] = rng.uniform(-scale, scale);
        // biases stay zero
    }
}

void DenseNetwork::init_offsets() {
    w_offset_.resize(layer_count());
    b_offset_.resize(layer_count());
    std::size_t off = 0;
    for (int l = 0; l < layer_count(); ++l) {
        w_offset_[l] = off;
        off += static_cast<std::size_t>(widths_[l + 1]) * widths_[l];
        b_offset_[l] = off;
        off += widths_[l + 1];
    }
    params_.assign(off, 0.0);
}

DenseNetwork::Workspace DenseNetwork::make_workspace() const {
    Workspace ws;
    ws.act.resize(widths_.size());
    for (std::size_t l = 0; l < widths_.size(); ++l) ws.act[l].resize(widths_[l]);
    ws.preact.resize(layer_count());
    for (int l = 0; l < layer_count(); ++l) ws.preact[l].resize(widths_[l + 1]);
    ws.delta.resize(*std::max_element(widths_.begin(), widths_.end()));
    ws.delta_prev.resize(ws.delta.size());
    return ws;
}

void DenseNetwork::forward(std::span<const double> input, Workspace& ws) const {
    if (static_cast<int>(input.size()) != input_dim()) {
        throw std::invalid_argument("DenseNetwork::forward: input length mismatch");
    }
    std::memcpy(ws.act[0].data(), input.data(), input.size() * sizeof(double));
    const int L = layer_count();
    for (int l = 0; l < L; ++l) {
        const int n_in = widths_[l];
        const int n_out = widths_[l + 1];
        const double* w = params_.data() + w_offset_[l];
        const double* b = params_.data() + b_offset_[l];
        const double* a = ws.act[l].data();
        double* z = ws.preact[l].data();
        for (int o = 0; o < n_out; ++o) {
            const double* row = w + static_cast<std::size_t>(o) * n_in;
            double acc = b[o];
            for (int i = 0; i < n_in; ++i) acc += row[i] * a[i];
            z[o] = acc;
        }
        double* out = ws.act[l + 1].data();
        if (l + 1 < static_cast<int>(widths_.size()) - 1) {
            for (int o = 0; o < n_out; ++o) out[o] = z[o] > 0.0 ? z[o] : slope_ * z[o];
        } else if (out_act_ == OutputActivation::Tanh) {
            for (int o = 0; o < n_out; ++o) out[o] = squash(z[o]);
        } else {
            std::memcpy(out, z, n_out * sizeof(double));
        }
    }
}

std::vector<double> DenseNetwork::forward(std::span<const double> input) const {
    Workspace ws = make_workspace();
    forward(input, ws);
    return ws.act.back();
}

void DenseNetwork::backward(Workspace& ws, std::span<const double> upstream,
                            std::span<double> param_grads, std::span<double> input_grad) const {
    const int L = layer_count();
    if (static_cast<int>(upstream.size()) != output_dim()) {
        throw std::invalid_argument("DenseNetwork::backward: upstream length mismatch");
    }
    if (static_cast<int>(param_grads.size()) != param_count() ||
        static_cast<int>(input_grad.size()) != input_dim()) {
        throw std::invalid_argument("DenseNetwork::backward: gradient buffer size mismatch");
    }

    double* delta = ws.delta.data();
    double* delta_prev = ws.delta_prev.data();

    // Output-activation derivative.
    if (out_act_ == OutputActivation::Tanh) {
        const double* y = ws.act[L].data();
        const double* z = ws.preact[L - 1].data();
        for (int o = 0; o < output_dim(); ++o) {
            delta[o] = upstream[o] * squash_derivative_factor(z[o], y[o]);
        }
    } else {
        std::memcpy(delta, upstream.data(), upstream.size() * sizeof(double));
    }

    for (int l = L - 1; l >= 0; --l) {
        const int n_in = widths_[l];
        const int n_out = widths_[l + 1];
        const double* w = params_.data() + w_offset_[l];
        const double* a = ws.act[l].data();
        double* dw = param_grads.data() + w_offset_[l];
        double* db = param_grads.data() + b_offset_[l];
        double* dprev = l > 0 ? delta_prev : input_grad.data();

        for (int i = 0; i < n_in; ++i) dprev[i] = 0.0;
        for (int o = 0; o < n_out; ++o) {
            const double g = delta[o];
            db[o] += g;
            const double* row = w + static_cast<std::size_t>(o) * n_in;
            double* drow = dw + static_cast<std::size_t>(o) * n_in;
            for (int i = 0; i < n_in; ++i) {
                drow[i] += g * a[i];
                dprev[i] += g * row[i];
            }
        }
        if (l > 0) {
            // Through the hidden Leaky-ReLU of layer l-1.
            const double* z = ws.preact[l - 1].data();
            for (int i = 0; i < n_in; ++i) {
                delta[i] = z[i] > 0.0 ? dprev[i] : slope_ * dprev[i];
            }
        }
    }
}

void DenseNetwork::save(const std::string& path) const {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("DenseNetwork::save: cannot open " + path);
    out.write(kMagic, sizeof(kMagic));
    const std::int32_t n = static_cast<std::int32_t>(widths_.size());
    out.write(reinterpret_cast<const char*>(&n), sizeof(n));
    for (int w : widths_) {
        const std::int32_t v = w;
        out.write(reinterpret_cast<const char*>(&v), sizeof(v));
    }
    const std::uint8_t act = out_act_ == OutputActivation::Tanh ? 1 : 0;
    out.write(reinterpret_cast<const char*>(&act), sizeof(act));
    out.write(reinterpret_cast<const char*>(&slope_), sizeof(slope_));
    const std::int64_t count = param_count();
    out.write(reinterpret_cast<const char*>(&count), sizeof(count));
    out.write(reinterpret_cast<const char*>(params_.data()), params_.size() * sizeof(double));
    if (!out) throw std::runtime_error("DenseNetwork::save: write failed for " + path);
}

DenseNetwork DenseNetwork::load(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("DenseNetwork::load: cannot open " + path);
    char magic[8];
    in.read(magic, sizeof(magic));
    if (!in || std::memcmp(magic, kMagic, sizeof(kMagic)) != 0) {
        throw std::runtime_error("DenseNetwork::load: bad header in " + path);
    }
    std::int32_t n = 0;
    in.read(reinterpret_cast<char*>(&n), sizeof(n));
    if (!in || n < 2 || n > 64) throw std::runtime_error("DenseNetwork::load: corrupt width count");
    DenseNetwork net;
    net.widths_.resize(n);
    for (auto& w : net.widths_) {
        std::int32_t v = 0;
        in.read(reinterpret_cast<char*>(&v), sizeof(v));
        w = v;
    }
    std::uint8_t act = 0;
    in.read(reinterpret_cast<char*>(&act), sizeof(act));
    net.out_act_ = act ? OutputActivation::Tanh : OutputActivation::Identity;
    in.read(reinterpret_cast<char*>(&net.slope_), sizeof(net.slope_));
    std::int64_t count = 0;
    in.read(reinterpret_cast<char*>(&count), sizeof(count));
    net.init_offsets();
    if (count != net.param_count()) {
        throw std::runtime_error("DenseNetwork::load: parameter count mismatch in " + path);
    }
    in.read(reinterpret_cast<char*>(net.params_.data()), net.params_.size() * sizeof(double));
    if (!in) throw std::runtime_error("DenseNetwork::load: truncated file " + path);
    return net;
}

void adam_step(std::span<double> params, std::span<const double> grads, AdamState& state) {
    if (params.size() != grads.size() || params.size() != state.m.size()) {
        throw std::invalid_argument("adam_step: size mismatch");
    }
    state.step += 1;
    const double bc1 = 1.0 - std::pow(state.beta1, static_cast<double>(state.step));
    const double bc2 = 1.0 - std::pow(state.beta2, static_cast<double>(state.step));
    const double lr = state.learning_rate;
    for (std::size_t i = 0; i < params.size(); ++i) {
        const double g = grads[i];
        if (!std::isfinite(g)) {
            throw std::runtime_error("adam_step: non-finite gradient at parameter " +
                                     std::to_string(i));
        }
        state.m[i] = state.beta1 * state.m[i] + (1.0 - state.beta1) * g;
        state.v[i] = state.beta2 * state.v[i] + (1.0 - state.beta2) * g * g;
        const double m_hat = state.m[i] / bc1;
        const double v_hat = state.v[i] / bc2;
        params[i] -= lr * m_hat / (std::sqrt(v_hat) + state.epsilon);
    }
}

}  // namespace mcmo
