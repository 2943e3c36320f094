#include "doctest.h"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <vector>

#include "mcmo/dense_network.hpp"

using namespace mcmo;

namespace {

// dot(output, upstream) as a plain function of the parameter vector, for the
// finite-difference oracle.
double scalar_loss(DenseNetwork& net, std::span<const double> input,
                   std::span<const double> upstream) {
    const auto out = net.forward(input);
    double acc = 0.0;
    for (std::size_t i = 0; i < out.size(); ++i) acc += out[i] * upstream[i];
    return acc;
}

// Central finite differences over every parameter.
std::vector<double> fd_gradients(DenseNetwork& net, std::span<const double> input,
                                 std::span<const double> upstream, double h) {
    std::vector<double> grads(net.param_count());
    auto params = net.params();
    for (int i = 0; i < net.param_count(); ++i) {
        const double saved = params[i];
        params[i] = saved + h;
        const double hi = scalar_loss(net, input, upstream);
        params[i] = saved - h;
        const double lo = scalar_loss(net, input, upstream);
        params[i] = saved;
        grads[i] = (hi - lo) / (2.0 * h);
    }
    return grads;
}

// Smallest |pre-activation| across hidden units; the FD oracle is only valid
// away from the Leaky-ReLU kink.
double min_hidden_preact(const DenseNetwork& net, std::span<const double> input) {
    auto ws = net.make_workspace();
    net.forward(input, ws);
    double lo = std::numeric_limits<double>::infinity();
    for (int l = 0; l + 1 < net.layer_count(); ++l) {
        for (double z : ws.preact[l]) lo = std::min(lo, std::abs(z));
    }
    return lo;
}

}  // namespace

TEST_SUITE("dense_network") {

TEST_CASE("parameter count matches the widths") {
    Rng rng(1);
    const DenseNetwork net({2, 4, 1}, OutputActivation::Identity, 0.01, rng);
    CHECK(net.param_count() == 2 * 4 + 4 + 4 * 1 + 1);  // 17
}

TEST_CASE("initialization: fan-in-scaled uniform weights, zero biases") {
    Rng rng(2);
    const DenseNetwork net({6, 32, 3}, OutputActivation::Tanh, 0.01, rng);
    const auto params = net.params();
    const double s0 = 1.0 / std::sqrt(6.0), s1 = 1.0 / std::sqrt(32.0);
    for (std::size_t i = net.weight_offset(0); i < net.bias_offset(0); ++i) {
        CHECK(std::abs(params[i]) <= s0);
    }
    for (std::size_t i = net.bias_offset(0); i < net.weight_offset(1); ++i) {
        CHECK(params[i] == 0.0);
    }
    for (std::size_t i = net.weight_offset(1); i < net.bias_offset(1); ++i) {
        CHECK(std::abs(params[i]) <= s1);
    }

    Rng rng_a(42), rng_b(42);
    const DenseNetwork a({4, 8, 2}, OutputActivation::Tanh, 0.01, rng_a);
    const DenseNetwork b({4, 8, 2}, OutputActivation::Tanh, 0.01, rng_b);
    CHECK(std::equal(a.params().begin(), a.params().end(), b.params().begin()));
}

TEST_CASE("forward examples") {
    Rng rng(3);
    SUBCASE("all-zero parameters with tanh output give zero") {
        DenseNetwork net({3, 8, 2}, OutputActivation::Tanh, 0.01, rng);
        std::fill(net.params().begin(), net.params().end(), 0.0);
        for (double v : net.forward(std::vector{0.7, -4.0, 2.5})) CHECK(v == 0.0);
    }
    SUBCASE("single affine layer: y = 2x + 1") {
        DenseNetwork net({1, 1}, OutputActivation::Identity, 0.01, rng);
        net.params()[0] = 2.0;
        net.params()[1] = 1.0;
        CHECK(net.forward(std::vector{3.0})[0] == 7.0);
    }
    SUBCASE("leaky slope on a negative pre-activation") {
        DenseNetwork net({1, 1, 1}, OutputActivation::Identity, 0.01, rng);
        auto p = net.params();
        p[0] = 1.0;  // W0
        p[1] = 0.0;  // b0
        p[2] = 1.0;  // W1
        p[3] = 0.0;  // b1
        CHECK(net.forward(std::vector{-1.0})[0] == doctest::Approx(-0.01).epsilon(1e-15));
    }
    SUBCASE("input length mismatch is rejected") {
        DenseNetwork net({2, 2}, OutputActivation::Identity, 0.01, rng);
        CHECK_THROWS_AS(net.forward(std::vector{1.0}), std::invalid_argument);
    }
}

TEST_CASE("tanh output stays within [-1, 1]") {
    Rng rng(4);
    for (int trial = 0; trial < 50; ++trial) {
        DenseNetwork net({5, 16, 3}, OutputActivation::Tanh, 0.01, rng);
        std::vector<double> in(5);
        for (double& v : in) v = rng.uniform(-50.0, 50.0);
        for (double v : net.forward(in)) {
            CHECK(v >= -1.0);
            CHECK(v <= 1.0);
        }
    }
}

TEST_CASE("gradient basics") {
    Rng rng(5);
    SUBCASE("zero upstream gives zero gradients") {
        DenseNetwork net({3, 8, 2}, OutputActivation::Tanh, 0.01, rng);
        auto ws = net.make_workspace();
        net.forward(std::vector{1.0, 2.0, 3.0}, ws);
        std::vector<double> grads(net.param_count(), 0.0), in_grad(3, 0.0);
        net.backward(ws, std::vector{0.0, 0.0}, grads, in_grad);
        for (double g : grads) CHECK(g == 0.0);
        for (double g : in_grad) CHECK(g == 0.0);
    }
    SUBCASE("scalar net y = w x: dL/dw = x, dL/dx = w") {
        DenseNetwork net({1, 1}, OutputActivation::Identity, 0.01, rng);
        net.params()[0] = 0.5;
        net.params()[1] = 0.0;
        auto ws = net.make_workspace();
        net.forward(std::vector{3.0}, ws);
        std::vector<double> grads(2, 0.0), in_grad(1, 0.0);
        net.backward(ws, std::vector{1.0}, grads, in_grad);
        CHECK(grads[0] == 3.0);  // dL/dw
        CHECK(grads[1] == 1.0);  // dL/db
        CHECK(in_grad[0] == 0.5);
    }
}

TEST_CASE("analytic gradients match central finite differences") {
    Rng rng(6);
    int done = 0;
    while (done < 12) {
        const std::vector<int> widths = {1 + static_cast<int>(rng.uniform_index(8)),
                                         1 + static_cast<int>(rng.uniform_index(32)),
                                         1 + static_cast<int>(rng.uniform_index(32)),
                                         1 + static_cast<int>(rng.uniform_index(4))};
        const auto act = rng.uniform() < 0.5 ? OutputActivation::Tanh : OutputActivation::Identity;
        DenseNetwork net(widths, act, 0.01, rng);
        std::vector<double> input(widths[0]), upstream(widths.back());
        for (double& v : input) v = rng.uniform(-2.0, 2.0);
        for (double& v : upstream) v = rng.uniform(-1.0, 1.0);
        if (min_hidden_preact(net, input) < 1e-3) continue;  // keep the FD oracle valid
        ++done;

        auto ws = net.make_workspace();
        net.forward(input, ws);
        std::vector<double> analytic(net.param_count(), 0.0), in_grad(widths[0], 0.0);
        net.backward(ws, upstream, analytic, in_grad);
        const auto fd = fd_gradients(net, input, upstream, 1e-5);
        for (int i = 0; i < net.param_count(); ++i) {
            const double scale = std::max({std::abs(analytic[i]), std::abs(fd[i]), 1e-6});
            CHECK(std::abs(analytic[i] - fd[i]) / scale <= 1e-4);
        }
    }
}

TEST_CASE("adam update") {
    SUBCASE("zero gradient leaves parameters untouched") {
        std::vector<double> params{1.0, -2.0};
        AdamState state(2, 1e-3);
        adam_step(params, std::vector{0.0, 0.0}, state);
        CHECK(params[0] == 1.0);
        CHECK(params[1] == -2.0);
        CHECK(state.step == 1);
    }
    SUBCASE("first bias-corrected step has magnitude ~ lr") {
        std::vector<double> params{0.0};
        AdamState state(1, 1e-4);
        adam_step(params, std::vector{1.0}, state);
        CHECK(params[0] == doctest::Approx(-1e-4).epsilon(1e-7));
    }
    SUBCASE("identical runs stay identical") {
        std::vector<double> pa{0.3}, pb{0.3};
        AdamState sa(1, 1e-2), sb(1, 1e-2);
        for (int k = 0; k < 50; ++k) {
            const double g = std::sin(k * 0.1) + 0.2;
            adam_step(pa, std::vector{g}, sa);
            adam_step(pb, std::vector{g}, sb);
        }
        CHECK(pa[0] == pb[0]);
    }
    SUBCASE("non-finite gradients are rejected with the index") {
        std::vector<double> params{0.0, 0.0};
        AdamState state(2, 1e-3);
        CHECK_THROWS_WITH_AS(
            adam_step(params, std::vector{0.0, std::numeric_limits<double>::quiet_NaN()}, state),
            doctest::Contains("parameter 1"), std::runtime_error);
    }
}

TEST_CASE("checkpoints reload bit-for-bit") {
    namespace fs = std::filesystem;
    Rng rng(8);
    DenseNetwork net({4, 16, 16, 2}, OutputActivation::Tanh, 0.01, rng);
    const auto path = (fs::temp_directory_path() / "mcmo_net_test.bin").string();
    net.save(path);
    const DenseNetwork loaded = DenseNetwork::load(path);
    CHECK(loaded.widths() == net.widths());
    CHECK(loaded.output_activation() == net.output_activation());
    CHECK(std::equal(net.params().begin(), net.params().end(), loaded.params().begin()));

    std::vector<double> in{0.1, -0.7, 2.0, 0.4};
    const auto a = net.forward(in);
    const auto b = loaded.forward(in);
    for (std::size_t i = 0; i < a.size(); ++i) CHECK(a[i] == b[i]);
    fs::remove(path);

    CHECK_THROWS_AS(DenseNetwork::load("/nonexistent/net.bin"), std::runtime_error);
}

}  // TEST_SUITE
