#pragma once

#include <span>
#include <vector>

namespace mcmo {

/// One (state, action, reward) triple. The state layout is
/// [normalized condition | weight | utopia], see engine.hpp.
struct TrainingSample {
    std::vector<double> state;
    std::vector<double> action;
    double reward = 0.0;
    long episode = 0;
};

/// Column-wise batch of training samples. Keeping states/actions/rewards in
/// flat arrays sidesteps per-sample allocations in runs that store millions
/// of samples.
struct SampleBatch {
    int state_dim = 0;
    int action_dim = 0;
    std::vector<double> states;   // size() * state_dim
    std::vector<double> actions;  // size() * action_dim
    std::vector<double> rewards;
    std::vector<long> episodes;

    int size() const { return static_cast<int>(rewards.size()); }

    std::span<const double> state(int i) const {
        return {states.data() + static_cast<std::size_t>(i) * state_dim,
                static_cast<std::size_t>(state_dim)};
    }
    std::span<const double> action(int i) const {
        return {actions.data() + static_cast<std::size_t>(i) * action_dim,
                static_cast<std::size_t>(action_dim)};
    }

    TrainingSample sample(int i) const {
        auto s = state(i);
        auto a = action(i);
        return {{s.begin(), s.end()}, {a.begin(), a.end()}, rewards[i], episodes[i]};
    }
};

}  // namespace mcmo
