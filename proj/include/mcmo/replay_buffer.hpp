#pragma once

#include <span>
#include <vector>

#include "mcmo/rng.hpp"
#include "mcmo/training_sample.hpp"

namespace mcmo {

/// Unbounded store of training samples with uniform with-replacement
/// mini-batch sampling. Storage is column-wise (see SampleBatch).
class ReplayBuffer {
public:
    ReplayBuffer(int state_dim, int action_dim)
        : state_dim_(state_dim), action_dim_(action_dim) {}

    int state_dim() const { return state_dim_; }
    int action_dim() const { return action_dim_; }
    long size() const { return static_cast<long>(rewards_.size()); }
    bool empty() const { return rewards_.empty(); }

    void add(const SampleBatch& batch);

    std::span<const double> state(long i) const {
        return {states_.data() + static_cast<std::size_t>(i) * state_dim_,
                static_cast<std::size_t>(state_dim_)};
    }
    std::span<const double> action(long i) const {
        return {actions_.data() + static_cast<std::size_t>(i) * action_dim_,
                static_cast<std::size_t>(action_dim_)};
    }
    double reward(long i) const { return rewards_[i]; }
    long episode(long i) const { return episodes_[i]; }

    TrainingSample sample_at(long i) const {
        auto s = state(i);
        auto a = action(i);
        return {{s.begin(), s.end()}, {a.begin(), a.end()}, rewards_[i], episodes_[i]};
    }

    /// Uniform indices with replacement; valid whenever the buffer is
    /// non-empty, even with fewer samples than requested.
    void sample_indices(int count, Rng& rng, std::vector<long>& out) const;

private:
    int state_dim_, action_dim_;
    std::vector<double> states_, actions_, rewards_;
    std::vector<long> episodes_;
};

}  // namespace mcmo
