#include "mcmo/replay_buffer.hpp"

#include <stdexcept>

namespace mcmo {

void ReplayBuffer::add(const SampleBatch& batch) {
    if (batch.state_dim != state_dim_ || batch.action_dim != action_dim_) {
        throw std::invalid_argument("ReplayBuffer::add: sample dimensions mismatch");
    }
    states_.insert(states_.end(), batch.states.begin(), batch.states.end());
    actions_.insert(actions_.end(), batch.actions.begin(), batch.actions.end());
    rewards_.insert(rewards_.end(), batch.rewards.begin(), batch.rewards.end());
    episodes_.insert(episodes_.end(), batch.episodes.begin(), batch.episodes.end());
}

void ReplayBuffer::sample_indices(int count, Rng& rng, std::vector<long>& out) const {
    if (empty()) throw std::logic_error("ReplayBuffer::sample_indices: buffer is empty");
    out.resize(count);
    const auto n = static_cast<std::uint64_t>(size());
    for (int k = 0; k < count; ++k) out[k] = static_cast<long>(rng.uniform_index(n));
}

}  // namespace mcmo
