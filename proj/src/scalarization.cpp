#include "mcmo/scalarization.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace mcmo {

WeightVector::WeightVector(std::vector<double> w) : w_(std::move(w)) {
    if (w_.size() < 2) throw std::invalid_argument("WeightVector: need at least two objectives");
    double sum = 0.0;
    for (double v : w_) {
        if (!(v >= 0.0)) throw std::invalid_argument("WeightVector: components must be >= 0");
        sum += v;
    }
    if (std::abs(sum - 1.0) > 1e-9) {
        throw std::invalid_argument("WeightVector: components must sum to 1");
    }
}

double chebyshev(std::span<const double> f, const WeightVector& w,
                 std::span<const double> f_star) {
    if (f.size() != f_star.size() || static_cast<int>(f.size()) != w.size()) {
        throw std::invalid_argument("chebyshev: size mismatch");
    }
    double worst = 0.0;
    for (std::size_t i = 0; i < f.size(); ++i) {
        if (!std::isfinite(f[i]) || !std::isfinite(f_star[i])) {
            throw std::invalid_argument("chebyshev: non-finite input");
        }
        const double term = w[static_cast<int>(i)] * std::abs(f[i] - f_star[i]);
        if (term > worst) worst = term;
    }
    return worst;
}

double reward(std::span<const double> f, const WeightVector& w,
              std::span<const double> f_star) {
    return -chebyshev(f, w, f_star);
}

WeightVector sample_weight(int objective_count, Rng& rng) {
    if (objective_count < 2) throw std::invalid_argument("sample_weight: need m >= 2");
    if (objective_count == 2) {
        const double u = rng.uniform();
        return WeightVector({u, 1.0 - u});
    }
    std::vector<double> w(objective_count);
    double sum = 0.0;
    for (double& v : w) {
        v = -std::log(1.0 - rng.uniform());
        sum += v;
    }
    for (double& v : w) v /= sum;
    // Fix the last component so the L1 invariant holds to round-off.
    double partial = 0.0;
    for (int i = 0; i + 1 < objective_count; ++i) partial += w[i];
    w.back() = 1.0 - partial;
    if (w.back() < 0.0) w.back() = 0.0;
    return WeightVector(std::move(w));
}

UtopiaTracker::UtopiaTracker(DecompositionGrid grid, std::vector<double> tau)
    : grid_(std::move(grid)), tau_(std::move(tau)) {
    if (tau_.size() < 2) throw std::invalid_argument("UtopiaTracker: need at least two objectives");
    for (double t : tau_) {
        if (!(t > 0.0)) throw std::invalid_argument("UtopiaTracker: tau components must be > 0");
    }
    const double inf = std::numeric_limits<double>::infinity();
    utopia_.assign(grid_.cell_count(), std::vector<double>(tau_.size(), inf));
    visited_.assign(grid_.cell_count(), false);
    global_min_.assign(tau_.size(), inf);
}

std::span<const double> UtopiaTracker::utopia(int cell) const {
    if (cell < 0 || cell >= grid_.cell_count()) {
        throw std::invalid_argument("UtopiaTracker: cell out of range");
    }
    return utopia_[cell];
}

std::vector<bool> UtopiaTracker::update(std::span<const double> c_raw,
                                        std::span<const double> f) {
    if (static_cast<int>(f.size()) != objective_count()) {
        throw std::invalid_argument("UtopiaTracker::update: objective count mismatch");
    }
    for (double v : f) {
        if (!std::isfinite(v)) throw std::invalid_argument("UtopiaTracker::update: non-finite objective");
    }
    const int cell = grid_.cell_index(c_raw);
    auto& u = utopia_[cell];
    std::vector<bool> changed(f.size(), false);
    for (std::size_t i = 0; i < f.size(); ++i) {
        const double candidate = f[i] - tau_[i];
        if (candidate < u[i]) {
            u[i] = candidate;
            changed[i] = true;
        }
        if (candidate < global_min_[i]) global_min_[i] = candidate;
    }
    visited_[cell] = true;
    any_visited_ = true;
    return changed;
}

std::vector<double> UtopiaTracker::state_utopia(std::span<const double> c_raw) const {
    const int cell = grid_.cell_index(c_raw);
    if (visited_[cell]) return utopia_[cell];
    if (any_visited_) return global_min_;
    return std::vector<double>(tau_.size(), 0.0);
}

SampleBatch reproduce_data(const EvaluationRecord& record, std::span<const double> c_norm,
                           std::span<const double> action, std::span<const double> utopia,
                           int count, Rng& rng) {
    if (record.failed) throw std::invalid_argument("reproduce_data: record marks a failed evaluation");
    if (count < 1) throw std::invalid_argument("reproduce_data: count must be >= 1");
    const int m = static_cast<int>(record.objectives.size());
    if (static_cast<int>(utopia.size()) != m) {
        throw std::invalid_argument("reproduce_data: utopia size mismatch");
    }

    SampleBatch batch;
    batch.state_dim = static_cast<int>(c_norm.size()) + 2 * m;
    batch.action_dim = static_cast<int>(action.size());
    batch.states.reserve(static_cast<std::size_t>(count) * batch.state_dim);
    batch.actions.reserve(static_cast<std::size_t>(count) * batch.action_dim);
    batch.rewards.reserve(count);
    batch.episodes.assign(count, record.episode);

    for (int k = 0; k < count; ++k) {
        const WeightVector w = sample_weight(m, rng);
        batch.states.insert(batch.states.end(), c_norm.begin(), c_norm.end());
        batch.states.insert(batch.states.end(), w.values().begin(), w.values().end());
        batch.states.insert(batch.states.end(), utopia.begin(), utopia.end());
        batch.actions.insert(batch.actions.end(), action.begin(), action.end());
        batch.rewards.push_back(reward(record.objectives, w, utopia));
    }
    return batch;
}

}  // namespace mcmo
