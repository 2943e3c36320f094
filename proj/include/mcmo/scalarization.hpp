#pragma once

#include <span>
#include <vector>

#include "mcmo/grid.hpp"
#include "mcmo/problem.hpp"
#include "mcmo/rng.hpp"
#include "mcmo/training_sample.hpp"

namespace mcmo {

/// Non-negative weights summing to one (L1 normalization).
class WeightVector {
public:
    explicit WeightVector(std::vector<double> w);

    int size() const { return static_cast<int>(w_.size()); }
    double operator[](int i) const { return w_[i]; }
    std::span<const double> values() const { return w_; }

private:
    std::vector<double> w_;
};

/// Weighted Chebyshev scalarizing function: max_i w_i * |f_i - f*_i|.
/// Minimizing it for a sweep of weights traces the whole Pareto front,
/// nonconvex regions included.
double chebyshev(std::span<const double> f, const WeightVector& w,
                 std::span<const double> f_star);

/// Reward of an evaluation: the negated Chebyshev value, so that reward
/// maximization minimizes the scalarized objective.
double reward(std::span<const double> f, const WeightVector& w,
              std::span<const double> f_star);

/// Random weight on the unit simplex. For two objectives this is (u, 1-u)
/// with u uniform; for more it normalizes i.i.d. exponentials, which keeps
/// the distribution uniform over the simplex.
WeightVector sample_weight(int objective_count, Rng& rng);

/// Running per-cell utopia point: a little below the best objective values
/// observed in that condition cell so far. Unvisited cells hold a +inf
/// sentinel that is replaced on first observation.
class UtopiaTracker {
public:
    UtopiaTracker(DecompositionGrid grid, std::vector<double> tau);

    const DecompositionGrid& grid() const { return grid_; }
    int objective_count() const { return static_cast<int>(tau_.size()); }
    std::span<const double> tau() const { return tau_; }

    bool visited(int cell) const { return visited_[cell]; }
    std::span<const double> utopia(int cell) const;

    /// Lowers the utopia of the cell containing c_raw: every component with
    /// f_i - tau_i below the current value is set to f_i - tau_i. Returns the
    /// per-component change flags.
    std::vector<bool> update(std::span<const double> c_raw, std::span<const double> f);

    /// Utopia used when assembling a state for condition c_raw. Falls back to
    /// the component-wise minimum over visited cells when the cell itself is
    /// unvisited, and to zeros before any observation at all; stored samples
    /// only ever embed true per-cell values because an evaluation precedes
    /// storage.
    std::vector<double> state_utopia(std::span<const double> c_raw) const;

private:
    DecompositionGrid grid_;
    std::vector<double> tau_;
    std::vector<std::vector<double>> utopia_;
    std::vector<bool> visited_;
    std::vector<double> global_min_;  // component-wise min over visited cells
    bool any_visited_ = false;
};

/// Expands one evaluation into `count` training samples by resampling the
/// weight vector: objectives, condition, action, and utopia are shared, the
/// reward is recomputed for each new weight. `c_norm` and `action` are the
/// network-side coordinates of the record's condition and decision.
SampleBatch reproduce_data(const EvaluationRecord& record, std::span<const double> c_norm,
                           std::span<const double> action, std::span<const double> utopia,
                           int count, Rng& rng);

}  // namespace mcmo
