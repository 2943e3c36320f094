#pragma once

#include <atomic>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "mcmo/box_space.hpp"

namespace mcmo {

/// Strict Pareto dominance, minimization sense: a dominates b iff a_i <= b_i
/// for all i and a_j < b_j for at least one j.
bool dominates(std::span<const double> a, std::span<const double> b);

/// One objective-function evaluation as persisted by a run.
struct EvaluationRecord {
    long episode = 0;
    std::vector<double> condition_raw;
    std::vector<double> decision_raw;
    std::vector<double> objectives;  // finite when failed == false
    bool failed = false;

    // Run bookkeeping beyond the core fields: the weight drawn in the episode
    // and the reward computed under it (NaN for failed evaluations).
    std::vector<double> weight;
    double reward = 0.0;
};

/// A multi-condition multi-objective problem: minimize f(x, c) over the
/// decision space for every condition c in the condition space.
class MCMOProblem {
public:
    virtual ~MCMOProblem() = default;

    virtual const BoxSpace& decision_space() const = 0;
    virtual const BoxSpace& condition_space() const = 0;
    virtual int objective_count() const = 0;
    virtual std::string name() const = 0;

    /// Whether the evaluator may be invoked from several runs at once.
    virtual bool reentrant_evaluator() const { return true; }

    /// Evaluates the objectives at (x_raw, c_raw). Every call, including a
    /// failing one, increments the evaluation counter (the unit of cost when
    /// comparing optimization strategies). Returns nullopt on evaluator
    /// failure or non-finite output.
    std::optional<std::vector<double>> evaluate(std::span<const double> x_raw,
                                                std::span<const double> c_raw);

    long long evaluation_count() const { return eval_count_.load(); }

protected:
    virtual std::optional<std::vector<double>> evaluate_impl(
        std::span<const double> x_raw, std::span<const double> c_raw) = 0;

private:
    std::atomic<long long> eval_count_{0};
};

}  // namespace mcmo
