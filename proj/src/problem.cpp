#include "mcmo/problem.hpp"

#include <cmath>
#include <stdexcept>

namespace mcmo {

bool dominates(std::span<const double> a, std::span<const double> b) {
    if (a.size() != b.size() || a.empty()) {
        throw std::invalid_argument("dominates: objective vectors must have equal non-zero length");
    }
    bool strictly_better = false;
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i] > b[i]) return false;
        if (a[i] < b[i]) strictly_better = true;
    }
    return strictly_better;
}

std::optional<std::vector<double>> MCMOProblem::evaluate(std::span<const double> x_raw,
                                                         std::span<const double> c_raw) {
    if (!decision_space().contains(x_raw)) {
        throw std::invalid_argument("evaluate: decision variables outside the decision space");
    }
    if (!condition_space().contains(c_raw)) {
        throw std::invalid_argument("evaluate: condition outside the condition space");
    }
    eval_count_.fetch_add(1, std::memory_order_relaxed);
    auto result = evaluate_impl(x_raw, c_raw);
    if (!result) return std::nullopt;
    if (static_cast<int>(result->size()) != objective_count()) {
        throw std::runtime_error("evaluate: evaluator returned a wrong objective count");
    }
    for (double v : *result) {
        if (!std::isfinite(v)) return std::nullopt;  // treat as evaluator failure
    }
    return result;
}

}  // namespace mcmo
