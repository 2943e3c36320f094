#pragma once

#include <array>
#include <span>
#include <string>
#include <vector>

#include "mcmo/problem.hpp"

namespace mcmo {

/// Base Kursawe objectives on [-5, 5]^3:
///   g1 = sum_{i=1..2} -10 exp(-0.2 sqrt(x_i^2 + x_{i+1}^2))
///   g2 = sum_{i=1..3} |x_i|^0.8 + 5 sin(x_i^3)
std::array<double, 2> kursawe_g(std::span<const double> x);

/// Condition-extended Kursawe: the base objectives rotated by theta. At
/// theta == 0 this is exactly the original problem.
std::array<double, 2> kursawe_modified(std::span<const double> x, double theta);

/// The rotated-Kursawe benchmark: decision space [-5, 5]^3, condition space
/// theta in [0, pi/4], two objectives.
class KursaweProblem final : public MCMOProblem {
public:
    KursaweProblem();

    const BoxSpace& decision_space() const override { return decision_; }
    const BoxSpace& condition_space() const override { return condition_; }
    int objective_count() const override { return 2; }
    std::string name() const override { return "kursawe"; }

    static constexpr double theta_max = 0.78539816339744830961;  // pi/4

protected:
    std::optional<std::vector<double>> evaluate_impl(std::span<const double> x,
                                                     std::span<const double> c) override;

private:
    BoxSpace decision_;
    BoxSpace condition_;
};

/// Ground-truth front approximation by dense sampling of the decision space.
/// The base-objective cloud is independent of theta, so one cloud serves
/// every rotation: rotate, then keep the non-dominated points.
class KursaweOracle {
public:
    /// Half the budget is uniform pseudo-random, half a Halton sequence.
    KursaweOracle(long sample_budget, std::uint64_t seed);

    long sample_budget() const { return static_cast<long>(cloud_.size()); }

    std::vector<std::array<double, 2>> front(double theta) const;
    double front_hv(double theta, std::array<double, 2> reference) const;

    /// Disk-cached variant keyed on (budget, seed, theta); cache_dir is
    /// created on demand.
    std::vector<std::array<double, 2>> front_cached(double theta,
                                                    const std::string& cache_dir) const;

private:
    std::vector<std::array<double, 2>> cloud_;  // base objectives (g1, g2)
    std::uint64_t seed_;
};

/// Spec'd single-front convenience wrapper around KursaweOracle.
std::vector<std::array<double, 2>> real_front_oracle(double theta, long sample_budget,
                                                     std::uint64_t seed);

}  // namespace mcmo
