#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "mcmo/engine.hpp"

namespace mcmo {

/// How the per-condition target hypervolume is determined.
struct HvRefSpec {
    enum class Mode {
        Protocol,        // mean final HV of repeated single-condition runs
        OracleFraction,  // fraction of the sampled ground-truth front's HV
    };
    Mode mode = Mode::Protocol;
    int protocol_repetitions = 10;
    long protocol_episodes = 10000;
    double oracle_fraction = 0.7;
    long oracle_budget = 1000000;
};

struct ExperimentConfig {
    int n_conditions = 5;  // N_c, equally spaced over the condition range, endpoints included
    int repetitions = 10;
    long sc_eval_budget = 20000;   // per-condition censoring bound
    long mc_eval_budget = 100000;  // whole-run censoring bound
    TrainingConfig base;           // hyperparameters; the episodes field is ignored
    std::array<double, 2> reference{-2.0, 13.0};
    HvRefSpec hv_ref;
    std::uint64_t seed = 1;
    std::string oracle_cache_dir;  // empty -> compute in memory
    bool record_trajectories = true;
};

struct ConditionOutcome {
    double condition = 0.0;
    long evaluations = 0;
    bool censored = false;
    double final_hv = 0.0;
};

/// One repetition: a batch of independent single-condition runs and one
/// multi-condition run restricted to the prescribed conditions.
struct ExperimentRun {
    std::vector<ConditionOutcome> sc;
    std::vector<ConditionOutcome> mc;
    long sc_total = 0;
    long mc_total = 0;
    // HV after each evaluation at the given condition (optional).
    std::vector<std::vector<double>> sc_hv_trajectory;
    std::vector<std::vector<double>> mc_hv_trajectory;
};

struct ExperimentReport {
    int n_conditions = 0;
    int repetitions = 0;
    std::array<double, 2> reference{};
    std::vector<double> conditions;
    std::vector<double> hv_ref;
    std::vector<ExperimentRun> runs;
    double sc_total_mean = 0.0, sc_total_min = 0.0, sc_total_max = 0.0;
    double mc_total_mean = 0.0, mc_total_min = 0.0, mc_total_max = 0.0;
};

/// Mean final hypervolume of `repetitions` independent single-condition runs
/// of `episodes` episodes at the given condition.
double hv_ref_protocol(double condition, int repetitions, long episodes,
                       const TrainingConfig& base, std::array<double, 2> reference,
                       std::uint64_t seed);

/// Function-evaluation comparison between repeated single-condition
/// optimization and one multi-condition run over the same prescribed
/// conditions. A condition whose HV target is met is excluded from further
/// multi-condition sampling; runs that exhaust their budget are reported as
/// censored at the budget value.
ExperimentReport sc_vs_mc_experiment(const ExperimentConfig& config);

}  // namespace mcmo
