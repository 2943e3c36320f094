#pragma once

#include <memory>
#include <optional>
#include <string>

#include "mcmo/engine.hpp"
#include "mcmo/experiment.hpp"
#include "mcmo/problem.hpp"
#include "mcmo/xfoil_client.hpp"

namespace mcmo {

/// Experiment-section settings (kursawe only).
struct ExperimentSettings {
    int n_conditions = 5;
    int repetitions = 10;
    long sc_eval_budget = 20000;
    long mc_eval_budget = 100000;
    std::string hv_ref_mode = "protocol";  // "protocol" | "oracle-fraction"
    int protocol_repetitions = 10;
    long protocol_episodes = 10000;
    double oracle_fraction = 0.7;
    long oracle_budget = 1000000;
    bool record_trajectories = true;
};

/// External-solver section of the run configuration.
struct XfoilSettings {
    std::string binary;
    int n_points = 160;
    double ncrit = 9.0;
    int iter_limit = 100;
    long timeout_ms = 10000;
    std::string workdir;
    std::string cache_file;
};

/// Full run configuration: problem selector plus every training
/// hyperparameter. Parsing is strict: unknown keys are errors, so a typo in
/// a hyperparameter name cannot silently fall back to a default.
struct RunConfig {
    std::string problem = "kursawe";  // kursawe | airfoil-mock | airfoil-external
    TrainingConfig training;
    XfoilSettings xfoil;
    ExperimentSettings experiment;

    /// Parses a config file, or a run manifest (the embedded config is used).
    static RunConfig load(const std::string& path);
    static RunConfig from_json_text(const std::string& text);

    /// Fully resolved JSON (all defaults applied) — the manifest payload.
    std::string to_json_text() const;

    /// Applies problem-dependent defaults (reference point, tau) and
    /// validates the selector; called by load()/from_json_text().
    void resolve();

    std::unique_ptr<MCMOProblem> make_problem() const;

    /// Spaces and objective count without instantiating an evaluator (used by
    /// analysis, which must not require the external solver).
    struct Spaces {
        BoxSpace decision;
        BoxSpace condition;
        int objectives;
    };
    Spaces make_spaces() const;

    ExperimentConfig to_experiment_config(const std::string& oracle_cache_dir) const;
};

}  // namespace mcmo
