#pragma once

#include <array>
#include <optional>
#include <string>

#include "mcmo/airfoil_geometry.hpp"
#include "mcmo/run_config.hpp"

namespace mcmo {

struct OptimizeSummary {
    long episodes = 0;
    long long evaluations = 0;
    long failed_evaluations = 0;
    double final_hv_avg = 0.0;
    bool stopped_early = false;
    std::string run_dir;
};

/// Full optimization run: trains, then writes records.csv, hv_history.csv,
/// checkpoints/, and manifest.json into out_dir.
OptimizeSummary run_optimize(const RunConfig& config, const std::string& out_dir,
                             bool progress = false);

struct AnalyzeSummary {
    int cells = 0;
    double hv_avg = 0.0;
    long records = 0;
    long front_members = 0;
    std::string fronts_path;
    std::string hv_report_path;
};

/// Re-analysis of a finished run at any grid resolution: reads the manifest
/// and records of `run_dir`, writes fronts.csv and hv_report.json into
/// out_dir (defaults to run_dir). Prior run artifacts are never modified.
AnalyzeSummary run_analyze(const std::string& run_dir, int cells,
                           std::optional<std::array<double, 2>> reference,
                           const std::string& out_dir = "");

struct ExperimentSummary {
    double sc_total_mean = 0.0;
    double mc_total_mean = 0.0;
    bool any_censored = false;
    std::string report_json;
    std::string report_csv;
};

/// Single-condition vs multi-condition evaluation-count experiment; writes
/// experiment_report.json / .csv into out_dir.
ExperimentSummary run_experiment(const RunConfig& config, const std::string& out_dir,
                                 bool progress = false);

/// Writes the coordinate file for a Kármán-Trefftz airfoil after strict
/// parameter validation.
void run_airfoil_geom(const KTParams& params, int n_points, const std::string& out_path);

}  // namespace mcmo
