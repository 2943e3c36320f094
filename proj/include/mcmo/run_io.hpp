#pragma once

#include <string>
#include <vector>

#include "mcmo/engine.hpp"
#include "mcmo/experiment.hpp"
#include "mcmo/pareto.hpp"
#include "mcmo/problem.hpp"
#include "mcmo/run_config.hpp"

namespace mcmo {

/// Records file: episode, raw condition, raw decision, objectives, the
/// episode's reward and seed weight, failure flag. Doubles are written with
/// 17 significant digits, so the file is byte-stable and round-trips exactly.
void write_records_csv(const std::string& path, const std::vector<EvaluationRecord>& records,
                       int p, int d, int m);
std::vector<EvaluationRecord> read_records_csv(const std::string& path);

/// HV history: episode, hv_avg.
void write_hv_csv(const std::string& path, const std::vector<HVPoint>& history);
std::vector<HVPoint> read_hv_csv(const std::string& path);

/// Front export: one row per member — cell, raw cell bounds, decision
/// variables, objectives, episode.
void write_fronts_csv(const std::string& path, const std::vector<EvaluationRecord>& records,
                      const DecompositionGrid& grid);

void write_hv_report_json(const std::string& path, const HVReport& report);

/// Run manifest wrapping the fully resolved config.
void write_manifest(const std::string& path, const RunConfig& config);

void write_experiment_report(const std::string& json_path, const std::string& csv_path,
                             const ExperimentReport& report);

}  // namespace mcmo
