#include "mcmo/runner.hpp"

#include <cstdio>
#include <filesystem>
#include <stdexcept>

#include "mcmo/run_io.hpp"

namespace mcmo {

namespace fs = std::filesystem;

OptimizeSummary run_optimize(const RunConfig& config, const std::string& out_dir, bool progress) {
    if (out_dir.empty()) throw std::invalid_argument("run_optimize: output directory required");
    fs::create_directories(out_dir);
    const fs::path dir(out_dir);
    const fs::path ckpt_dir = dir / "checkpoints";
    fs::create_directories(ckpt_dir);

    write_manifest((dir / "manifest.json").string(), config);

    auto problem = config.make_problem();
    Engine engine(*problem, config.training);

    const long interval = config.training.checkpoint_interval;
    auto checkpoint = [&](long ep, const char* suffix) {
        engine.nets().actor().save((ckpt_dir / ("actor_" + std::string(suffix) + ".bin")).string());
        engine.nets().critic().save(
            (ckpt_dir / ("critic_" + std::string(suffix) + ".bin")).string());
        (void)ep;
    };

    RunResult result = engine.train([&](long ep) {
        if (interval > 0 && ep % interval == 0) checkpoint(ep, std::to_string(ep).c_str());
        if (progress && ep % 1000 == 0) {
            std::fprintf(stderr, "episode %ld  hv_avg %.6g\n", ep,
                         engine.hv_history().empty() ? 0.0
                                                     : engine.hv_history().back().hv_avg);
        }
    });
    checkpoint(result.final_episode, "final");

    const auto& cond = problem->condition_space();
    const auto& dec = problem->decision_space();
    write_records_csv((dir / "records.csv").string(), result.records, cond.dim(), dec.dim(),
                      problem->objective_count());
    write_hv_csv((dir / "hv_history.csv").string(), result.hv_history);

    OptimizeSummary summary;
    summary.episodes = result.final_episode;
    summary.evaluations = result.evaluations;
    for (const auto& r : result.records) {
        if (r.failed) ++summary.failed_evaluations;
    }
    summary.final_hv_avg = result.hv_history.empty() ? 0.0 : result.hv_history.back().hv_avg;
    summary.stopped_early = result.stopped_early;
    summary.run_dir = out_dir;
    return summary;
}

AnalyzeSummary run_analyze(const std::string& run_dir, int cells,
                           std::optional<std::array<double, 2>> reference,
                           const std::string& out_dir) {
    const fs::path dir(run_dir);
    const RunConfig config = RunConfig::load((dir / "manifest.json").string());
    const auto records = read_records_csv((dir / "records.csv").string());

    const auto spaces = config.make_spaces();
    const DecompositionGrid grid(spaces.condition, cells);
    const std::array<double, 2> ref =
        reference ? *reference
                  : std::array<double, 2>{config.training.reference_point[0],
                                          config.training.reference_point[1]};

    const HVReport report = hv_avg_report(records, grid, ref);

    const fs::path out(out_dir.empty() ? run_dir : out_dir);
    fs::create_directories(out);
    AnalyzeSummary summary;
    summary.cells = cells;
    summary.hv_avg = report.hv_avg;
    summary.records = static_cast<long>(records.size());
    summary.fronts_path = (out / "fronts.csv").string();
    summary.hv_report_path = (out / "hv_report.json").string();
    write_fronts_csv(summary.fronts_path, records, grid);
    write_hv_report_json(summary.hv_report_path, report);
    for (int cell = 0; cell < grid.cell_count(); ++cell) {
        summary.front_members +=
            static_cast<long>(select_front(records, grid, cell).member_indices.size());
    }
    return summary;
}

ExperimentSummary run_experiment(const RunConfig& config, const std::string& out_dir,
                                 bool progress) {
    if (out_dir.empty()) throw std::invalid_argument("run_experiment: output directory required");
    fs::create_directories(out_dir);
    const fs::path dir(out_dir);

    const ExperimentConfig exp_config =
        config.to_experiment_config((dir / "oracle_cache").string());
    if (progress) {
        std::fprintf(stderr, "experiment: %d conditions, %d repetitions\n",
                     exp_config.n_conditions, exp_config.repetitions);
    }
    const ExperimentReport report = sc_vs_mc_experiment(exp_config);

    ExperimentSummary summary;
    summary.report_json = (dir / "experiment_report.json").string();
    summary.report_csv = (dir / "experiment_report.csv").string();
    write_experiment_report(summary.report_json, summary.report_csv, report);
    summary.sc_total_mean = report.sc_total_mean;
    summary.mc_total_mean = report.mc_total_mean;
    for (const auto& run : report.runs) {
        for (const auto& o : run.sc) summary.any_censored |= o.censored;
        for (const auto& o : run.mc) summary.any_censored |= o.censored;
    }
    return summary;
}

void run_airfoil_geom(const KTParams& params, int n_points, const std::string& out_path) {
    params.validate();
    const AirfoilGeometry geometry = kt_transform(params, n_points);
    write_coordinate_file(out_path, geometry);
}

}  // namespace mcmo
