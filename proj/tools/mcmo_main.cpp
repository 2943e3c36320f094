// Command-line front end: optimize / analyze / experiment / airfoil-geom.
// Exit codes: 0 success, 1 validation error, 2 runtime error.

#include <array>
#include <cstdio>
#include <exception>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "mcmo/runner.hpp"

namespace {

int run(int argc, char** argv) {
    CLI::App app{"Multi-condition multi-objective optimization engine"};
    app.require_subcommand(1);

    // optimize
    auto* optimize = app.add_subcommand("optimize", "Train a policy and extract fronts");
    std::string opt_config, opt_out = "run";
    std::optional<std::uint64_t> opt_seed;
    std::optional<long> opt_episodes;
    bool opt_progress = false;
    optimize->add_option("--config", opt_config, "Run configuration file (JSON)")->required();
    optimize->add_option("--out", opt_out, "Output directory");
    optimize->add_option("--seed", opt_seed, "Override the configured seed");
    optimize->add_option("--episodes", opt_episodes, "Override the episode budget");
    optimize->add_flag("--progress", opt_progress, "Print progress to stderr");

    // analyze
    auto* analyze = app.add_subcommand("analyze", "Re-analyze a finished run");
    std::string an_run, an_out;
    int an_cells = 100;
    std::vector<double> an_ref;
    analyze->add_option("--run", an_run, "Run directory (with manifest.json and records.csv)")
        ->required();
    analyze->add_option("--cells", an_cells, "Decomposition cell count");
    analyze->add_option("--reference", an_ref, "Reference point (two values)")->expected(2);
    analyze->add_option("--out", an_out, "Output directory (defaults to the run directory)");

    // experiment
    auto* experiment = app.add_subcommand(
        "experiment", "Compare single- vs multi-condition evaluation counts");
    std::string ex_config, ex_out = "experiment";
    std::optional<int> ex_nc, ex_reps;
    std::optional<std::uint64_t> ex_seed;
    bool ex_progress = false;
    experiment->add_option("--config", ex_config, "Run configuration file (JSON)")->required();
    experiment->add_option("--out", ex_out, "Output directory");
    experiment->add_option("--conditions", ex_nc, "Override the prescribed condition count");
    experiment->add_option("--repetitions", ex_reps, "Override the repetition count");
    experiment->add_option("--seed", ex_seed, "Override the configured seed");
    experiment->add_flag("--progress", ex_progress, "Print progress to stderr");

    // airfoil-geom
    auto* geom = app.add_subcommand("airfoil-geom", "Write an airfoil coordinate file");
    double g_mux = -0.1, g_muy = 0.05, g_beta = 10.0, g_alpha = 0.0;
    int g_points = 200;
    std::string g_out = "airfoil.dat";
    geom->add_option("--mu-x", g_mux, "Circle center x in [-0.4, -0.05]")->required();
    geom->add_option("--mu-y", g_muy, "Circle center y in [0, 0.4]")->required();
    geom->add_option("--beta", g_beta, "Trailing-edge angle in degrees [1, 30]")->required();
    geom->add_option("--alpha", g_alpha, "Angle of attack in degrees [0, 30]");
    geom->add_option("--points", g_points, "Contour point count (>= 40)");
    geom->add_option("--out", g_out, "Output coordinate file");

    CLI11_PARSE(app, argc, argv);

    if (optimize->parsed()) {
        mcmo::RunConfig config = mcmo::RunConfig::load(opt_config);
        if (opt_seed) config.training.seed = *opt_seed;
        if (opt_episodes) config.training.episodes = *opt_episodes;
        const auto summary = mcmo::run_optimize(config, opt_out, opt_progress);
        std::printf("run directory:   %s\n", summary.run_dir.c_str());
        std::printf("episodes:        %ld\n", summary.episodes);
        std::printf("evaluations:     %lld (%ld failed)\n", summary.evaluations,
                    summary.failed_evaluations);
        std::printf("final hv_avg:    %.10g%s\n", summary.final_hv_avg,
                    summary.stopped_early ? "  (stopped on convergence)" : "");
        return 0;
    }
    if (analyze->parsed()) {
        std::optional<std::array<double, 2>> ref;
        if (!an_ref.empty()) ref = std::array<double, 2>{an_ref[0], an_ref[1]};
        const auto summary = mcmo::run_analyze(an_run, an_cells, ref, an_out);
        std::printf("records:         %ld\n", summary.records);
        std::printf("cells:           %d\n", summary.cells);
        std::printf("front members:   %ld\n", summary.front_members);
        std::printf("hv_avg:          %.10g\n", summary.hv_avg);
        std::printf("fronts:          %s\n", summary.fronts_path.c_str());
        std::printf("hv report:       %s\n", summary.hv_report_path.c_str());
        return 0;
    }
    if (experiment->parsed()) {
        mcmo::RunConfig config = mcmo::RunConfig::load(ex_config);
        if (ex_nc) config.experiment.n_conditions = *ex_nc;
        if (ex_reps) config.experiment.repetitions = *ex_reps;
        if (ex_seed) config.training.seed = *ex_seed;
        const auto summary = mcmo::run_experiment(config, ex_out, ex_progress);
        std::printf("sc total (mean): %.1f\n", summary.sc_total_mean);
        std::printf("mc total (mean): %.1f\n", summary.mc_total_mean);
        if (summary.any_censored) std::printf("note: some runs hit the evaluation budget\n");
        std::printf("report:          %s\n", summary.report_json.c_str());
        return 0;
    }
    if (geom->parsed()) {
        mcmo::run_airfoil_geom(mcmo::KTParams{g_mux, g_muy, g_beta, g_alpha}, g_points, g_out);
        std::printf("wrote %s (%d points)\n", g_out.c_str(), g_points);
        return 0;
    }
    return 1;
}

}  // namespace

int main(int argc, char** argv) {
    try {
        return run(argc, argv);
    } catch (const std::invalid_argument& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 2;
    }
}
