#include "mcmo/experiment.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "mcmo/kursawe.hpp"

namespace mcmo {

namespace {

// Ground-truth sampling seed held fixed so HV targets do not drift with the
// experiment seed.
constexpr std::uint64_t kOracleSeed = 871225;

struct ScRunResult {
    long evaluations = 0;
    bool censored = false;
    double final_hv = 0.0;
    std::vector<double> trajectory;
};

// Single-condition run that stops as soon as the front's HV reaches
// `hv_target` (pass +inf to always exhaust the budget).
ScRunResult run_single_condition(double condition, const TrainingConfig& base,
                                 std::array<double, 2> reference, double hv_target,
                                 long episode_budget, std::uint64_t seed,
                                 bool record_trajectory) {
    TrainingConfig cfg = base;
    cfg.fixed_condition = condition;
    cfg.seed = seed;
    cfg.episodes = episode_budget;
    cfg.reference_point.clear();  // HV tracked here, over the single condition

    KursaweProblem problem;
    Engine engine(problem, cfg);
    ParetoFront2D front;
    ScRunResult result;
    for (long ep = 1; ep <= episode_budget; ++ep) {
        const EvaluationRecord rec = engine.run_episode(ep);
        if (!rec.failed) front.insert(rec.objectives[0], rec.objectives[1], ep);
        result.final_hv = front.hypervolume(reference);
        if (record_trajectory) result.trajectory.push_back(result.final_hv);
        result.evaluations = ep;
        if (result.final_hv >= hv_target) return result;
    }
    result.censored = std::isfinite(hv_target);
    return result;
}

}  // namespace

double hv_ref_protocol(double condition, int repetitions, long episodes,
                       const TrainingConfig& base, std::array<double, 2> reference,
                       std::uint64_t seed) {
    if (repetitions < 1) throw std::invalid_argument("hv_ref_protocol: repetitions must be >= 1");
    Rng seeder(seed);
    double sum = 0.0;
    for (int rep = 0; rep < repetitions; ++rep) {
        const auto run = run_single_condition(condition, base, reference,
                                              std::numeric_limits<double>::infinity(), episodes,
                                              seeder.fork_seed(), false);
        sum += run.final_hv;
    }
    return sum / repetitions;
}

ExperimentReport sc_vs_mc_experiment(const ExperimentConfig& config) {
    if (config.n_conditions < 2) {
        throw std::invalid_argument("sc_vs_mc_experiment: need at least two conditions");
    }
    if (config.repetitions < 1) {
        throw std::invalid_argument("sc_vs_mc_experiment: repetitions must be >= 1");
    }

    ExperimentReport report;
    report.n_conditions = config.n_conditions;
    report.repetitions = config.repetitions;
    report.reference = config.reference;
    report.conditions.resize(config.n_conditions);
    for (int i = 0; i < config.n_conditions; ++i) {
        report.conditions[i] = KursaweProblem::theta_max * static_cast<double>(i) /
                               static_cast<double>(config.n_conditions - 1);
    }

    // Per-condition HV targets.
    Rng seeder(config.seed);
    report.hv_ref.resize(config.n_conditions);
    if (config.hv_ref.mode == HvRefSpec::Mode::OracleFraction) {
        KursaweOracle oracle(config.hv_ref.oracle_budget, kOracleSeed);
        for (int i = 0; i < config.n_conditions; ++i) {
            const auto front =
                config.oracle_cache_dir.empty()
                    ? oracle.front(report.conditions[i])
                    : oracle.front_cached(report.conditions[i], config.oracle_cache_dir);
            report.hv_ref[i] =
                config.hv_ref.oracle_fraction * hypervolume_2d(front, config.reference);
        }
    } else {
        for (int i = 0; i < config.n_conditions; ++i) {
            report.hv_ref[i] =
                hv_ref_protocol(report.conditions[i], config.hv_ref.protocol_repetitions,
                                config.hv_ref.protocol_episodes, config.base, config.reference,
                                seeder.fork_seed());
        }
    }

    for (int rep = 0; rep < config.repetitions; ++rep) {
        ExperimentRun run;
        run.sc.resize(config.n_conditions);
        run.mc.resize(config.n_conditions);
        if (config.record_trajectories) {
            run.sc_hv_trajectory.resize(config.n_conditions);
            run.mc_hv_trajectory.resize(config.n_conditions);
        }

        // Single-condition case: one independent run per prescribed condition.
        for (int i = 0; i < config.n_conditions; ++i) {
            const auto sc = run_single_condition(report.conditions[i], config.base,
                                                 config.reference, report.hv_ref[i],
                                                 config.sc_eval_budget, seeder.fork_seed(),
                                                 config.record_trajectories);
            run.sc[i] = {report.conditions[i], sc.evaluations, sc.censored, sc.final_hv};
            if (config.record_trajectories) run.sc_hv_trajectory[i] = sc.trajectory;
            run.sc_total += sc.evaluations;
        }

        // Multi-condition case: one run, conditions drawn uniformly from the
        // prescribed set; a condition that met its target leaves the pool.
        {
            TrainingConfig cfg = config.base;
            cfg.seed = seeder.fork_seed();
            cfg.episodes = config.mc_eval_budget;
            cfg.reference_point.clear();
            Rng picker(seeder.fork_seed());

            KursaweProblem problem;
            Engine engine(problem, cfg);
            std::vector<ParetoFront2D> fronts(config.n_conditions);
            std::vector<long> counts(config.n_conditions, 0);
            std::vector<double> hv(config.n_conditions, 0.0);
            std::vector<int> remaining(config.n_conditions);
            for (int i = 0; i < config.n_conditions; ++i) remaining[i] = i;

            long ep = 0;
            while (!remaining.empty() && ep < config.mc_eval_budget) {
                ++ep;
                const int slot = static_cast<int>(picker.uniform_index(remaining.size()));
                const int i = remaining[slot];
                const double theta = report.conditions[i];
                const EvaluationRecord rec =
                    engine.run_episode_at(ep, std::span<const double>(&theta, 1));
                ++counts[i];
                if (!rec.failed) fronts[i].insert(rec.objectives[0], rec.objectives[1], ep);
                hv[i] = fronts[i].hypervolume(config.reference);
                if (config.record_trajectories) run.mc_hv_trajectory[i].push_back(hv[i]);
                if (hv[i] >= report.hv_ref[i]) remaining.erase(remaining.begin() + slot);
            }
            for (int i = 0; i < config.n_conditions; ++i) {
                const bool censored =
                    std::find(remaining.begin(), remaining.end(), i) != remaining.end();
                run.mc[i] = {report.conditions[i], counts[i], censored, hv[i]};
            }
            run.mc_total = ep;
        }

        report.runs.push_back(std::move(run));
    }

    auto aggregate = [&](auto total_of) {
        double mean = 0.0;
        double lo = std::numeric_limits<double>::infinity();
        double hi = -std::numeric_limits<double>::infinity();
        for (const auto& r : report.runs) {
            const double t = static_cast<double>(total_of(r));
            mean += t;
            lo = std::min(lo, t);
            hi = std::max(hi, t);
        }
        mean /= report.runs.size();
        return std::array<double, 3>{mean, lo, hi};
    };
    const auto sc_agg = aggregate([](const ExperimentRun& r) { return r.sc_total; });
    report.sc_total_mean = sc_agg[0];
    report.sc_total_min = sc_agg[1];
    report.sc_total_max = sc_agg[2];
    const auto mc_agg = aggregate([](const ExperimentRun& r) { return r.mc_total; });
    report.mc_total_mean = mc_agg[0];
    report.mc_total_min = mc_agg[1];
    report.mc_total_max = mc_agg[2];
    return report;
}

}  // namespace mcmo
