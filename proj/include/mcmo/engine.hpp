#pragma once

#include <array>
#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "mcmo/dense_network.hpp"
#include "mcmo/pareto.hpp"
#include "mcmo/problem.hpp"
#include "mcmo/replay_buffer.hpp"
#include "mcmo/scalarization.hpp"

namespace mcmo {

/// Hyperparameters of the single-step training loop.
struct TrainingConfig {
    long episodes = 100000;
    int batch_size = 100;            // N_b
    int learn_iters = 100;           // learning iterations per episode (l_max)
    int actor_period = 2;            // actor updated when iter % actor_period == 0 (l_d)
    int reproduction = 100;          // training samples per evaluation (K)
    long warmup_episodes = 1000;     // sigma held at 1 up to here
    double sigma_amplitude = 0.05;
    long sigma_period = 1000;
    double actor_lr = 1e-4;
    double critic_lr = 1e-4;
    std::vector<int> hidden_widths = {512, 256, 256, 128};
    double leaky_slope = 0.01;
    std::uint64_t seed = 1;
    std::vector<double> tau;         // utopia margins; empty -> 0.01 per objective
    int utopia_cells = 100;
    int analysis_cells = 100;
    std::vector<double> reference_point;  // enables HV logging when set (m == 2)
    long hv_log_interval = 100;
    long checkpoint_interval = 0;    // 0 -> final checkpoint only
    std::optional<double> fixed_condition;  // single-condition mode (p == 1)
    int convergence_window = 0;      // trailing HV_avg points; 0 -> fixed budget
    double convergence_rel_tol = 0.01;

    void validate(const MCMOProblem& problem) const;
};

/// Exploration noise schedule: 1 through warm-up, then the cosine schedule
/// amplitude * (cos(2*pi*episode/period) + 1).
double exploration_sigma(long episode, const TrainingConfig& config);

/// State layout [normalized condition | weight | utopia]; the utopia enters
/// in raw objective units. Throws when the utopia still holds the unvisited
/// sentinel.
std::vector<double> build_state(std::span<const double> c_norm, const WeightVector& w,
                                std::span<const double> utopia);

inline std::span<const double> state_condition(std::span<const double> s, int p) {
    return s.subspan(0, p);
}
inline std::span<const double> state_weight(std::span<const double> s, int p, int m) {
    return s.subspan(p, m);
}
inline std::span<const double> state_utopia_part(std::span<const double> s, int p, int m) {
    return s.subspan(p + m, m);
}

/// clip(actor(state) + noise, -1, 1) with i.i.d. Gaussian noise per component.
std::vector<double> select_action(const DenseNetwork& actor, DenseNetwork::Workspace& ws,
                                  std::span<const double> state, double sigma, Rng& rng);
std::vector<double> select_action(const DenseNetwork& actor, std::span<const double> state,
                                  double sigma, Rng& rng);

/// Actor and critic networks with their optimizers and batch updates.
class ActorCritic {
public:
    ActorCritic(int state_dim, int action_dim, const TrainingConfig& config, Rng& rng);

    DenseNetwork& actor() { return actor_; }
    const DenseNetwork& actor() const { return actor_; }
    DenseNetwork& critic() { return critic_; }
    const DenseNetwork& critic() const { return critic_; }

    /// One Adam step on the mean squared error between stored rewards and
    /// Q(s, a) over the batch; returns the pre-step loss.
    double critic_update(const ReplayBuffer& buffer, std::span<const long> batch);

    /// One Adam ascent step on mean Q(s, pi(s)) (deterministic policy
    /// gradient); the critic is left untouched. Returns the pre-step mean Q.
    double actor_update(const ReplayBuffer& buffer, std::span<const long> batch);

    std::vector<double> policy_action(std::span<const double> state);
    DenseNetwork::Workspace& actor_workspace() { return actor_ws_; }

    long critic_updates() const { return critic_updates_; }
    long actor_updates() const { return actor_updates_; }

private:
    DenseNetwork actor_;
    DenseNetwork critic_;
    long critic_updates_ = 0;
    long actor_updates_ = 0;
    AdamState actor_opt_;
    AdamState critic_opt_;
    DenseNetwork::Workspace actor_ws_, critic_ws_;
    std::vector<double> actor_grads_, critic_grads_, critic_scratch_grads_;
    std::vector<double> critic_input_, critic_input_grad_, actor_input_grad_, upstream_;
};

struct HVPoint {
    long episode;
    double hv_avg;
};

struct RunResult {
    std::vector<EvaluationRecord> records;
    std::vector<HVPoint> hv_history;
    long long evaluations = 0;
    bool stopped_early = false;
    long final_episode = 0;
};

/// Orchestrates the episode loop: condition and weight sampling, state
/// assembly, exploration, evaluation, utopia update, data reproduction, and
/// the per-episode learning iterations. Exactly one objective-function
/// evaluation happens per episode.
class Engine {
public:
    Engine(MCMOProblem& problem, TrainingConfig config);

    /// Runs one episode with the engine sampling the condition (or using the
    /// configured fixed condition).
    EvaluationRecord run_episode(long episode);

    /// Runs one episode at a caller-chosen raw condition (used by the
    /// prescribed-condition experiment).
    EvaluationRecord run_episode_at(long episode, std::span<const double> c_raw);

    /// Full training loop up to the episode budget or convergence; the
    /// callback (if any) fires after every episode.
    RunResult train(const std::function<void(long)>& after_episode = {});

    double hv_avg_now() const;

    MCMOProblem& problem() { return problem_; }
    const TrainingConfig& config() const { return config_; }
    ActorCritic& nets() { return ac_; }
    const ReplayBuffer& buffer() const { return buffer_; }
    const UtopiaTracker& tracker() const { return tracker_; }
    const std::vector<EvaluationRecord>& records() const { return records_; }
    const std::vector<HVPoint>& hv_history() const { return hv_history_; }
    const DecompositionGrid& analysis_grid() const { return analysis_grid_; }
    Rng& rng() { return rng_; }

private:
    EvaluationRecord episode_body(long episode, std::vector<double> c_raw,
                                  std::vector<double> c_norm);
    void learning_iterations();

    MCMOProblem& problem_;
    TrainingConfig config_;
    Rng rng_;
    UtopiaTracker tracker_;
    ReplayBuffer buffer_;
    ActorCritic ac_;
    DecompositionGrid analysis_grid_;
    std::vector<ParetoFront2D> analysis_fronts_;
    bool hv_enabled_;
    std::vector<EvaluationRecord> records_;
    std::vector<HVPoint> hv_history_;
    std::vector<long> batch_indices_;
};

}  // namespace mcmo
