#include "mcmo/engine.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <limits>
#include <stdexcept>

namespace mcmo {

void TrainingConfig::validate(const MCMOProblem& problem) const {
    auto positive = [](long v, const char* what) {
        if (v < 1) throw std::invalid_argument(std::string("TrainingConfig: ") + what +
                                               " must be >= 1");
    };
    positive(episodes, "episodes");
    positive(batch_size, "batch_size");
    positive(learn_iters, "learn_iters");
    positive(actor_period, "actor_period");
    positive(reproduction, "reproduction");
    positive(sigma_period, "sigma_period");
    positive(utopia_cells, "utopia_cells");
    positive(analysis_cells, "analysis_cells");
    if (warmup_episodes < 0) throw std::invalid_argument("TrainingConfig: warmup_episodes < 0");
    if (!(actor_lr > 0.0) || !(critic_lr > 0.0)) {
        throw std::invalid_argument("TrainingConfig: learning rates must be > 0");
    }
    if (!(sigma_amplitude >= 0.0)) {
        throw std::invalid_argument("TrainingConfig: sigma_amplitude must be >= 0");
    }
    if (hidden_widths.empty()) {
        throw std::invalid_argument("TrainingConfig: need at least one hidden layer");
    }
    for (int w : hidden_widths) {
        if (w < 1) throw std::invalid_argument("TrainingConfig: hidden widths must be >= 1");
    }
    if (!tau.empty() && static_cast<int>(tau.size()) != problem.objective_count()) {
        throw std::invalid_argument("TrainingConfig: tau size must match the objective count");
    }
    for (double t : tau) {
        if (!(t > 0.0)) throw std::invalid_argument("TrainingConfig: tau components must be > 0");
    }
    if (!reference_point.empty() && reference_point.size() != 2) {
        throw std::invalid_argument("TrainingConfig: reference_point must have two components");
    }
    if (fixed_condition && problem.condition_space().dim() != 1) {
        throw std::invalid_argument("TrainingConfig: fixed_condition requires a 1-D condition space");
    }
    if (fixed_condition) {
        const double c = *fixed_condition;
        if (!problem.condition_space().contains(std::span<const double>(&c, 1))) {
            throw std::invalid_argument("TrainingConfig: fixed_condition outside the condition space");
        }
    }
    if (convergence_window < 0 || convergence_window == 1) {
        throw std::invalid_argument("TrainingConfig: convergence_window must be 0 or >= 2");
    }
}

double exploration_sigma(long episode, const TrainingConfig& config) {
    if (episode < 1) throw std::invalid_argument("exploration_sigma: episodes count from 1");
    if (episode <= config.warmup_episodes) return 1.0;
    const double phase = 2.0 * Rng::pi * static_cast<double>(episode) /
                         static_cast<double>(config.sigma_period);
    return config.sigma_amplitude * (std::cos(phase) + 1.0);
}

std::vector<double> build_state(std::span<const double> c_norm, const WeightVector& w,
                                std::span<const double> utopia) {
    if (static_cast<int>(utopia.size()) != w.size()) {
        throw std::invalid_argument("build_state: utopia size must match the weight size");
    }
    for (double u : utopia) {
        if (!std::isfinite(u)) {
            throw std::invalid_argument("build_state: utopia holds the unvisited sentinel");
        }
    }
    std::vector<double> s;
    s.reserve(c_norm.size() + 2 * utopia.size());
    s.insert(s.end(), c_norm.begin(), c_norm.end());
    s.insert(s.end(), w.values().begin(), w.values().end());
    s.insert(s.end(), utopia.begin(), utopia.end());
    return s;
}

std::vector<double> select_action(const DenseNetwork& actor, DenseNetwork::Workspace& ws,
                                  std::span<const double> state, double sigma, Rng& rng) {
    if (sigma < 0.0) throw std::invalid_argument("select_action: sigma must be >= 0");
    actor.forward(state, ws);
    std::vector<double> a = ws.act.back();
    for (double& v : a) {
        v = std::clamp(v + sigma * rng.normal(), -1.0, 1.0);
    }
    return a;
}

std::vector<double> select_action(const DenseNetwork& actor, std::span<const double> state,
                                  double sigma, Rng& rng) {
    auto ws = actor.make_workspace();
    return select_action(actor, ws, state, sigma, rng);
}

namespace {

std::vector<int> net_widths(int in, const std::vector<int>& hidden, int out) {
    std::vector<int> w;
    w.reserve(hidden.size() + 2);
    w.push_back(in);
    w.insert(w.end(), hidden.begin(), hidden.end());
    w.push_back(out);
    return w;
}

}  // namespace

ActorCritic::ActorCritic(int state_dim, int action_dim, const TrainingConfig& config, Rng& rng)
    : actor_(net_widths(state_dim, config.hidden_widths, action_dim), OutputActivation::Tanh,
             config.leaky_slope, rng),
      critic_(net_widths(state_dim + action_dim, config.hidden_widths, 1),
              OutputActivation::Identity, config.leaky_slope, rng),
      actor_opt_(actor_.param_count(), config.actor_lr),
      critic_opt_(critic_.param_count(), config.critic_lr),
      actor_ws_(actor_.make_workspace()),
      critic_ws_(critic_.make_workspace()),
      actor_grads_(actor_.param_count(), 0.0),
      critic_grads_(critic_.param_count(), 0.0),
      critic_scratch_grads_(critic_.param_count(), 0.0),
      critic_input_(state_dim + action_dim, 0.0),
      critic_input_grad_(state_dim + action_dim, 0.0),
      actor_input_grad_(state_dim, 0.0),
      upstream_(1, 0.0) {}

double ActorCritic::critic_update(const ReplayBuffer& buffer, std::span<const long> batch) {
    if (batch.empty()) throw std::invalid_argument("critic_update: empty batch");
    const int s_dim = buffer.state_dim();
    const int a_dim = buffer.action_dim();
    std::fill(critic_grads_.begin(), critic_grads_.end(), 0.0);

    const double inv_n = 1.0 / static_cast<double>(batch.size());
    double loss = 0.0;
    for (long idx : batch) {
        auto s = buffer.state(idx);
        auto a = buffer.action(idx);
        std::memcpy(critic_input_.data(), s.data(), s_dim * sizeof(double));
        std::memcpy(critic_input_.data() + s_dim, a.data(), a_dim * sizeof(double));
        critic_.forward(critic_input_, critic_ws_);
        const double err = critic_ws_.act.back()[0] - buffer.reward(idx);
        loss += err * err;
        upstream_[0] = 2.0 * err * inv_n;
        critic_.backward(critic_ws_, upstream_, critic_grads_, critic_input_grad_);
    }
    loss *= inv_n;
    if (!std::isfinite(loss)) {
        throw std::runtime_error("critic_update: non-finite loss");
    }
    adam_step(critic_.params(), critic_grads_, critic_opt_);
    ++critic_updates_;
    return loss;
}

double ActorCritic::actor_update(const ReplayBuffer& buffer, std::span<const long> batch) {
    if (batch.empty()) throw std::invalid_argument("actor_update: empty batch");
    const int s_dim = buffer.state_dim();
    const int a_dim = buffer.action_dim();
    std::fill(actor_grads_.begin(), actor_grads_.end(), 0.0);
    std::fill(critic_scratch_grads_.begin(), critic_scratch_grads_.end(), 0.0);

    const double inv_n = 1.0 / static_cast<double>(batch.size());
    double objective = 0.0;
    for (long idx : batch) {
        auto s = buffer.state(idx);
        actor_.forward(s, actor_ws_);
        const auto& a_pi = actor_ws_.act.back();
        std::memcpy(critic_input_.data(), s.data(), s_dim * sizeof(double));
        std::memcpy(critic_input_.data() + s_dim, a_pi.data(), a_dim * sizeof(double));
        critic_.forward(critic_input_, critic_ws_);
        objective += critic_ws_.act.back()[0];
        // dQ/da via the critic, then through the actor.
        upstream_[0] = 1.0;
        critic_.backward(critic_ws_, upstream_, critic_scratch_grads_, critic_input_grad_);
        actor_.backward(actor_ws_,
                        std::span<const double>(critic_input_grad_).subspan(s_dim, a_dim),
                        actor_grads_, actor_input_grad_);
    }
    objective *= inv_n;
    if (!std::isfinite(objective)) {
        throw std::runtime_error("actor_update: non-finite objective");
    }
    // Ascent on mean Q: descend on its negation.
    for (double& g : actor_grads_) g = -g * inv_n;
    adam_step(actor_.params(), actor_grads_, actor_opt_);
    ++actor_updates_;
    return objective;
}

std::vector<double> ActorCritic::policy_action(std::span<const double> state) {
    actor_.forward(state, actor_ws_);
    return actor_ws_.act.back();
}

namespace {

std::vector<double> resolved_tau(const TrainingConfig& config, int m) {
    if (!config.tau.empty()) return config.tau;
    return std::vector<double>(m, 0.01);
}

TrainingConfig validated(TrainingConfig config, const MCMOProblem& problem) {
    config.validate(problem);
    return config;
}

}  // namespace

Engine::Engine(MCMOProblem& problem, TrainingConfig config)
    : problem_(problem),
      config_(validated(std::move(config), problem)),
      rng_(config_.seed),
      tracker_(DecompositionGrid(problem.condition_space(), config_.utopia_cells),
               resolved_tau(config_, problem.objective_count())),
      buffer_(problem.condition_space().dim() + 2 * problem.objective_count(),
              problem.decision_space().dim()),
      ac_(buffer_.state_dim(), buffer_.action_dim(), config_, rng_),
      analysis_grid_(problem.condition_space(), config_.analysis_cells),
      analysis_fronts_(config_.analysis_cells),
      hv_enabled_(problem.objective_count() == 2 && config_.reference_point.size() == 2 &&
                  config_.hv_log_interval > 0) {}

EvaluationRecord Engine::run_episode(long episode) {
    const auto& cond = problem_.condition_space();
    std::vector<double> c_raw, c_norm;
    if (config_.fixed_condition) {
        c_raw = {*config_.fixed_condition};
        c_norm = cond.normalize(c_raw);
    } else {
        c_norm.resize(cond.dim());
        for (double& v : c_norm) v = rng_.uniform(-1.0, 1.0);
        c_raw = cond.denormalize(c_norm);
    }
    return episode_body(episode, std::move(c_raw), std::move(c_norm));
}

EvaluationRecord Engine::run_episode_at(long episode, std::span<const double> c_raw) {
    if (config_.fixed_condition) {
        throw std::logic_error("run_episode_at: engine already has a fixed condition");
    }
    std::vector<double> raw(c_raw.begin(), c_raw.end());
    auto norm = problem_.condition_space().normalize(raw);
    return episode_body(episode, std::move(raw), std::move(norm));
}

EvaluationRecord Engine::episode_body(long episode, std::vector<double> c_raw,
                                      std::vector<double> c_norm) {
    const int m = problem_.objective_count();
    const WeightVector w = sample_weight(m, rng_);
    const std::vector<double> f_star_pre = tracker_.state_utopia(c_raw);
    const std::vector<double> state = build_state(c_norm, w, f_star_pre);
    const double sigma = exploration_sigma(episode, config_);
    const std::vector<double> action =
        select_action(ac_.actor(), ac_.actor_workspace(), state, sigma, rng_);
    const std::vector<double> x_raw = problem_.decision_space().denormalize(action);

    EvaluationRecord record;
    record.episode = episode;
    record.condition_raw = c_raw;
    record.decision_raw = x_raw;
    record.weight.assign(w.values().begin(), w.values().end());

    auto objectives = problem_.evaluate(x_raw, c_raw);
    if (objectives) {
        record.objectives = std::move(*objectives);
        // Algorithm order: utopia first, then the state/reward under the
        // updated utopia, then reproduction into the buffer.
        tracker_.update(c_raw, record.objectives);
        const auto f_star = tracker_.utopia(tracker_.grid().cell_index(c_raw));
        record.reward = reward(record.objectives, w, f_star);
        const SampleBatch batch =
            reproduce_data(record, c_norm, action, f_star, config_.reproduction, rng_);
        buffer_.add(batch);
        if (hv_enabled_) {
            analysis_fronts_[analysis_grid_.cell_index(c_raw)].insert(
                record.objectives[0], record.objectives[1], episode,
                static_cast<int>(records_.size()));
        }
    } else {
        record.failed = true;
        record.objectives.assign(m, std::numeric_limits<double>::quiet_NaN());
        record.reward = std::numeric_limits<double>::quiet_NaN();
    }

    learning_iterations();
    records_.push_back(record);
    return record;
}

void Engine::learning_iterations() {
    if (buffer_.empty()) return;
    for (int l = 1; l <= config_.learn_iters; ++l) {
        buffer_.sample_indices(config_.batch_size, rng_, batch_indices_);
        ac_.critic_update(buffer_, batch_indices_);
        if (l % config_.actor_period == 0) {
            ac_.actor_update(buffer_, batch_indices_);
        }
    }
}

double Engine::hv_avg_now() const {
    if (!hv_enabled_) return 0.0;
    const std::array<double, 2> ref{config_.reference_point[0], config_.reference_point[1]};
    double total = 0.0;
    for (const auto& front : analysis_fronts_) total += front.hypervolume(ref);
    return total / static_cast<double>(analysis_fronts_.size());
}

RunResult Engine::train(const std::function<void(long)>& after_episode) {
    RunResult result;
    std::vector<double> hv_values;
    for (long ep = 1; ep <= config_.episodes; ++ep) {
        run_episode(ep);
        if (hv_enabled_ && ep % config_.hv_log_interval == 0) {
            const double hv = hv_avg_now();
            hv_history_.push_back({ep, hv});
            hv_values.push_back(hv);
            if (config_.convergence_window >= 2 &&
                converged(hv_values, config_.convergence_window, config_.convergence_rel_tol)) {
                result.stopped_early = true;
                result.final_episode = ep;
                if (after_episode) after_episode(ep);
                break;
            }
        }
        result.final_episode = ep;
        if (after_episode) after_episode(ep);
    }
    result.records = std::move(records_);
    records_.clear();
    result.hv_history = hv_history_;
    result.evaluations = problem_.evaluation_count();
    return result;
}

}  // namespace mcmo
