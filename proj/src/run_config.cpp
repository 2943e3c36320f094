#include "mcmo/run_config.hpp"

#include <fstream>
#include <set>
#include <sstream>
#include <stdexcept>

#include "json.hpp"

#include "mcmo/airfoil.hpp"
#include "mcmo/kursawe.hpp"

namespace mcmo {

namespace {

using nlohmann::json;

void check_keys(const json& j, const std::set<std::string>& known, const std::string& path) {
    if (!j.is_object()) {
        throw std::invalid_argument("config: expected an object at " + path);
    }
    for (const auto& item : j.items()) {
        if (!known.count(item.key())) {
            throw std::invalid_argument("config: unknown key '" + path + item.key() + "'");
        }
    }
}

template <typename T>
void read_field(const json& j, const char* key, T& out, const std::string& path) {
    if (!j.contains(key) || j.at(key).is_null()) return;
    try {
        out = j.at(key).get<T>();
    } catch (const json::exception&) {
        throw std::invalid_argument("config: bad value type for '" + path + key + "'");
    }
}

XfoilConfig to_xfoil_config(const XfoilSettings& s) {
    XfoilConfig cfg;
    cfg.binary = s.binary;
    cfg.n_points = s.n_points;
    cfg.ncrit = s.ncrit;
    cfg.iter_limit = s.iter_limit;
    cfg.timeout_ms = s.timeout_ms;
    cfg.workdir = s.workdir;
    return cfg;
}

}  // namespace

RunConfig RunConfig::from_json_text(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::exception& e) {
        throw std::invalid_argument(std::string("config: JSON parse error: ") + e.what());
    }
    if (j.is_object() && j.value("format", "") == "mcmo-run-manifest") {
        if (!j.contains("config")) {
            throw std::invalid_argument("config: manifest lacks a 'config' object");
        }
        j = j.at("config");
    }

    static const std::set<std::string> known = {
        "problem",        "seed",
        "episodes",       "batch_size",
        "learn_iters",    "actor_period",
        "reproduction",   "warmup_episodes",
        "sigma_amplitude", "sigma_period",
        "actor_lr",       "critic_lr",
        "hidden_widths",  "leaky_slope",
        "tau",            "utopia_cells",
        "analysis_cells", "reference_point",
        "hv_log_interval", "checkpoint_interval",
        "fixed_condition", "convergence_window",
        "convergence_rel_tol", "xfoil",
        "experiment"};
    check_keys(j, known, "");

    RunConfig cfg;
    read_field(j, "problem", cfg.problem, "");
    auto& t = cfg.training;
    read_field(j, "seed", t.seed, "");
    read_field(j, "episodes", t.episodes, "");
    read_field(j, "batch_size", t.batch_size, "");
    read_field(j, "learn_iters", t.learn_iters, "");
    read_field(j, "actor_period", t.actor_period, "");
    read_field(j, "reproduction", t.reproduction, "");
    read_field(j, "warmup_episodes", t.warmup_episodes, "");
    read_field(j, "sigma_amplitude", t.sigma_amplitude, "");
    read_field(j, "sigma_period", t.sigma_period, "");
    read_field(j, "actor_lr", t.actor_lr, "");
    read_field(j, "critic_lr", t.critic_lr, "");
    read_field(j, "hidden_widths", t.hidden_widths, "");
    read_field(j, "leaky_slope", t.leaky_slope, "");
    read_field(j, "tau", t.tau, "");
    read_field(j, "utopia_cells", t.utopia_cells, "");
    read_field(j, "analysis_cells", t.analysis_cells, "");
    read_field(j, "reference_point", t.reference_point, "");
    read_field(j, "hv_log_interval", t.hv_log_interval, "");
    read_field(j, "checkpoint_interval", t.checkpoint_interval, "");
    if (j.contains("fixed_condition") && !j.at("fixed_condition").is_null()) {
        double v = 0.0;
        read_field(j, "fixed_condition", v, "");
        t.fixed_condition = v;
    }
    read_field(j, "convergence_window", t.convergence_window, "");
    read_field(j, "convergence_rel_tol", t.convergence_rel_tol, "");

    if (j.contains("xfoil")) {
        const json& x = j.at("xfoil");
        static const std::set<std::string> known_x = {"binary",     "n_points", "ncrit",
                                                      "iter_limit", "timeout_ms", "workdir",
                                                      "cache_file"};
        check_keys(x, known_x, "xfoil.");
        read_field(x, "binary", cfg.xfoil.binary, "xfoil.");
        read_field(x, "n_points", cfg.xfoil.n_points, "xfoil.");
        read_field(x, "ncrit", cfg.xfoil.ncrit, "xfoil.");
        read_field(x, "iter_limit", cfg.xfoil.iter_limit, "xfoil.");
        read_field(x, "timeout_ms", cfg.xfoil.timeout_ms, "xfoil.");
        read_field(x, "workdir", cfg.xfoil.workdir, "xfoil.");
        read_field(x, "cache_file", cfg.xfoil.cache_file, "xfoil.");
    }

    if (j.contains("experiment")) {
        const json& e = j.at("experiment");
        static const std::set<std::string> known_e = {
            "n_conditions",   "repetitions",       "sc_eval_budget",
            "mc_eval_budget", "hv_ref_mode",       "protocol_repetitions",
            "protocol_episodes", "oracle_fraction", "oracle_budget",
            "record_trajectories"};
        check_keys(e, known_e, "experiment.");
        auto& ex = cfg.experiment;
        read_field(e, "n_conditions", ex.n_conditions, "experiment.");
        read_field(e, "repetitions", ex.repetitions, "experiment.");
        read_field(e, "sc_eval_budget", ex.sc_eval_budget, "experiment.");
        read_field(e, "mc_eval_budget", ex.mc_eval_budget, "experiment.");
        read_field(e, "hv_ref_mode", ex.hv_ref_mode, "experiment.");
        read_field(e, "protocol_repetitions", ex.protocol_repetitions, "experiment.");
        read_field(e, "protocol_episodes", ex.protocol_episodes, "experiment.");
        read_field(e, "oracle_fraction", ex.oracle_fraction, "experiment.");
        read_field(e, "oracle_budget", ex.oracle_budget, "experiment.");
        read_field(e, "record_trajectories", ex.record_trajectories, "experiment.");
    }

    cfg.resolve();
    return cfg;
}

RunConfig RunConfig::load(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("config: cannot open " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return from_json_text(ss.str());
}

void RunConfig::resolve() {
    if (problem != "kursawe" && problem != "airfoil-mock" && problem != "airfoil-external") {
        throw std::invalid_argument("config: unknown problem '" + problem +
                                    "' (expected kursawe, airfoil-mock, or airfoil-external)");
    }
    if (problem == "airfoil-external" && xfoil.binary.empty()) {
        throw std::invalid_argument("config: airfoil-external requires xfoil.binary");
    }
    if (experiment.hv_ref_mode != "protocol" && experiment.hv_ref_mode != "oracle-fraction") {
        throw std::invalid_argument("config: experiment.hv_ref_mode must be 'protocol' or "
                                    "'oracle-fraction'");
    }
    if (training.reference_point.empty()) {
        training.reference_point =
            problem == "kursawe" ? std::vector<double>{-2.0, 13.0} : std::vector<double>{0.0, 1.0};
    }
    if (training.tau.empty()) {
        training.tau = {0.01, 0.01};  // both shipped problems are bi-objective
    }
}

std::string RunConfig::to_json_text() const {
    json j;
    j["problem"] = problem;
    j["seed"] = training.seed;
    j["episodes"] = training.episodes;
    j["batch_size"] = training.batch_size;
    j["learn_iters"] = training.learn_iters;
    j["actor_period"] = training.actor_period;
    j["reproduction"] = training.reproduction;
    j["warmup_episodes"] = training.warmup_episodes;
    j["sigma_amplitude"] = training.sigma_amplitude;
    j["sigma_period"] = training.sigma_period;
    j["actor_lr"] = training.actor_lr;
    j["critic_lr"] = training.critic_lr;
    j["hidden_widths"] = training.hidden_widths;
    j["leaky_slope"] = training.leaky_slope;
    j["tau"] = training.tau;
    j["utopia_cells"] = training.utopia_cells;
    j["analysis_cells"] = training.analysis_cells;
    j["reference_point"] = training.reference_point;
    j["hv_log_interval"] = training.hv_log_interval;
    j["checkpoint_interval"] = training.checkpoint_interval;
    if (training.fixed_condition) {
        j["fixed_condition"] = *training.fixed_condition;
    } else {
        j["fixed_condition"] = nullptr;
    }
    j["convergence_window"] = training.convergence_window;
    j["convergence_rel_tol"] = training.convergence_rel_tol;
    j["xfoil"] = {{"binary", xfoil.binary},       {"n_points", xfoil.n_points},
                  {"ncrit", xfoil.ncrit},         {"iter_limit", xfoil.iter_limit},
                  {"timeout_ms", xfoil.timeout_ms}, {"workdir", xfoil.workdir},
                  {"cache_file", xfoil.cache_file}};
    j["experiment"] = {{"n_conditions", experiment.n_conditions},
                       {"repetitions", experiment.repetitions},
                       {"sc_eval_budget", experiment.sc_eval_budget},
                       {"mc_eval_budget", experiment.mc_eval_budget},
                       {"hv_ref_mode", experiment.hv_ref_mode},
                       {"protocol_repetitions", experiment.protocol_repetitions},
                       {"protocol_episodes", experiment.protocol_episodes},
                       {"oracle_fraction", experiment.oracle_fraction},
                       {"oracle_budget", experiment.oracle_budget},
                       {"record_trajectories", experiment.record_trajectories}};
    return j.dump(2);
}

std::unique_ptr<MCMOProblem> RunConfig::make_problem() const {
    if (problem == "kursawe") return std::make_unique<KursaweProblem>();
    if (problem == "airfoil-mock") {
        return std::make_unique<AirfoilProblem>(std::make_shared<MockAeroEvaluator>());
    }
    if (problem == "airfoil-external") {
        if (xfoil.binary.empty()) {
            throw std::invalid_argument("config: airfoil-external requires xfoil.binary");
        }
        std::shared_ptr<AeroEvaluator> evaluator =
            std::make_shared<XfoilEvaluator>(to_xfoil_config(xfoil));
        if (!xfoil.cache_file.empty()) {
            evaluator = std::make_shared<CachedAeroEvaluator>(evaluator, xfoil.cache_file);
        }
        return std::make_unique<AirfoilProblem>(std::move(evaluator));
    }
    throw std::invalid_argument("config: unknown problem '" + problem + "'");
}

RunConfig::Spaces RunConfig::make_spaces() const {
    if (problem == "kursawe") {
        KursaweProblem p;
        return {p.decision_space(), p.condition_space(), p.objective_count()};
    }
    // both airfoil variants share the spaces
    AirfoilProblem p(std::make_shared<MockAeroEvaluator>());
    return {p.decision_space(), p.condition_space(), p.objective_count()};
}

ExperimentConfig RunConfig::to_experiment_config(const std::string& oracle_cache_dir) const {
    if (problem != "kursawe") {
        throw std::invalid_argument("experiment: only the kursawe problem is supported");
    }
    ExperimentConfig e;
    e.n_conditions = experiment.n_conditions;
    e.repetitions = experiment.repetitions;
    e.sc_eval_budget = experiment.sc_eval_budget;
    e.mc_eval_budget = experiment.mc_eval_budget;
    e.base = training;
    e.reference = {training.reference_point[0], training.reference_point[1]};
    e.hv_ref.mode = experiment.hv_ref_mode == "protocol" ? HvRefSpec::Mode::Protocol
                                                         : HvRefSpec::Mode::OracleFraction;
    e.hv_ref.protocol_repetitions = experiment.protocol_repetitions;
    e.hv_ref.protocol_episodes = experiment.protocol_episodes;
    e.hv_ref.oracle_fraction = experiment.oracle_fraction;
    e.hv_ref.oracle_budget = experiment.oracle_budget;
    e.seed = training.seed;
    e.oracle_cache_dir = oracle_cache_dir;
    e.record_trajectories = experiment.record_trajectories;
    return e;
}

}  // namespace mcmo
