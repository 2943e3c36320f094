#include "mcmo/airfoil.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace mcmo {

const char* to_string(AeroFailureKind kind) {
    switch (kind) {
        case AeroFailureKind::NonConverged: return "non-converged";
        case AeroFailureKind::Timeout: return "timeout";
        case AeroFailureKind::ParseError: return "parse-error";
        case AeroFailureKind::ProcessError: return "process-error";
    }
    return "unknown";
}

std::array<double, 2> airfoil_objectives(const AeroCoefficients& coeffs) {
    if (!(coeffs.cd > 0.0)) {
        throw std::invalid_argument("airfoil_objectives: drag coefficient must be > 0");
    }
    if (!std::isfinite(coeffs.cl) || !std::isfinite(coeffs.cd)) {
        throw std::invalid_argument("airfoil_objectives: non-finite coefficients");
    }
    return {-(coeffs.cl / coeffs.cd) / 100.0, -coeffs.cl};
}

AeroCoefficients mock_aero(double mu_x, double mu_y, double beta_deg, double alpha_deg,
                           double reynolds) {
    KTParams{mu_x, mu_y, beta_deg, alpha_deg}.validate();
    if (!(reynolds >= 1e5 && reynolds <= 1e7)) {
        throw std::invalid_argument("mock_aero: Reynolds number outside [1e5, 1e7]");
    }
    constexpr double pi = 3.14159265358979323846;
    const double alpha_stall = 15.0 + 10.0 * mu_y;
    double alpha_eff = alpha_deg;
    if (alpha_deg > alpha_stall) {
        const double t = alpha_deg - alpha_stall;
        alpha_eff = alpha_stall + t * std::exp(-t / 5.0);
    }
    const double cl = (2.0 * pi * pi / 180.0) * alpha_eff * (1.0 + 0.8 * mu_y / 0.4);
    const double cd = 0.01 * (1.0 + std::abs(mu_x) / 0.4) * std::pow(1e6 / reynolds, 0.2) +
                      0.05 * (alpha_deg / 30.0) * (alpha_deg / 30.0);
    return {cl, cd};
}

AeroResult MockAeroEvaluator::evaluate(const KTParams& params, double reynolds) {
    return mock_aero(params.mu_x, params.mu_y, params.beta_deg, params.alpha_deg, reynolds);
}

std::size_t CachedAeroEvaluator::KeyHash::operator()(const Key& k) const {
    std::size_t h = 1469598103934665603ull;
    for (long long v : k.q) {
        h ^= static_cast<std::size_t>(v);
        h *= 1099511628211ull;
    }
    return h;
}

CachedAeroEvaluator::Key CachedAeroEvaluator::make_key(const KTParams& params, double reynolds) {
    const auto quantize = [](double v) { return static_cast<long long>(std::llround(v * 1e6)); };
    return Key{{quantize(params.mu_x), quantize(params.mu_y), quantize(params.beta_deg),
                quantize(params.alpha_deg), quantize(reynolds)}};
}

CachedAeroEvaluator::CachedAeroEvaluator(std::shared_ptr<AeroEvaluator> backend,
                                         std::string cache_file)
    : backend_(std::move(backend)), cache_file_(std::move(cache_file)) {
    if (!backend_) throw std::invalid_argument("CachedAeroEvaluator: null backend");
    if (!cache_file_.empty()) load_file();
}

void CachedAeroEvaluator::load_file() {
    std::ifstream in(cache_file_);
    if (!in) return;  // will be created on first append
    std::string header;
    std::getline(in, header);
    if (header != "mcmo-aero-cache v1") {
        throw std::runtime_error("CachedAeroEvaluator: unrecognized cache header in " +
                                 cache_file_);
    }
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::istringstream ls(line);
        std::string tag;
        Key key{};
        ls >> tag;
        for (auto& q : key.q) ls >> q;
        if (tag == "ok") {
            AeroCoefficients c;
            ls >> c.cl >> c.cd;
            if (!ls) throw std::runtime_error("CachedAeroEvaluator: corrupt cache line");
            cache_[key] = c;
        } else if (tag == "fail") {
            int kind = 0;
            std::string detail;
            ls >> kind;
            std::getline(ls, detail);
            if (!ls && detail.empty()) {
                throw std::runtime_error("CachedAeroEvaluator: corrupt cache line");
            }
            cache_[key] = AeroFailure{static_cast<AeroFailureKind>(kind), detail};
        } else {
            throw std::runtime_error("CachedAeroEvaluator: unknown cache tag '" + tag + "'");
        }
    }
}

void CachedAeroEvaluator::append_entry(const Key& key, const AeroResult& result) {
    if (cache_file_.empty()) return;
    std::ofstream out;
    const bool fresh = !std::ifstream(cache_file_).good();
    out.open(cache_file_, std::ios::app);
    if (!out) throw std::runtime_error("CachedAeroEvaluator: cannot append to " + cache_file_);
    if (fresh) out << "mcmo-aero-cache v1\n";
    out.precision(17);
    if (aero_ok(result)) {
        const auto& c = std::get<AeroCoefficients>(result);
        out << "ok";
        for (long long q : key.q) out << ' ' << q;
        out << ' ' << c.cl << ' ' << c.cd << '\n';
    } else {
        const auto& f = std::get<AeroFailure>(result);
        out << "fail";
        for (long long q : key.q) out << ' ' << q;
        out << ' ' << static_cast<int>(f.kind) << ' ' << f.detail << '\n';
    }
}

AeroResult CachedAeroEvaluator::evaluate(const KTParams& params, double reynolds) {
    const Key key = make_key(params, reynolds);
    std::lock_guard<std::mutex> lock(mutex_);
    if (auto it = cache_.find(key); it != cache_.end()) {
        ++hits_;
        return it->second;
    }
    ++backend_calls_;
    AeroResult result = backend_->evaluate(params, reynolds);
    cache_.emplace(key, result);
    append_entry(key, result);
    return result;
}

std::string CachedAeroEvaluator::describe() const {
    return "cached(" + backend_->describe() + ")";
}

AirfoilProblem::AirfoilProblem(std::shared_ptr<AeroEvaluator> evaluator)
    : evaluator_(std::move(evaluator)),
      decision_(BoxSpace::linear({-0.4, 0.0, 1.0, 0.0}, {-0.05, 0.4, 30.0, 30.0})),
      condition_({1e5}, {1e7}, {AxisScale::Log10}) {
    if (!evaluator_) throw std::invalid_argument("AirfoilProblem: null evaluator");
}

std::string AirfoilProblem::name() const { return "airfoil-" + evaluator_->describe(); }

std::optional<std::vector<double>> AirfoilProblem::evaluate_impl(std::span<const double> x,
                                                                 std::span<const double> c) {
    const KTParams params{x[0], x[1], x[2], x[3]};
    const AeroResult result = evaluator_->evaluate(params, c[0]);
    if (!aero_ok(result)) return std::nullopt;
    const auto f = airfoil_objectives(std::get<AeroCoefficients>(result));
    return std::vector<double>{f[0], f[1]};
}

}  // namespace mcmo
