#pragma once

#include <array>
#include <memory>
#include <mutex>
#include <string>
#include <unordered_map>
#include <variant>

#include "mcmo/airfoil_geometry.hpp"
#include "mcmo/problem.hpp"

namespace mcmo {

struct AeroCoefficients {
    double cl = 0.0;
    double cd = 0.0;  // > 0 on success
};

enum class AeroFailureKind { NonConverged, Timeout, ParseError, ProcessError };

struct AeroFailure {
    AeroFailureKind kind;
    std::string detail;
};

using AeroResult = std::variant<AeroCoefficients, AeroFailure>;

inline bool aero_ok(const AeroResult& r) { return std::holds_alternative<AeroCoefficients>(r); }

const char* to_string(AeroFailureKind kind);

/// Aerodynamic evaluator over the design parameters and the chord Reynolds
/// number; implementations decide whether a geometry is needed.
class AeroEvaluator {
public:
    virtual ~AeroEvaluator() = default;
    virtual AeroResult evaluate(const KTParams& params, double reynolds) = 0;
    virtual bool reentrant() const = 0;
    virtual std::string describe() const = 0;
};

/// Objective encoding of a coefficient pair:
///   f1 = -(C_L/C_D)/100, f2 = -C_L.
/// Throws when C_D <= 0.
std::array<double, 2> airfoil_objectives(const AeroCoefficients& coeffs);

/// Closed-form deterministic surrogate used for hermetic runs and tests:
///   alpha_s  = 15 + 10 * mu_y                                   (stall onset, deg)
///   alpha_e  = alpha                        for alpha <= alpha_s
///            = alpha_s + t * exp(-t / 5),   t = alpha - alpha_s  (soft rolloff)
///   C_L      = (2 pi^2 / 180) * alpha_e * (1 + 0.8 * mu_y / 0.4)
///   C_D      = 0.01 * (1 + |mu_x| / 0.4) * (1e6 / Re)^0.2 + 0.05 * (alpha / 30)^2
/// Camber and incidence raise lift; thickness and low Reynolds number raise
/// drag. Throws on inputs outside the optimization ranges.
AeroCoefficients mock_aero(double mu_x, double mu_y, double beta_deg, double alpha_deg,
                           double reynolds);

class MockAeroEvaluator final : public AeroEvaluator {
public:
    AeroResult evaluate(const KTParams& params, double reynolds) override;
    bool reentrant() const override { return true; }
    std::string describe() const override { return "mock"; }
};

/// Memoizing wrapper. Inputs are quantized to 6 decimals for keying;
/// failures are cached too, so a known-bad point never re-runs the backend.
/// With a cache file configured, entries are appended as they are created
/// and reloaded on construction.
class CachedAeroEvaluator final : public AeroEvaluator {
public:
    CachedAeroEvaluator(std::shared_ptr<AeroEvaluator> backend, std::string cache_file = "");

    AeroResult evaluate(const KTParams& params, double reynolds) override;
    bool reentrant() const override { return false; }  // serialized by the cache lock
    std::string describe() const override;

    long long backend_calls() const { return backend_calls_; }
    long long hits() const { return hits_; }
    std::size_t entries() const { return cache_.size(); }

private:
    struct Key {
        std::array<long long, 5> q;
        bool operator==(const Key&) const = default;
    };
    struct KeyHash {
        std::size_t operator()(const Key& k) const;
    };
    static Key make_key(const KTParams& params, double reynolds);
    void load_file();
    void append_entry(const Key& key, const AeroResult& result);

    std::shared_ptr<AeroEvaluator> backend_;
    std::string cache_file_;
    std::unordered_map<Key, AeroResult, KeyHash> cache_;
    long long backend_calls_ = 0;
    long long hits_ = 0;
    std::mutex mutex_;
};

/// The airfoil MCMO problem: decision variables (mu_x, mu_y, beta, alpha),
/// condition Re_c in [1e5, 1e7] normalized in log10, objectives
/// (-(C_L/C_D)/100, -C_L).
class AirfoilProblem final : public MCMOProblem {
public:
    explicit AirfoilProblem(std::shared_ptr<AeroEvaluator> evaluator);

    const BoxSpace& decision_space() const override { return decision_; }
    const BoxSpace& condition_space() const override { return condition_; }
    int objective_count() const override { return 2; }
    std::string name() const override;
    bool reentrant_evaluator() const override { return evaluator_->reentrant(); }

    AeroEvaluator& evaluator() { return *evaluator_; }

protected:
    std::optional<std::vector<double>> evaluate_impl(std::span<const double> x,
                                                     std::span<const double> c) override;

private:
    std::shared_ptr<AeroEvaluator> evaluator_;
    BoxSpace decision_;
    BoxSpace condition_;
};

}  // namespace mcmo
