#pragma once

#include <mutex>
#include <string>
#include <vector>

#include "mcmo/airfoil.hpp"
#include "mcmo/airfoil_geometry.hpp"

namespace mcmo {

/// Settings for the external panel-solver process.
struct XfoilConfig {
    std::string binary;      // solver executable
    int n_points = 160;      // contour discretization written to the coordinate file
    double ncrit = 9.0;      // transition amplification factor
    int iter_limit = 100;    // viscous iteration limit
    long timeout_ms = 10000; // wall-clock limit per evaluation
    std::string workdir;     // session files live here (created on demand)
    bool keep_files = false; // keep per-session files for debugging
};

struct PolarPoint {
    double alpha = 0.0;
    double cl = 0.0;
    double cd = 0.0;
};

/// Line-oriented parse of a polar accumulation file: locates the header row
/// naming the alpha/CL/CD columns (or falls back to bare numeric rows),
/// tolerates leading whitespace and scientific notation. Throws
/// std::runtime_error with the offending line number on malformed content.
std::vector<PolarPoint> parse_polar(const std::string& text);

/// The scripted command session sent to the solver's standard input:
/// load coordinates, repanel, set viscous mode at the Reynolds number, set
/// the transition criterion and iteration limit, accumulate one polar point
/// at the requested angle of attack, quit.
std::string xfoil_command_script(const XfoilConfig& config, const std::string& coords_file,
                                 const std::string& polar_file, double alpha, double reynolds);

/// Runs one solver session for the geometry at (alpha, Re). Failure variants:
/// Timeout (process killed at the deadline), ProcessError (spawn failure or
/// nonzero exit), ParseError (missing/malformed polar), NonConverged (no
/// polar row for the requested alpha, or a nonpositive drag value).
AeroResult external_evaluate(const XfoilConfig& config, const AirfoilGeometry& geometry,
                             double alpha, double reynolds);

/// AeroEvaluator backed by the external solver; access to the process is
/// serialized, so the evaluator is not reentrant.
class XfoilEvaluator final : public AeroEvaluator {
public:
    explicit XfoilEvaluator(XfoilConfig config);

    AeroResult evaluate(const KTParams& params, double reynolds) override;
    bool reentrant() const override { return false; }
    std::string describe() const override { return "external"; }

    const XfoilConfig& config() const { return config_; }

private:
    XfoilConfig config_;
    std::mutex session_mutex_;
    long session_counter_ = 0;
};

}  // namespace mcmo
