#pragma once

#include <span>
#include <string>
#include <vector>

namespace mcmo {

enum class AxisScale { Linear, Log10 };

/// Axis-aligned box with a per-dimension mapping to normalized coordinates.
/// Linear axes map affinely onto [-1, 1]; Log10 axes map affinely in
/// log10-space, which keeps quantities spanning several decades (e.g. a
/// Reynolds-number range) well conditioned for the networks.
class BoxSpace {
public:
    BoxSpace(std::vector<double> lower, std::vector<double> upper,
             std::vector<AxisScale> scale);

    /// All-linear convenience constructor.
    static BoxSpace linear(std::vector<double> lower, std::vector<double> upper);

    int dim() const { return static_cast<int>(lower_.size()); }
    double lower(int axis) const { return lower_[axis]; }
    double upper(int axis) const { return upper_[axis]; }
    AxisScale scale(int axis) const { return scale_[axis]; }

    /// True when every component lies within the (closed) bounds.
    bool contains(std::span<const double> raw) const;

    /// Raw -> [-1, 1] per axis. Throws std::invalid_argument naming the
    /// offending axis when a component is out of bounds.
    std::vector<double> normalize(std::span<const double> raw) const;

    /// [-1, 1] -> raw. Throws when a component falls outside [-1, 1].
    std::vector<double> denormalize(std::span<const double> normalized) const;

    double normalize_axis(int axis, double raw) const;
    double denormalize_axis(int axis, double normalized) const;

private:
    std::vector<double> lower_, upper_;
    std::vector<AxisScale> scale_;
    // Cached log10 bounds for Log10 axes (unused entries hold the raw bounds).
    std::vector<double> lo_coord_, hi_coord_;
};

}  // namespace mcmo
