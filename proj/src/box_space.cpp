#include "mcmo/box_space.hpp"

#include <cmath>
#include <stdexcept>

namespace mcmo {

namespace {

[[noreturn]] void fail_axis(const char* what, int axis, double value) {
    throw std::invalid_argument(std::string(what) + " at axis " +
                                std::to_string(axis) + " (value " +
                                std::to_string(value) + ")");
}

}  // namespace

BoxSpace::BoxSpace(std::vector<double> lower, std::vector<double> upper,
                   std::vector<AxisScale> scale)
    : lower_(std::move(lower)), upper_(std::move(upper)), scale_(std::move(scale)) {
    if (lower_.empty() || lower_.size() != upper_.size() || lower_.size() != scale_.size()) {
        throw std::invalid_argument("BoxSpace: bounds and scale sizes must match and be non-empty");
    }
    lo_coord_.resize(lower_.size());
    hi_coord_.resize(lower_.size());
    for (int i = 0; i < dim(); ++i) {
        if (!std::isfinite(lower_[i]) || !std::isfinite(upper_[i])) {
            fail_axis("BoxSpace: non-finite bound", i, lower_[i]);
        }
        if (!(lower_[i] < upper_[i])) {
            fail_axis("BoxSpace: lower bound must be below upper bound", i, lower_[i]);
        }
        if (scale_[i] == AxisScale::Log10) {
            if (!(lower_[i] > 0.0)) {
                fail_axis("BoxSpace: log10 axis requires a positive lower bound", i, lower_[i]);
            }
            lo_coord_[i] = std::log10(lower_[i]);
            hi_coord_[i] = std::log10(upper_[i]);
        } else {
            lo_coord_[i] = lower_[i];
            hi_coord_[i] = upper_[i];
        }
    }
}

BoxSpace BoxSpace::linear(std::vector<double> lower, std::vector<double> upper) {
    std::vector<AxisScale> scale(lower.size(), AxisScale::Linear);
    return BoxSpace(std::move(lower), std::move(upper), std::move(scale));
}

bool BoxSpace::contains(std::span<const double> raw) const {
    if (static_cast<int>(raw.size()) != dim()) return false;
    for (int i = 0; i < dim(); ++i) {
        if (!(raw[i] >= lower_[i] && raw[i] <= upper_[i])) return false;
    }
    return true;
}

double BoxSpace::normalize_axis(int axis, double raw) const {
    if (!(raw >= lower_[axis] && raw <= upper_[axis])) {
        fail_axis("normalize: value out of bounds", axis, raw);
    }
    const double coord = scale_[axis] == AxisScale::Log10 ? std::log10(raw) : raw;
    return 2.0 * (coord - lo_coord_[axis]) / (hi_coord_[axis] - lo_coord_[axis]) - 1.0;
}

double BoxSpace::denormalize_axis(int axis, double normalized) const {
    if (!(normalized >= -1.0 && normalized <= 1.0)) {
        fail_axis("denormalize: component outside [-1, 1]", axis, normalized);
    }
    const double coord =
        lo_coord_[axis] + 0.5 * (normalized + 1.0) * (hi_coord_[axis] - lo_coord_[axis]);
    double raw = scale_[axis] == AxisScale::Log10 ? std::pow(10.0, coord) : coord;
    // Guard against round-off drifting just past a bound.
    if (raw < lower_[axis]) raw = lower_[axis];
    if (raw > upper_[axis]) raw = upper_[axis];
    return raw;
}

std::vector<double> BoxSpace::normalize(std::span<const double> raw) const {
    if (static_cast<int>(raw.size()) != dim()) {
        throw std::invalid_argument("normalize: dimension mismatch");
    }
    std::vector<double> out(raw.size());
    for (int i = 0; i < dim(); ++i) out[i] = normalize_axis(i, raw[i]);
    return out;
}

std::vector<double> BoxSpace::denormalize(std::span<const double> normalized) const {
    if (static_cast<int>(normalized.size()) != dim()) {
        throw std::invalid_argument("denormalize: dimension mismatch");
    }
    std::vector<double> out(normalized.size());
    for (int i = 0; i < dim(); ++i) out[i] = denormalize_axis(i, normalized[i]);
    return out;
}

}  // namespace mcmo
