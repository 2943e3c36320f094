#include "mcmo/grid.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace mcmo {

DecompositionGrid::DecompositionGrid(BoxSpace condition_space, int cells)
    : space_(std::move(condition_space)), cells_(cells) {
    if (cells_ < 1) throw std::invalid_argument("DecompositionGrid: cell count must be >= 1");
}

int DecompositionGrid::cell_index(std::span<const double> c_raw) const {
    if (c_raw.empty()) throw std::invalid_argument("cell_index: empty condition");
    const double n0 = space_.normalize_axis(0, c_raw[0]);
    const double t = 0.5 * (n0 + 1.0);  // [0, 1]
    const int idx = static_cast<int>(std::floor(t * cells_));
    return std::clamp(idx, 0, cells_ - 1);
}

std::pair<double, double> DecompositionGrid::cell_bounds_raw(int k) const {
    if (k < 0 || k >= cells_) throw std::invalid_argument("cell_bounds_raw: cell out of range");
    const double n_lo = -1.0 + 2.0 * static_cast<double>(k) / cells_;
    const double n_hi = -1.0 + 2.0 * static_cast<double>(k + 1) / cells_;
    return {space_.denormalize_axis(0, n_lo), space_.denormalize_axis(0, n_hi)};
}

double DecompositionGrid::cell_midpoint_raw(int k) const {
    if (k < 0 || k >= cells_) throw std::invalid_argument("cell_midpoint_raw: cell out of range");
    const double n_mid = -1.0 + 2.0 * (static_cast<double>(k) + 0.5) / cells_;
    return space_.denormalize_axis(0, n_mid);
}

}  // namespace mcmo
