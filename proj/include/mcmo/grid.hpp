#pragma once

#include <span>
#include <utility>

#include "mcmo/box_space.hpp"

namespace mcmo {

/// Partition of the condition space into N disjoint cells that cover it
/// exactly. Cells are equal-width slabs along the first condition dimension
/// in normalized coordinates, so a log10 axis is decomposed log-uniformly.
/// The upper boundary of the last cell is inclusive.
class DecompositionGrid {
public:
    DecompositionGrid(BoxSpace condition_space, int cells);

    int cell_count() const { return cells_; }
    const BoxSpace& space() const { return space_; }

    int cell_index(std::span<const double> c_raw) const;

    /// Raw-coordinate bounds of cell k along the decomposed dimension.
    std::pair<double, double> cell_bounds_raw(int k) const;

    /// Raw-coordinate midpoint (midpoint taken in normalized coordinates).
    double cell_midpoint_raw(int k) const;

private:
    BoxSpace space_;
    int cells_;
};

}  // namespace mcmo
