#pragma once

#include <array>
#include <optional>
#include <span>
#include <vector>

#include "mcmo/grid.hpp"
#include "mcmo/problem.hpp"

namespace mcmo {

/// Non-dominated set of bi-objective points maintained incrementally as a
/// staircase: entries sorted by f1 ascending with f2 strictly descending.
/// Objective-space duplicates are rejected, so the earliest insertion wins.
class ParetoFront2D {
public:
    struct Entry {
        double f1, f2;
        long episode;
        int record_index;
    };

    /// Returns true when the point joined the front (it may evict members it
    /// dominates); false when it was dominated or a duplicate.
    bool insert(double f1, double f2, long episode = 0, int record_index = -1);

    std::span<const Entry> entries() const { return entries_; }
    int size() const { return static_cast<int>(entries_.size()); }
    bool empty() const { return entries_.empty(); }

    /// Exact dominated area between the front and `reference`; members with
    /// any coordinate at or beyond the reference are ignored.
    double hypervolume(std::array<double, 2> reference) const;

private:
    std::vector<Entry> entries_;
};

/// Exactsweep hypervolume of an arbitrary bi-objective point set (the set
/// need not be mutually non-dominated).
double hypervolume_2d(std::span<const std::array<double, 2>> points,
                      std::array<double, 2> reference);

/// Per-cell Pareto front: indices into the record array it was selected from.
struct ParetoFront {
    int cell = -1;
    std::vector<int> member_indices;
};

/// Maximal non-dominated subset of the successful records whose condition
/// falls into `cell`. Records are processed in storage order and duplicates
/// in objective space keep the earliest episode. Works for any objective
/// count; the bi-objective path uses the staircase front.
ParetoFront select_front(const std::vector<EvaluationRecord>& records,
                         const DecompositionGrid& grid, int cell);

struct HVReport {
    std::vector<double> per_cell;
    double hv_avg = 0.0;
    std::array<double, 2> reference{};
};

/// Front selection plus hypervolume in every cell; HV_avg averages over ALL
/// cells, with empty cells contributing zero.
HVReport hv_avg_report(const std::vector<EvaluationRecord>& records,
                       const DecompositionGrid& grid, std::array<double, 2> reference);

/// Among front members with f[constraint] <= bound, the index (into
/// `records`) of the member minimizing f[target]. nullopt when no member is
/// feasible.
std::optional<int> constrained_extract(const std::vector<EvaluationRecord>& records,
                                       const ParetoFront& front, int constraint_index,
                                       double bound, int target_index);

/// Plateau test on a logged metric: true when max-min over the trailing
/// `window` values is within rel_tol * max.
bool converged(std::span<const double> history, int window, double rel_tol);

}  // namespace mcmo
