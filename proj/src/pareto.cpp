#include "mcmo/pareto.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace mcmo {

bool ParetoFront2D::insert(double f1, double f2, long episode, int record_index) {
    if (!std::isfinite(f1) || !std::isfinite(f2)) {
        throw std::invalid_argument("ParetoFront2D::insert: non-finite objectives");
    }
    auto pos = std::lower_bound(entries_.begin(), entries_.end(), f1,
                                [](const Entry& e, double v) { return e.f1 < v; });
    if (pos != entries_.begin() && (pos - 1)->f2 <= f2) {
        return false;  // dominated by the predecessor (strictly smaller f1)
    }
    if (pos != entries_.end() && pos->f1 == f1 && pos->f2 <= f2) {
        return false;  // dominated, or an objective-space duplicate
    }
    auto last = pos;
    while (last != entries_.end() && last->f2 >= f2) ++last;  // now dominated
    if (pos != last) {
        *pos = Entry{f1, f2, episode, record_index};
        entries_.erase(pos + 1, last);
    } else {
        entries_.insert(pos, Entry{f1, f2, episode, record_index});
    }
    return true;
}

double ParetoFront2D::hypervolume(std::array<double, 2> reference) const {
    double hv = 0.0;
    const double ref1 = reference[0], ref2 = reference[1];
    // Entries are strictly increasing in f1 and strictly decreasing in f2.
    for (std::size_t i = 0; i < entries_.size(); ++i) {
        const Entry& e = entries_[i];
        if (e.f1 >= ref1 || e.f2 >= ref2) continue;
        double next_x = ref1;
        if (i + 1 < entries_.size() && entries_[i + 1].f1 < ref1) next_x = entries_[i + 1].f1;
        hv += (next_x - e.f1) * (ref2 - e.f2);
    }
    return hv;
}

double hypervolume_2d(std::span<const std::array<double, 2>> points,
                      std::array<double, 2> reference) {
    std::vector<std::array<double, 2>> pts;
    pts.reserve(points.size());
    for (const auto& p : points) {
        if (p[0] < reference[0] && p[1] < reference[1]) pts.push_back(p);
    }
    std::sort(pts.begin(), pts.end());
    double hv = 0.0;
    double min_f2 = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < pts.size(); ++i) {
        min_f2 = std::min(min_f2, pts[i][1]);
        const double next_x = i + 1 < pts.size() ? pts[i + 1][0] : reference[0];
        hv += (next_x - pts[i][0]) * (reference[1] - min_f2);
    }
    return hv;
}

namespace {

bool same_objectives(std::span<const double> a, std::span<const double> b) {
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i] != b[i]) return false;
    }
    return true;
}

}  // namespace

ParetoFront select_front(const std::vector<EvaluationRecord>& records,
                         const DecompositionGrid& grid, int cell) {
    ParetoFront front;
    front.cell = cell;

    int m = 0;
    for (const auto& r : records) {
        if (!r.failed) {
            m = static_cast<int>(r.objectives.size());
            break;
        }
    }
    if (m == 0) return front;

    if (m == 2) {
        ParetoFront2D staircase;
        for (int i = 0; i < static_cast<int>(records.size()); ++i) {
            const auto& r = records[i];
            if (r.failed || grid.cell_index(r.condition_raw) != cell) continue;
            staircase.insert(r.objectives[0], r.objectives[1], r.episode, i);
        }
        front.member_indices.reserve(staircase.size());
        for (const auto& e : staircase.entries()) front.member_indices.push_back(e.record_index);
        return front;
    }

    // Generic objective count: definitional filter in storage order.
    for (int i = 0; i < static_cast<int>(records.size()); ++i) {
        const auto& r = records[i];
        if (r.failed || grid.cell_index(r.condition_raw) != cell) continue;
        bool rejected = false;
        for (int j : front.member_indices) {
            const auto& other = records[j].objectives;
            if (same_objectives(other, r.objectives) || dominates(other, r.objectives)) {
                rejected = true;
                break;
            }
        }
        if (rejected) continue;
        std::erase_if(front.member_indices, [&](int j) {
            return dominates(r.objectives, records[j].objectives);
        });
        front.member_indices.push_back(i);
    }
    return front;
}

HVReport hv_avg_report(const std::vector<EvaluationRecord>& records,
                       const DecompositionGrid& grid, std::array<double, 2> reference) {
    HVReport report;
    report.reference = reference;
    report.per_cell.assign(grid.cell_count(), 0.0);

    std::vector<ParetoFront2D> fronts(grid.cell_count());
    for (const auto& r : records) {
        if (r.failed) continue;
        if (r.objectives.size() != 2) {
            throw std::invalid_argument("hv_avg_report: hypervolume requires two objectives");
        }
        fronts[grid.cell_index(r.condition_raw)].insert(r.objectives[0], r.objectives[1],
                                                        r.episode);
    }
    double total = 0.0;
    for (int k = 0; k < grid.cell_count(); ++k) {
        report.per_cell[k] = fronts[k].hypervolume(reference);
        total += report.per_cell[k];
    }
    report.hv_avg = total / grid.cell_count();
    return report;
}

std::optional<int> constrained_extract(const std::vector<EvaluationRecord>& records,
                                       const ParetoFront& front, int constraint_index,
                                       double bound, int target_index) {
    std::optional<int> best;
    for (int idx : front.member_indices) {
        const auto& f = records[idx].objectives;
        if (constraint_index < 0 || constraint_index >= static_cast<int>(f.size()) ||
            target_index < 0 || target_index >= static_cast<int>(f.size())) {
            throw std::invalid_argument("constrained_extract: objective index out of range");
        }
        if (f[constraint_index] > bound) continue;
        if (!best || f[target_index] < records[*best].objectives[target_index]) best = idx;
    }
    return best;
}

bool converged(std::span<const double> history, int window, double rel_tol) {
    if (window < 2) throw std::invalid_argument("converged: window must be >= 2");
    if (static_cast<int>(history.size()) < window) return false;
    double lo = std::numeric_limits<double>::infinity();
    double hi = -std::numeric_limits<double>::infinity();
    for (std::size_t i = history.size() - window; i < history.size(); ++i) {
        lo = std::min(lo, history[i]);
        hi = std::max(hi, history[i]);
    }
    return (hi - lo) <= rel_tol * hi;
}

}  // namespace mcmo
