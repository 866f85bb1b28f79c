#include "seqswarm/pareto.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

namespace seqswarm {

namespace {

bool nearly_equal(double a, double b) {
    return std::fabs(a - b) <= kObjectiveEqualityTolerance;
}

}  // namespace

bool dominates(const ObjectiveVector& a, const ObjectiveVector& b) {
    const bool priority_equal = nearly_equal(a.priority, b.priority);
    const bool cost_equal = nearly_equal(a.cost, b.cost);
    const bool priority_ge = priority_equal || a.priority > b.priority;
    const bool cost_le = cost_equal || a.cost < b.cost;
    const bool strictly_better =
        (!priority_equal && a.priority > b.priority) || (!cost_equal && a.cost < b.cost);
    return priority_ge && cost_le && strictly_better;
}

std::vector<std::size_t> non_dominated_indices(const std::vector<ObjectiveVector>& vs) {
    std::vector<std::size_t> result;
    for (std::size_t i = 0; i < vs.size(); ++i) {
        bool dominated = false;
        for (std::size_t j = 0; j < vs.size() && !dominated; ++j) {
            dominated = j != i && dominates(vs[j], vs[i]);
        }
        if (!dominated) result.push_back(i);
    }
    return result;
}

std::vector<ObjectiveVector> non_dominated_filter(const std::vector<ObjectiveVector>& vs) {
    std::vector<ObjectiveVector> result;
    for (std::size_t i : non_dominated_indices(vs)) result.push_back(vs[i]);
    return result;
}

std::vector<double> crowding_distances(const std::vector<ObjectiveVector>& vs) {
    const std::size_t n = vs.size();
    constexpr double inf = std::numeric_limits<double>::infinity();
    std::vector<double> distance(n, 0.0);
    if (n <= 2) {
        std::fill(distance.begin(), distance.end(), inf);
        return distance;
    }

    auto accumulate_axis = [&](auto key) {
        std::vector<std::size_t> order(n);
        std::iota(order.begin(), order.end(), 0);
        std::stable_sort(order.begin(), order.end(),
                         [&](std::size_t a, std::size_t b) { return key(vs[a]) < key(vs[b]); });
        const double span = key(vs[order.back()]) - key(vs[order.front()]);
        distance[order.front()] = inf;
        distance[order.back()] = inf;
        if (span <= 0.0) return;
        for (std::size_t k = 1; k + 1 < n; ++k) {
            if (std::isinf(distance[order[k]])) continue;
            distance[order[k]] +=
                (key(vs[order[k + 1]]) - key(vs[order[k - 1]])) / span;
        }
    };
    accumulate_axis([](const ObjectiveVector& v) { return v.priority; });
    accumulate_axis([](const ObjectiveVector& v) { return v.cost; });
    return distance;
}

std::vector<ObjectiveVector> ParetoArchive::objective_vectors() const {
    std::vector<ObjectiveVector> vs;
    vs.reserve(entries_.size());
    for (const ArchiveEntry& e : entries_) vs.push_back(e.objectives);
    return vs;
}

void ParetoArchive::clear() {
    entries_.clear();
    next_age_ = 0;
}

bool ParetoArchive::insert(TestSequence sequence, const ObjectiveVector& objectives) {
    for (const ArchiveEntry& entry : entries_) {
        if (entry.sequence == sequence) return false;
        if (dominates(entry.objectives, objectives)) return false;
    }
    std::erase_if(entries_,
                  [&](const ArchiveEntry& e) { return dominates(objectives, e.objectives); });
    entries_.push_back({std::move(sequence), objectives, next_age_++});

    if (entries_.size() > capacity_) {
        // Evict from the densest region; ties go to the oldest entry.
        const auto distance = crowding_distances(objective_vectors());
        std::size_t victim = 0;
        for (std::size_t i = 1; i < entries_.size(); ++i) {
            if (distance[i] < distance[victim] ||
                (distance[i] == distance[victim] && entries_[i].age < entries_[victim].age)) {
                victim = i;
            }
        }
        entries_.erase(entries_.begin() + static_cast<std::ptrdiff_t>(victim));
    }
    return true;
}

const ArchiveEntry& ParetoArchive::select_leader(RandomSource& rng) const {
    if (entries_.empty()) throw EmptyArchive();
    if (entries_.size() == 1) {
        (void)rng.next_unit();  // uniform draw count regardless of archive size
        return entries_.front();
    }

    auto weights = crowding_distances(objective_vectors());
    double max_finite = 0.0;
    for (double w : weights) {
        if (std::isfinite(w)) max_finite = std::max(max_finite, w);
    }
    // Boundary entries (infinite crowding) get twice the largest finite
    // weight; a degenerate all-boundary archive falls back to uniform.
    const double boundary_weight = max_finite > 0.0 ? 2.0 * max_finite : 1.0;
    for (double& w : weights) {
        if (!std::isfinite(w)) w = boundary_weight;
        w = std::max(w, 1e-12);
    }
    return entries_[pick_weighted(weights, rng)];
}

}  // namespace seqswarm
