#ifndef SEQSWARM_PARETO_HPP
#define SEQSWARM_PARETO_HPP

#include <cstdint>
#include <stdexcept>
#include <vector>

#include "seqswarm/objectives.hpp"
#include "seqswarm/path_enum.hpp"
#include "seqswarm/random.hpp"

namespace seqswarm {

/// Objective components within this tolerance count as equal in dominance
/// decisions.
inline constexpr double kObjectiveEqualityTolerance = 1e-9;

/// a dominates b iff a is no worse in both objectives (priority maximized,
/// cost minimized) and strictly better in at least one.
bool dominates(const ObjectiveVector& a, const ObjectiveVector& b);

/// Indices of the elements not dominated by any other element, in input
/// order.
std::vector<std::size_t> non_dominated_indices(const std::vector<ObjectiveVector>& vs);

/// The elements not dominated by any other element, stable input order.
std::vector<ObjectiveVector> non_dominated_filter(const std::vector<ObjectiveVector>& vs);

/// NSGA-II style crowding distance per element; boundary elements get
/// infinity. Used for archive eviction and leader selection.
std::vector<double> crowding_distances(const std::vector<ObjectiveVector>& vs);

class EmptyArchive : public std::runtime_error {
public:
    EmptyArchive() : std::runtime_error("leader selection from an empty archive") {}
};

struct ArchiveEntry {
    TestSequence sequence;
    ObjectiveVector objectives;
    std::uint64_t age = 0;  // insertion counter, for eviction tie-breaks
};

/// Bounded set of mutually non-dominated (sequence, objectives) entries.
/// Invariants: no entry dominates another, sequences are unique,
/// size() <= capacity().
class ParetoArchive {
public:
    explicit ParetoArchive(std::size_t capacity = 100) : capacity_(capacity) {}

    std::size_t capacity() const { return capacity_; }
    std::size_t size() const { return entries_.size(); }
    bool empty() const { return entries_.empty(); }
    const std::vector<ArchiveEntry>& entries() const { return entries_; }
    std::vector<ObjectiveVector> objective_vectors() const;

    void clear();

    /// Rejects candidates that are dominated by an entry or repeat an entry's
    /// sequence; otherwise inserts and drops every entry the candidate
    /// dominates. Over capacity, evicts from the densest objective-space
    /// region (lowest crowding distance, ties to the oldest entry).
    /// Returns whether the candidate was inserted.
    bool insert(TestSequence sequence, const ObjectiveVector& objectives);

    /// Crowding-biased roulette: sparser regions are proportionally more
    /// likely. Consumes one draw. Throws EmptyArchive.
    const ArchiveEntry& select_leader(RandomSource& rng) const;

private:
    std::size_t capacity_;
    std::uint64_t next_age_ = 0;
    std::vector<ArchiveEntry> entries_;
};

}  // namespace seqswarm

#endif
