// forests.hpp — the two coupled spanning-forest representations: the
// per-q breadth-first snapshot forest and the monotone randomized edge
// stream. Vertices are ranks in size-biased order throughout.
#pragma once

#include <utility>
#include <vector>

#include "coal/core.hpp"
#include "coal/walks.hpp"

namespace coal::forests {

struct ForestEdge {
    int child = 0;
    int parent = 0;       // earlier rank than child
    double arrival_q = 0; // merge time for the edge stream, snapshot q otherwise
};

struct ForestState {
    int n = 0;
    std::vector<ForestEdge> edges;

    std::vector<int> parent_of() const; // -1 for roots
    std::vector<int> roots() const;
};

// Snapshot forest at fixed q: each vertex's children are the later ranks
// whose scaled clocks land in its listening window. One tree per excursion,
// rooted at the excursion's first carried rank. Recomputed per q; the
// snapshot process is not monotone.
ForestState build_f0_snapshot(const WeightVector& x, const ClockAssignment& clocks, double q);

// Monotone edge stream: at each merge event the right root attaches to a
// size-biased vertex of the left range. One RNG draw per event, in event
// order. Edges are only ever added.
ForestState evolve_f1(const WeightVector& x, const ClockAssignment& clocks,
                      const walks::MergeSchedule& schedule, Rng& rng);

// Ordered contiguous rank ranges after applying all events with q_star <= q.
std::vector<std::pair<int, int>> component_partition_at(const walks::MergeSchedule& schedule,
                                                        double q);

// Ordered contiguous rank ranges spanned by edges with arrival_q <= q.
// Throws if the edges do not connect contiguous rank ranges.
std::vector<std::pair<int, int>> partition_from_edges(const ForestState& forest, double q);

} // namespace coal::forests
