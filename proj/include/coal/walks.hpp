// walks.hpp — the simultaneous breadth-first walk, its reflection, the
// excursion decomposition at fixed q, and the event-driven merge schedule
// across q. All evaluations are exact piecewise-linear arithmetic.
#pragma once

#include <vector>

#include "coal/core.hpp"

namespace coal::walks {

// The walk at coalescent time q: unit negative drift with an upward jump of
// x_{pi[l]} at order_stats[l]/q. Evaluable exactly at any point, with left
// limits, together with its reflection above the running minimum.
class WalkPath {
public:
    WalkPath(const WeightVector& x, const ClockAssignment& clocks, double q);

    double q() const { return q_; }
    int jump_count() const { return static_cast<int>(jump_times_.size()); }
    double jump_time(int l) const { return jump_times_[l]; }
    double jump_size(int l) const { return jump_sizes_[l]; }
    const std::vector<double>& jump_times() const { return jump_times_; }
    const std::vector<double>& jump_sizes() const { return jump_sizes_; }

    // Where the reflected walk finally returns to zero.
    double domain_end() const { return domain_end_; }

    // Z at s (left limit on request).
    double value(double s, bool left_limit = false) const;

    // Z(jump_time(l) -), exact.
    double value_before_jump(int l) const;

    // B = Z - running infimum of Z.
    double reflected(double s, bool left_limit = false) const;
    double reflected_before_jump(int l) const;

private:
    double q_;
    std::vector<double> jump_times_;
    std::vector<double> jump_sizes_;
    std::vector<double> prefix_mass_; // prefix_mass_[l] = sum of jump sizes below rank l
    std::vector<double> min_before_;  // min_before_[l] = min over i < l of Z(jump_time(i)-)
    double domain_end_;
};

double eval_walk(const WeightVector& x, const ClockAssignment& clocks, double q,
                 double s, bool left_limit = false);
double reflect_walk(const WalkPath& walk, double s, bool left_limit = false);

// One excursion of the reflected walk: starts at the root's scaled clock,
// carries the contiguous rank range [first_rank, last_rank].
struct Excursion {
    double start = 0.0;
    double end = 0.0;
    double length = 0.0; // sum of carried masses
    int first_rank = 0;
    int last_rank = 0;
};

struct Interval {
    double start = 0.0;
    double end = 0.0;
};

struct ExcursionDecomposition {
    double q = 0.0;
    std::vector<Excursion> excursions;
    std::vector<Interval> gaps; // gaps[k] immediately precedes excursions[k]
};

// Runs the interval recursion at fixed q: the current interval grows by the
// next block's mass while the next scaled clock lands inside it, otherwise a
// new excursion opens.
ExcursionDecomposition decompose_excursions(const WeightVector& x,
                                            const ClockAssignment& clocks, double q);

// One merge of two adjacent rank ranges; the left range keeps its root.
struct MergeEvent {
    double q_star = 0.0;
    int left_root = 0; // == left_lo
    int left_lo = 0;
    int left_hi = 0;
    int right_lo = 0;
    int right_hi = 0;
    double left_mass = 0.0;
};

struct MergeSchedule {
    int n = 0;
    std::vector<MergeEvent> events; // q_star strictly increasing, n-1 events
};

// Event-driven sweep over q. The candidate merge time of adjacent components
// (left with root j and mass L, right starting at rank r) is
// (order_stats[r] - order_stats[j]) / L; the minimum candidate is always a
// real merge because new candidates strictly exceed the current q.
MergeSchedule merge_schedule(const WeightVector& x, const ClockAssignment& clocks);

} // namespace coal::walks
