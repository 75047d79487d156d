// surplus.hpp — surplus-edge constructions on top of the two forests: the
// per-q snapshot draw, the activated Poisson family driving the monotone
// graph process, and the multi-graph variant with self-loops.
#pragma once

#include <utility>
#include <vector>

#include "coal/core.hpp"
#include "coal/forests.hpp"
#include "coal/stats.hpp"
#include "coal/walks.hpp"

namespace coal::surplus {

// Snapshot graph at fixed q: the breadth-first forest plus surplus edges.
struct GraphSnapshot {
    double q = 0.0;
    forests::ForestState spanning;
    std::vector<std::pair<int, int>> surplus_edges; // rank pairs (h, l), h < l
};

// For every non-root rank h and every later rank whose scaled clock lands in
// h's pre-window, draws the surplus edge {h, l} with probability
// 1 - exp(-q x_{pi[l]} x_{pi[h]}), independently of everything else.
GraphSnapshot surplus_snapshot_f0(const WeightVector& x, const ClockAssignment& clocks,
                                  double q, Rng& rng);

// Total intensity of the surplus marking processes watched while h listens,
// computed as the eligible-mass sum and cross-checked against the reflected
// walk form q * (B(sup window) - x_{pi[h]}).
double cumulative_intensity_f0(const WeightVector& x, const ClockAssignment& clocks,
                               double q, int h);

// Activation of the surplus process (l; j-k): the merge at which the
// excursion carrying l joined one carrying exactly ranks [j, k].
struct ActivationEntry {
    int l = 0;
    int j = 0;
    int k = 0; // k < l
    double t = 0.0;
};

struct ActivationTable {
    int n = 0;
    // Entries per source rank, ascending in activation time. Self-loop
    // processes (l; l-l) are implicit with activation 0.
    std::vector<std::vector<ActivationEntry>> by_vertex;

    long long finite_count() const;
    // Activation time of (l; j-k); +infinity if that process never activates.
    double activation(int l, int j, int k) const;
};

ActivationTable activation_table(const walks::MergeSchedule& schedule);

// The stacked ranges of each vertex must tile [current root, l-1]
// contiguously from the top down; throws std::logic_error otherwise.
void validate_activation_stack(const ActivationTable& table);

enum class SurplusKind { simple_surplus, multi_surplus, self_loop };

struct SurplusEvent {
    double q = 0.0;
    int source = 0; // rank l
    int target = 0; // rank in [j, k]; == source for self-loops
    SurplusKind kind = SurplusKind::simple_surplus;
    int j = 0;
    int k = 0;
};

struct SurplusEventLog {
    std::vector<SurplusEvent> events; // ascending q
};

// Samples every activated process on (T, q_max]: Poisson counts at rate
// x_{pi[l]} * mass[j..k], uniform arrival times, size-biased targets. Simple
// mode discards arrivals whose edge already exists (spanning or surplus) at
// that instant; multigraph mode keeps every arrival and adds the self-loop
// processes at rate x^2/2. The parallelogram draws consume the stream in the
// same order in both modes, so a shared seed couples them.
SurplusEventLog sample_surplus_monotone(const WeightVector& x, const ClockAssignment& clocks,
                                        const ActivationTable& table,
                                        const forests::ForestState& f1, double q_max, Rng& rng,
                                        bool multigraph);

// The monotone graph process assembled end to end, sampled up to q_max.
struct GraphProcess {
    ClockAssignment clocks;
    walks::MergeSchedule schedule;
    forests::ForestState f1;
    SurplusEventLog surplus;
    double q_max = 0.0;
};

GraphProcess graph_process_g1(const WeightVector& x, Rng& rng, double q_max);
GraphProcess graph_process_g1(const WeightVector& x, ClockAssignment clocks, Rng& rng,
                              double q_max);

// Component (size, surplus count) statistics of the process at time q <= q_max.
std::vector<stats::ComponentStat> component_stats_at(const GraphProcess& process, double q);

// Component statistics of a fixed-q snapshot.
std::vector<stats::ComponentStat> component_stats(const GraphSnapshot& snapshot);

} // namespace coal::surplus
