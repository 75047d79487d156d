// oracle.hpp — independent ground truth: direct simulation of the
// continuous-time (multi-)graph on the block labels, and exact enumeration
// of the (partition, surplus) law for tiny n.
#pragma once

#include <map>
#include <string>
#include <vector>

#include "coal/core.hpp"
#include "coal/stats.hpp"

namespace coal::oracle {

// Exact outcome law over canonical keys.
struct ExactLaw {
    std::map<std::string, double> probabilities;
};

// Iterates every edge subset of the complete graph on n <= 5 vertices, with
// edge {i,j} present with probability 1 - exp(-q x_i x_j). Keys follow
// stats::canonical_key. Throws TooLargeError for n > 5.
ExactLaw enumerate_exact_law(const WeightVector& x, double q, bool with_surplus = true);

// Samples every pairwise exponential clock once and reads the component
// partition plus per-component surplus at each probe (probes increasing).
std::vector<std::vector<stats::ComponentStat>> simulate_direct_graph(
    const WeightVector& x, Rng& rng, const std::vector<double>& probe_qs);

// Multi-graph event: a directed multi-edge or a self-loop (i == j).
struct MultiEdgeEvent {
    double t = 0.0;
    int i = 0;
    int j = 0;
};

// Poisson streams per ordered vertex pair at rate x_i x_j / 2 and per vertex
// at rate x_i^2 / 2, up to q_max, sorted by arrival time.
std::vector<MultiEdgeEvent> simulate_direct_multigraph(const WeightVector& x, Rng& rng,
                                                       double q_max);

// Connectivity of the multi-graph at time q (loops and multiplicity ignored).
std::vector<stats::ComponentStat> multigraph_partition_at(const std::vector<MultiEdgeEvent>& events,
                                                          int n, double q);

} // namespace coal::oracle
