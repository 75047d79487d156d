#include "coal/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace coal::oracle {

namespace {

// Small union-find tracking component sizes and internal edge counts.
struct EdgeCountedForest {
    std::vector<int> parent;
    std::vector<int> size;
    std::vector<int> edges;

    explicit EdgeCountedForest(int n)
        : parent(static_cast<std::size_t>(n)), size(static_cast<std::size_t>(n), 1),
          edges(static_cast<std::size_t>(n), 0) {
        std::iota(parent.begin(), parent.end(), 0);
    }

    int find(int v) {
        while (parent[v] != v) {
            parent[v] = parent[parent[v]];
            v = parent[v];
        }
        return v;
    }

    void add_edge(int a, int b) {
        const int ra = find(a);
        const int rb = find(b);
        if (ra == rb) {
            ++edges[ra];
            return;
        }
        const int big = size[ra] >= size[rb] ? ra : rb;
        const int small = big == ra ? rb : ra;
        parent[small] = big;
        size[big] += size[small];
        edges[big] += edges[small] + 1;
    }

    std::vector<stats::ComponentStat> component_stats() {
        std::vector<stats::ComponentStat> out;
        for (int v = 0; v < static_cast<int>(parent.size()); ++v) {
            if (find(v) == v) {
                // surplus = edges - (size - 1)
                out.push_back({size[v], edges[v] - size[v] + 1});
            }
        }
        return out;
    }
};

} // namespace

ExactLaw enumerate_exact_law(const WeightVector& x, double q, bool with_surplus) {
    const int n = x.size();
    if (n > 5) {
        throw TooLargeError("exact enumeration supports n <= 5, got n = " + std::to_string(n));
    }
    std::vector<std::pair<int, int>> pairs;
    std::vector<double> p_edge;
    for (int i = 0; i < n; ++i) {
        for (int j = i + 1; j < n; ++j) {
            pairs.emplace_back(i, j);
            p_edge.push_back(-std::expm1(-q * x[i] * x[j]));
        }
    }
    const int m = static_cast<int>(pairs.size());
    ExactLaw law;
    for (std::uint32_t mask = 0; mask < (1u << m); ++mask) {
        double weight = 1.0;
        EdgeCountedForest forest(n);
        for (int e = 0; e < m; ++e) {
            if (mask & (1u << e)) {
                weight *= p_edge[e];
                forest.add_edge(pairs[e].first, pairs[e].second);
            } else {
                weight *= 1.0 - p_edge[e];
            }
        }
        law.probabilities[stats::canonical_key(forest.component_stats(), with_surplus)] += weight;
    }
    double total = 0.0;
    for (const auto& [key, p] : law.probabilities) total += p;
    if (std::abs(total - 1.0) > kEps) {
        throw std::logic_error("enumerated probabilities sum to " + std::to_string(total));
    }
    return law;
}

std::vector<std::vector<stats::ComponentStat>> simulate_direct_graph(
    const WeightVector& x, Rng& rng, const std::vector<double>& probe_qs) {
    const int n = x.size();
    struct Arrival {
        double t;
        int i, j;
    };
    std::vector<Arrival> arrivals;
    arrivals.reserve(static_cast<std::size_t>(n) * (n - 1) / 2);
    for (int i = 0; i < n; ++i) {
        for (int j = i + 1; j < n; ++j) {
            arrivals.push_back({rng.exponential(x[i] * x[j]), i, j});
        }
    }
    std::sort(arrivals.begin(), arrivals.end(),
              [](const Arrival& a, const Arrival& b) { return a.t < b.t; });

    std::vector<std::vector<stats::ComponentStat>> out;
    out.reserve(probe_qs.size());
    EdgeCountedForest forest(n);
    std::size_t next = 0;
    for (const double q : probe_qs) {
        while (next < arrivals.size() && arrivals[next].t <= q) {
            forest.add_edge(arrivals[next].i, arrivals[next].j);
            ++next;
        }
        out.push_back(forest.component_stats());
    }
    return out;
}

std::vector<MultiEdgeEvent> simulate_direct_multigraph(const WeightVector& x, Rng& rng,
                                                       double q_max) {
    if (!(q_max > 0.0)) {
        throw std::invalid_argument("q_max must be positive");
    }
    const int n = x.size();
    std::vector<MultiEdgeEvent> events;
    auto emit_stream = [&](double rate, int i, int j) {
        const long long count = rng.poisson(rate * q_max);
        for (long long c = 0; c < count; ++c) {
            events.push_back({q_max * (1.0 - rng.u01()), i, j});
        }
    };
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            if (i != j) emit_stream(0.5 * x[i] * x[j], i, j);
        }
    }
    for (int i = 0; i < n; ++i) {
        emit_stream(0.5 * x[i] * x[i], i, i);
    }
    std::sort(events.begin(), events.end(),
              [](const MultiEdgeEvent& a, const MultiEdgeEvent& b) { return a.t < b.t; });
    return events;
}

std::vector<stats::ComponentStat> multigraph_partition_at(const std::vector<MultiEdgeEvent>& events,
                                                          int n, double q) {
    EdgeCountedForest forest(n);
    for (const auto& ev : events) {
        if (ev.t > q) break;
        if (ev.i != ev.j) forest.add_edge(ev.i, ev.j);
    }
    return forest.component_stats();
}

} // namespace coal::oracle
