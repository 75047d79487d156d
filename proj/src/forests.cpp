#include "coal/forests.hpp"

#include <algorithm>
#include <cassert>
#include <numeric>
#include <stdexcept>

namespace coal::forests {

std::vector<int> ForestState::parent_of() const {
    std::vector<int> parents(static_cast<std::size_t>(n), -1);
    for (const auto& e : edges) parents[e.child] = e.parent;
    return parents;
}

std::vector<int> ForestState::roots() const {
    const auto parents = parent_of();
    std::vector<int> out;
    for (int v = 0; v < n; ++v) {
        if (parents[v] == -1) out.push_back(v);
    }
    return out;
}

ForestState build_f0_snapshot(const WeightVector& x, const ClockAssignment& clocks, double q) {
    const auto decomposition = walks::decompose_excursions(x, clocks, q);
    const int n = clocks.size();

    // sup I_l within an excursion rooted at rank r is start + mass of [r, l].
    std::vector<double> prefix(static_cast<std::size_t>(n + 1), 0.0);
    for (int l = 0; l < n; ++l) prefix[l + 1] = prefix[l] + x[clocks.pi[l]];

    ForestState forest;
    forest.n = n;
    forest.edges.reserve(static_cast<std::size_t>(n));
    for (const auto& exc : decomposition.excursions) {
        const int r = exc.first_rank;
        for (int h = r + 1; h <= exc.last_rank; ++h) {
            const double jump_at = clocks.order_stats[h] / q;
            // Parent: smallest l in [r, h-1] whose window right end reaches jump_at.
            int lo = r, hi = h - 1;
            while (lo < hi) {
                const int mid = (lo + hi) / 2;
                const double sup_mid = exc.start + (prefix[mid + 1] - prefix[r]);
                if (sup_mid >= jump_at) {
                    hi = mid;
                } else {
                    lo = mid + 1;
                }
            }
            forest.edges.push_back({h, lo, q});
        }
    }
    return forest;
}

ForestState evolve_f1(const WeightVector& x, const ClockAssignment& clocks,
                      const walks::MergeSchedule& schedule, Rng& rng) {
    assert(schedule.n == clocks.size());
    ForestState forest;
    forest.n = schedule.n;
    forest.edges.reserve(schedule.events.size());
    for (const auto& ev : schedule.events) {
        // Size-biased parent pick over the left range.
        const double u = rng.u01() * ev.left_mass;
        int parent = ev.left_hi;
        double acc = 0.0;
        for (int l = ev.left_lo; l <= ev.left_hi; ++l) {
            acc += x[clocks.pi[l]];
            if (u < acc) {
                parent = l;
                break;
            }
        }
        forest.edges.push_back({ev.right_lo, parent, ev.q_star});
    }
    return forest;
}

std::vector<std::pair<int, int>> component_partition_at(const walks::MergeSchedule& schedule,
                                                        double q) {
    // Ranges stay contiguous, so tracking each range's end suffices.
    std::vector<int> hi_of(static_cast<std::size_t>(schedule.n));
    std::iota(hi_of.begin(), hi_of.end(), 0);
    std::vector<bool> is_lo(static_cast<std::size_t>(schedule.n), true);
    for (const auto& ev : schedule.events) {
        if (ev.q_star > q) break;
        hi_of[ev.left_lo] = ev.right_hi;
        is_lo[ev.right_lo] = false;
    }
    std::vector<std::pair<int, int>> out;
    for (int lo = 0; lo < schedule.n; ++lo) {
        if (is_lo[lo]) out.emplace_back(lo, hi_of[lo]);
    }
    return out;
}

std::vector<std::pair<int, int>> partition_from_edges(const ForestState& forest, double q) {
    std::vector<int> parent(static_cast<std::size_t>(forest.n));
    std::iota(parent.begin(), parent.end(), 0);
    std::vector<int> find_stack;
    auto find = [&](int v) {
        while (parent[v] != v) {
            parent[v] = parent[parent[v]];
            v = parent[v];
        }
        return v;
    };
    for (const auto& e : forest.edges) {
        if (e.arrival_q <= q) parent[find(e.child)] = find(e.parent);
    }
    std::vector<std::pair<int, int>> out;
    int lo = 0;
    for (int v = 1; v <= forest.n; ++v) {
        if (v == forest.n || find(v) != find(lo)) {
            out.emplace_back(lo, v - 1);
            lo = v;
        }
    }
    // Contiguity check: each scanned range must be exactly one component.
    std::vector<int> rep_seen(static_cast<std::size_t>(forest.n), 0);
    for (const auto& [a, b] : out) {
        const int rep = find(a);
        if (rep_seen[rep]++) throw std::logic_error("forest components are not contiguous");
        for (int v = a; v <= b; ++v) {
            if (find(v) != rep) throw std::logic_error("forest components are not contiguous");
        }
    }
    return out;
}

} // namespace coal::forests
