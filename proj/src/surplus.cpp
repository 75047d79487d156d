#include "coal/surplus.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>
#include <limits>
#include <set>
#include <stdexcept>

namespace coal::surplus {

namespace {

// Eligible later partners of a non-root h: ranks in (h, e] whose scaled
// clocks land inside h's pre-window (the interval right end just before h's
// own mass is appended).
struct EligibleRange {
    int first; // h + 1
    int last;  // inclusive; last < first when empty
    double window_sup;
};

EligibleRange eligible_partners(const walks::ExcursionDecomposition& decomposition,
                                const ClockAssignment& clocks,
                                const std::vector<double>& prefix, int h, double q) {
    for (const auto& exc : decomposition.excursions) {
        if (h < exc.first_rank || h > exc.last_rank) continue;
        if (h == exc.first_rank) {
            throw std::invalid_argument("rank is a root at this q");
        }
        const double sup_window = exc.start + (prefix[h] - prefix[exc.first_rank]);
        int last = h;
        while (last + 1 <= exc.last_rank && clocks.order_stats[last + 1] / q <= sup_window) {
            ++last;
        }
        return {h + 1, last, sup_window};
    }
    throw std::logic_error("rank not covered by any excursion");
}

std::vector<double> mass_prefix(const WeightVector& x, const ClockAssignment& clocks) {
    std::vector<double> prefix(static_cast<std::size_t>(clocks.size()) + 1, 0.0);
    for (int l = 0; l < clocks.size(); ++l) {
        prefix[l + 1] = prefix[l] + x[clocks.pi[l]];
    }
    return prefix;
}

} // namespace

GraphSnapshot surplus_snapshot_f0(const WeightVector& x, const ClockAssignment& clocks,
                                  double q, Rng& rng) {
    GraphSnapshot snapshot;
    snapshot.q = q;
    snapshot.spanning = forests::build_f0_snapshot(x, clocks, q);

    const auto decomposition = walks::decompose_excursions(x, clocks, q);
    const auto prefix = mass_prefix(x, clocks);
    for (const auto& exc : decomposition.excursions) {
        for (int h = exc.first_rank + 1; h <= exc.last_rank; ++h) {
            const auto range = eligible_partners(decomposition, clocks, prefix, h, q);
            for (int l = range.first; l <= range.last; ++l) {
                const double p = -std::expm1(-q * x[clocks.pi[l]] * x[clocks.pi[h]]);
                if (rng.u01() < p) {
                    snapshot.surplus_edges.emplace_back(h, l);
                }
            }
        }
    }
    return snapshot;
}

double cumulative_intensity_f0(const WeightVector& x, const ClockAssignment& clocks,
                               double q, int h) {
    const auto decomposition = walks::decompose_excursions(x, clocks, q);
    const auto prefix = mass_prefix(x, clocks);
    const auto range = eligible_partners(decomposition, clocks, prefix, h, q);

    double eligible_mass = 0.0;
    for (int l = range.first; l <= range.last; ++l) {
        eligible_mass += x[clocks.pi[l]];
    }
    const double sum_form = q * eligible_mass;

    const walks::WalkPath walk(x, clocks, q);
    const double walk_form = q * (walk.reflected(range.window_sup) - x[clocks.pi[h]]);
    if (std::abs(sum_form - walk_form) > kEps) {
        throw IdentityViolation("intensity(" + std::to_string(h) + ")",
                                std::abs(sum_form - walk_form));
    }
    return sum_form;
}

long long ActivationTable::finite_count() const {
    long long total = 0;
    for (const auto& entries : by_vertex) total += static_cast<long long>(entries.size());
    return total;
}

double ActivationTable::activation(int l, int j, int k) const {
    if (j == l && k == l) return 0.0; // self-loop processes run from the start
    for (const auto& e : by_vertex[l]) {
        if (e.j == j && e.k == k) return e.t;
    }
    return std::numeric_limits<double>::infinity();
}

ActivationTable activation_table(const walks::MergeSchedule& schedule) {
    ActivationTable table;
    table.n = schedule.n;
    table.by_vertex.resize(static_cast<std::size_t>(schedule.n));
    for (const auto& ev : schedule.events) {
        for (int l = ev.right_lo; l <= ev.right_hi; ++l) {
            table.by_vertex[l].push_back({l, ev.left_lo, ev.left_hi, ev.q_star});
        }
    }
    return table;
}

void validate_activation_stack(const ActivationTable& table) {
    for (int l = 0; l < table.n; ++l) {
        int expected_k = l - 1;
        for (const auto& e : table.by_vertex[l]) {
            if (e.l != l || e.k != expected_k || e.j > e.k || e.j < 0) {
                throw std::logic_error("activation stack broken at vertex " + std::to_string(l));
            }
            expected_k = e.j - 1;
        }
    }
}

namespace {

struct PendingArrival {
    double t;
    int source;
    int target;
    int j;
    int k;
};

} // namespace

SurplusEventLog sample_surplus_monotone(const WeightVector& x, const ClockAssignment& clocks,
                                        const ActivationTable& table,
                                        const forests::ForestState& f1, double q_max, Rng& rng,
                                        bool multigraph) {
    if (!(q_max > 0.0)) {
        throw std::invalid_argument("q_max must be positive");
    }
    const auto prefix = mass_prefix(x, clocks);

    std::vector<PendingArrival> arrivals;
    for (int l = 0; l < table.n; ++l) {
        for (const auto& entry : table.by_vertex[l]) {
            if (!(entry.t < q_max)) continue;
            const double range_mass = prefix[entry.k + 1] - prefix[entry.j];
            const double rate = x[clocks.pi[l]] * range_mass;
            const long long count = rng.poisson(rate * (q_max - entry.t));
            if (count == 0) continue;
            std::vector<double> times(static_cast<std::size_t>(count));
            for (auto& t : times) {
                t = entry.t + (q_max - entry.t) * (1.0 - rng.u01());
            }
            std::sort(times.begin(), times.end());
            for (const double t : times) {
                const double u = rng.u01() * range_mass;
                int target = entry.k;
                double acc = 0.0;
                for (int i = entry.j; i <= entry.k; ++i) {
                    acc += x[clocks.pi[i]];
                    if (u < acc) {
                        target = i;
                        break;
                    }
                }
                arrivals.push_back({t, l, target, entry.j, entry.k});
            }
        }
    }
    std::stable_sort(arrivals.begin(), arrivals.end(),
                     [](const PendingArrival& a, const PendingArrival& b) { return a.t < b.t; });

    SurplusEventLog log;
    if (multigraph) {
        for (const auto& a : arrivals) {
            log.events.push_back(
                {a.t, a.source, a.target, SurplusKind::multi_surplus, a.j, a.k});
        }
        // Self-loop processes, active from time 0.
        for (int l = 0; l < table.n; ++l) {
            const double mass = x[clocks.pi[l]];
            const long long count = rng.poisson(0.5 * mass * mass * q_max);
            std::vector<double> times(static_cast<std::size_t>(count));
            for (auto& t : times) t = q_max * (1.0 - rng.u01());
            std::sort(times.begin(), times.end());
            for (const double t : times) {
                log.events.push_back({t, l, l, SurplusKind::self_loop, l, l});
            }
        }
        std::stable_sort(
            log.events.begin(), log.events.end(),
            [](const SurplusEvent& a, const SurplusEvent& b) { return a.q < b.q; });
        return log;
    }

    // Simple mode: an arrival lands only if its edge does not already exist,
    // counting spanning edges arrived by then and earlier surplus edges.
    std::set<std::pair<int, int>> edges;
    std::size_t next_spanning = 0;
    for (const auto& a : arrivals) {
        while (next_spanning < f1.edges.size() &&
               f1.edges[next_spanning].arrival_q <= a.t) {
            const auto& e = f1.edges[next_spanning++];
            edges.emplace(std::min(e.child, e.parent), std::max(e.child, e.parent));
        }
        const auto key = std::make_pair(std::min(a.source, a.target),
                                        std::max(a.source, a.target));
        if (edges.insert(key).second) {
            log.events.push_back(
                {a.t, a.source, a.target, SurplusKind::simple_surplus, a.j, a.k});
        }
    }
    return log;
}

GraphProcess graph_process_g1(const WeightVector& x, Rng& rng, double q_max) {
    return graph_process_g1(x, sample_clocks(x, rng), rng, q_max);
}

GraphProcess graph_process_g1(const WeightVector& x, ClockAssignment clocks, Rng& rng,
                              double q_max) {
    auto schedule = walks::merge_schedule(x, clocks);
    auto f1 = forests::evolve_f1(x, clocks, schedule, rng);
    const auto table = activation_table(schedule);
    auto log = sample_surplus_monotone(x, clocks, table, f1, q_max, rng, false);
    return {std::move(clocks), std::move(schedule), std::move(f1), std::move(log), q_max};
}

std::vector<stats::ComponentStat> component_stats_at(const GraphProcess& process, double q) {
    if (q > process.q_max) {
        throw std::invalid_argument("process was only sampled up to q_max");
    }
    const auto ranges = forests::component_partition_at(process.schedule, q);
    std::vector<stats::ComponentStat> out;
    out.reserve(ranges.size());
    std::vector<int> range_of(static_cast<std::size_t>(process.schedule.n));
    for (std::size_t r = 0; r < ranges.size(); ++r) {
        out.push_back({ranges[r].second - ranges[r].first + 1, 0});
        for (int v = ranges[r].first; v <= ranges[r].second; ++v) {
            range_of[v] = static_cast<int>(r);
        }
    }
    for (const auto& ev : process.surplus.events) {
        if (ev.q <= q) ++out[range_of[ev.source]].surplus;
    }
    return out;
}

std::vector<stats::ComponentStat> component_stats(const GraphSnapshot& snapshot) {
    const auto ranges = forests::partition_from_edges(snapshot.spanning, snapshot.q);
    std::vector<stats::ComponentStat> out;
    out.reserve(ranges.size());
    std::vector<int> range_of(static_cast<std::size_t>(snapshot.spanning.n));
    for (std::size_t r = 0; r < ranges.size(); ++r) {
        out.push_back({ranges[r].second - ranges[r].first + 1, 0});
        for (int v = ranges[r].first; v <= ranges[r].second; ++v) {
            range_of[v] = static_cast<int>(r);
        }
    }
    for (const auto& [h, l] : snapshot.surplus_edges) {
        (void)l;
        ++out[range_of[h]].surplus;
    }
    return out;
}

} // namespace coal::surplus
