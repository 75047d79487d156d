#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <limits>
#include <set>

#include "coal/core.hpp"
#include "coal/forests.hpp"
#include "coal/json_io.hpp"
#include "coal/oracle.hpp"
#include "coal/stats.hpp"
#include "coal/surplus.hpp"
#include "coal/walks.hpp"

using namespace coal;
using namespace coal::surplus;

namespace {

const WeightVector kX({3.0, 1.0});
const ClockAssignment kClocks({0.2, 5.0});
const double kLn2 = 0.6931471805599453;

WeightVector random_instance(Rng& rng, int n) {
    std::vector<double> masses(static_cast<std::size_t>(n));
    for (auto& m : masses) m = 0.1 * std::pow(20.0, rng.u01());
    return ordered(std::move(masses));
}

} // namespace

TEST_CASE("two vertices never carry a surplus edge") {
    for (int r = 0; r < 200; ++r) {
        Rng rng(50, static_cast<std::uint64_t>(r));
        const auto snap = surplus_snapshot_f0(kX, kClocks, 2.0, rng);
        CHECK(snap.surplus_edges.empty());
    }
}

TEST_CASE("snapshot law at fixed q matches the exact enumeration") {
    const auto x = WeightVector::uniform(3);
    const auto exact = oracle::enumerate_exact_law(x, kLn2);

    const long long n_rep = 40000;
    auto law = stats::run_replicates<stats::EmpiricalLaw>(
        61, n_rep, 0, [&](stats::EmpiricalLaw& acc, Rng& rng, long long) {
            const auto clocks = sample_clocks(x, rng);
            const auto snap = surplus_snapshot_f0(x, clocks, kLn2, rng);
            acc.add(stats::canonical_key(component_stats(snap)));
        });

    const auto res = stats::chi_square_gof(law, exact.probabilities);
    CHECK(res.p_value > 1e-3);

    // The fully connected triangle (size 3, surplus 1) has probability 1/8.
    const double freq =
        static_cast<double>(law.counts.count("3s1") ? law.counts.at("3s1") : 0) / n_rep;
    const double sigma = std::sqrt(0.125 * 0.875 / n_rep);
    CHECK(std::abs(freq - 0.125) < 4 * sigma);
}

TEST_CASE("snapshot law with unequal masses matches the enumeration") {
    const auto x = WeightVector({2.0, 1.0, 1.0});
    const double q = 0.5;
    const auto exact = oracle::enumerate_exact_law(x, q);
    auto law = stats::run_replicates<stats::EmpiricalLaw>(
        66, 30000, 0, [&](stats::EmpiricalLaw& acc, Rng& rng, long long) {
            const auto clocks = sample_clocks(x, rng);
            const auto snap = surplus_snapshot_f0(x, clocks, q, rng);
            acc.add(stats::canonical_key(component_stats(snap)));
        });
    const auto res = stats::chi_square_gof(law, exact.probabilities);
    CHECK(res.p_value > 1e-3);
}

TEST_CASE("event log serializes to the documented JSON shape") {
    Rng rng(67);
    const auto process = graph_process_g1(WeightVector::uniform(4), rng, 2.5);
    const nlohmann::json out = process.surplus;
    for (const auto& ev : out["events"]) {
        CHECK(ev.contains("q"));
        CHECK(ev.contains("src"));
        CHECK(ev.contains("dst"));
        CHECK(ev["kind"] == "surplus");
    }
}

TEST_CASE("surplus partners are same or next generation, never a tree edge") {
    for (int rep = 0; rep < 30; ++rep) {
        Rng rng(70 + rep);
        const auto x = random_instance(rng, 16);
        const auto clocks = sample_clocks(x, rng);
        const double q = 1.5;
        const auto snap = surplus_snapshot_f0(x, clocks, q, rng);
        const auto parents = snap.spanning.parent_of();

        std::vector<int> depth(16, 0);
        for (int v = 0; v < 16; ++v) {
            if (parents[v] != -1) depth[v] = depth[parents[v]] + 1;
        }
        std::set<std::pair<int, int>> spanning;
        for (const auto& e : snap.spanning.edges) {
            spanning.emplace(std::min(e.child, e.parent), std::max(e.child, e.parent));
        }
        for (const auto& [h, l] : snap.surplus_edges) {
            CHECK(h < l);
            CHECK(parents[h] != -1);
            CHECK((depth[l] == depth[h] || depth[l] == depth[h] + 1));
            CHECK(spanning.count({h, l}) == 0);
        }
    }
}

TEST_CASE("cumulative intensity: both evaluations agree") {
    SUBCASE("worked instance: nothing left to watch") {
        CHECK(cumulative_intensity_f0(kX, kClocks, 2.0, 1) == doctest::Approx(0.0));
    }
    SUBCASE("roots are rejected") {
        CHECK_THROWS_AS(cumulative_intensity_f0(kX, kClocks, 2.0, 0), std::invalid_argument);
        CHECK_THROWS_AS(cumulative_intensity_f0(kX, kClocks, 1.0, 1), std::invalid_argument);
    }
    SUBCASE("random instances: the walk form is checked internally") {
        for (int rep = 0; rep < 30; ++rep) {
            Rng rng(500 + rep);
            const auto x = random_instance(rng, 20);
            const auto clocks = sample_clocks(x, rng);
            const double q = 0.4 + 2.0 * rng.u01();
            const auto f0 = forests::build_f0_snapshot(x, clocks, q);
            const auto parents = f0.parent_of();
            for (int h = 0; h < 20; ++h) {
                if (parents[h] == -1) continue;
                // Throws IdentityViolation if the sum and walk forms split.
                CHECK(cumulative_intensity_f0(x, clocks, q, h) >= 0.0);
            }
        }
    }
}

TEST_CASE("activation table of the worked instance") {
    const auto table = activation_table(walks::merge_schedule(kX, kClocks));
    CHECK(table.finite_count() == 1);
    CHECK(table.activation(1, 0, 0) == doctest::Approx(1.6));
    CHECK(table.activation(0, 0, 0) == 0.0); // self-loop processes always run
    CHECK(table.activation(1, 1, 1) == 0.0);
    validate_activation_stack(table);
}

TEST_CASE("activation table pattern for three blocks") {
    // Merges ranks (0,1) first, then (0-1, 2): the later vertex activates
    // against the pair, never against the first block alone.
    const WeightVector x({2.0, 1.0, 1.0});
    const ClockAssignment clocks({0.1, 0.5, 5.0});
    const auto table = activation_table(walks::merge_schedule(x, clocks));
    CHECK(table.finite_count() == 2);
    CHECK(table.activation(1, 0, 0) == doctest::Approx(0.2));
    CHECK(table.activation(2, 0, 1) == doctest::Approx((5.0 - 0.1) / 3.0));
    CHECK(table.activation(2, 0, 0) == std::numeric_limits<double>::infinity());
    validate_activation_stack(table);

    SUBCASE("one block: only the self-loop process") {
        const WeightVector single({1.0});
        const ClockAssignment single_clock({0.3});
        const auto t = activation_table(walks::merge_schedule(single, single_clock));
        CHECK(t.finite_count() == 0);
        CHECK(t.activation(0, 0, 0) == 0.0);
    }
}

TEST_CASE("activation stacks stay contiguous on random schedules") {
    for (int rep = 0; rep < 25; ++rep) {
        Rng rng(820 + rep);
        const auto x = random_instance(rng, 30);
        const auto clocks = sample_clocks(x, rng);
        validate_activation_stack(activation_table(walks::merge_schedule(x, clocks)));
    }
}

TEST_CASE("monotone surplus sampling on the worked instance") {
    const auto schedule = walks::merge_schedule(kX, kClocks);
    const auto table = activation_table(schedule);

    SUBCASE("below the first merge: simple log empty, multigraph loops only") {
        const double q_max = 1.0;
        long long loops = 0;
        const long long n_rep = 100000;
        for (long long r = 0; r < n_rep; ++r) {
            Rng rng(91, static_cast<std::uint64_t>(r));
            const auto f1 = forests::evolve_f1(kX, kClocks, schedule, rng);
            const auto simple = sample_surplus_monotone(kX, kClocks, table, f1, q_max, rng, false);
            CHECK(simple.events.empty());
            Rng rng2(92, static_cast<std::uint64_t>(r));
            const auto multi = sample_surplus_monotone(kX, kClocks, table, f1, q_max, rng2, true);
            for (const auto& ev : multi.events) {
                CHECK(ev.kind == SurplusKind::self_loop);
                CHECK(ev.source == ev.target);
                if (ev.source == 0) ++loops;
            }
        }
        // Loop count of the mass-3 block ~ Poisson(9/2 q) per replicate.
        const double mean = 0.5 * 9.0 * q_max;
        const double sigma = std::sqrt(mean * n_rep);
        CHECK(std::abs(static_cast<double>(loops) - mean * n_rep) < 3 * sigma);
    }

    SUBCASE("arrival count of the activated process") {
        // rate 1*3 on (1.6, 2]: expectation 1.2 per replicate.
        const double q_max = 2.0;
        long long arrivals = 0;
        const long long n_rep = 100000;
        for (long long r = 0; r < n_rep; ++r) {
            Rng rng(93, static_cast<std::uint64_t>(r));
            const auto f1 = forests::evolve_f1(kX, kClocks, schedule, rng);
            const auto multi = sample_surplus_monotone(kX, kClocks, table, f1, q_max, rng, true);
            for (const auto& ev : multi.events) {
                if (ev.kind == SurplusKind::multi_surplus) {
                    CHECK(ev.source == 1);
                    CHECK(ev.target == 0);
                    CHECK(ev.q > 1.6);
                    CHECK(ev.q <= q_max);
                    ++arrivals;
                }
            }
        }
        const double mean = 1.2;
        const double sigma = std::sqrt(mean * n_rep);
        CHECK(std::abs(static_cast<double>(arrivals) - mean * n_rep) < 3 * sigma);
    }

    SUBCASE("mode contract: duplicates only in multigraph mode") {
        const double q_max = 5.0;
        bool saw_duplicate = false;
        for (long long r = 0; r < 50; ++r) {
            Rng simple_rng(94, static_cast<std::uint64_t>(r));
            const auto f1 = forests::evolve_f1(kX, kClocks, schedule, simple_rng);
            const auto simple =
                sample_surplus_monotone(kX, kClocks, table, f1, q_max, simple_rng, false);
            // The only possible pair duplicates the spanning edge.
            CHECK(simple.events.empty());

            Rng multi_rng(94, static_cast<std::uint64_t>(r));
            const auto f1b = forests::evolve_f1(kX, kClocks, schedule, multi_rng);
            const auto multi =
                sample_surplus_monotone(kX, kClocks, table, f1b, q_max, multi_rng, true);
            int pair_events = 0;
            for (const auto& ev : multi.events) {
                if (ev.kind == SurplusKind::multi_surplus) ++pair_events;
            }
            if (pair_events >= 1) saw_duplicate = true; // duplicates the spanning edge
        }
        CHECK(saw_duplicate);
    }
}

TEST_CASE("shared seed couples the simple and multigraph logs") {
    for (int rep = 0; rep < 25; ++rep) {
        Rng rng(7100 + rep);
        const auto x = random_instance(rng, 10);
        const auto clocks = sample_clocks(x, rng);
        const auto schedule = walks::merge_schedule(x, clocks);
        const auto table = activation_table(schedule);
        const double q_max = 2.5;

        Rng fa(7200 + rep), fb(7200 + rep);
        const auto f1a = forests::evolve_f1(x, clocks, schedule, fa);
        const auto f1b = forests::evolve_f1(x, clocks, schedule, fb);

        Rng sa(7300 + rep), sb(7300 + rep);
        const auto simple = sample_surplus_monotone(x, clocks, table, f1a, q_max, sa, false);
        const auto multi = sample_surplus_monotone(x, clocks, table, f1b, q_max, sb, true);

        // Replaying the dedup rule over the multigraph arrivals must
        // reproduce the simple log exactly.
        std::set<std::pair<int, int>> edges;
        std::size_t next_spanning = 0;
        std::vector<SurplusEvent> replay;
        for (const auto& ev : multi.events) {
            if (ev.kind == SurplusKind::self_loop) continue;
            while (next_spanning < f1a.edges.size() &&
                   f1a.edges[next_spanning].arrival_q <= ev.q) {
                const auto& e = f1a.edges[next_spanning++];
                edges.emplace(std::min(e.child, e.parent), std::max(e.child, e.parent));
            }
            if (edges.insert({std::min(ev.source, ev.target), std::max(ev.source, ev.target)})
                    .second) {
                replay.push_back(ev);
            }
        }
        REQUIRE(replay.size() == simple.events.size());
        for (std::size_t i = 0; i < replay.size(); ++i) {
            CHECK(replay[i].q == simple.events[i].q);
            CHECK(replay[i].source == simple.events[i].source);
            CHECK(replay[i].target == simple.events[i].target);
        }
    }
}

TEST_CASE("graph process: partition law of three unit blocks") {
    const auto x = WeightVector::uniform(3);
    const auto exact = oracle::enumerate_exact_law(x, kLn2, false);
    CHECK(exact.probabilities.at("1|1|1") == doctest::Approx(0.125));
    CHECK(exact.probabilities.at("2|1") == doctest::Approx(0.375));
    CHECK(exact.probabilities.at("3") == doctest::Approx(0.5));

    auto law = stats::run_replicates<stats::EmpiricalLaw>(
        62, 40000, 0, [&](stats::EmpiricalLaw& acc, Rng& rng, long long) {
            const auto process = graph_process_g1(x, rng, kLn2);
            acc.add(stats::canonical_key(component_stats_at(process, kLn2), false));
        });
    const auto res = stats::chi_square_gof(law, exact.probabilities);
    CHECK(res.p_value > 1e-3);
}

TEST_CASE("graph process: full snapshot law matches the enumeration") {
    // Exercises the dedup reading: surplus counts would drift if spanning
    // edges did not count as existing.
    const auto x = WeightVector::uniform(3);
    const double q = 1.2;
    const auto exact = oracle::enumerate_exact_law(x, q);
    auto law = stats::run_replicates<stats::EmpiricalLaw>(
        63, 40000, 0, [&](stats::EmpiricalLaw& acc, Rng& rng, long long) {
            const auto process = graph_process_g1(x, rng, q);
            acc.add(stats::canonical_key(component_stats_at(process, q)));
        });
    const auto res = stats::chi_square_gof(law, exact.probabilities);
    CHECK(res.p_value > 1e-3);
}

TEST_CASE("graph process: joint two-time law against the direct oracle") {
    const auto x = WeightVector::uniform(3);
    const double q1 = 0.3, q2 = 0.8;
    const long long n_rep = 20000;

    auto from_walks = stats::run_replicates<stats::EmpiricalLaw>(
        64, n_rep, 0, [&](stats::EmpiricalLaw& acc, Rng& rng, long long) {
            const auto process = graph_process_g1(x, rng, q2);
            acc.add(stats::joint_key(
                stats::canonical_key(component_stats_at(process, q1), false),
                stats::canonical_key(component_stats_at(process, q2), false)));
        });
    auto from_oracle = stats::run_replicates<stats::EmpiricalLaw>(
        65, n_rep, 0, [&](stats::EmpiricalLaw& acc, Rng& rng, long long) {
            const auto probes = oracle::simulate_direct_graph(x, rng, {q1, q2});
            acc.add(stats::joint_key(stats::canonical_key(probes[0], false),
                                     stats::canonical_key(probes[1], false)));
        });
    const auto res = stats::chi_square_homogeneity(from_walks, from_oracle);
    CHECK(res.p_value > 1e-3);
}

TEST_CASE("graph process: surplus log is monotone and within components") {
    for (int rep = 0; rep < 20; ++rep) {
        Rng rng(880 + rep);
        const auto x = random_instance(rng, 8);
        const auto process = graph_process_g1(x, rng, 3.0);
        CHECK(std::is_sorted(process.surplus.events.begin(), process.surplus.events.end(),
                             [](const SurplusEvent& a, const SurplusEvent& b) {
                                 return a.q < b.q;
                             }));
        for (const auto& ev : process.surplus.events) {
            CHECK(ev.kind == SurplusKind::simple_surplus);
            const auto ranges = forests::component_partition_at(process.schedule, ev.q);
            bool same_component = false;
            for (const auto& [lo, hi] : ranges) {
                if (ev.source >= lo && ev.source <= hi) {
                    same_component = ev.target >= lo && ev.target <= hi;
                }
            }
            CHECK(same_component);
        }
    }
}
