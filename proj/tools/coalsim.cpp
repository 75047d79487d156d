// coalsim — reproducible experiments on the coupled graph representations:
// walk traces, forest consistency sweeps, mosaic identity verification,
// oracle comparisons, multigraph mean laws and continuum-limit sampling.
#include <CLI11.hpp>

#include <cmath>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "coal/core.hpp"
#include "coal/forests.hpp"
#include "coal/json_io.hpp"
#include "coal/mosaic.hpp"
#include "coal/oracle.hpp"
#include "coal/scaling.hpp"
#include "coal/stats.hpp"
#include "coal/surplus.hpp"
#include "coal/walks.hpp"

namespace {

using nlohmann::json;

constexpr int kExitPass = 0;
constexpr int kExitCheckFailed = 1;
constexpr int kExitConfigError = 2;

struct GlobalOpts {
    std::uint64_t seed = 12345;
    bool fresh_seed = false;
    int threads = 0;
    std::string out = "-";
    std::string format = "json";
};

std::vector<double> parse_double_list(const std::string& text) {
    std::vector<double> values;
    std::stringstream stream(text);
    std::string token;
    while (std::getline(stream, token, ',')) {
        std::size_t used = 0;
        const double v = std::stod(token, &used);
        if (used != token.size()) {
            throw std::invalid_argument("cannot parse number '" + token + "'");
        }
        values.push_back(v);
    }
    if (values.empty()) {
        throw std::invalid_argument("empty number list");
    }
    return values;
}

coal::WeightVector resolve_masses(const std::string& masses, int n) {
    if (masses == "unit") {
        if (n < 1) throw std::invalid_argument("--n must be >= 1 for unit masses");
        return coal::WeightVector::uniform(n);
    }
    if (masses == "n^-2/3") {
        if (n < 1) throw std::invalid_argument("--n must be >= 1 for n^-2/3 masses");
        return coal::WeightVector::uniform(n, std::pow(static_cast<double>(n), -2.0 / 3.0));
    }
    return coal::ordered(parse_double_list(masses));
}

int emit_report(const GlobalOpts& opts, json& report, bool pass) {
    report["pass"] = pass;
    const std::string text = report.dump(2) + "\n";
    if (opts.out == "-") {
        std::cout << text;
    } else {
        std::ofstream file(opts.out);
        if (!file) {
            std::cerr << "cannot open output file " << opts.out << "\n";
            return kExitConfigError;
        }
        file << text;
    }
    return pass ? kExitPass : kExitCheckFailed;
}

json base_report(const std::string& command, const GlobalOpts& opts) {
    json report;
    report["schema"] = "1";
    report["command"] = command;
    report["config"] = {{"seed", opts.seed},
                        {"threads", opts.threads},
                        {"format", opts.format}};
    return report;
}

// ---------------------------------------------------------------------------
// trace-walk

struct TraceWalkOpts {
    int n = 0;
    std::string masses = "unit";
    std::string probe_qs;
};

int run_trace_walk(const GlobalOpts& g, const TraceWalkOpts& o) {
    const auto x = resolve_masses(o.masses, o.n);
    const auto probes = parse_double_list(o.probe_qs);
    for (const double q : probes) {
        if (!(q > 0.0)) throw std::invalid_argument("probe q values must be positive");
    }
    coal::Rng rng(g.seed, 0);
    const auto clocks = coal::sample_clocks(x, rng);

    json report = base_report("trace-walk", g);
    report["config"]["n"] = x.size();
    report["config"]["masses"] = o.masses;
    report["config"]["probe_qs"] = probes;
    report["pi"] = clocks.pi;
    report["order_stats"] = clocks.order_stats;
    json traces = json::array();
    for (const double q : probes) {
        const coal::walks::WalkPath walk(x, clocks, q);
        json trace;
        trace["walk"] = walk;
        trace["decomposition"] = coal::walks::decompose_excursions(x, clocks, q);
        traces.push_back(trace);
    }
    report["traces"] = traces;
    return emit_report(g, report, true);
}

// ---------------------------------------------------------------------------
// simulate-forests

struct SimulateForestsOpts {
    int n = 20;
    std::string masses = "unit";
    long long replicates = 1000;
    int probe_count = 20;
};

int run_simulate_forests(const GlobalOpts& g, const SimulateForestsOpts& o) {
    const auto x = resolve_masses(o.masses, o.n);
    if (o.probe_count < 1) throw std::invalid_argument("--probe-count must be >= 1");

    struct Acc {
        long long replicates = 0;
        long long probes = 0;
        long long mismatches = 0;
        void merge(const Acc& other) {
            replicates += other.replicates;
            probes += other.probes;
            mismatches += other.mismatches;
        }
    };
    const auto acc = coal::stats::run_replicates<Acc>(
        g.seed, o.replicates, g.threads, [&](Acc& a, coal::Rng& rng, long long) {
            const auto clocks = coal::sample_clocks(x, rng);
            const auto schedule = coal::walks::merge_schedule(x, clocks);
            const auto f1 = coal::forests::evolve_f1(x, clocks, schedule, rng);
            const double top = schedule.events.empty()
                                   ? 1.0
                                   : schedule.events.back().q_star * 1.05;
            for (int p = 0; p < o.probe_count; ++p) {
                const double q = top * (p + 0.5) / o.probe_count;
                const auto from_schedule = coal::forests::component_partition_at(schedule, q);
                const auto from_f1 = coal::forests::partition_from_edges(f1, q);
                const auto from_f0 = coal::forests::partition_from_edges(
                    coal::forests::build_f0_snapshot(x, clocks, q), q);
                ++a.probes;
                if (from_schedule != from_f1 || from_schedule != from_f0) ++a.mismatches;
            }
            ++a.replicates;
        });

    json report = base_report("simulate-forests", g);
    report["config"]["n"] = x.size();
    report["config"]["masses"] = o.masses;
    report["config"]["replicates"] = o.replicates;
    report["config"]["probe_count"] = o.probe_count;
    report["checks"] = json::array({json{{"name", "partition-equality"},
                                         {"claim", "forest-partition-equality"},
                                         {"replicates", acc.replicates},
                                         {"probes", acc.probes},
                                         {"mismatches", acc.mismatches},
                                         {"pass", acc.mismatches == 0}}});
    return emit_report(g, report, acc.mismatches == 0);
}

// ---------------------------------------------------------------------------
// verify-mosaic

struct VerifyMosaicOpts {
    int n = 20;
    std::string masses;
    long long replicates = 1;
    std::string probe_qs = "0.5,1,2";
};

int run_verify_mosaic(const GlobalOpts& g, const VerifyMosaicOpts& o) {
    const auto probes = parse_double_list(o.probe_qs);
    for (const double q : probes) {
        if (!(q > 0.0)) throw std::invalid_argument("probe q values must be positive");
    }

    double max_rate_disc = 0.0;
    double max_tiling_disc = 0.0;
    double max_intensity_disc = 0.0;
    std::string worst_process;
    bool pass = true;
    json failures = json::array();

    for (long long rep = 0; rep < o.replicates; ++rep) {
        coal::Rng rng(g.seed, static_cast<std::uint64_t>(rep));
        coal::WeightVector x = [&] {
            if (!o.masses.empty()) return resolve_masses(o.masses, o.n);
            // Fresh log-uniform instance per replicate.
            std::vector<double> masses(static_cast<std::size_t>(o.n));
            for (auto& m : masses) m = 0.1 * std::pow(30.0, rng.u01());
            return coal::ordered(std::move(masses));
        }();
        const auto clocks = coal::sample_clocks(x, rng);
        const auto table =
            coal::surplus::activation_table(coal::walks::merge_schedule(x, clocks));

        for (const double q : probes) {
            try {
                const auto idr = coal::mosaic::verify_rate_identity(x, clocks, table, q);
                if (idr.max_discrepancy > max_rate_disc) {
                    max_rate_disc = idr.max_discrepancy;
                    worst_process = idr.worst_process;
                }
            } catch (const coal::IdentityViolation& violation) {
                pass = false;
                failures.push_back({{"replicate", rep},
                                    {"q", q},
                                    {"process", violation.process_id},
                                    {"discrepancy", violation.discrepancy}});
                continue;
            }

            const coal::walks::WalkPath walk(x, clocks, q);
            const auto decomposition = coal::walks::decompose_excursions(x, clocks, q);
            double excursion_total = 0.0;
            double slice_total = 0.0;
            double intensity_total = 0.0;
            for (const auto& exc : decomposition.excursions) {
                excursion_total += coal::mosaic::excursion_area(walk, exc);
            }
            for (int l = 0; l < x.size(); ++l) {
                slice_total += coal::mosaic::slice_area(x, clocks, table, l, q);
                intensity_total += coal::mosaic::slice_intensity(x, clocks, table, l, q);
            }
            const double total = coal::mosaic::total_reflected_area(walk);
            max_tiling_disc = std::max({max_tiling_disc,
                                        std::abs(slice_total - excursion_total),
                                        std::abs(excursion_total - total)});
            max_intensity_disc =
                std::max(max_intensity_disc, std::abs(intensity_total - q * slice_total));
        }
    }
    pass = pass && max_rate_disc <= coal::kEps && max_tiling_disc <= coal::kEps &&
           max_intensity_disc <= coal::kEps;

    json report = base_report("verify-mosaic", g);
    report["config"]["n"] = o.n;
    report["config"]["masses"] = o.masses.empty() ? "log-uniform" : o.masses;
    report["config"]["replicates"] = o.replicates;
    report["config"]["probe_qs"] = probes;
    report["checks"] = json::array(
        {json{{"name", "rate-area-identity"},
              {"claim", "rate-area-identity"},
              {"max_discrepancy", max_rate_disc},
              {"worst_process", worst_process},
              {"pass", max_rate_disc <= coal::kEps}},
         json{{"name", "slice-tiling"},
              {"claim", "slice-tiling"},
              {"max_discrepancy", max_tiling_disc},
              {"pass", max_tiling_disc <= coal::kEps}},
         json{{"name", "vertex-intensity"},
              {"claim", "slice-intensity-identity"},
              {"max_discrepancy", max_intensity_disc},
              {"pass", max_intensity_disc <= coal::kEps}}});
    if (!failures.empty()) report["failures"] = failures;
    return emit_report(g, report, pass);
}

// ---------------------------------------------------------------------------
// compare-oracle

struct CompareOracleOpts {
    int n = 3;
    std::string masses = "unit";
    std::string probe_qs = "0.6931";
    long long replicates = 100000;
    std::string two_time;
    bool self_check = false;
    double alpha = 0.01;
};

int run_compare_oracle(const GlobalOpts& g, const CompareOracleOpts& o) {
    const auto x = resolve_masses(o.masses, o.n);
    const auto probes = parse_double_list(o.probe_qs);

    json checks = json::array();
    bool pass = true;
    std::uint64_t salt = 0;

    for (const double q : probes) {
        const auto exact = coal::oracle::enumerate_exact_law(x, q);
        const auto source = o.self_check ? "direct-graph" : "snapshot-graph";
        coal::stats::EmpiricalLaw law;
        if (o.replicates > 0) {
            law = coal::stats::run_replicates<coal::stats::EmpiricalLaw>(
                g.seed + salt, o.replicates, g.threads,
                [&](coal::stats::EmpiricalLaw& acc, coal::Rng& rng, long long) {
                    if (o.self_check) {
                        const auto probe_stats =
                            coal::oracle::simulate_direct_graph(x, rng, {q});
                        acc.add(coal::stats::canonical_key(probe_stats[0]));
                    } else {
                        const auto clocks = coal::sample_clocks(x, rng);
                        const auto snap =
                            coal::surplus::surplus_snapshot_f0(x, clocks, q, rng);
                        acc.add(coal::stats::canonical_key(
                            coal::surplus::component_stats(snap)));
                    }
                });
        }
        ++salt;
        json check{{"name", std::string(source) + "-law-at-q"},
                   {"claim", o.self_check ? "oracle-self-consistency" : "fixed-time-graph-law"},
                   {"q", q},
                   {"N", o.replicates},
                   {"alpha", o.alpha}};
        if (o.replicates > 0) {
            const auto res = coal::stats::chi_square_gof(law, exact.probabilities);
            check["statistic"] = res.statistic;
            check["dof"] = res.dof;
            check["p"] = res.p_value;
            check["pass"] = res.p_value > o.alpha;
            pass = pass && res.p_value > o.alpha;
        } else {
            check["pass"] = true; // dry run: config echo only
        }
        checks.push_back(check);
    }

    if (!o.two_time.empty() && o.replicates > 0) {
        const auto qs = parse_double_list(o.two_time);
        if (qs.size() != 2 || !(qs[0] < qs[1])) {
            throw std::invalid_argument("--two-time needs two increasing q values");
        }
        const auto from_walks = coal::stats::run_replicates<coal::stats::EmpiricalLaw>(
            g.seed + 1000003, o.replicates, g.threads,
            [&](coal::stats::EmpiricalLaw& acc, coal::Rng& rng, long long) {
                const auto process = coal::surplus::graph_process_g1(x, rng, qs[1]);
                acc.add(coal::stats::joint_key(
                    coal::stats::canonical_key(
                        coal::surplus::component_stats_at(process, qs[0]), false),
                    coal::stats::canonical_key(
                        coal::surplus::component_stats_at(process, qs[1]), false)));
            });
        const auto from_oracle = coal::stats::run_replicates<coal::stats::EmpiricalLaw>(
            g.seed + 1000033, o.replicates, g.threads,
            [&](coal::stats::EmpiricalLaw& acc, coal::Rng& rng, long long) {
                const auto probe_stats = coal::oracle::simulate_direct_graph(x, rng, qs);
                acc.add(coal::stats::joint_key(
                    coal::stats::canonical_key(probe_stats[0], false),
                    coal::stats::canonical_key(probe_stats[1], false)));
            });
        const auto res = coal::stats::chi_square_homogeneity(from_walks, from_oracle);
        checks.push_back({{"name", "joint-two-time-partition-law"},
                          {"claim", "process-graph-law"},
                          {"q1", qs[0]},
                          {"q2", qs[1]},
                          {"N", o.replicates},
                          {"alpha", o.alpha},
                          {"statistic", res.statistic},
                          {"dof", res.dof},
                          {"p", res.p_value},
                          {"pass", res.p_value > o.alpha}});
        pass = pass && res.p_value > o.alpha;
    }

    json report = base_report("compare-oracle", g);
    report["config"]["n"] = x.size();
    report["config"]["masses"] = o.masses;
    report["config"]["probe_qs"] = probes;
    report["config"]["replicates"] = o.replicates;
    report["config"]["two_time"] = o.two_time;
    report["config"]["self_check"] = o.self_check;
    report["config"]["alpha"] = o.alpha;
    report["checks"] = checks;
    return emit_report(g, report, pass);
}

// ---------------------------------------------------------------------------
// multigraph

struct MultigraphOpts {
    int n = 10;
    std::string masses = "unit";
    long long replicates = 10000;
    double q_max = 1.0;
};

int run_multigraph(const GlobalOpts& g, const MultigraphOpts& o) {
    const auto x = resolve_masses(o.masses, o.n);
    if (!(o.q_max > 0.0)) throw std::invalid_argument("--q-max must be positive");

    struct Acc {
        double observed = 0.0;
        double expected = 0.0;
        void merge(const Acc& other) {
            observed += other.observed;
            expected += other.expected;
        }
    };
    const auto acc = coal::stats::run_replicates<Acc>(
        g.seed, o.replicates, g.threads, [&](Acc& a, coal::Rng& rng, long long) {
            const auto clocks = coal::sample_clocks(x, rng);
            const auto schedule = coal::walks::merge_schedule(x, clocks);
            const auto f1 = coal::forests::evolve_f1(x, clocks, schedule, rng);
            const auto table = coal::surplus::activation_table(schedule);
            const auto log = coal::surplus::sample_surplus_monotone(x, clocks, table, f1,
                                                                    o.q_max, rng, true);
            a.observed += static_cast<double>(log.events.size());
            const coal::walks::WalkPath walk(x, clocks, o.q_max);
            for (const auto& exc :
                 coal::walks::decompose_excursions(x, clocks, o.q_max).excursions) {
                a.expected += o.q_max * coal::mosaic::excursion_area(walk, exc);
            }
        });

    const double sigma = std::sqrt(std::max(acc.expected, 1.0));
    const double z = (acc.observed - acc.expected) / sigma;
    const bool pass = std::abs(z) <= 3.0 || o.replicates == 0;

    json report = base_report("multigraph", g);
    report["config"]["n"] = x.size();
    report["config"]["masses"] = o.masses;
    report["config"]["replicates"] = o.replicates;
    report["config"]["q_max"] = o.q_max;
    report["checks"] = json::array({json{{"name", "surplus-count-mean"},
                                         {"claim", "multigraph-mean-law"},
                                         {"observed", acc.observed},
                                         {"expected", acc.expected},
                                         {"z", z},
                                         {"pass", pass}}});
    return emit_report(g, report, pass);
}

// ---------------------------------------------------------------------------
// scaling

struct ScalingOpts {
    double kappa = 1.0;
    double tau = 0.0;
    std::string c;
    double t = 0.0;
    double horizon = 10.0;
    double ds = 1e-3;
    long long paths = 1000;
    bool grid_check = false;
    int bridge_n = 0;
};

int run_scaling(const GlobalOpts& g, const ScalingOpts& o) {
    coal::scaling::ScalingParams params;
    params.kappa = o.kappa;
    params.tau = o.tau;
    params.t = o.t;
    params.horizon = o.horizon;
    params.ds = o.ds;
    if (!o.c.empty()) params.c = parse_double_list(o.c);
    params.validate();

    struct Acc {
        std::vector<coal::scaling::AugmentedState> states;
        void merge(const Acc& other) {
            states.insert(states.end(), other.states.begin(), other.states.end());
        }
    };
    const auto acc = coal::stats::run_replicates<Acc>(
        g.seed, o.paths, g.threads, [&](Acc& a, coal::Rng& rng, long long) {
            const auto path = coal::scaling::sample_continuum_path(params, rng);
            a.states.push_back(coal::scaling::extract_excursions_and_marks(path, rng));
        });

    json report = base_report("scaling", g);
    report["config"]["kappa"] = o.kappa;
    report["config"]["tau"] = o.tau;
    report["config"]["c"] = params.c;
    report["config"]["c_cube_sum"] = params.c_cube_sum();
    report["config"]["t"] = o.t;
    report["config"]["horizon"] = o.horizon;
    report["config"]["ds"] = o.ds;
    report["config"]["paths"] = o.paths;

    if (g.format == "csv") {
        std::ostringstream csv;
        csv << "path,truncated";
        for (int i = 1; i <= 10; ++i) csv << ",x" << i;
        for (int i = 1; i <= 10; ++i) csv << ",y" << i;
        csv << "\n";
        for (std::size_t p = 0; p < acc.states.size(); ++p) {
            const auto& state = acc.states[p];
            csv << p << "," << (state.truncated ? 1 : 0);
            for (std::size_t i = 0; i < 10; ++i) {
                csv << ",";
                if (i < state.lengths.size()) csv << state.lengths[i];
            }
            for (std::size_t i = 0; i < 10; ++i) {
                csv << ",";
                if (i < state.marks.size()) csv << state.marks[i];
            }
            csv << "\n";
        }
        if (g.out == "-") {
            std::cout << csv.str();
        } else {
            std::ofstream file(g.out);
            if (!file) {
                std::cerr << "cannot open output file " << g.out << "\n";
                return kExitConfigError;
            }
            file << csv.str();
        }
        return kExitPass;
    }

    bool pass = true;
    json checks = json::array();

    double mean_largest = 0.0;
    long long truncated = 0;
    for (const auto& state : acc.states) {
        if (!state.lengths.empty()) mean_largest += state.lengths[0];
        if (state.truncated) ++truncated;
    }
    if (!acc.states.empty()) mean_largest /= static_cast<double>(acc.states.size());
    report["mean_largest_excursion"] = mean_largest;
    report["truncated_paths"] = truncated;

    if (o.grid_check && o.paths > 0) {
        coal::scaling::ScalingParams fine = params;
        fine.ds = params.ds / 2.0;
        struct Pair {
            std::vector<double> fine, coarse;
            void merge(const Pair& other) {
                fine.insert(fine.end(), other.fine.begin(), other.fine.end());
                coarse.insert(coarse.end(), other.coarse.begin(), other.coarse.end());
            }
        };
        const auto pair = coal::stats::run_replicates<Pair>(
            g.seed + 77, o.paths, g.threads, [&](Pair& a, coal::Rng& rng, long long rep) {
                const auto fine_path = coal::scaling::sample_continuum_path(fine, rng);
                const auto coarse_path = coal::scaling::subsample(fine_path, 2);
                coal::Rng ma(g.seed + 78, static_cast<std::uint64_t>(rep));
                coal::Rng mb(g.seed + 78, static_cast<std::uint64_t>(rep));
                const auto fs = coal::scaling::extract_excursions_and_marks(fine_path, ma);
                const auto cs = coal::scaling::extract_excursions_and_marks(coarse_path, mb);
                a.fine.push_back(fs.lengths.empty() ? 0.0 : fs.lengths[0]);
                a.coarse.push_back(cs.lengths.empty() ? 0.0 : cs.lengths[0]);
            });
        const double d = coal::stats::ks_two_sample_d(pair.fine, pair.coarse);
        checks.push_back({{"name", "grid-refinement-stability"},
                          {"claim", "grid-stability"},
                          {"ks_distance", d},
                          {"threshold", 0.02},
                          {"pass", d < 0.02}});
        pass = pass && d < 0.02;
    }

    if (o.bridge_n > 0 && o.paths > 0) {
        const int n = o.bridge_n;
        const auto x =
            coal::WeightVector::uniform(n, std::pow(static_cast<double>(n), -2.0 / 3.0));
        const double q = std::cbrt(static_cast<double>(n)) + o.t;
        struct Sum {
            double total = 0.0;
            long long count = 0;
            void merge(const Sum& other) {
                total += other.total;
                count += other.count;
            }
        };
        const auto discrete = coal::stats::run_replicates<Sum>(
            g.seed + 99, o.paths, g.threads, [&](Sum& a, coal::Rng& rng, long long) {
                const auto clocks = coal::sample_clocks(x, rng);
                double largest = 0.0;
                for (const auto& exc :
                     coal::walks::decompose_excursions(x, clocks, q).excursions) {
                    largest = std::max(largest, exc.length);
                }
                a.total += largest;
                ++a.count;
            });
        const double discrete_mean = discrete.total / static_cast<double>(discrete.count);
        const double rel =
            std::abs(discrete_mean - mean_largest) / std::max(mean_largest, 1e-12);
        checks.push_back({{"name", "near-critical-bridge"},
                          {"claim", "scaling-bridge"},
                          {"bridge_n", n},
                          {"coalescent_q", q},
                          {"discrete_mean_largest", discrete_mean},
                          {"continuum_mean_largest", mean_largest},
                          {"relative_difference", rel},
                          {"threshold", 0.15},
                          {"pass", rel <= 0.15}});
        pass = pass && rel <= 0.15;
    }

    report["checks"] = checks;
    return emit_report(g, report, pass);
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"coupled graph representations of the multiplicative coalescent"};
    app.require_subcommand(1);
    app.fallthrough();

    GlobalOpts g;
    app.add_option("--seed", g.seed, "master seed")->capture_default_str();
    app.add_flag("--fresh-seed", g.fresh_seed, "draw the seed from the system entropy source");
    app.add_option("--threads", g.threads, "worker threads (0 = hardware)")
        ->capture_default_str();
    app.add_option("--out", g.out, "output path, - for stdout")->capture_default_str();
    app.add_option("--format", g.format, "json or csv")
        ->check(CLI::IsMember({"json", "csv"}))
        ->capture_default_str();

    TraceWalkOpts trace;
    auto* trace_cmd = app.add_subcommand("trace-walk", "dump walk, reflection and excursions");
    trace_cmd->add_option("--n", trace.n, "number of blocks");
    trace_cmd->add_option("--masses", trace.masses, "unit, n^-2/3 or a comma list")
        ->capture_default_str();
    trace_cmd->add_option("--probe-qs", trace.probe_qs, "comma list of q values")->required();

    SimulateForestsOpts forests;
    auto* forests_cmd = app.add_subcommand(
        "simulate-forests", "check partition equality across the representations");
    forests_cmd->add_option("--n", forests.n)->capture_default_str();
    forests_cmd->add_option("--masses", forests.masses)->capture_default_str();
    forests_cmd->add_option("--replicates", forests.replicates)->capture_default_str();
    forests_cmd->add_option("--probe-count", forests.probe_count)->capture_default_str();

    VerifyMosaicOpts mosaic;
    auto* mosaic_cmd = app.add_subcommand("verify-mosaic", "exact rate-area identity suite");
    mosaic_cmd->add_option("--n", mosaic.n)->capture_default_str();
    mosaic_cmd->add_option("--masses", mosaic.masses, "defaults to log-uniform per replicate");
    mosaic_cmd->add_option("--replicates", mosaic.replicates)->capture_default_str();
    mosaic_cmd->add_option("--probe-qs", mosaic.probe_qs)->capture_default_str();

    CompareOracleOpts oracle;
    auto* oracle_cmd =
        app.add_subcommand("compare-oracle", "statistical law comparisons against the oracle");
    oracle_cmd->add_option("--n", oracle.n)->capture_default_str();
    oracle_cmd->add_option("--masses", oracle.masses)->capture_default_str();
    oracle_cmd->add_option("--probe-qs", oracle.probe_qs)->capture_default_str();
    oracle_cmd->add_option("--replicates", oracle.replicates)->capture_default_str();
    oracle_cmd->add_option("--two-time", oracle.two_time, "q1,q2 joint partition comparison");
    oracle_cmd->add_flag("--self-check", oracle.self_check,
                         "compare the direct oracle against the enumeration");
    oracle_cmd->add_option("--alpha", oracle.alpha)->capture_default_str();

    MultigraphOpts multigraph;
    auto* multigraph_cmd = app.add_subcommand("multigraph", "multigraph mean-law suite");
    multigraph_cmd->add_option("--n", multigraph.n)->capture_default_str();
    multigraph_cmd->add_option("--masses", multigraph.masses)->capture_default_str();
    multigraph_cmd->add_option("--replicates", multigraph.replicates)->capture_default_str();
    multigraph_cmd->add_option("--q-max", multigraph.q_max)->capture_default_str();

    ScalingOpts scaling;
    auto* scaling_cmd = app.add_subcommand("scaling", "continuum sampler and bridge checks");
    scaling_cmd->add_option("--kappa", scaling.kappa)->capture_default_str();
    scaling_cmd->add_option("--tau", scaling.tau)->capture_default_str();
    scaling_cmd->add_option("--c", scaling.c, "comma list, nonincreasing");
    scaling_cmd->add_option("--t", scaling.t)->capture_default_str();
    scaling_cmd->add_option("--horizon", scaling.horizon)->capture_default_str();
    scaling_cmd->add_option("--ds", scaling.ds)->capture_default_str();
    scaling_cmd->add_option("--paths", scaling.paths)->capture_default_str();
    scaling_cmd->add_flag("--grid-check", scaling.grid_check, "verify ds vs ds/2 stability");
    scaling_cmd->add_option("--bridge-n", scaling.bridge_n,
                            "compare against the discrete system of this size");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kExitPass : kExitConfigError;
    }

    if (g.fresh_seed) {
        g.seed = std::random_device{}();
    }

    try {
        if (trace_cmd->parsed()) return run_trace_walk(g, trace);
        if (forests_cmd->parsed()) return run_simulate_forests(g, forests);
        if (mosaic_cmd->parsed()) return run_verify_mosaic(g, mosaic);
        if (oracle_cmd->parsed()) return run_compare_oracle(g, oracle);
        if (multigraph_cmd->parsed()) return run_multigraph(g, multigraph);
        if (scaling_cmd->parsed()) return run_scaling(g, scaling);
    } catch (const coal::TooLargeError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return kExitConfigError;
    } catch (const std::invalid_argument& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return kExitConfigError;
    } catch (const std::exception& e) {
        std::cerr << "check failed: " << e.what() << "\n";
        return kExitCheckFailed;
    }
    return kExitConfigError;
}
