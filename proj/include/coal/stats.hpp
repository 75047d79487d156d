// stats.hpp — turns "equal in law" claims into pass/fail machinery:
// canonical outcome keys, empirical counts, chi-square and KS tests,
// and a deterministic parallel replicate runner.
#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <string>
#include <thread>
#include <vector>

#include "coal/core.hpp"

namespace coal::stats {

// Size and surplus count of one connected component.
struct ComponentStat {
    int size = 0;
    int surplus = 0;
};

// Label-invariant outcome key: components sorted by size then surplus,
// descending. "3s1|1s0" with surplus, "3|1" without.
std::string canonical_key(std::vector<ComponentStat> comps, bool with_surplus = true);

// Key for a joint two-time outcome.
std::string joint_key(const std::string& first, const std::string& second);

struct EmpiricalLaw {
    std::map<std::string, long long> counts;
    long long total = 0;

    void add(const std::string& key, long long k = 1);
    void merge(const EmpiricalLaw& other);
};

struct GofResult {
    double statistic = 0.0;
    int dof = 0;
    double p_value = 1.0;
};

// Pearson goodness of fit against exact cell probabilities. Cells with
// expected count below min_expected are pooled into a tail cell. Throws
// UnsupportedOutcome if an observed key lies outside the expected support.
GofResult chi_square_gof(const EmpiricalLaw& empirical,
                         const std::map<std::string, double>& expected,
                         double min_expected = 5.0);

// Two-sample chi-square homogeneity test over the union of observed keys.
GofResult chi_square_homogeneity(const EmpiricalLaw& a, const EmpiricalLaw& b,
                                 double min_expected = 5.0);

struct KsResult {
    double d = 0.0;
    double p_approx = 1.0;
};

// One-sample two-sided Kolmogorov-Smirnov against a continuous CDF.
KsResult ks_two_sided(std::vector<double> samples, const std::function<double(double)>& cdf);

// Sup distance between two empirical CDFs.
double ks_two_sample_d(std::vector<double> a, std::vector<double> b);

// Upper tail of the chi-square distribution.
double chi_square_upper_tail(double statistic, int dof);

// Kolmogorov asymptotic tail Q(lambda) = 2 sum_j (-1)^{j-1} exp(-2 j^2 lambda^2).
double kolmogorov_q(double lambda);

// Collects raw real-valued samples across replicates.
struct SampleAccumulator {
    std::vector<double> values;
    void merge(const SampleAccumulator& other) {
        values.insert(values.end(), other.values.begin(), other.values.end());
    }
};

// Runs `replicates` independent replicates, replicate r drawing from
// Rng(seed, r). Work is fanned across threads in contiguous chunks and the
// chunk accumulators merge in stream order, so the result is identical for
// any thread count. Acc needs a default constructor and merge(const Acc&).
template <class Acc, class Body>
Acc run_replicates(std::uint64_t seed, long long replicates, int threads, Body body) {
    if (threads <= 0) {
        threads = static_cast<int>(std::thread::hardware_concurrency());
        if (threads <= 0) threads = 1;
    }
    if (static_cast<long long>(threads) > replicates) {
        threads = replicates > 0 ? static_cast<int>(replicates) : 1;
    }
    if (threads <= 1) {
        Acc acc{};
        for (long long r = 0; r < replicates; ++r) {
            Rng rng(seed, static_cast<std::uint64_t>(r));
            body(acc, rng, r);
        }
        return acc;
    }
    std::vector<Acc> parts(static_cast<std::size_t>(threads));
    std::vector<std::thread> workers;
    workers.reserve(static_cast<std::size_t>(threads));
    const long long chunk = (replicates + threads - 1) / threads;
    for (int w = 0; w < threads; ++w) {
        const long long lo = static_cast<long long>(w) * chunk;
        const long long hi = std::min(replicates, lo + chunk);
        workers.emplace_back([&, w, lo, hi]() {
            for (long long r = lo; r < hi; ++r) {
                Rng rng(seed, static_cast<std::uint64_t>(r));
                body(parts[static_cast<std::size_t>(w)], rng, r);
            }
        });
    }
    for (auto& t : workers) t.join();
    Acc acc{};
    for (auto& part : parts) acc.merge(part);
    return acc;
}

} // namespace coal::stats
