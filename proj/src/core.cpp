#include "coal/core.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace coal {

Rng::Rng(std::uint64_t seed, std::uint64_t stream_id)
    : seed_(seed), stream_id_(stream_id) {
    std::seed_seq seq{static_cast<std::uint32_t>(seed & 0xffffffffu),
                      static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(stream_id & 0xffffffffu),
                      static_cast<std::uint32_t>(stream_id >> 32)};
    engine_.seed(seq);
}

std::uint64_t Rng::next_u64() {
    return engine_();
}

double Rng::u01() {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
}

double Rng::exponential(double rate) {
    if (!(rate > 0.0)) {
        throw std::invalid_argument("exponential rate must be positive");
    }
    double u = u01();
    while (u == 0.0) u = u01();
    return -std::log1p(-u) / rate;
}

double Rng::normal() {
    if (has_spare_normal_) {
        has_spare_normal_ = false;
        return spare_normal_;
    }
    double u1 = u01();
    while (u1 == 0.0) u1 = u01();
    const double u2 = u01();
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double theta = 2.0 * M_PI * u2;
    spare_normal_ = r * std::sin(theta);
    has_spare_normal_ = true;
    return r * std::cos(theta);
}

long long Rng::poisson(double mean) {
    if (mean <= 0.0) return 0;
    // Knuth's product method; split large means so exp(-mean) stays normal.
    if (mean > 500.0) {
        const double half = mean / 2.0;
        return poisson(half) + poisson(mean - half);
    }
    const double limit = std::exp(-mean);
    long long k = 0;
    double p = 1.0;
    do {
        ++k;
        p *= u01();
    } while (p > limit);
    return k - 1;
}

WeightVector::WeightVector(std::vector<double> masses) : masses_(std::move(masses)) {
    if (masses_.empty()) {
        throw std::invalid_argument("weight vector must hold at least one block");
    }
    for (std::size_t i = 0; i < masses_.size(); ++i) {
        if (!(masses_[i] > 0.0) || !std::isfinite(masses_[i])) {
            throw std::invalid_argument("block masses must be finite and strictly positive");
        }
        if (i > 0 && masses_[i] > masses_[i - 1]) {
            throw std::invalid_argument("block masses must be nonincreasing");
        }
    }
    total_ = std::accumulate(masses_.begin(), masses_.end(), 0.0);
}

WeightVector WeightVector::uniform(int n, double mass) {
    return WeightVector(std::vector<double>(static_cast<std::size_t>(n), mass));
}

WeightVector ordered(std::vector<double> masses) {
    std::sort(masses.begin(), masses.end(), std::greater<double>());
    return WeightVector(std::move(masses));
}

ClockAssignment::ClockAssignment(std::vector<double> xi_values) : xi(std::move(xi_values)) {
    const int n = static_cast<int>(xi.size());
    if (n == 0) {
        throw std::invalid_argument("clock assignment needs at least one clock");
    }
    for (double v : xi) {
        if (!(v > 0.0) || !std::isfinite(v)) {
            throw std::invalid_argument("clocks must be finite and strictly positive");
        }
    }
    pi.resize(xi.size());
    std::iota(pi.begin(), pi.end(), 0);
    std::sort(pi.begin(), pi.end(), [&](int a, int b) { return xi[a] < xi[b]; });
    order_stats.resize(xi.size());
    rank_of_.resize(xi.size());
    for (int l = 0; l < n; ++l) {
        order_stats[l] = xi[pi[l]];
        rank_of_[pi[l]] = l;
        if (l > 0 && order_stats[l] == order_stats[l - 1]) {
            throw TieError("tied clock values at rank " + std::to_string(l));
        }
    }
}

ClockAssignment sample_clocks(const WeightVector& x, Rng& rng) {
    std::vector<double> xi(static_cast<std::size_t>(x.size()));
    for (int i = 0; i < x.size(); ++i) {
        xi[i] = rng.exponential(x[i]);
    }
    return ClockAssignment(std::move(xi));
}

std::vector<double> size_biased_masses(const WeightVector& x, const ClockAssignment& clocks) {
    std::vector<double> out(clocks.pi.size());
    for (std::size_t l = 0; l < clocks.pi.size(); ++l) {
        out[l] = x[clocks.pi[l]];
    }
    return out;
}

} // namespace coal
