// core.hpp — block mass vectors, exponential clocks, size-biased order, RNG streams.
#pragma once

#include <cstdint>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

namespace coal {

// Global tolerance for exact-identity assertions on doubles.
inline constexpr double kEps = 1e-9;

// Two clock or candidate values compared exactly equal. Probability zero under
// a healthy RNG; downstream identities require strict order, so this is fatal.
class TieError : public std::runtime_error {
public:
    explicit TieError(const std::string& what) : std::runtime_error(what) {}
};

class NotActiveError : public std::runtime_error {
public:
    explicit NotActiveError(const std::string& what) : std::runtime_error(what) {}
};

class IdentityViolation : public std::runtime_error {
public:
    IdentityViolation(const std::string& process, double discrepancy)
        : std::runtime_error("identity violated by process " + process +
                             ", discrepancy " + std::to_string(discrepancy)),
          process_id(process), discrepancy(discrepancy) {}
    std::string process_id;
    double discrepancy;
};

class UnsupportedOutcome : public std::runtime_error {
public:
    explicit UnsupportedOutcome(const std::string& key)
        : std::runtime_error("outcome outside expected support: " + key), key(key) {}
    std::string key;
};

class TooLargeError : public std::runtime_error {
public:
    explicit TooLargeError(const std::string& what) : std::runtime_error(what) {}
};

// Deterministic RNG stream. Identical (seed, stream_id) reproduce identical
// draws bit-for-bit; distinct stream_ids give independent replicate streams.
// All distributions are derived from raw engine words so that results do not
// depend on the standard library's distribution implementations.
class Rng {
public:
    explicit Rng(std::uint64_t seed, std::uint64_t stream_id = 0);

    std::uint64_t next_u64();

    // Uniform on [0,1) with 53 random bits.
    double u01();

    // Exponential with the given rate (strictly positive result).
    double exponential(double rate);

    // Standard normal (Box-Muller, cached pair).
    double normal();

    // Poisson with the given mean.
    long long poisson(double mean);

    std::uint64_t seed() const { return seed_; }
    std::uint64_t stream_id() const { return stream_id_; }

private:
    std::mt19937_64 engine_;
    std::uint64_t seed_;
    std::uint64_t stream_id_;
    double spare_normal_ = 0.0;
    bool has_spare_normal_ = false;
};

// Finite nonincreasing vector of strictly positive block masses.
class WeightVector {
public:
    explicit WeightVector(std::vector<double> masses);

    // n blocks of equal mass.
    static WeightVector uniform(int n, double mass = 1.0);

    int size() const { return static_cast<int>(masses_.size()); }
    double operator[](int i) const { return masses_[i]; }
    double total() const { return total_; }
    const std::vector<double>& masses() const { return masses_; }

private:
    std::vector<double> masses_;
    double total_;
};

// Sorts masses into nonincreasing order before constructing.
WeightVector ordered(std::vector<double> masses);

// Exponential clocks of the blocks, their order statistics and the induced
// size-biased permutation: xi[pi[l]] == order_stats[l], order_stats strictly
// increasing. Ranks and block indices are 0-based throughout.
struct ClockAssignment {
    std::vector<double> xi;          // clock of block i
    std::vector<double> order_stats; // sorted clocks
    std::vector<int> pi;             // rank l -> block index

    explicit ClockAssignment(std::vector<double> xi_values);

    int size() const { return static_cast<int>(xi.size()); }
    int rank_of(int block) const { return rank_of_[block]; }

private:
    std::vector<int> rank_of_;
};

// xi_i ~ Exponential(rate x_i), independent over blocks.
ClockAssignment sample_clocks(const WeightVector& x, Rng& rng);

// Masses listed in size-biased (clock) order: entry l is x[pi[l]].
std::vector<double> size_biased_masses(const WeightVector& x, const ClockAssignment& clocks);

} // namespace coal
