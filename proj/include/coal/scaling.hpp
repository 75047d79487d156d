// scaling.hpp — samplers for the continuum limit objects: the drifted
// Brownian-plus-jumps path, its reflection, ordered excursion lengths and
// Poisson mark counts.
#pragma once

#include <utility>
#include <vector>

#include "coal/core.hpp"

namespace coal::scaling {

struct ScalingParams {
    double kappa = 0.0; // Brownian variance coefficient
    double tau = 0.0;
    std::vector<double> c; // nonincreasing, nonnegative jump sizes
    double t = 0.0;
    double horizon = 1.0; // S
    double ds = 1e-3;

    void validate() const;

    // l3 mass of the supplied jump vector; the neglected tail of an infinite
    // c is bounded by whatever the caller truncated away.
    double c_cube_sum() const;
};

// Path on the grid {0, ds, ..., K ds}: Gaussian increments scaled by
// sqrt(kappa), closed-form drift, and jump terms placed at their exact
// first grid point.
struct ContinuumPath {
    double ds = 0.0;
    std::vector<double> w;
    std::vector<double> b;                      // reflection above the running minimum
    std::vector<std::pair<int, double>> jumps;  // (index into c, jump time), time <= horizon
};

ContinuumPath sample_continuum_path(const ScalingParams& params, Rng& rng);

// The same driving noise viewed on a grid coarsened by `factor`.
ContinuumPath subsample(const ContinuumPath& path, int factor);

// Ordered excursion lengths with aligned Poisson(area) mark counts.
struct AugmentedState {
    std::vector<double> lengths;
    std::vector<long long> marks;
    bool truncated = false; // path did not return to zero before the horizon
};

// Excursions are maximal grid runs with b > 0; runs shorter than two grid
// steps are discarded as reflection noise. Marks are Poisson with mean equal
// to the trapezoid area under b over the excursion.
AugmentedState extract_excursions_and_marks(const ContinuumPath& path, Rng& rng);

} // namespace coal::scaling
