#include "coal/scaling.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace coal::scaling {

void ScalingParams::validate() const {
    if (!(kappa >= 0.0)) throw std::invalid_argument("kappa must be nonnegative");
    if (!(horizon > 0.0)) throw std::invalid_argument("horizon must be positive");
    if (!(ds > 0.0) || ds > horizon) throw std::invalid_argument("ds must lie in (0, horizon]");
    for (std::size_t j = 0; j < c.size(); ++j) {
        if (!(c[j] >= 0.0)) throw std::invalid_argument("c entries must be nonnegative");
        if (j > 0 && c[j] > c[j - 1]) throw std::invalid_argument("c must be nonincreasing");
    }
}

double ScalingParams::c_cube_sum() const {
    double sum = 0.0;
    for (const double v : c) sum += v * v * v;
    return sum;
}

ContinuumPath sample_continuum_path(const ScalingParams& params, Rng& rng) {
    params.validate();
    const auto steps = static_cast<std::size_t>(std::llround(params.horizon / params.ds));

    ContinuumPath path;
    path.ds = params.ds;
    path.w.assign(steps + 1, 0.0);
    path.b.assign(steps + 1, 0.0);

    double c_square_sum = 0.0;
    for (const double v : params.c) {
        c_square_sum += v * v;
    }
    for (std::size_t j = 0; j < params.c.size(); ++j) {
        if (params.c[j] <= 0.0) continue;
        const double arrival = rng.exponential(params.c[j]);
        if (arrival <= params.horizon) {
            path.jumps.emplace_back(static_cast<int>(j), arrival);
        }
    }
    std::sort(path.jumps.begin(), path.jumps.end(),
              [](const auto& a, const auto& b) { return a.second < b.second; });

    const double sqrt_kappa = std::sqrt(params.kappa);
    const double sqrt_ds = std::sqrt(params.ds);
    double brownian = 0.0;
    double jump_sum = 0.0;
    std::size_t next_jump = 0;
    double running_min = 0.0;
    for (std::size_t k = 1; k <= steps; ++k) {
        const double s = static_cast<double>(k) * params.ds;
        if (params.kappa > 0.0) brownian += sqrt_ds * rng.normal();
        while (next_jump < path.jumps.size() && path.jumps[next_jump].second <= s) {
            jump_sum += params.c[path.jumps[next_jump].first];
            ++next_jump;
        }
        path.w[k] = sqrt_kappa * brownian + (params.t - params.tau) * s -
                    0.5 * params.kappa * s * s + jump_sum - c_square_sum * s;
        running_min = std::min(running_min, path.w[k]);
        path.b[k] = path.w[k] - running_min;
    }
    return path;
}

ContinuumPath subsample(const ContinuumPath& path, int factor) {
    if (factor < 1) throw std::invalid_argument("subsample factor must be >= 1");
    ContinuumPath out;
    out.ds = path.ds * factor;
    out.jumps = path.jumps;
    const std::size_t steps = (path.w.size() - 1) / static_cast<std::size_t>(factor);
    out.w.assign(steps + 1, 0.0);
    out.b.assign(steps + 1, 0.0);
    double running_min = 0.0;
    for (std::size_t k = 1; k <= steps; ++k) {
        out.w[k] = path.w[k * static_cast<std::size_t>(factor)];
        running_min = std::min(running_min, out.w[k]);
        out.b[k] = out.w[k] - running_min;
    }
    return out;
}

AugmentedState extract_excursions_and_marks(const ContinuumPath& path, Rng& rng) {
    AugmentedState state;
    const std::size_t last = path.b.size() - 1;
    std::size_t k = 1;
    while (k <= last) {
        if (path.b[k] <= 0.0) {
            ++k;
            continue;
        }
        const std::size_t first_positive = k;
        double area = 0.5 * path.b[k] * path.ds; // segment up from the zero before k
        while (k + 1 <= last && path.b[k + 1] > 0.0) {
            area += 0.5 * (path.b[k] + path.b[k + 1]) * path.ds;
            ++k;
        }
        const std::size_t last_positive = k;
        if (k < last) {
            area += 0.5 * path.b[k] * path.ds; // segment back down to zero
        } else if (path.b[last] > 0.0) {
            state.truncated = true; // censored at the horizon
        }
        ++k;
        const auto points = last_positive - first_positive + 1;
        if (points < 2) continue; // grid noise
        state.lengths.push_back(static_cast<double>(points) * path.ds);
        state.marks.push_back(rng.poisson(area));
    }

    std::vector<std::size_t> order(state.lengths.size());
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        return state.lengths[a] > state.lengths[b];
    });
    AugmentedState sorted;
    sorted.truncated = state.truncated;
    sorted.lengths.reserve(order.size());
    sorted.marks.reserve(order.size());
    for (const std::size_t idx : order) {
        sorted.lengths.push_back(state.lengths[idx]);
        sorted.marks.push_back(state.marks[idx]);
    }
    return sorted;
}

} // namespace coal::scaling
