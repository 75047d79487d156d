#include "coal/walks.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>
#include <limits>
#include <queue>

namespace coal::walks {

WalkPath::WalkPath(const WeightVector& x, const ClockAssignment& clocks, double q) : q_(q) {
    if (!(q > 0.0)) {
        throw std::invalid_argument("walk requires q > 0");
    }
    const int n = clocks.size();
    jump_times_.resize(n);
    jump_sizes_.resize(n);
    prefix_mass_.resize(n + 1);
    min_before_.resize(n + 1);
    prefix_mass_[0] = 0.0;
    min_before_[0] = std::numeric_limits<double>::infinity();
    for (int l = 0; l < n; ++l) {
        jump_times_[l] = clocks.order_stats[l] / q;
        jump_sizes_[l] = x[clocks.pi[l]];
        prefix_mass_[l + 1] = prefix_mass_[l] + jump_sizes_[l];
        min_before_[l + 1] = std::min(min_before_[l], prefix_mass_[l] - jump_times_[l]);
    }
    const double z_last = prefix_mass_[n] - jump_times_[n - 1];
    domain_end_ = jump_times_[n - 1] + std::max(z_last - min_before_[n], 0.0);
}

double WalkPath::value(double s, bool left_limit) const {
    if (s < 0.0) {
        throw std::invalid_argument("walk domain is s >= 0");
    }
    const auto& t = jump_times_;
    const auto it = left_limit ? std::lower_bound(t.begin(), t.end(), s)
                               : std::upper_bound(t.begin(), t.end(), s);
    const auto k = static_cast<std::size_t>(it - t.begin());
    return prefix_mass_[k] - s;
}

double WalkPath::value_before_jump(int l) const {
    return prefix_mass_[l] - jump_times_[l];
}

double WalkPath::reflected(double s, bool left_limit) const {
    const auto& t = jump_times_;
    // Jumps at or before s contribute their pre-jump left limits to the
    // running infimum in either limit convention.
    const auto completed =
        static_cast<std::size_t>(std::upper_bound(t.begin(), t.end(), s) - t.begin());
    if (completed == 0) return 0.0;
    return std::max(value(s, left_limit) - min_before_[completed], 0.0);
}

double WalkPath::reflected_before_jump(int l) const {
    return std::max(value_before_jump(l) - min_before_[l], 0.0);
}

double eval_walk(const WeightVector& x, const ClockAssignment& clocks, double q,
                 double s, bool left_limit) {
    return WalkPath(x, clocks, q).value(s, left_limit);
}

double reflect_walk(const WalkPath& walk, double s, bool left_limit) {
    return walk.reflected(s, left_limit);
}

ExcursionDecomposition decompose_excursions(const WeightVector& x,
                                            const ClockAssignment& clocks, double q) {
    if (!(q > 0.0)) {
        throw std::invalid_argument("decompose_excursions requires q > 0");
    }
    const int n = clocks.size();
    ExcursionDecomposition out;
    out.q = q;

    double cur_start = 0.0;
    double cur_mass = 0.0;
    double prev_end = 0.0; // right end of the previous excursion, 0 before the first
    int first_rank = 0;

    auto close_current = [&](int last_rank) {
        Excursion e;
        e.start = cur_start;
        e.length = cur_mass;
        e.end = cur_start + cur_mass;
        e.first_rank = first_rank;
        e.last_rank = last_rank;
        out.excursions.push_back(e);
        prev_end = e.end;
    };

    for (int l = 0; l < n; ++l) {
        const double jump_at = clocks.order_stats[l] / q;
        if (l > 0 && jump_at <= cur_start + cur_mass) {
            cur_mass += x[clocks.pi[l]]; // interval keeps its left end, grows right
            continue;
        }
        if (l > 0) close_current(l - 1);
        out.gaps.push_back({prev_end, jump_at});
        cur_start = jump_at;
        cur_mass = x[clocks.pi[l]];
        first_rank = l;
    }
    close_current(n - 1);
    return out;
}

namespace {

struct SweepComponent {
    int lo, hi;
    double mass;
    int prev, next; // component ids, -1 at the ends
    int version = 0;
    bool alive = true;
};

struct Candidate {
    double q_star;
    int left_id;
    int version;
    bool operator>(const Candidate& other) const { return q_star > other.q_star; }
};

} // namespace

MergeSchedule merge_schedule(const WeightVector& x, const ClockAssignment& clocks) {
    const int n = clocks.size();
    MergeSchedule schedule;
    schedule.n = n;
    if (n <= 1) return schedule;

    std::vector<SweepComponent> comps(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
        comps[i] = {i, i, x[clocks.pi[i]], i - 1, i + 1 < n ? i + 1 : -1, 0, true};
    }
    const auto& xi = clocks.order_stats;
    auto candidate_time = [&](const SweepComponent& left) {
        return (xi[comps[left.next].lo] - xi[left.lo]) / left.mass;
    };

    std::priority_queue<Candidate, std::vector<Candidate>, std::greater<Candidate>> heap;
    for (int i = 0; i + 1 < n; ++i) {
        heap.push({candidate_time(comps[i]), i, 0});
    }

    schedule.events.reserve(static_cast<std::size_t>(n - 1));
    while (static_cast<int>(schedule.events.size()) < n - 1) {
        assert(!heap.empty());
        const Candidate cand = heap.top();
        heap.pop();
        SweepComponent& left = comps[cand.left_id];
        if (!left.alive || left.version != cand.version || left.next == -1) {
            continue; // lazily invalidated entry
        }
        SweepComponent& right = comps[left.next];

        if (!schedule.events.empty() && cand.q_star == schedule.events.back().q_star) {
            throw TieError("two merge candidates share time " + std::to_string(cand.q_star));
        }
        schedule.events.push_back(
            {cand.q_star, left.lo, left.lo, left.hi, right.lo, right.hi, left.mass});

        left.hi = right.hi;
        left.mass += right.mass;
        ++left.version;
        right.alive = false;
        left.next = right.next;
        if (right.next != -1) comps[right.next].prev = cand.left_id;

        if (left.next != -1) {
            const double next_cand = candidate_time(left);
            // A freshly created adjacency always merges strictly later.
            if (!(next_cand > cand.q_star)) {
                throw TieError("candidate time failed to increase past " +
                               std::to_string(cand.q_star));
            }
            heap.push({next_cand, cand.left_id, left.version});
        }
    }
    return schedule;
}

} // namespace coal::walks
