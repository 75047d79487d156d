#include "coal/mosaic.hpp"

#include <cmath>
#include <stdexcept>

namespace coal::mosaic {

namespace {

double range_mass(const WeightVector& x, const ClockAssignment& clocks, int j, int k) {
    double mass = 0.0;
    for (int i = j; i <= k; ++i) mass += x[clocks.pi[i]];
    return mass;
}

ParallelogramRegion region_from_entry(const WeightVector& x, const ClockAssignment& clocks,
                                      const walks::WalkPath& walk,
                                      const surplus::ActivationEntry& entry, double q) {
    ParallelogramRegion region;
    region.l = entry.l;
    region.j = entry.j;
    region.k = entry.k;
    region.activation = entry.t;
    region.base = x[clocks.pi[entry.l]];
    const double clock_span = clocks.order_stats[entry.k + 1] - clocks.order_stats[entry.j];
    region.height = range_mass(x, clocks, entry.j, entry.k) - clock_span / q;
    region.height_walk =
        walk.value_before_jump(entry.k + 1) - walk.value_before_jump(entry.j);
    return region;
}

} // namespace

ParallelogramRegion parallelogram_geometry(const WeightVector& x, const ClockAssignment& clocks,
                                           const surplus::ActivationTable& table, int l, int j,
                                           int k, double q) {
    const double t = table.activation(l, j, k);
    if (!(t <= q)) {
        throw NotActiveError("process " + std::to_string(l) + ";" + std::to_string(j) + "-" +
                             std::to_string(k) + " not active by q");
    }
    const walks::WalkPath walk(x, clocks, q);
    const auto region = region_from_entry(x, clocks, walk, {l, j, k, t}, q);
    if (std::abs(region.height - region.height_walk) > kEps) {
        throw IdentityViolation("parallelogram " + std::to_string(l) + ";" + std::to_string(j) +
                                    "-" + std::to_string(k),
                                std::abs(region.height - region.height_walk));
    }
    return region;
}

double SliceGeometry::area() const {
    double total = triangle_area;
    for (const auto& region : parallelograms) total += region.area();
    return total;
}

SliceGeometry slice_geometry(const WeightVector& x, const ClockAssignment& clocks,
                             const surplus::ActivationTable& table, int l, double q) {
    const walks::WalkPath walk(x, clocks, q);
    const double mass = x[clocks.pi[l]];
    SliceGeometry slice;
    slice.vertex = l;
    slice.triangle_area = 0.5 * mass * mass;
    for (const auto& entry : table.by_vertex[l]) {
        if (entry.t > q) continue;
        slice.parallelograms.push_back(region_from_entry(x, clocks, walk, entry, q));
    }
    return slice;
}

double slice_area(const WeightVector& x, const ClockAssignment& clocks,
                  const surplus::ActivationTable& table, int l, double q) {
    const double mass = x[clocks.pi[l]];
    double area = 0.5 * mass * mass;
    for (const auto& entry : table.by_vertex[l]) {
        if (entry.t > q) continue;
        const double clock_span =
            clocks.order_stats[entry.k + 1] - clocks.order_stats[entry.j];
        area += mass * (range_mass(x, clocks, entry.j, entry.k) - clock_span / q);
    }
    return area;
}

double slice_area_walk_form(const WeightVector& x, const ClockAssignment& clocks, int l,
                            double q) {
    const walks::WalkPath walk(x, clocks, q);
    const double mass = x[clocks.pi[l]];
    return mass * walk.reflected_before_jump(l) + 0.5 * mass * mass;
}

double slice_intensity(const WeightVector& x, const ClockAssignment& clocks,
                       const surplus::ActivationTable& table, int l, double q) {
    const double mass = x[clocks.pi[l]];
    double intensity = 0.5 * mass * mass * q; // loop process, active from 0
    for (const auto& entry : table.by_vertex[l]) {
        if (entry.t > q) continue;
        intensity += mass * range_mass(x, clocks, entry.j, entry.k) * (q - entry.t);
    }
    return intensity;
}

double excursion_area(const walks::WalkPath& walk, const walks::Excursion& excursion) {
    double area = 0.0;
    double prev_time = excursion.start;
    double prev_value = 0.0;
    for (int l = excursion.first_rank; l <= excursion.last_rank; ++l) {
        const double t = walk.jump_time(l);
        area += 0.5 * (prev_value + walk.reflected_before_jump(l)) * (t - prev_time);
        prev_time = t;
        prev_value = walk.reflected_before_jump(l) + walk.jump_size(l);
    }
    area += 0.5 * prev_value * (excursion.end - prev_time);
    return area;
}

double excursion_area(const WeightVector& x, const ClockAssignment& clocks, double q,
                      const walks::Excursion& excursion) {
    return excursion_area(walks::WalkPath(x, clocks, q), excursion);
}

double total_reflected_area(const walks::WalkPath& walk) {
    double area = 0.0;
    double prev_time = 0.0;
    double prev_value = 0.0;
    for (int l = 0; l < walk.jump_count(); ++l) {
        const double t = walk.jump_time(l);
        const double before = walk.reflected_before_jump(l);
        if (before > 0.0) {
            area += 0.5 * (prev_value + before) * (t - prev_time);
        } else {
            // B reached zero inside the segment and stayed there.
            area += 0.5 * prev_value * prev_value;
        }
        prev_time = t;
        prev_value = before + walk.jump_size(l);
    }
    area += 0.5 * prev_value * prev_value;
    return area;
}

RateIdentityReport verify_rate_identity(const WeightVector& x, const ClockAssignment& clocks,
                                        const surplus::ActivationTable& table, double q) {
    const walks::WalkPath walk(x, clocks, q);
    RateIdentityReport report;
    report.q = q;
    for (int l = 0; l < table.n; ++l) {
        const double mass = x[clocks.pi[l]];
        // Self-loop: the triangle's legs are the block mass and the walk jump.
        {
            const double jump = walk.value(walk.jump_time(l)) - walk.value_before_jump(l);
            const double lhs = 0.5 * mass * mass * q;
            const double rhs = q * 0.5 * mass * jump;
            const double disc = std::abs(lhs - rhs);
            ++report.processes_checked;
            if (disc > report.max_discrepancy) {
                report.max_discrepancy = disc;
                report.worst_process =
                    std::to_string(l) + ";" + std::to_string(l) + "-" + std::to_string(l);
            }
        }
        for (const auto& entry : table.by_vertex[l]) {
            if (entry.t > q) continue;
            const double rate = mass * range_mass(x, clocks, entry.j, entry.k);
            const double lhs = rate * (q - entry.t);
            const double height_walk =
                walk.value_before_jump(entry.k + 1) - walk.value_before_jump(entry.j);
            const double rhs = q * mass * height_walk;
            const double disc = std::abs(lhs - rhs);
            ++report.processes_checked;
            if (disc > report.max_discrepancy) {
                report.max_discrepancy = disc;
                report.worst_process = std::to_string(l) + ";" + std::to_string(entry.j) + "-" +
                                       std::to_string(entry.k);
            }
        }
    }
    if (report.max_discrepancy > kEps) {
        throw IdentityViolation(report.worst_process, report.max_discrepancy);
    }
    return report;
}

} // namespace coal::mosaic
