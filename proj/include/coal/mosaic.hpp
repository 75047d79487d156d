// mosaic.hpp — exact geometry of the excursion mosaic: the per-vertex
// triangle, the activated parallelograms, slice and excursion areas, and the
// deterministic rate-area identity check.
#pragma once

#include <string>
#include <vector>

#include "coal/core.hpp"
#include "coal/surplus.hpp"
#include "coal/walks.hpp"

namespace coal::mosaic {

// Snapshot of the parallelogram matched to process (l; j-k) at time q.
// The height is computed in closed form and re-derived from walk left
// limits; the two must agree within kEps.
struct ParallelogramRegion {
    int l = 0;
    int j = 0;
    int k = 0;
    double activation = 0.0;
    double base = 0.0;        // x_{pi[l]}
    double height = 0.0;      // mass[j..k] - (xi_(k+1) - xi_(j)) / q
    double height_walk = 0.0; // Z(xi^q_(k+1) -) - Z(xi^q_(j) -)
    double area() const { return base * height; }
};

// Throws NotActiveError if the process has not activated by q.
ParallelogramRegion parallelogram_geometry(const WeightVector& x, const ClockAssignment& clocks,
                                           const surplus::ActivationTable& table, int l, int j,
                                           int k, double q);

// The slice of the mosaic owned by rank l at time q: its triangle plus the
// parallelograms stacked below it, top-down in activation order.
struct SliceGeometry {
    int vertex = 0;
    double triangle_area = 0.0; // x_{pi[l]}^2 / 2
    std::vector<ParallelogramRegion> parallelograms;

    double area() const;
};

SliceGeometry slice_geometry(const WeightVector& x, const ClockAssignment& clocks,
                             const surplus::ActivationTable& table, int l, double q);

// Triangle plus the active parallelograms stacked below it; equals
// x_{pi[l]} * B(xi^q_(l) -) + x_{pi[l]}^2 / 2.
double slice_area(const WeightVector& x, const ClockAssignment& clocks,
                  const surplus::ActivationTable& table, int l, double q);

// The walk-form evaluation of the same slice area.
double slice_area_walk_form(const WeightVector& x, const ClockAssignment& clocks, int l,
                            double q);

// Cumulative intensity of all surplus processes issued from rank l by q:
// the loop term plus rate * (q - T) over activated parallelogram processes.
double slice_intensity(const WeightVector& x, const ClockAssignment& clocks,
                       const surplus::ActivationTable& table, int l, double q);

// Exact trapezoid integral of the reflected walk over one excursion.
double excursion_area(const walks::WalkPath& walk, const walks::Excursion& excursion);
double excursion_area(const WeightVector& x, const ClockAssignment& clocks, double q,
                      const walks::Excursion& excursion);

// Trapezoid integral of the reflected walk over its whole domain, evaluated
// segment by segment without consulting the excursion decomposition.
double total_reflected_area(const walks::WalkPath& walk);

struct RateIdentityReport {
    double q = 0.0;
    double max_discrepancy = 0.0;
    std::string worst_process; // "l;j-k", 0-based ranks
    long long processes_checked = 0;
};

// Checks |rate * (q - T) - q * area| for every process activated by q,
// with areas taken from walk evaluations. Throws IdentityViolation if any
// discrepancy exceeds kEps.
RateIdentityReport verify_rate_identity(const WeightVector& x, const ClockAssignment& clocks,
                                        const surplus::ActivationTable& table, double q);

} // namespace coal::mosaic
