#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "coal/core.hpp"
#include "coal/mosaic.hpp"
#include "coal/surplus.hpp"
#include "coal/walks.hpp"

using namespace coal;
using namespace coal::mosaic;

namespace {

const WeightVector kX({3.0, 1.0});
const ClockAssignment kClocks({0.2, 5.0});

WeightVector random_instance(Rng& rng, int n) {
    std::vector<double> masses(static_cast<std::size_t>(n));
    for (auto& m : masses) m = 0.1 * std::pow(30.0, rng.u01());
    return ordered(std::move(masses));
}

} // namespace

TEST_CASE("parallelogram of the worked instance") {
    const auto table = surplus::activation_table(walks::merge_schedule(kX, kClocks));

    SUBCASE("inactive before the merge") {
        CHECK_THROWS_AS(parallelogram_geometry(kX, kClocks, table, 1, 0, 0, 1.5),
                        NotActiveError);
    }
    SUBCASE("zero area exactly at activation") {
        const auto region = parallelogram_geometry(kX, kClocks, table, 1, 0, 0, 1.6);
        CHECK(std::abs(region.area()) < kEps);
    }
    SUBCASE("hand-evaluated snapshot at q = 2") {
        const auto region = parallelogram_geometry(kX, kClocks, table, 1, 0, 0, 2.0);
        CHECK(region.base == doctest::Approx(1.0));
        CHECK(region.height == doctest::Approx(0.6)); // 3 - 4.8/2
        CHECK(region.height_walk == doctest::Approx(0.6));
        CHECK(region.area() == doctest::Approx(0.6));
        CHECK(region.activation == doctest::Approx(1.6));
    }
}

TEST_CASE("parallelogram heights match walk left limits on random instances") {
    for (int rep = 0; rep < 20; ++rep) {
        Rng rng(640 + rep);
        const auto x = random_instance(rng, 20);
        const auto clocks = sample_clocks(x, rng);
        const auto table = surplus::activation_table(walks::merge_schedule(x, clocks));
        for (const double q : {0.7, 1.9, 4.2}) {
            for (int l = 0; l < 20; ++l) {
                for (const auto& entry : table.by_vertex[l]) {
                    if (entry.t > q) continue;
                    const auto region =
                        parallelogram_geometry(x, clocks, table, l, entry.j, entry.k, q);
                    CHECK(std::abs(region.height - region.height_walk) <= kEps);
                    CHECK(region.height >= -kEps); // grows from zero at activation
                }
            }
        }
    }
}

TEST_CASE("slice geometry stacks the activated parallelograms") {
    const auto table = surplus::activation_table(walks::merge_schedule(kX, kClocks));
    const auto slice = slice_geometry(kX, kClocks, table, 1, 2.0);
    CHECK(slice.vertex == 1);
    CHECK(slice.triangle_area == doctest::Approx(0.5));
    REQUIRE(slice.parallelograms.size() == 1);
    CHECK(slice.parallelograms[0].j == 0);
    CHECK(slice.parallelograms[0].k == 0);
    CHECK(slice.area() == doctest::Approx(1.1));
    CHECK(slice.area() == doctest::Approx(slice_area(kX, kClocks, table, 1, 2.0)));

    const auto before = slice_geometry(kX, kClocks, table, 1, 1.0);
    CHECK(before.parallelograms.empty());
    CHECK(before.area() == doctest::Approx(0.5));
}

TEST_CASE("slice areas of the worked instance") {
    const auto table = surplus::activation_table(walks::merge_schedule(kX, kClocks));
    SUBCASE("root slice is the bare triangle") {
        CHECK(slice_area(kX, kClocks, table, 0, 2.0) == doctest::Approx(4.5));
        CHECK(slice_area_walk_form(kX, kClocks, 0, 2.0) == doctest::Approx(4.5));
    }
    SUBCASE("non-root slice stacks the parallelogram") {
        CHECK(slice_area(kX, kClocks, table, 1, 2.0) == doctest::Approx(1.1));
        CHECK(slice_area_walk_form(kX, kClocks, 1, 2.0) == doctest::Approx(1.1));
    }
    SUBCASE("before the merge both slices are triangles") {
        CHECK(slice_area(kX, kClocks, table, 1, 1.0) == doctest::Approx(0.5));
    }
}

TEST_CASE("excursion areas of the worked instance") {
    SUBCASE("singleton excursions are half squares") {
        const auto d = walks::decompose_excursions(kX, kClocks, 1.0);
        REQUIRE(d.excursions.size() == 2);
        CHECK(excursion_area(kX, kClocks, 1.0, d.excursions[0]) == doctest::Approx(4.5));
        CHECK(excursion_area(kX, kClocks, 1.0, d.excursions[1]) == doctest::Approx(0.5));
    }
    SUBCASE("merged excursion at q = 2") {
        const auto d = walks::decompose_excursions(kX, kClocks, 2.0);
        REQUIRE(d.excursions.size() == 1);
        // 4.32 over the first stretch plus 1.28 after the second jump.
        CHECK(excursion_area(kX, kClocks, 2.0, d.excursions[0]) == doctest::Approx(5.6));
        // Equals the slice sum 4.5 + 1.1.
        const auto table = surplus::activation_table(walks::merge_schedule(kX, kClocks));
        const double slices =
            slice_area(kX, kClocks, table, 0, 2.0) + slice_area(kX, kClocks, table, 1, 2.0);
        CHECK(std::abs(slices - 5.6) < kEps);
    }
}

TEST_CASE("slices tile excursions on random instances") {
    for (int rep = 0; rep < 25; ++rep) {
        Rng rng(660 + rep);
        const auto x = random_instance(rng, 2 + rep);
        const auto clocks = sample_clocks(x, rng);
        const auto table = surplus::activation_table(walks::merge_schedule(x, clocks));
        for (const double q : {0.5, 1.0, 2.0, 5.0}) {
            const walks::WalkPath walk(x, clocks, q);
            const auto d = walks::decompose_excursions(x, clocks, q);

            double excursion_total = 0.0;
            for (const auto& exc : d.excursions) {
                const double exc_area = excursion_area(walk, exc);
                excursion_total += exc_area;
                double slice_total = 0.0;
                for (int l = exc.first_rank; l <= exc.last_rank; ++l) {
                    slice_total += slice_area(x, clocks, table, l, q);
                }
                CHECK(std::abs(slice_total - exc_area) < kEps);
            }
            CHECK(std::abs(excursion_total - total_reflected_area(walk)) < kEps);
        }
    }
}

TEST_CASE("rate identity on the worked instance") {
    const auto table = surplus::activation_table(walks::merge_schedule(kX, kClocks));
    const auto report = verify_rate_identity(kX, kClocks, table, 2.0);
    CHECK(report.processes_checked == 3); // two loops and one parallelogram
    CHECK(report.max_discrepancy < kEps);
    // Both sides by hand: rate 1*3 over (1.6, 2] vs q * area = 2 * 0.6.
    CHECK(1.0 * 3.0 * (2.0 - 1.6) == doctest::Approx(2.0 * 0.6));
}

TEST_CASE("rate identity sweep over random instances") {
    for (int rep = 0; rep < 30; ++rep) {
        Rng rng(680 + rep);
        const auto x = random_instance(rng, 2 + (rep * 7) % 49);
        const auto clocks = sample_clocks(x, rng);
        const auto table = surplus::activation_table(walks::merge_schedule(x, clocks));
        for (const double q : {0.5, 1.0, 2.0, 5.0}) {
            const auto report = verify_rate_identity(x, clocks, table, q);
            CHECK(report.max_discrepancy < kEps);
        }
    }
}

TEST_CASE("rate identity flags a corrupted activation time") {
    const WeightVector x({2.0, 1.5, 1.0});
    const ClockAssignment clocks({0.3, 0.9, 2.0});
    auto table = surplus::activation_table(walks::merge_schedule(x, clocks));
    REQUIRE(table.finite_count() >= 1);
    for (auto& entries : table.by_vertex) {
        for (auto& e : entries) e.t *= 0.9; // tamper
    }
    CHECK_THROWS_AS(verify_rate_identity(x, clocks, table, 5.0), IdentityViolation);
}

TEST_CASE("per-vertex intensity equals q times the slice area") {
    SUBCASE("worked instance by hand") {
        const auto table = surplus::activation_table(walks::merge_schedule(kX, kClocks));
        // Loop term 1*2/2 plus 1*3*(2-1.6).
        CHECK(slice_intensity(kX, kClocks, table, 1, 2.0) == doctest::Approx(2.2));
        CHECK(2.0 * slice_area(kX, kClocks, table, 1, 2.0) == doctest::Approx(2.2));
    }
    SUBCASE("random instances") {
        for (int rep = 0; rep < 20; ++rep) {
            Rng rng(700 + rep);
            const auto x = random_instance(rng, 15);
            const auto clocks = sample_clocks(x, rng);
            const auto table = surplus::activation_table(walks::merge_schedule(x, clocks));
            for (const double q : {0.8, 2.5}) {
                for (int l = 0; l < 15; ++l) {
                    const double lhs = slice_intensity(x, clocks, table, l, q);
                    const double rhs = q * slice_area(x, clocks, table, l, q);
                    CHECK(std::abs(lhs - rhs) < kEps);
                }
            }
        }
    }
}

TEST_CASE("per-component intensity equals q times the excursion area") {
    for (int rep = 0; rep < 20; ++rep) {
        Rng rng(720 + rep);
        const auto x = random_instance(rng, 12);
        const auto clocks = sample_clocks(x, rng);
        const auto table = surplus::activation_table(walks::merge_schedule(x, clocks));
        for (const double q : {0.6, 1.7, 4.0}) {
            const walks::WalkPath walk(x, clocks, q);
            for (const auto& exc : walks::decompose_excursions(x, clocks, q).excursions) {
                double intensity = 0.0;
                for (int l = exc.first_rank; l <= exc.last_rank; ++l) {
                    intensity += slice_intensity(x, clocks, table, l, q);
                }
                CHECK(std::abs(intensity - q * excursion_area(walk, exc)) < kEps);
            }
        }
    }
}
