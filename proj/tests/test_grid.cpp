#include <cmath>

#include "doctest.h"
#include "oracles.hpp"
#include "pit/grid.hpp"

using namespace pit;

TEST_CASE("grid geometry") {
    const GridPtr g1 = SpatialGrid::make(1, -1.0, 1.0, 5);
    CHECK(g1->spacing() == doctest::Approx(0.5).epsilon(1e-15));
    CHECK(g1->interior_per_axis() == 3);
    CHECK(g1->interior_count() == 3);
    CHECK(g1->interior_coord(0) == doctest::Approx(-0.5));
    CHECK(g1->interior_coord(1) == doctest::Approx(0.0));
    CHECK(g1->interior_coord(2) == doctest::Approx(0.5));

    const GridPtr g2 = SpatialGrid::make_unit(2, 5);
    CHECK(g2->lo() == -0.5);
    CHECK(g2->hi() == 0.5);
    CHECK(g2->spacing() == doctest::Approx(0.25).epsilon(1e-15));
    CHECK(g2->interior_count() == 9);
    // x-fastest layout
    CHECK(g2->flat_index(0, 0) == 0);
    CHECK(g2->flat_index(2, 0) == 2);
    CHECK(g2->flat_index(0, 1) == 3);
    CHECK(g2->flat_index(1, 2) == 7);

    CHECK(*g2 == *SpatialGrid::make_unit(2, 5));
    CHECK_FALSE(*g2 == *SpatialGrid::make_unit(2, 7));
    CHECK_FALSE(*g2 == *g1);
}

TEST_CASE("grid rejects bad shapes") {
    CHECK_THROWS_AS(SpatialGrid::make(3, 0.0, 1.0, 5), std::invalid_argument);
    CHECK_THROWS_AS(SpatialGrid::make(2, 0.0, 1.0, 2), std::invalid_argument);
    CHECK_THROWS_AS(SpatialGrid::make(2, 1.0, 0.0, 5), std::invalid_argument);
}

TEST_CASE("inner product is the h^d weighted dot product") {
    const GridPtr g1 = SpatialGrid::make(1, -1.0, 1.0, 5);  // h = 0.5, 3 nodes
    const ScalarField ones1(g1, 1.0);
    CHECK(inner_product(ones1, ones1) == doctest::Approx(1.5).epsilon(1e-15));

    const GridPtr g2 = SpatialGrid::make_unit(2, 5);  // h = 0.25, 9 nodes
    const ScalarField ones2(g2, 1.0);
    CHECK(inner_product(ones2, ones2) == doctest::Approx(0.0625 * 9).epsilon(1e-15));
    CHECK(l2_norm(ones2) == doctest::Approx(std::sqrt(0.0625 * 9)).epsilon(1e-15));
}

TEST_CASE("inner product is bilinear, symmetric, positive definite") {
    const GridPtr g = SpatialGrid::make_unit(2, 7);
    const ScalarField u = pit_test::random_field(g, 11);
    const ScalarField v = pit_test::random_field(g, 12);
    const ScalarField w = pit_test::random_field(g, 13);

    CHECK(inner_product(u, v) == doctest::Approx(inner_product(v, u)).epsilon(1e-14));
    const double lhs = inner_product(2.5 * u + v, w);
    const double rhs = 2.5 * inner_product(u, w) + inner_product(v, w);
    CHECK(lhs == doctest::Approx(rhs).epsilon(1e-12));
    CHECK(inner_product(u, u) > 0.0);

    const GridPtr other = SpatialGrid::make_unit(2, 9);
    CHECK_THROWS_AS(inner_product(u, ScalarField(other)), std::invalid_argument);
}

TEST_CASE("field algebra") {
    const GridPtr g = SpatialGrid::make(1, 0.0, 1.0, 6);
    ScalarField a(g, 2.0);
    const ScalarField b(g, 3.0);

    a += b;
    CHECK(a[0] == 5.0);
    a -= b;
    CHECK(a[2] == 2.0);
    a *= -2.0;
    CHECK(a[3] == -4.0);
    a.axpy(0.5, b);
    CHECK(a[1] == doctest::Approx(-2.5));

    const ScalarField c = 2.0 * (a + b) - b;
    CHECK(c[0] == doctest::Approx(2.0 * (-2.5 + 3.0) - 3.0));
    CHECK(c.all_finite());

    ScalarField bad(g, 1.0);
    bad[0] = std::nan("");
    CHECK_FALSE(bad.all_finite());
}

TEST_CASE("gaussian initial condition") {
    const GridPtr g = SpatialGrid::make_unit(2, 5);  // interior coords -0.25, 0, 0.25
    const double sigma = 0.1;
    const ScalarField y0 = gaussian_initial_condition(g, {0.0, 0.0}, sigma);

    CHECK(y0[g->flat_index(1, 1)] == doctest::Approx(1.0).epsilon(1e-15));  // peak at origin
    const double at_250mm = std::exp(-0.0625 / (2.0 * sigma * sigma));
    CHECK(y0[g->flat_index(2, 1)] == doctest::Approx(at_250mm).epsilon(1e-14));
    const double at_corner = std::exp(-0.125 / (2.0 * sigma * sigma));
    CHECK(y0[g->flat_index(2, 2)] == doctest::Approx(at_corner).epsilon(1e-14));

    CHECK_THROWS_AS(gaussian_initial_condition(g, {0.0, 0.0}, 0.0), std::invalid_argument);

    // off-center peak in 1D
    const GridPtr g1 = SpatialGrid::make(1, -1.0, 1.0, 5);
    const ScalarField z = gaussian_initial_condition(g1, {0.5, 0.0}, 0.2);
    CHECK(z[2] == doctest::Approx(1.0));
    CHECK(z[0] > 0.0);
    CHECK(z[0] < z[1]);
}
