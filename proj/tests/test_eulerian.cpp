#include <doctest.h>

#include "test_support.hpp"

using namespace cmhd;
using namespace cmhd::test;

namespace {

PhysicalState random_physical(const Grid& g, std::uint64_t seed) {
    return reconstruct_physical(random_state(g, seed));
}

PhysicalTangent random_physical_tangent(const Grid& g, std::uint64_t seed, double amp = 0.2) {
    return {random_band_limited_field(g, 2, amp, seed), random_vector(g, seed + 50, 2, amp),
            random_vector(g, seed + 150, 2, amp)};
}

} // namespace

TEST_CASE("mhd_rhs closed forms") {
    const Grid g = small_grid();
    const EquationOfState eos;

    SUBCASE("static uniform equilibrium") {
        const PhysicalState u = make_zero_physical_state(g);
        const PhysicalTangent rhs = mhd_rhs(u, eos);
        CHECK(max_abs(rhs.rho) <= 1e-13);
        CHECK(max_abs(rhs.v) <= 1e-13);
        CHECK(max_abs(rhs.b) <= 1e-13);
    }

    SUBCASE("magnetostatic force on a single mode") {
        PhysicalState u = make_zero_physical_state(g);
        u.b.z() = ScalarField::sample(g, [](double x, double, double) { return std::cos(x); });
        const PhysicalTangent rhs = mhd_rhs(u, eos);
        // (curl B) x B / rho = sin(x)cos(x) along x
        const ScalarField expected = ScalarField::sample(
            g, [](double x, double, double) { return std::sin(x) * std::cos(x); });
        CHECK(max_abs(rhs.v.x() - expected) <= 1e-12);
        CHECK(max_abs(rhs.v.y()) <= 1e-13);
        CHECK(max_abs(rhs.v.z()) <= 1e-13);
        CHECK(max_abs(rhs.rho) <= 1e-13);
        CHECK(max_abs(rhs.b) <= 1e-13);
    }

    SUBCASE("mass flux integrates to zero") {
        const PhysicalState u = random_physical(g, 201);
        const PhysicalTangent rhs = mhd_rhs(u, eos);
        CHECK(std::abs(integrate(rhs.rho)) <=
              1e-11 * g.volume() * (max_abs(rhs.rho) + 1e-30));
    }
}

TEST_CASE("poisson_apply reproduces the MHD right-hand side on dH") {
    const Grid g = small_grid();
    const EquationOfState eos;
    for (std::uint64_t seed : {211u, 212u, 213u}) {
        const PhysicalState u = random_physical(g, seed);
        const PhysicalTangent g_h = hamiltonian_gradient(u, eos);
        const PhysicalTangent via_poisson = poisson_apply(u, g_h);
        const PhysicalTangent direct = mhd_rhs(u, eos);
        CHECK(max_abs(via_poisson.rho - direct.rho) <= 1e-11 * (max_abs(direct.rho) + 1e-30));
        CHECK(max_abs(via_poisson.v - direct.v) <= 1e-11 * (max_abs(direct.v) + 1e-30));
        CHECK(max_abs(via_poisson.b - direct.b) <= 1e-11 * (max_abs(direct.b) + 1e-30));
    }
}

TEST_CASE("constant mass gradient is annihilated") {
    const Grid g = small_grid();
    const PhysicalState u = random_physical(g, 221);
    PhysicalTangent grad_mass = make_zero_physical_tangent(g);
    grad_mass.rho = ScalarField::constant(g, 1.0);
    const PhysicalTangent img = poisson_apply(u, grad_mass);
    CHECK(max_abs(img.rho) <= 1e-14);
    CHECK(max_abs(img.v) <= 1e-14);
    CHECK(max_abs(img.b) <= 1e-14);
}

TEST_CASE("poisson operator is antisymmetric under the pairing") {
    const Grid g = small_grid();
    const PhysicalState u = random_physical(g, 231);
    for (std::uint64_t seed : {241u, 242u, 243u}) {
        const PhysicalTangent g1 = random_physical_tangent(g, seed);
        const PhysicalTangent g2 = random_physical_tangent(g, seed + 1000);
        const double lhs = pairing(g1, poisson_apply(u, g2));
        const double rhs = pairing(g2, poisson_apply(u, g1));
        const double scale = std::abs(lhs) + std::abs(rhs) + 1e-30;
        CHECK(std::abs(lhs + rhs) <= 1e-10 * scale);
    }
}

TEST_CASE("casimir gradients pass the Gateaux test") {
    const Grid g = small_grid();
    const PhysicalState u = random_physical(g, 251);

    SUBCASE("magnetic helicity gradient") {
        const PhysicalTangent gc = casimir_gradient(u, Casimir::magnetic_helicity);
        const VectorField w = random_solenoidal(g, 252, 2, 0.1);
        const double eps = 1e-4;
        auto c2_of = [&](double e) {
            const VectorField b = u.b + e * w;
            return integrate(dot(inverse_curl(b), b));
        };
        const double fd = (c2_of(eps) - c2_of(-eps)) / (2.0 * eps);
        const double analytic = integrate(dot(gc.b, w));
        CHECK(rel_diff(fd, analytic) <= 1e-8);
    }

    SUBCASE("cross helicity gradient in both slots") {
        const PhysicalTangent gc = casimir_gradient(u, Casimir::cross_helicity);
        const VectorField wv = random_vector(g, 253, 2, 0.1);
        const VectorField wb = random_solenoidal(g, 254, 2, 0.1);
        const double eps = 1e-4;
        auto c3_of = [&](double e) { return integrate(dot(u.v + e * wv, u.b + e * wb)); };
        const double fd = (c3_of(eps) - c3_of(-eps)) / (2.0 * eps);
        const double analytic = integrate(dot(gc.v, wv) + dot(gc.b, wb));
        CHECK(rel_diff(fd, analytic) <= 1e-8);
    }
}

TEST_CASE("casimir nullity residuals") {
    const Grid g = small_grid();
    for (std::uint64_t seed : {261u, 262u, 263u, 264u}) {
        const PhysicalState u = random_physical(g, seed);
        const auto res = casimir_nullity_residuals(u);
        CHECK(res[0] <= 1e-14); // mass: exact annihilation
        CHECK(res[1] <= 1e-10); // magnetic helicity: B x B cancellation
        CHECK(res[2] <= 1e-10); // cross helicity: row-by-row cancellations
    }
}

TEST_CASE("physical state admissibility") {
    const Grid g = small_grid();

    SUBCASE("nonzero-divergence B is rejected") {
        PhysicalState u = make_zero_physical_state(g);
        u.b.x() = ScalarField::sample(g, [](double x, double, double) { return std::sin(x); });
        CHECK_THROWS_AS(validate(u), std::invalid_argument);
    }

    SUBCASE("mean B component is rejected") {
        PhysicalState u = make_zero_physical_state(g);
        u.b.z() = ScalarField::constant(g, 0.3);
        CHECK_THROWS_AS(validate(u), std::invalid_argument);
    }

    SUBCASE("density floor is enforced") {
        PhysicalState u = make_zero_physical_state(g, 0.05);
        CHECK_THROWS_AS(validate(u), std::invalid_argument);
    }

    SUBCASE("reconstructed states are admissible") {
        CHECK_NOTHROW(validate(random_physical(g, 271)));
    }
}
