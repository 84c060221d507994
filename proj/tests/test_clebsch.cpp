#include <doctest.h>

#include <numbers>

#include "test_support.hpp"

using namespace cmhd;
using namespace cmhd::test;

namespace {

const double kVol = 8.0 * std::numbers::pi * std::numbers::pi * std::numbers::pi;

ClebschTangent random_tangent(const Grid& g, std::uint64_t seed, int cap = 2, double amp = 0.1) {
    ClebschTangent w = make_zero_clebsch_tangent(g);
    w.phi0 = random_band_limited_field(g, cap, amp, seed);
    w.rho = random_band_limited_field(g, cap, amp, seed + 1);
    for (int l = 0; l < 3; ++l) {
        w.alpha[l] = random_band_limited_field(g, cap, amp, seed + 2 + l);
        w.mu[l] = random_band_limited_field(g, cap, amp, seed + 5 + l);
        w.phi[l] = random_band_limited_field(g, cap, amp, seed + 8 + l);
        w.beta[l] = random_band_limited_field(g, cap, amp, seed + 11 + l);
    }
    return w;
}

// <dH, w> read off the canonical right-hand side through Jc^{-1}:
// dH/dq = -pdot, dH/dp = qdot for the pairs (phi0,rho), (alpha,mu), (phi,beta).
double analytic_gateaux(const ClebschState& s, const ClebschTangent& w,
                        const EquationOfState& eos) {
    const ClebschTangent rhs = canonical_rhs(s, eos);
    ScalarField sum = rhs.phi0 * w.rho - rhs.rho * w.phi0;
    for (int l = 0; l < 3; ++l)
        sum += rhs.alpha[l] * w.mu[l] - rhs.mu[l] * w.alpha[l] + rhs.phi[l] * w.beta[l] -
               rhs.beta[l] * w.phi[l];
    return integrate(sum);
}

double fd_gateaux(const ClebschState& s, const ClebschTangent& w, const EquationOfState& eos,
                  double eps) {
    return (hamiltonian(advanced(s, w, eps), eos).total() -
            hamiltonian(advanced(s, w, -eps), eos).total()) /
           (2.0 * eps);
}

} // namespace

TEST_CASE("reconstruct_velocity closed forms") {
    const Grid g = small_grid();

    SUBCASE("uniform state is at rest") {
        const ClebschState s = make_zero_clebsch_state(g);
        CHECK(max_abs(reconstruct_velocity(s)) <= 1e-14);
    }

    SUBCASE("potential flow from phi0") {
        ClebschState s = make_zero_clebsch_state(g);
        s.phi0 = ScalarField::sample(g, [](double x, double, double) { return std::sin(x); });
        const VectorField v = reconstruct_velocity(s);
        const ScalarField expected =
            ScalarField::sample(g, [](double x, double, double) { return -std::cos(x); });
        CHECK(max_abs(v.x() - expected) <= 1e-12);
        CHECK(max_abs(v.y()) <= 1e-13);
        CHECK(max_abs(v.z()) <= 1e-13);
    }

    SUBCASE("single Clebsch pair term") {
        ClebschState s = make_zero_clebsch_state(g);
        s.mu[0] = ScalarField::constant(g, 1.0);
        s.alpha[0] = ScalarField::sample(g, [](double, double y, double) { return std::sin(y); });
        const VectorField v = reconstruct_velocity(s);
        const ScalarField expected =
            ScalarField::sample(g, [](double, double y, double) { return -std::cos(y); });
        CHECK(max_abs(v.y() - expected) <= 1e-12);
        CHECK(max_abs(v.x()) <= 1e-13);
        CHECK(max_abs(v.z()) <= 1e-13);
    }
}

TEST_CASE("reconstruct_magnetic closed forms and solenoidality") {
    const Grid g = small_grid();

    SUBCASE("no mu means no field") {
        ClebschState s = make_zero_clebsch_state(g);
        s.phi[0] = random_scalar(g, 3);
        CHECK(max_abs(reconstruct_magnetic(s)) <= 1e-14);
    }

    SUBCASE("crossed single modes") {
        ClebschState s = make_zero_clebsch_state(g);
        s.mu[0] = ScalarField::sample(g, [](double x, double, double) { return std::sin(x); });
        s.phi[0] = ScalarField::sample(g, [](double, double y, double) { return std::sin(y); });
        const VectorField b = reconstruct_magnetic(s);
        const ScalarField expected = ScalarField::sample(
            g, [](double x, double y, double) { return std::cos(x) * std::cos(y); });
        CHECK(max_abs(b.z() - expected) <= 1e-12);
        CHECK(max_abs(b.x()) <= 1e-13);
        CHECK(max_abs(b.y()) <= 1e-13);
    }

    SUBCASE("random states are solenoidal") {
        for (std::uint64_t seed : {101u, 102u, 103u}) {
            const ClebschState s = random_state(small_grid(), seed);
            CHECK(divergence_residual(reconstruct_magnetic(s)) <= 1e-10);
        }
    }
}

TEST_CASE("vector potential matches the magnetic field") {
    const Grid g = small_grid();

    SUBCASE("closed form") {
        ClebschState s = make_zero_clebsch_state(g);
        s.mu[0] = ScalarField::sample(g, [](double x, double, double) { return std::sin(x); });
        s.phi[0] = ScalarField::sample(g, [](double, double y, double) { return std::sin(y); });
        const VectorField a = vector_potential_clebsch(s);
        const ScalarField expected = ScalarField::sample(
            g, [](double x, double y, double) { return std::sin(x) * std::cos(y); });
        CHECK(max_abs(a.y() - expected) <= 1e-12);
        CHECK(max_abs(a.x()) <= 1e-13);
        CHECK(max_abs(a.z()) <= 1e-13);
    }

    SUBCASE("curl(A) = B and helicity gauge independence") {
        const ClebschState s = random_state(small_grid(), 111);
        const VectorField a = vector_potential_clebsch(s);
        const VectorField b = reconstruct_magnetic(s);
        CHECK(max_abs(curl(a) - b) <= 1e-11 * std::max(max_abs(b), 1e-30));

        const double h_clebsch = integrate(dot(a, b));
        const double h_coulomb = integrate(dot(inverse_curl(b), b));
        CHECK(rel_diff(h_clebsch, h_coulomb) <= 1e-9);
    }
}

TEST_CASE("polytropic closure") {
    const Grid g = Grid::cubic(8);
    const EquationOfState eos;

    SUBCASE("values at rho = 1") {
        const ScalarField one = ScalarField::constant(g, 1.0);
        CHECK(max_abs(internal_energy(one, eos) - 1.5) <= 1e-14);
        CHECK(max_abs(enthalpy(one, eos) - 2.5) <= 1e-14);
    }

    SUBCASE("h - E = K rho^(gamma-1) pointwise") {
        const ScalarField rho = ScalarField::constant(g, 1.0) + random_scalar(g, 7, 2, 0.3);
        const ScalarField lhs = enthalpy(rho, eos) - internal_energy(rho, eos);
        const ScalarField rhs = {rho.grid, eos.k * rho.values.pow(eos.gamma - 1.0)};
        CHECK(max_abs(lhs - rhs) <= 1e-13);
    }

    SUBCASE("d(rho E)/d(rho) = h by finite differences") {
        const ScalarField rho = ScalarField::constant(g, 1.0) + random_scalar(g, 8, 2, 0.3);
        const double h = 1e-5;
        const ScalarField rho_p = rho + h;
        const ScalarField rho_m = rho - h;
        const ScalarField fd =
            (rho_p * internal_energy(rho_p, eos) - rho_m * internal_energy(rho_m, eos)) /
            (2.0 * h);
        CHECK(max_abs(fd - enthalpy(rho, eos)) <= 1e-8 * max_abs(enthalpy(rho, eos)));
    }

    SUBCASE("parameter validation") {
        CHECK_THROWS_AS(internal_energy(ScalarField::constant(g, 1.0), {0.9, 1.0}),
                        std::invalid_argument);
        CHECK_THROWS_AS(internal_energy(ScalarField::constant(g, 0.01), {}),
                        std::invalid_argument);
    }
}

TEST_CASE("hamiltonian closed forms and route agreement") {
    const Grid g = small_grid();
    const EquationOfState eos;

    SUBCASE("uniform state is purely thermal") {
        const ClebschState s = make_zero_clebsch_state(g);
        const EnergyBreakdown e = hamiltonian(s, eos);
        CHECK(e.kinetic <= 1e-13);
        CHECK(e.magnetic <= 1e-13);
        CHECK(e.thermal == doctest::Approx(1.5 * kVol).epsilon(1e-13));
    }

    SUBCASE("single-mode magnetic energy") {
        ClebschState s = make_zero_clebsch_state(g);
        s.mu[0] = ScalarField::sample(g, [](double x, double, double) { return std::sin(x); });
        s.phi[0] = ScalarField::sample(g, [](double, double y, double) { return std::sin(y); });
        const EnergyBreakdown e = hamiltonian(s, eos);
        CHECK(e.magnetic == doctest::Approx(kVol / 8.0).epsilon(1e-12));
        CHECK(e.kinetic <= 1e-13);
    }

    SUBCASE("Clebsch integrand equals the physical-field integrand") {
        const ClebschState s = random_state(g, 121);
        // The potential-form integrand, assembled independently of the
        // library reconstruction path.
        VectorField u = grad(s.phi0);
        for (int l = 0; l < 3; ++l)
            u += (s.mu[l] / s.rho) * grad(s.alpha[l]) + (s.beta[l] / s.rho) * grad(s.phi[l]);
        VectorField b = cross(grad(s.mu[0] / s.rho), grad(s.phi[0]));
        for (int l = 1; l < 3; ++l) b += cross(grad(s.mu[l] / s.rho), grad(s.phi[l]));
        const double route_a =
            integrate(0.5 * (s.rho * norm_squared(u)) + s.rho * internal_energy(s.rho, eos) +
                      0.5 * norm_squared(b));
        const double route_b = hamiltonian(s, eos).total();
        CHECK(rel_diff(route_a, route_b) <= 1e-12);
    }
}

TEST_CASE("canonical_rhs closed forms") {
    const Grid g = small_grid();
    const EquationOfState eos;

    SUBCASE("uniform state: only phi0 moves, at the enthalpy rate") {
        const double rho0 = 1.2;
        const ClebschState s = make_zero_clebsch_state(g, rho0);
        const ClebschTangent rhs = canonical_rhs(s, eos);
        const double h0 = eos.k * eos.gamma / (eos.gamma - 1.0) * std::pow(rho0, eos.gamma - 1.0);
        CHECK(max_abs(rhs.phi0 - h0) <= 1e-13 * h0);
        CHECK(max_abs(rhs.rho) <= 1e-13);
        for (int l = 0; l < 3; ++l) {
            CHECK(max_abs(rhs.alpha[l]) <= 1e-13);
            CHECK(max_abs(rhs.mu[l]) <= 1e-13);
            CHECK(max_abs(rhs.phi[l]) <= 1e-13);
            CHECK(max_abs(rhs.beta[l]) <= 1e-13);
        }
    }

    SUBCASE("phi equations are the advection law") {
        const ClebschState s = random_state(g, 131);
        const ClebschTangent rhs = canonical_rhs(s, eos);
        const VectorField v = velocity_of<ScalarField>(s);
        for (int l = 0; l < 3; ++l) {
            const ScalarField residual = dealias(rhs.phi[l] + dot(v, grad(s.phi[l])));
            const double scale = max_abs(rhs.phi[l]) + 1e-30;
            CHECK(max_abs(residual) <= 1e-12 * scale);
        }
    }

    SUBCASE("mass and mu integrals are conserved infinitesimally") {
        const ClebschState s = random_state(g, 132);
        const ClebschTangent rhs = canonical_rhs(s, eos);
        const double scale = kVol * (max_abs(rhs.rho) + 1e-30);
        CHECK(std::abs(integrate(rhs.rho)) <= 1e-11 * scale);
        for (int l = 0; l < 3; ++l)
            CHECK(std::abs(integrate(rhs.mu[l])) <= 1e-11 * kVol * (max_abs(rhs.mu[l]) + 1e-30));
    }

    SUBCASE("density floor aborts") {
        ClebschState s = make_zero_clebsch_state(g, 0.05);
        CHECK_THROWS_AS(canonical_rhs(s, eos), std::invalid_argument);
    }
}

TEST_CASE("canonical_rhs is the gradient of the Hamiltonian") {
    const Grid g = small_grid();
    const EquationOfState eos;
    const ClebschState s = random_state(g, 141);

    for (std::uint64_t seed : {501u, 502u, 503u, 504u, 505u}) {
        const ClebschTangent w = random_tangent(g, seed);
        const double analytic = analytic_gateaux(s, w, eos);
        double best = std::numeric_limits<double>::infinity();
        for (double eps : {1e-3, 1e-4, 1e-5, 1e-6}) {
            const double fd = fd_gateaux(s, w, eos, eps);
            best = std::min(best, rel_diff(analytic, fd));
        }
        CHECK(best <= 1e-6);
    }
}

TEST_CASE("lagrangian density") {
    const Grid g = small_grid();
    const EquationOfState eos;

    SUBCASE("zero velocities leave minus the Hamiltonian density") {
        const ClebschState s = random_state(g, 151);
        const ClebschTangent zero = make_zero_clebsch_tangent(g);
        const ScalarField lag = lagrangian_density(s, zero, eos);
        CHECK(rel_diff(integrate(lag), -hamiltonian(s, eos).total()) <= 1e-12);
    }

    SUBCASE("uniform state with its own dynamics") {
        const ClebschState s = make_zero_clebsch_state(g);
        const ClebschTangent rhs = canonical_rhs(s, eos);
        const double expected = (2.5 - 1.5) * kVol;
        CHECK(integrate(lagrangian_density(s, rhs, eos)) ==
              doctest::Approx(expected).epsilon(1e-12));
    }

    SUBCASE("affine in the velocities") {
        const ClebschState s = random_state(g, 152);
        const ClebschTangent w1 = random_tangent(g, 153);
        const ClebschTangent w2 = random_tangent(g, 154);
        const ClebschTangent zero = make_zero_clebsch_tangent(g);
        const double a = 0.7, b = -1.9;
        const ScalarField lhs =
            lagrangian_density(s, add_scaled(scaled(w1, a), w2, b), eos) -
            lagrangian_density(s, zero, eos);
        const ScalarField rhs =
            a * (lagrangian_density(s, w1, eos) - lagrangian_density(s, zero, eos)) +
            b * (lagrangian_density(s, w2, eos) - lagrangian_density(s, zero, eos));
        CHECK(max_abs(lhs - rhs) <= 1e-12 * std::max(max_abs(lhs), 1.0));
    }
}

TEST_CASE("dual fields linearize the reconstruction maps") {
    const Grid g = small_grid();
    const ClebschState s = random_state(g, 161);
    const ClebschTangent w = random_tangent(g, 162);
    const DualClebschFields d = dual_fields(s, w);

    const DualVectorField v_dual = velocity_of<DualScalarField>(d);
    const DualVectorField b_dual = magnetic_of<DualScalarField>(d);
    CHECK(max_abs(v_dual.value - velocity_of<ScalarField>(s)) <= 1e-14);

    const double eps = 1e-6;
    const ClebschState sp = advanced(s, w, eps);
    const ClebschState sm = advanced(s, w, -eps);
    const VectorField fd_v =
        (1.0 / (2.0 * eps)) * (velocity_of<ScalarField>(sp) - velocity_of<ScalarField>(sm));
    const VectorField fd_b =
        (1.0 / (2.0 * eps)) * (magnetic_of<ScalarField>(sp) - magnetic_of<ScalarField>(sm));
    CHECK(max_abs(v_dual.deriv - fd_v) <= 1e-7 * std::max(max_abs(v_dual.deriv), 1.0));
    CHECK(max_abs(b_dual.deriv - fd_b) <= 1e-7 * std::max(max_abs(b_dual.deriv), 1.0));
}
