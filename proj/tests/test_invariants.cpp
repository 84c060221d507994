#include <doctest.h>

#include <numbers>

#include "test_support.hpp"

using namespace cmhd;
using namespace cmhd::test;

namespace {
const double kVol = 8.0 * std::numbers::pi * std::numbers::pi * std::numbers::pi;
const EquationOfState kEos;
} // namespace

TEST_CASE("mass, magnetic helicity, cross helicity closed forms") {
    const Grid g = small_grid();

    SUBCASE("uniform density mass") {
        CHECK(total_mass(ScalarField::constant(g, 1.0)) == doctest::Approx(kVol).epsilon(1e-14));
    }

    SUBCASE("orthogonal V and B have zero cross helicity") {
        const ScalarField bz = ScalarField::sample(
            g, [](double x, double y, double) { return std::cos(x) * std::cos(y); });
        VectorField b(g);
        b.z() = bz;
        VectorField v(g);
        v.x() = random_scalar(g, 301);
        v.y() = random_scalar(g, 302);
        CHECK(std::abs(cross_helicity(v, b)) <= 1e-12 * kVol * max_abs(v) * max_abs(b));
    }

    SUBCASE("Beltrami eigenfield helicity") {
        VectorField b(g);
        b.y() = ScalarField::sample(g, [](double x, double, double) { return std::sin(x); });
        b.z() = ScalarField::sample(g, [](double x, double, double) { return std::cos(x); });
        // curl b = b, so the Coulomb potential is b itself and C2 = Int(b.b) = Vol.
        CHECK(max_abs(curl(b) - b) <= 1e-12);
        CHECK(magnetic_helicity_coulomb(b) == doctest::Approx(kVol).epsilon(1e-12));
    }
}

TEST_CASE("primed cross helicity equals the unprimed one on the torus") {
    const Grid g = small_grid();

    SUBCASE("no magnetic field: both vanish") {
        RecipeSpec r;
        r.id = RecipeSpec::Id::hydrodynamic;
        r.seed = 311;
        const ClebschState s = make_initial_state(g, r);
        CHECK(std::abs(cross_helicity_primed(s)) <= 1e-13);
        CHECK(std::abs(cross_helicity(s)) <= 1e-13);
    }

    SUBCASE("random states agree to 1e-10") {
        for (std::uint64_t seed : {321u, 322u, 323u}) {
            const ClebschState s = random_state(g, seed);
            const double primed = cross_helicity_primed(s);
            const double plain = cross_helicity(s);
            const double scale = std::max({std::abs(primed), std::abs(plain),
                                           kVol * max_abs(reconstruct_velocity(s)) *
                                               max_abs(reconstruct_magnetic(s))});
            CHECK(std::abs(primed - plain) <= 1e-10 * scale);
        }
    }

    SUBCASE("explicit phi0 gradient drops out") {
        ClebschState s = make_zero_clebsch_state(g);
        s.phi0 = ScalarField::sample(g, [](double x, double, double) { return std::sin(x); });
        s.mu[0] = ScalarField::sample(g, [](double x, double, double) { return std::sin(x); });
        s.phi[0] = ScalarField::sample(g, [](double, double y, double) { return std::sin(y); });
        CHECK(std::abs(cross_helicity_primed(s) - cross_helicity(s)) <= 1e-12 * kVol);
    }
}

TEST_CASE("weight registry and validation") {
    SUBCASE("built-ins validate at registration") { CHECK(weight_registry().size() == 4); }

    SUBCASE("unknown name is rejected") {
        CHECK_THROWS_AS(lookup_weight("no_such_weight"), std::invalid_argument);
    }

    SUBCASE("wrong derivatives are caught") {
        WeightFunction bad = make_weight("bad", [](const auto& sigma, const auto&) {
            auto z = zeros_like(sigma[0]);
            using S = std::decay_t<decltype(z)>;
            // claims df/dsigma1 = 2 while f = sigma1
            return WeightEvalT<S>{sigma[0], {2.0 * ones_like(sigma[0]), z, z}, {z, z, z}};
        });
        CHECK_THROWS_AS(validate_weight(bad), std::invalid_argument);
    }
}

TEST_CASE("generalized invariants degenerate to the Casimirs at unit weight") {
    const Grid g = small_grid();
    const ClebschState s = random_state(g, 331);
    const WeightFunction one = lookup_weight("one");
    CHECK(generalized_mass(s, one) == total_mass(s.rho));
    CHECK(generalized_helicity(s, one) == magnetic_helicity(s));
}

TEST_CASE("generalized mass with sigma1 weight is the mu1 integral") {
    const Grid g = small_grid();
    const ClebschState s = random_state(g, 341);
    const WeightFunction w = lookup_weight("sigma1");
    CHECK(rel_diff(generalized_mass(s, w), integrate(s.mu[0])) <= 1e-13);
}

TEST_CASE("advection and continuity residuals against the canonical tangent") {
    const Grid g = small_grid();
    const ClebschState s = random_state(g, 351, 1);
    const ClebschTangent sdot = canonical_rhs_unfiltered(s, kEos);
    const VectorField v = velocity_of<ScalarField>(s);
    const DualClebschFields d = dual_fields(s, sdot);

    SUBCASE("phi1 advects definitionally") {
        CHECK(advection_residual(d.phi[0], v) <= 1e-12);
    }

    SUBCASE("rho and mu1 obey the continuity law") {
        CHECK(continuity_residual(d.rho, v) <= 1e-12);
        CHECK(continuity_residual(d.mu[0], v) <= 1e-12);
    }

    SUBCASE("sigma1 advects by the quotient rule") {
        CHECK(advection_residual(d.mu[0] / d.rho, v) <= 1e-10);
    }

    SUBCASE("mismatched tangent is detected") {
        const ClebschTangent wrong = canonical_rhs_unfiltered(random_state(g, 352, 1), kEos);
        const DualClebschFields dw = dual_fields(s, wrong);
        CHECK(advection_residual(dw.phi[0], v) >= 1e-3);
        CHECK(continuity_residual(dw.rho, v) >= 1e-3);
    }
}

TEST_CASE("rule 5 chain rule agrees with differencing two evolved states") {
    const Grid g = small_grid();
    const ClebschState s = random_state(g, 371, 1);
    const ClebschTangent sdot = canonical_rhs_unfiltered(s, kEos);
    const DualClebschFields d = dual_fields(s, sdot);
    const std::array<DualScalarField, 3> sigma{d.mu[0] / d.rho, d.mu[1] / d.rho, d.mu[2] / d.rho};
    const DualScalarField lam =
        dot(grad(sigma[0]), cross(grad(sigma[1]), grad(d.phi[1])));

    auto lambda_at = [&](const ClebschState& t) {
        const std::array<ScalarField, 3> sig = sigma_fields(t);
        return dot(grad(sig[0]), cross(grad(sig[1]), grad(t.phi[1])));
    };
    const double dt = 1e-3;
    const ClebschState sp = rk4_step_clebsch(s, dt, kEos);
    const ClebschState sm = rk4_step_clebsch(s, -dt, kEos);
    const ScalarField fd = (lambda_at(sp) - lambda_at(sm)) / (2.0 * dt);
    const double scale = std::max(max_abs(lam.deriv), max_abs(fd));
    CHECK(max_abs(fd - lam.deriv) <= 1e-4 * std::max(scale, 1e-30));
}

TEST_CASE("rule closure suite") {
    const Grid g = small_grid();
    const ClebschState s = random_state(g, 361, 1);
    const ClebschTangent sdot = canonical_rhs_unfiltered(s, kEos);
    const ClebschTangent mismatched = canonical_rhs_unfiltered(random_state(g, 362, 1), kEos);
    const RuleReport report =
        rule_closure_suite(s, sdot, mismatched, lookup_weight("sin_phi1"));

    CHECK(report.checks.size() == 18); // 9 rules + 9 negative controls
    for (const auto& c : report.checks) {
        INFO(c.name, " residual=", c.residual, " tol=", c.tolerance);
        CHECK(c.pass);
    }
    CHECK(report.all_pass());
}

TEST_CASE("invariant series bookkeeping") {
    InvariantSeries series;
    series.names = {"H", "C1"};
    series.append(0.0, {10.0, 5.0});
    series.append(0.5, {10.1, 5.0});
    CHECK_THROWS_AS(series.append(0.4, {10.0, 5.0}), std::invalid_argument); // non-increasing
    CHECK_THROWS_AS(series.append(1.0, {10.0}), std::invalid_argument);     // wrong width

    const DriftSummary d = series.drift("H");
    CHECK(d.initial == 10.0);
    CHECK(d.max_rel == doctest::Approx(0.01).epsilon(1e-12));
    CHECK_THROWS_AS(series.drift("nope"), std::invalid_argument);

    const std::string csv = series.to_csv();
    CHECK(csv.rfind("time,H,C1\n", 0) == 0);
    CHECK(csv.find("\n0.5,") != std::string::npos);
}
