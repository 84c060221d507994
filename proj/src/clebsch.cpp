#include "cmhd/clebsch.hpp"

namespace cmhd {

ClebschState make_zero_clebsch_state(const Grid& g, double rho0) {
    ScalarField z(g);
    ScalarField rho = ScalarField::constant(g, rho0);
    return {{z, rho, {z, z, z}, {z, z, z}, {z, z, z}, {z, z, z}}, 0.0};
}

ClebschTangent make_zero_clebsch_tangent(const Grid& g) {
    ScalarField z(g);
    return {{z, z, {z, z, z}, {z, z, z}, {z, z, z}, {z, z, z}}};
}

void validate(const ClebschState& s, double rho_floor) {
    const Grid& g = s.phi0.grid;
    auto check = [&](const ScalarField& f, const char* name) {
        require_same_grid(g, f.grid, name);
        require_finite(f, name);
    };
    check(s.rho, "ClebschState.rho");
    check(s.phi0, "ClebschState.phi0");
    for (int l = 0; l < 3; ++l) {
        check(s.alpha[l], "ClebschState.alpha");
        check(s.mu[l], "ClebschState.mu");
        check(s.phi[l], "ClebschState.phi");
        check(s.beta[l], "ClebschState.beta");
    }
    require_rho_floor(s.rho, rho_floor, "ClebschState");
}

ClebschState advanced(const ClebschState& s, const ClebschTangent& w, double c) {
    ClebschState out{zip_fields<ScalarField>(s, w, [c](const ScalarField& a, const ScalarField& b) {
                         return a + c * b;
                     }),
                     s.time};
    return out;
}

ClebschTangent add_scaled(const ClebschTangent& a, const ClebschTangent& b, double c) {
    return {zip_fields<ScalarField>(a, b, [c](const ScalarField& x, const ScalarField& y) {
        return x + c * y;
    })};
}

ClebschTangent scaled(const ClebschTangent& a, double c) {
    return {map_fields<ScalarField>(a, [c](const ScalarField& x) { return c * x; })};
}

DualClebschFields dual_fields(const ClebschPackT<ScalarField>& s,
                              const ClebschPackT<ScalarField>& w) {
    auto d = [](const ScalarField& v, const ScalarField& der) {
        return DualScalarField::seeded(v, der);
    };
    return {d(s.phi0, w.phi0),
            d(s.rho, w.rho),
            {d(s.alpha[0], w.alpha[0]), d(s.alpha[1], w.alpha[1]), d(s.alpha[2], w.alpha[2])},
            {d(s.mu[0], w.mu[0]), d(s.mu[1], w.mu[1]), d(s.mu[2], w.mu[2])},
            {d(s.phi[0], w.phi[0]), d(s.phi[1], w.phi[1]), d(s.phi[2], w.phi[2])},
            {d(s.beta[0], w.beta[0]), d(s.beta[1], w.beta[1]), d(s.beta[2], w.beta[2])}};
}

VectorField reconstruct_velocity(const ClebschState& s, double rho_floor) {
    validate(s, rho_floor);
    return dealias(velocity_of<ScalarField>(s));
}

VectorField reconstruct_magnetic(const ClebschState& s, double rho_floor) {
    validate(s, rho_floor);
    return dealias(magnetic_of<ScalarField>(s));
}

VectorField vector_potential_clebsch(const ClebschState& s, double rho_floor) {
    validate(s, rho_floor);
    return dealias(vector_potential_of<ScalarField>(s));
}

EnergyBreakdown hamiltonian(const ClebschState& s, const EquationOfState& eos, double rho_floor) {
    validate(s, rho_floor);
    const VectorField v = velocity_of<ScalarField>(s);
    const VectorField b = magnetic_of<ScalarField>(s);
    EnergyBreakdown e;
    e.kinetic = 0.5 * integrate(s.rho * norm_squared(v));
    e.thermal = integrate(s.rho * internal_energy(s.rho, eos, rho_floor));
    e.magnetic = 0.5 * integrate(norm_squared(b));
    return e;
}

namespace {

ClebschTangent canonical_rhs_impl(const ClebschState& s, const EquationOfState& eos,
                                  double rho_floor, bool truncate) {
    validate(s, rho_floor);
    const VectorField v = velocity_of<ScalarField>(s);
    const VectorField b = magnetic_of<ScalarField>(s);
    const VectorField a = vector_potential_of<ScalarField>(s);
    const VectorField j = curl(b);
    const ScalarField h = enthalpy(s.rho, eos, rho_floor);
    auto filter = [truncate](ScalarField f) { return truncate ? dealias(f) : f; };

    ClebschTangent out = make_zero_clebsch_tangent(s.phi0.grid);
    out.phi0 = filter(-dot(v, grad(s.phi0)) + h - 0.5 * norm_squared(v) - dot(j, a) / s.rho);
    out.rho = filter(-div(s.rho * v));
    for (int l = 0; l < 3; ++l) {
        const ScalarField sigma = s.mu[l] / s.rho;
        out.alpha[l] = filter(-dot(v, grad(s.alpha[l])) + dot(j, grad(s.phi[l])) / s.rho);
        out.mu[l] = filter(-div(s.mu[l] * v));
        out.phi[l] = filter(-dot(v, grad(s.phi[l])));
        out.beta[l] = filter(-div(s.beta[l] * v) + dot(j, grad(sigma)));
    }
    return out;
}

} // namespace

ClebschTangent canonical_rhs(const ClebschState& s, const EquationOfState& eos, double rho_floor) {
    return canonical_rhs_impl(s, eos, rho_floor, true);
}

ClebschTangent canonical_rhs_unfiltered(const ClebschState& s, const EquationOfState& eos,
                                        double rho_floor) {
    return canonical_rhs_impl(s, eos, rho_floor, false);
}

ScalarField lagrangian_density(const ClebschState& s, const ClebschTangent& sdot,
                               const EquationOfState& eos, double rho_floor) {
    validate(s, rho_floor);
    require_same_grid(s.phi0.grid, sdot.phi0.grid, "lagrangian_density");
    const VectorField v = velocity_of<ScalarField>(s);
    const VectorField b = magnetic_of<ScalarField>(s);
    const ScalarField h_density =
        0.5 * (s.rho * norm_squared(v)) + s.rho * internal_energy(s.rho, eos, rho_floor) +
        0.5 * norm_squared(b);
    ScalarField one_form = s.rho * sdot.phi0;
    for (int l = 0; l < 3; ++l)
        one_form += s.mu[l] * sdot.alpha[l] + s.beta[l] * sdot.phi[l];
    return one_form - h_density;
}

} // namespace cmhd
