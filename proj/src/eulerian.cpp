#include "cmhd/eulerian.hpp"

namespace cmhd {

PhysicalState make_zero_physical_state(const Grid& g, double rho0) {
    return {ScalarField::constant(g, rho0), VectorField(g), VectorField(g), 0.0};
}

PhysicalTangent make_zero_physical_tangent(const Grid& g) {
    return {ScalarField(g), VectorField(g), VectorField(g)};
}

void validate(const PhysicalState& u, const PhysicalStateTolerances& tol) {
    require_same_grid(u.rho.grid, u.v.grid(), "PhysicalState");
    require_same_grid(u.rho.grid, u.b.grid(), "PhysicalState");
    require_finite(u.v, "PhysicalState.V");
    require_finite(u.b, "PhysicalState.B");
    require_rho_floor(u.rho, tol.rho_floor, "PhysicalState");
    const double bscale = max_abs(u.b);
    if (bscale > 0.0) {
        for (double m : component_means(u.b))
            if (std::abs(m) > tol.b_mean * bscale)
                throw std::invalid_argument("PhysicalState: B has a nonzero mean component");
        if (divergence_residual(u.b) > tol.b_divergence)
            throw std::invalid_argument("PhysicalState: B is not divergence-free");
    }
}

PhysicalState advanced(const PhysicalState& u, const PhysicalTangent& w, double c) {
    return {u.rho + c * w.rho, u.v + c * w.v, u.b + c * w.b, u.time};
}

PhysicalTangent add_scaled(const PhysicalTangent& a, const PhysicalTangent& b, double c) {
    return {a.rho + c * b.rho, a.v + c * b.v, a.b + c * b.b};
}

PhysicalTangent scaled(const PhysicalTangent& a, double c) {
    return {c * a.rho, c * a.v, c * a.b};
}

namespace {

PhysicalTangent mhd_rhs_impl(const PhysicalState& u, const EquationOfState& eos, double rho_floor,
                             bool truncate) {
    require_rho_floor(u.rho, rho_floor, "mhd_rhs");
    require_finite(u.v, "mhd_rhs");
    require_finite(u.b, "mhd_rhs");
    const VectorField omega = curl(u.v);
    const VectorField j = curl(u.b);
    const ScalarField h = enthalpy(u.rho, eos, rho_floor);
    auto filter = [truncate](auto f) { return truncate ? dealias(f) : f; };
    PhysicalTangent out = make_zero_physical_tangent(u.rho.grid);
    out.rho = filter(-div(u.rho * u.v));
    out.v = filter(-cross(omega, u.v) - grad(h + 0.5 * norm_squared(u.v)) +
                   cross(j, u.b) / u.rho);
    out.b = filter(curl(cross(u.v, u.b)));
    return out;
}

} // namespace

PhysicalTangent mhd_rhs(const PhysicalState& u, const EquationOfState& eos, double rho_floor) {
    return mhd_rhs_impl(u, eos, rho_floor, true);
}

PhysicalTangent mhd_rhs_unfiltered(const PhysicalState& u, const EquationOfState& eos,
                                   double rho_floor) {
    return mhd_rhs_impl(u, eos, rho_floor, false);
}

PhysicalTangent poisson_apply(const PhysicalState& u, const PhysicalTangent& g,
                              double rho_floor) {
    require_rho_floor(u.rho, rho_floor, "poisson_apply");
    require_finite(g.rho, "poisson_apply");
    require_finite(g.v, "poisson_apply");
    require_finite(g.b, "poisson_apply");
    const VectorField omega = curl(u.v);
    PhysicalTangent out = make_zero_physical_tangent(u.rho.grid);
    out.rho = dealias(-div(g.v));
    out.v = dealias(-grad(g.rho) - cross(omega, g.v) / u.rho + cross(curl(g.b), u.b) / u.rho);
    out.b = dealias(curl(cross(g.v, u.b / u.rho)));
    return out;
}

PhysicalTangent hamiltonian_gradient(const PhysicalState& u, const EquationOfState& eos,
                                     double rho_floor) {
    require_rho_floor(u.rho, rho_floor, "hamiltonian_gradient");
    return {enthalpy(u.rho, eos, rho_floor) + 0.5 * norm_squared(u.v), u.rho * u.v, u.b};
}

EnergyBreakdown hamiltonian(const PhysicalState& u, const EquationOfState& eos,
                            double rho_floor) {
    require_rho_floor(u.rho, rho_floor, "hamiltonian");
    EnergyBreakdown e;
    e.kinetic = 0.5 * integrate(u.rho * norm_squared(u.v));
    e.thermal = integrate(u.rho * internal_energy(u.rho, eos, rho_floor));
    e.magnetic = 0.5 * integrate(norm_squared(u.b));
    return e;
}

PhysicalTangent casimir_gradient(const PhysicalState& u, Casimir which) {
    const Grid& g = u.rho.grid;
    PhysicalTangent out = make_zero_physical_tangent(g);
    switch (which) {
        case Casimir::mass:
            out.rho = ScalarField::constant(g, 1.0);
            break;
        case Casimir::magnetic_helicity:
            out.b = 2.0 * inverse_curl(u.b);
            break;
        case Casimir::cross_helicity:
            out.v = u.b;
            out.b = u.v;
            break;
    }
    return out;
}

double poisson_row_scale_rho(const PhysicalState& u, const PhysicalTangent& g) {
    return u.rho.grid.max_wavenumber() * max_abs(g.v);
}

double poisson_row_scale_v(const PhysicalState& u, const PhysicalTangent& g) {
    const double kmax = u.rho.grid.max_wavenumber();
    const double rinv = 1.0 / u.rho.values.minCoeff();
    return kmax * max_abs(g.rho) + rinv * max_abs(curl(u.v)) * max_abs(g.v) +
           rinv * kmax * max_abs(g.b) * max_abs(u.b);
}

double poisson_row_scale_b(const PhysicalState& u, const PhysicalTangent& g) {
    const double kmax = u.rho.grid.max_wavenumber();
    const double rinv = 1.0 / u.rho.values.minCoeff();
    return kmax * max_abs(g.v) * rinv * max_abs(u.b);
}

std::array<double, 3> casimir_nullity_residuals(const PhysicalState& u) {
    std::array<double, 3> res{};
    const Casimir cs[3] = {Casimir::mass, Casimir::magnetic_helicity, Casimir::cross_helicity};
    for (int i = 0; i < 3; ++i) {
        const PhysicalTangent grad_c = casimir_gradient(u, cs[i]);
        const PhysicalTangent img = poisson_apply(u, grad_c);
        const double floor = 1e-300;
        const double r_rho = max_abs(img.rho) / std::max(poisson_row_scale_rho(u, grad_c), floor);
        const double r_v = max_abs(img.v) / std::max(poisson_row_scale_v(u, grad_c), floor);
        const double r_b = max_abs(img.b) / std::max(poisson_row_scale_b(u, grad_c), floor);
        res[i] = std::max(r_rho, std::max(r_v, r_b));
    }
    return res;
}

double pairing(const PhysicalTangent& a, const PhysicalTangent& b) {
    return integrate(a.rho * b.rho + dot(a.v, b.v) + dot(a.b, b.b));
}

} // namespace cmhd
