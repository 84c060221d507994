#pragma once

#include "cmhd/eos.hpp"
#include "cmhd/spectral.hpp"

namespace cmhd {

/// Eulerian state u = (rho, V, B). B must be divergence-free with mean-free
/// components; both are checked by validate().
struct PhysicalState {
    ScalarField rho;
    VectorField v;
    VectorField b;
    double time = 0.0;
};

struct PhysicalTangent {
    ScalarField rho;
    VectorField v;
    VectorField b;
};

PhysicalState make_zero_physical_state(const Grid& g, double rho0 = 1.0);
PhysicalTangent make_zero_physical_tangent(const Grid& g);

struct PhysicalStateTolerances {
    double rho_floor = 0.1;
    double b_divergence = 1e-10;
    double b_mean = 1e-10;
};

void validate(const PhysicalState& u, const PhysicalStateTolerances& tol = {});

PhysicalState advanced(const PhysicalState& u, const PhysicalTangent& w, double c);
PhysicalTangent add_scaled(const PhysicalTangent& a, const PhysicalTangent& b, double c);
PhysicalTangent scaled(const PhysicalTangent& a, double c);

/// The ideal-MHD right-hand side in curl form:
///   rho_t = -div(V rho)
///   V_t   = -(curl V) x V - grad(h + V^2/2) + (curl B) x B / rho
///   B_t   = curl(V x B)
/// Outputs are dealiased.
PhysicalTangent mhd_rhs(const PhysicalState& u, const EquationOfState& eos,
                        double rho_floor = 0.1);

/// Same right-hand side without the final spectral truncation (see
/// canonical_rhs_unfiltered for when this matters).
PhysicalTangent mhd_rhs_unfiltered(const PhysicalState& u, const EquationOfState& eos,
                                   double rho_floor = 0.1);

/// The noncanonical Poisson operator applied to a gradient-like tangent g:
///   row_rho = -div(g_V)
///   row_V   = -grad(g_rho) - (curl V) x g_V / rho + (curl g_B) x B / rho
///   row_B   = curl(g_V x B / rho)
/// Outputs are dealiased with the same placement as mhd_rhs.
PhysicalTangent poisson_apply(const PhysicalState& u, const PhysicalTangent& g,
                              double rho_floor = 0.1);

/// Gradient of H = Int(rho V^2/2 + rho E + B^2/2): (h + V^2/2, rho V, B).
PhysicalTangent hamiltonian_gradient(const PhysicalState& u, const EquationOfState& eos,
                                     double rho_floor = 0.1);

EnergyBreakdown hamiltonian(const PhysicalState& u, const EquationOfState& eos,
                            double rho_floor = 0.1);

enum class Casimir { mass, magnetic_helicity, cross_helicity };

/// dC1 = (1, 0, 0); dC2 = (0, 0, 2A) with A = inverse_curl(B); dC3 = (0, B, V).
PhysicalTangent casimir_gradient(const PhysicalState& u, Casimir which);

/// ||J dC_i||_inf normalized by the natural scale of each operator row
/// (products of operand norms, so cancellations inside a row do not hide in
/// the denominator). Near zero iff the gradient lies in the kernel of J.
std::array<double, 3> casimir_nullity_residuals(const PhysicalState& u);

/// Same row-scale normalization, reusable for residual diagnostics.
double poisson_row_scale_rho(const PhysicalState& u, const PhysicalTangent& g);
double poisson_row_scale_v(const PhysicalState& u, const PhysicalTangent& g);
double poisson_row_scale_b(const PhysicalState& u, const PhysicalTangent& g);

/// Discrete pairing <a, b> = Int(a_rho b_rho + a_V . b_V + a_B . b_B).
double pairing(const PhysicalTangent& a, const PhysicalTangent& b);

} // namespace cmhd
