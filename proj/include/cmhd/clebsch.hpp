#pragma once

#include <array>

#include "cmhd/dual.hpp"
#include "cmhd/eos.hpp"

namespace cmhd {

/// The 11-field Clebsch tuple (phi0, rho, alpha^l, mu^l, phi^l, beta^l),
/// l = 1..3, generic over the scalar-field kind so the same reconstruction
/// formulas run on plain fields and on dual (linearized) fields.
template <class S>
struct ClebschPackT {
    S phi0, rho;
    std::array<S, 3> alpha, mu, phi, beta;
};

using ClebschFields = ClebschPackT<ScalarField>;
using DualClebschFields = ClebschPackT<DualScalarField>;

/// Canonical state: q = (phi0, alpha, phi), p = (rho, mu, beta).
struct ClebschState : ClebschPackT<ScalarField> {
    double time = 0.0;
};

/// A perturbation or time derivative with the state's shape.
struct ClebschTangent : ClebschPackT<ScalarField> {};

ClebschState make_zero_clebsch_state(const Grid& g, double rho0 = 1.0);
ClebschTangent make_zero_clebsch_tangent(const Grid& g);

/// Shared grid, finiteness, and the density positivity floor.
void validate(const ClebschState& s, double rho_floor = 0.1);

/// Pointwise combination of two packs, field by field.
template <class S, class F>
ClebschPackT<S> zip_fields(const ClebschPackT<S>& a, const ClebschPackT<S>& b, F&& f) {
    return {f(a.phi0, b.phi0),
            f(a.rho, b.rho),
            {f(a.alpha[0], b.alpha[0]), f(a.alpha[1], b.alpha[1]), f(a.alpha[2], b.alpha[2])},
            {f(a.mu[0], b.mu[0]), f(a.mu[1], b.mu[1]), f(a.mu[2], b.mu[2])},
            {f(a.phi[0], b.phi[0]), f(a.phi[1], b.phi[1]), f(a.phi[2], b.phi[2])},
            {f(a.beta[0], b.beta[0]), f(a.beta[1], b.beta[1]), f(a.beta[2], b.beta[2])}};
}

template <class S, class F>
ClebschPackT<S> map_fields(const ClebschPackT<S>& a, F&& f) {
    return {f(a.phi0),
            f(a.rho),
            {f(a.alpha[0]), f(a.alpha[1]), f(a.alpha[2])},
            {f(a.mu[0]), f(a.mu[1]), f(a.mu[2])},
            {f(a.phi[0]), f(a.phi[1]), f(a.phi[2])},
            {f(a.beta[0]), f(a.beta[1]), f(a.beta[2])}};
}

template <class S>
ClebschPackT<S> zero_pack_like(const ClebschPackT<S>& a) {
    return map_fields(a, [](const S& f) { return zeros_like(f); });
}

/// s + c * w, preserving the state's time stamp.
ClebschState advanced(const ClebschState& s, const ClebschTangent& w, double c);
ClebschTangent add_scaled(const ClebschTangent& a, const ClebschTangent& b, double c);
ClebschTangent scaled(const ClebschTangent& a, double c);

/// Pair every state field with a tangent seed, for linearized evaluation.
DualClebschFields dual_fields(const ClebschPackT<ScalarField>& s, const ClebschPackT<ScalarField>& w);

// ---------------------------------------------------------------------------
// Reconstruction maps (raw formulas, no spectral truncation applied; the
// public reconstruct_* wrappers below dealias their output).
// ---------------------------------------------------------------------------

/// V = -grad(phi0) - (mu^l/rho) grad(alpha^l) - (beta^l/rho) grad(phi^l)
template <class S>
vector_of_t<S> velocity_of(const ClebschPackT<S>& u) {
    vector_of_t<S> v = -grad(u.phi0);
    for (int l = 0; l < 3; ++l)
        v = v - (u.mu[l] / u.rho) * grad(u.alpha[l]) - (u.beta[l] / u.rho) * grad(u.phi[l]);
    return v;
}

/// V' = V + grad(phi0): the phi0-free part of the velocity.
template <class S>
vector_of_t<S> primed_velocity_of(const ClebschPackT<S>& u) {
    vector_of_t<S> v = -((u.mu[0] / u.rho) * grad(u.alpha[0]));
    v = v - (u.beta[0] / u.rho) * grad(u.phi[0]);
    for (int l = 1; l < 3; ++l)
        v = v - (u.mu[l] / u.rho) * grad(u.alpha[l]) - (u.beta[l] / u.rho) * grad(u.phi[l]);
    return v;
}

/// B = grad(mu^l/rho) x grad(phi^l)
template <class S>
vector_of_t<S> magnetic_of(const ClebschPackT<S>& u) {
    vector_of_t<S> b = cross(grad(u.mu[0] / u.rho), grad(u.phi[0]));
    for (int l = 1; l < 3; ++l) b = b + cross(grad(u.mu[l] / u.rho), grad(u.phi[l]));
    return b;
}

/// A = (mu^l/rho) grad(phi^l); curl(A) = B identically.
template <class S>
vector_of_t<S> vector_potential_of(const ClebschPackT<S>& u) {
    vector_of_t<S> a = (u.mu[0] / u.rho) * grad(u.phi[0]);
    for (int l = 1; l < 3; ++l) a = a + (u.mu[l] / u.rho) * grad(u.phi[l]);
    return a;
}

// ---------------------------------------------------------------------------
// Public operations
// ---------------------------------------------------------------------------

VectorField reconstruct_velocity(const ClebschState& s, double rho_floor = 0.1);
VectorField reconstruct_magnetic(const ClebschState& s, double rho_floor = 0.1);
VectorField vector_potential_clebsch(const ClebschState& s, double rho_floor = 0.1);

/// H = Int( rho V^2/2 + rho E(rho) + B^2/2 ), with V and B assembled from the
/// Clebsch fields.
EnergyBreakdown hamiltonian(const ClebschState& s, const EquationOfState& eos,
                            double rho_floor = 0.1);

/// The canonical Hamilton equations, evaluated from the reconstructed
/// V, B, A and J = curl(B). Outputs are dealiased; this is the tangent the
/// time integrator consumes.
ClebschTangent canonical_rhs(const ClebschState& s, const EquationOfState& eos,
                             double rho_floor = 0.1);

/// Same equations without the final spectral truncation. The pointwise
/// conservation identities (advection laws, closure rules, action
/// variations) cancel exactly only along this tangent; truncating first
/// re-injects the removed band through later products.
ClebschTangent canonical_rhs_unfiltered(const ClebschState& s, const EquationOfState& eos,
                                        double rho_floor = 0.1);

/// L = rho phi0_dot + mu^l alpha^l_dot + beta^l phi^l_dot - H_density.
ScalarField lagrangian_density(const ClebschState& s, const ClebschTangent& sdot,
                               const EquationOfState& eos, double rho_floor = 0.1);

} // namespace cmhd
