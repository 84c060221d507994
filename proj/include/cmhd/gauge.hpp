#pragma once

#include <optional>

#include "cmhd/invariants.hpp"

namespace cmhd {

/// A tagged choice of symmetry flow on the Clebsch fields. The C1/C2/C3
/// flows are generated by the noncanonical Casimirs; the generalized flows
/// by the weighted mass and helicity; the remark flow is a gauge
/// transformation that does not preserve the action.
struct GaugeGenerator {
    enum class Kind {
        mass_c1,
        magnetic_helicity_c2,
        cross_helicity_c3,
        generalized_mass,
        generalized_helicity,
        non_conserving_remark,
    };

    Kind kind = Kind::mass_c1;
    std::optional<WeightFunction> weight; // generalized kinds only

    static GaugeGenerator mass();
    static GaugeGenerator magnetic_helicity();
    static GaugeGenerator cross_helicity();
    static GaugeGenerator generalized_mass(WeightFunction w);
    static GaugeGenerator generalized_helicity(WeightFunction w);
    static GaugeGenerator non_conserving();

    /// "C1" | "C2" | "C3" | "GM:<weight>" | "GH:<weight>" | "REMARK".
    static GaugeGenerator parse(const std::string& name);
    std::string to_string() const;
};

/// The flow velocity du/d(eps) on the Clebsch fields: the closed-form
/// generator lists, with unlisted components zero. Generic over the field
/// kind: evaluating on dual fields transports the generator along the seed
/// (that is how the action-variation test assembles d/dt of the generator).
///
/// No spectral truncation is applied here: the gauge-invariance identities
/// are pointwise cancellations and survive discretization only if the tangent
/// is left untruncated.
template <class S>
ClebschPackT<S> gauge_velocity_of(const ClebschPackT<S>& u, const GaugeGenerator& g) {
    using V = vector_of_t<S>;
    ClebschPackT<S> out = zero_pack_like(u);
    switch (g.kind) {
        case GaugeGenerator::Kind::mass_c1: {
            out.phi0 = ones_like(u.phi0);
            break;
        }
        case GaugeGenerator::Kind::magnetic_helicity_c2: {
            const V b = magnetic_of(u);
            for (int l = 0; l < 3; ++l) {
                const S gphi_dot_b = dot(grad(u.phi[l]), b);
                out.phi0 = out.phi0 - 2.0 * (u.mu[l] / (u.rho * u.rho)) * gphi_dot_b;
                out.alpha[l] = 2.0 * (gphi_dot_b / u.rho);
                out.beta[l] = 2.0 * dot(grad(u.mu[l] / u.rho), b);
            }
            break;
        }
        case GaugeGenerator::Kind::cross_helicity_c3: {
            const V b = magnetic_of(u);
            const V omega = curl(velocity_of(u));
            for (int l = 0; l < 3; ++l) {
                const S sigma = u.mu[l] / u.rho;
                const S tau = u.beta[l] / u.rho;
                out.phi0 = out.phi0 + (u.mu[l] / (u.rho * u.rho)) * dot(grad(u.alpha[l]), b) +
                           (u.beta[l] / (u.rho * u.rho)) * dot(grad(u.phi[l]), b) -
                           (u.mu[l] / (u.rho * u.rho)) * dot(grad(u.phi[l]), omega);
                out.alpha[l] = (dot(grad(u.phi[l]), omega) - dot(grad(u.alpha[l]), b)) / u.rho;
                out.mu[l] = -dot(grad(sigma), b);
                out.phi[l] = -(dot(grad(u.phi[l]), b) / u.rho);
                out.beta[l] = dot(grad(sigma), omega) - dot(grad(tau), b);
            }
            break;
        }
        case GaugeGenerator::Kind::generalized_mass: {
            const std::array<S, 3> sigma{u.mu[0] / u.rho, u.mu[1] / u.rho, u.mu[2] / u.rho};
            const auto fe = eval_weight(*g.weight, sigma, u.phi);
            out.phi0 = fe.f;
            for (int l = 0; l < 3; ++l) {
                out.phi0 = out.phi0 - sigma[l] * fe.f1[l];
                out.alpha[l] = fe.f1[l];
                out.beta[l] = -(u.rho * fe.f2[l]);
            }
            break;
        }
        case GaugeGenerator::Kind::generalized_helicity: {
            const std::array<S, 3> sigma{u.mu[0] / u.rho, u.mu[1] / u.rho, u.mu[2] / u.rho};
            const auto fe = eval_weight(*g.weight, sigma, u.phi);
            const V a = vector_potential_of(u);
            const V b = magnetic_of(u);
            const S ab = dot(a, b);
            const V p = fe.f * b + curl(fe.f * a); // f B + curl(f A)
            for (int l = 0; l < 3; ++l) {
                const S e_l = fe.f1[l] * ab + dot(grad(u.phi[l]), p);
                out.phi0 = out.phi0 - sigma[l] * (e_l / u.rho);
                out.alpha[l] = e_l / u.rho;
                out.beta[l] = div(sigma[l] * p) - fe.f2[l] * ab;
            }
            break;
        }
        case GaugeGenerator::Kind::non_conserving_remark: {
            const V b = magnetic_of(u);
            for (int l = 0; l < 3; ++l) {
                const S gphi_dot_b = dot(grad(u.phi[l]), b);
                out.phi0 = out.phi0 - u.phi0 * (u.mu[l] / (u.rho * u.rho)) * gphi_dot_b;
                out.alpha[l] = u.phi0 * (gphi_dot_b / u.rho);
                out.beta[l] = u.phi0 * dot(grad(u.mu[l] / u.rho), b);
            }
            break;
        }
    }
    return out;
}

ClebschTangent gauge_velocity(const ClebschState& s, const GaugeGenerator& g,
                              double rho_floor = 0.1);

/// Max-norm changes of (rho, V, B) under the linearized reconstruction along
/// the generator, each normalized by the sum of the magnitudes of the terms
/// that cancel (so a small residual certifies a genuine cancellation).
struct InvarianceResiduals {
    double rho = 0.0;
    double v = 0.0;
    double b = 0.0;
    double max() const { return std::max(rho, std::max(v, b)); }
};

InvarianceResiduals physical_invariance_infinitesimal(const ClebschState& s,
                                                      const GaugeGenerator& g,
                                                      double rho_floor = 0.1);

/// Classical RK4 integration of du/d(eps) = gauge_velocity(u) up to eps.
ClebschState flow(const ClebschState& s, const GaugeGenerator& g, double epsilon, int substeps,
                  double rho_floor = 0.1);

/// The action variation computed two ways: (i) the first variation of the
/// canonical one-form assembled from the transported generator, and (ii) the
/// predicted temporal part d/dt Int(Lambda^0) with Lambda^0 from the
/// per-generator table {C1: 0, C2: -A.B, C3: -V'.B, GM: 0, GH: -f A.B,
/// remark candidate: -phi0 A.B}. For the action-preserving flows the two
/// agree; the remark flow leaves a finite gap.
struct ActionVariation {
    double path_direct = 0.0;    // Int(delta L) from the one-form terms
    double path_predicted = 0.0; // d/dt Int(Lambda^0)
    double gap = 0.0;
    double term_scale = 0.0; // sum of |term| integrals before cancellation
    double relative_gap = 0.0;
};

ActionVariation action_variation(const ClebschState& s, const ClebschTangent& sdot,
                                 const GaugeGenerator& g, double rho_floor = 0.1);

/// Int(rho dphi0 + mu^l dalpha^l + beta^l dphi^l - Lambda^0): equals the
/// generating invariant (total mass, magnetic helicity, primed cross
/// helicity, or the weighted analogues).
double noether_charge(const ClebschState& s, const GaugeGenerator& g, double rho_floor = 0.1);

DriftSummary charge_conservation_probe(const std::vector<ClebschState>& trajectory,
                                       const GaugeGenerator& g, double rho_floor = 0.1);

/// Everything the `flow` CLI subcommand reports about one finite gauge flow.
struct GaugeReport {
    std::string generator;
    double epsilon = 0.0;
    int substeps = 0;
    InvarianceResiduals infinitesimal;
    double rel_change_rho = 0.0;
    double rel_change_v = 0.0;
    double rel_change_b = 0.0;
    ActionVariation action;
    double charge_before = 0.0;
    double charge_after = 0.0;
    // per substep: eps reached, relative changes of (rho, V, B) so far
    std::vector<std::array<double, 4>> substep_norms;

    std::string to_text() const;
    std::string substeps_csv() const;
};

GaugeReport run_gauge_report(const ClebschState& s, const EquationOfState& eos,
                             const GaugeGenerator& g, double epsilon, int substeps,
                             double rho_floor = 0.1);

} // namespace cmhd
