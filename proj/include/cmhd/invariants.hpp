#pragma once

#include <functional>
#include <map>
#include <string>
#include <vector>

#include "cmhd/clebsch.hpp"
#include "cmhd/eulerian.hpp"

namespace cmhd {

/// Pointwise values of a weight f(sigma^l, phi^l) together with its six
/// partial derivatives f1^l = df/dsigma^l, f2^l = df/dphi^l. Weight
/// functions carry their own derivatives; the core never differentiates
/// them numerically.
template <class S>
struct WeightEvalT {
    S f;
    std::array<S, 3> f1;
    std::array<S, 3> f2;
};

using WeightValues = WeightEvalT<ScalarField>;

/// A weight is evaluable on plain fields and on dual (linearized) fields;
/// the dual route is what transports the weight and its partials along the
/// dynamics. make_weight below binds one templated formula to both.
struct WeightFunction {
    std::string name;
    std::function<WeightEvalT<ScalarField>(const std::array<ScalarField, 3>& sigma,
                                           const std::array<ScalarField, 3>& phi)>
        eval;
    std::function<WeightEvalT<DualScalarField>(const std::array<DualScalarField, 3>& sigma,
                                               const std::array<DualScalarField, 3>& phi)>
        eval_dual;
};

template <class F>
WeightFunction make_weight(std::string name, F&& formula) {
    WeightFunction w;
    w.name = std::move(name);
    w.eval = [formula](const std::array<ScalarField, 3>& s, const std::array<ScalarField, 3>& p) {
        return formula(s, p);
    };
    w.eval_dual = [formula](const std::array<DualScalarField, 3>& s,
                            const std::array<DualScalarField, 3>& p) { return formula(s, p); };
    return w;
}

inline WeightEvalT<ScalarField> eval_weight(const WeightFunction& w,
                                            const std::array<ScalarField, 3>& sigma,
                                            const std::array<ScalarField, 3>& phi) {
    return w.eval(sigma, phi);
}
inline WeightEvalT<DualScalarField> eval_weight(const WeightFunction& w,
                                                const std::array<DualScalarField, 3>& sigma,
                                                const std::array<DualScalarField, 3>& phi) {
    return w.eval_dual(sigma, phi);
}

/// Registration-time guard: compares the supplied partials against central
/// finite differences of f on random samples (and the dual evaluator against
/// directional differences); throws on mismatch beyond 1e-7 relative.
void validate_weight(const WeightFunction& w, std::uint64_t seed = 7u);

/// Built-in weights: "one", "sigma1", "sin_phi1", "cos_sigma2".
const std::map<std::string, WeightFunction>& weight_registry();
WeightFunction lookup_weight(const std::string& name);

std::array<ScalarField, 3> sigma_fields(const ClebschState& s);

// ---------------------------------------------------------------------------
// Conserved functionals
// ---------------------------------------------------------------------------

double total_mass(const ScalarField& rho);

/// Int(A . B); gauge-unambiguous on the torus for mean-free B, so the
/// Coulomb-gauge and the Clebsch potentials give the same value.
double magnetic_helicity(const VectorField& a, const VectorField& b);
double magnetic_helicity(const ClebschState& s, double rho_floor = 0.1);
double magnetic_helicity_coulomb(const VectorField& b);

double cross_helicity(const VectorField& v, const VectorField& b);
double cross_helicity(const ClebschState& s, double rho_floor = 0.1);

/// Int(V' . B) with V' = V + grad(phi0); equals Int(V . B) on the torus.
double cross_helicity_primed(const ClebschState& s, double rho_floor = 0.1);

double generalized_mass(const ClebschState& s, const WeightFunction& w, double rho_floor = 0.1);
double generalized_helicity(const ClebschState& s, const WeightFunction& w,
                            double rho_floor = 0.1);

// ---------------------------------------------------------------------------
// G1 / G2 residuals
// ---------------------------------------------------------------------------
// A derived quantity enters as a dual field: value plus its time derivative
// assembled by the chain rule along a state tangent (see dual_fields).

/// || P(a_dot + V . grad a) ||_inf over the natural term scale, where P is
/// the dealiasing projection onto the resolved modes.
double advection_residual(const DualScalarField& a, const VectorField& v);

/// || P(lambda_dot + div(lambda V)) ||_inf over the natural term scale.
double continuity_residual(const DualScalarField& lambda, const VectorField& v);

struct RuleCheck {
    std::string name;
    double residual = 0.0;
    double tolerance = 0.0;
    bool negative_control = false; // pass means residual >= tolerance
    bool pass = false;
};

struct RuleReport {
    std::vector<RuleCheck> checks;
    bool all_pass() const;
};

/// The closure rules for members assembled from {phi^l, sigma^l} (advected)
/// and {rho, mu^l, rho f} (densities), certified by residuals against the
/// state's own canonical tangent, with a mismatched tangent as a negative
/// control.
RuleReport rule_closure_suite(const ClebschState& s, const ClebschTangent& sdot,
                              const ClebschTangent& mismatched, const WeightFunction& w,
                              double tolerance = 1e-9, double negative_floor = 1e-3);

// ---------------------------------------------------------------------------
// Time series of invariants
// ---------------------------------------------------------------------------

struct DriftSummary {
    double initial = 0.0;
    double final_rel = 0.0;
    double max_rel = 0.0;
};

struct InvariantSeries {
    std::vector<std::string> names; // column names after "time"
    std::vector<double> times;
    std::vector<std::vector<double>> samples;

    void append(double t, std::vector<double> row);
    DriftSummary drift(const std::string& name, double floor = 1e-12) const;
    /// Header "time,<names...>", one row per sample, %.17g formatting.
    std::string to_csv() const;
};

} // namespace cmhd
