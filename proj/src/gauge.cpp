#include "cmhd/gauge.hpp"

#include <cmath>
#include <cstdio>

#include "cmhd/errors.hpp"

namespace cmhd {

namespace {
const double kScaleFloor = 1e-300;

std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}
} // namespace

GaugeGenerator GaugeGenerator::mass() { return {Kind::mass_c1, std::nullopt}; }
GaugeGenerator GaugeGenerator::magnetic_helicity() {
    return {Kind::magnetic_helicity_c2, std::nullopt};
}
GaugeGenerator GaugeGenerator::cross_helicity() { return {Kind::cross_helicity_c3, std::nullopt}; }
GaugeGenerator GaugeGenerator::generalized_mass(WeightFunction w) {
    validate_weight(w);
    return {Kind::generalized_mass, std::move(w)};
}
GaugeGenerator GaugeGenerator::generalized_helicity(WeightFunction w) {
    validate_weight(w);
    return {Kind::generalized_helicity, std::move(w)};
}
GaugeGenerator GaugeGenerator::non_conserving() {
    return {Kind::non_conserving_remark, std::nullopt};
}

GaugeGenerator GaugeGenerator::parse(const std::string& name) {
    if (name == "C1") return mass();
    if (name == "C2") return magnetic_helicity();
    if (name == "C3") return cross_helicity();
    if (name == "REMARK") return non_conserving();
    if (name.rfind("GM:", 0) == 0) return generalized_mass(lookup_weight(name.substr(3)));
    if (name.rfind("GH:", 0) == 0) return generalized_helicity(lookup_weight(name.substr(3)));
    throw std::invalid_argument(
        "unknown gauge generator '" + name +
        "' (expected C1 | C2 | C3 | GM:<weight> | GH:<weight> | REMARK)");
}

std::string GaugeGenerator::to_string() const {
    switch (kind) {
        case Kind::mass_c1: return "C1";
        case Kind::magnetic_helicity_c2: return "C2";
        case Kind::cross_helicity_c3: return "C3";
        case Kind::generalized_mass: return "GM:" + weight->name;
        case Kind::generalized_helicity: return "GH:" + weight->name;
        case Kind::non_conserving_remark: return "REMARK";
    }
    return "?";
}

ClebschTangent gauge_velocity(const ClebschState& s, const GaugeGenerator& g, double rho_floor) {
    validate(s, rho_floor);
    return {gauge_velocity_of<ScalarField>(s, g)};
}

InvarianceResiduals physical_invariance_infinitesimal(const ClebschState& s,
                                                      const GaugeGenerator& g, double rho_floor) {
    const ClebschTangent w = gauge_velocity(s, g, rho_floor);
    InvarianceResiduals res;

    // delta rho is just the generator's rho component (no flow moves it).
    res.rho = max_abs(w.rho) / std::max(max_abs(s.rho), kScaleFloor);

    // delta V = -grad(dphi0) - dsigma^l grad(alpha^l) - sigma^l grad(dalpha^l)
    //           - dtau^l grad(phi^l) - tau^l grad(dphi^l)
    // assembled term by term so the denominator records how much cancelled.
    VectorField dv = -grad(w.phi0);
    double scale_v = max_abs(dv);
    VectorField db(s.phi0.grid);
    double scale_b = 0.0;
    for (int l = 0; l < 3; ++l) {
        const ScalarField sigma = s.mu[l] / s.rho;
        const ScalarField tau = s.beta[l] / s.rho;
        const ScalarField dsigma = w.mu[l] / s.rho - sigma * (w.rho / s.rho);
        const ScalarField dtau = w.beta[l] / s.rho - tau * (w.rho / s.rho);

        const VectorField t1 = dsigma * grad(s.alpha[l]);
        const VectorField t2 = sigma * grad(w.alpha[l]);
        const VectorField t3 = dtau * grad(s.phi[l]);
        const VectorField t4 = tau * grad(w.phi[l]);
        dv -= t1 + t2 + t3 + t4;
        scale_v += max_abs(t1) + max_abs(t2) + max_abs(t3) + max_abs(t4);

        const VectorField b1 = cross(grad(dsigma), grad(s.phi[l]));
        const VectorField b2 = cross(grad(sigma), grad(w.phi[l]));
        db += b1 + b2;
        scale_b += max_abs(b1) + max_abs(b2);
    }
    res.v = max_abs(dv) / std::max(scale_v, kScaleFloor);
    res.b = max_abs(db) / std::max(scale_b, kScaleFloor);
    return res;
}

ClebschState flow(const ClebschState& s, const GaugeGenerator& g, double epsilon, int substeps,
                  double rho_floor) {
    if (substeps < 1) throw std::invalid_argument("flow: substeps must be >= 1");
    if (!std::isfinite(epsilon)) throw std::invalid_argument("flow: epsilon must be finite");
    validate(s, rho_floor);
    const double h = epsilon / substeps;
    ClebschState cur = s;
    for (int step = 0; step < substeps; ++step) {
        const ClebschTangent k1{gauge_velocity_of<ScalarField>(cur, g)};
        const ClebschTangent k2{gauge_velocity_of<ScalarField>(advanced(cur, k1, 0.5 * h), g)};
        const ClebschTangent k3{gauge_velocity_of<ScalarField>(advanced(cur, k2, 0.5 * h), g)};
        const ClebschTangent k4{gauge_velocity_of<ScalarField>(advanced(cur, k3, h), g)};
        const ClebschTangent incr =
            add_scaled(add_scaled(add_scaled(k1, k2, 2.0), k3, 2.0), k4, 1.0);
        cur = advanced(cur, incr, h / 6.0);
        try {
            validate(cur, rho_floor);
        } catch (const std::exception& e) {
            throw RuntimeAbort(std::string("gauge flow aborted at substep ") +
                                   std::to_string(step) + ": " + e.what(),
                               step);
        }
    }
    return cur;
}

namespace {

// Lambda^0 density per generator, evaluated on (possibly dual) fields built
// from the public dealiased reconstructions so charge values match the
// invariant evaluators bit for bit.
template <class S>
std::optional<S> lambda0_density(const ClebschPackT<S>& u, const GaugeGenerator& g) {
    using V = vector_of_t<S>;
    switch (g.kind) {
        case GaugeGenerator::Kind::mass_c1:
        case GaugeGenerator::Kind::generalized_mass:
            return std::nullopt; // identically zero
        case GaugeGenerator::Kind::magnetic_helicity_c2: {
            const V a = dealias(vector_potential_of(u));
            const V b = dealias(magnetic_of(u));
            return -dot(a, b);
        }
        case GaugeGenerator::Kind::cross_helicity_c3: {
            const V vp = dealias(primed_velocity_of(u));
            const V b = dealias(magnetic_of(u));
            return -dot(vp, b);
        }
        case GaugeGenerator::Kind::generalized_helicity: {
            const std::array<S, 3> sigma{u.mu[0] / u.rho, u.mu[1] / u.rho, u.mu[2] / u.rho};
            const auto fe = eval_weight(*g.weight, sigma, u.phi);
            const V a = dealias(vector_potential_of(u));
            const V b = dealias(magnetic_of(u));
            return -(fe.f * dot(a, b));
        }
        case GaugeGenerator::Kind::non_conserving_remark: {
            // The candidate density the two-path test must fail to close.
            const V a = dealias(vector_potential_of(u));
            const V b = dealias(magnetic_of(u));
            return -(u.phi0 * dot(a, b));
        }
    }
    return std::nullopt;
}

} // namespace

ActionVariation action_variation(const ClebschState& s, const ClebschTangent& sdot,
                                 const GaugeGenerator& g, double rho_floor) {
    validate(s, rho_floor);
    const DualClebschFields d = dual_fields(s, sdot);
    const DualClebschFields gv = gauge_velocity_of<DualScalarField>(d, g);

    ActionVariation out;
    // delta(p_i qdot^i) = dp_i qdot^i + p_i d/dt(dq^i), with qdot taken from
    // the canonical tangent and d/dt(dq^i) from the transported generator
    // (the dual derivative parts).
    std::vector<ScalarField> terms;
    terms.push_back(gv.rho.value * sdot.phi0);
    terms.push_back(s.rho * gv.phi0.deriv);
    for (int l = 0; l < 3; ++l) {
        terms.push_back(gv.mu[l].value * sdot.alpha[l]);
        terms.push_back(s.mu[l] * gv.alpha[l].deriv);
        terms.push_back(gv.beta[l].value * sdot.phi[l]);
        terms.push_back(s.beta[l] * gv.phi[l].deriv);
    }
    for (const auto& t : terms) {
        out.path_direct += integrate(t);
        out.term_scale += integrate(abs(t));
    }

    if (auto lam = lambda0_density<DualScalarField>(d, g)) {
        out.path_predicted = integrate(lam->deriv);
        out.term_scale += integrate(abs(lam->deriv));
    }
    out.gap = std::abs(out.path_direct - out.path_predicted);
    out.relative_gap = out.gap / std::max(out.term_scale, kScaleFloor);
    return out;
}

double noether_charge(const ClebschState& s, const GaugeGenerator& g, double rho_floor) {
    const ClebschTangent w = gauge_velocity(s, g, rho_floor);
    ScalarField pairing = s.rho * w.phi0;
    for (int l = 0; l < 3; ++l) pairing += s.mu[l] * w.alpha[l] + s.beta[l] * w.phi[l];
    double charge = integrate(pairing);
    if (auto lam = lambda0_density<ScalarField>(static_cast<const ClebschPackT<ScalarField>&>(s), g))
        charge -= integrate(*lam);
    return charge;
}

DriftSummary charge_conservation_probe(const std::vector<ClebschState>& trajectory,
                                       const GaugeGenerator& g, double rho_floor) {
    DriftSummary d;
    if (trajectory.empty()) return d;
    d.initial = noether_charge(trajectory.front(), g, rho_floor);
    const double denom = std::max(std::abs(d.initial), 1e-12);
    for (const auto& s : trajectory) {
        const double rel = std::abs(noether_charge(s, g, rho_floor) - d.initial) / denom;
        d.max_rel = std::max(d.max_rel, rel);
        d.final_rel = rel;
    }
    return d;
}

GaugeReport run_gauge_report(const ClebschState& s, const EquationOfState& eos,
                             const GaugeGenerator& g, double epsilon, int substeps,
                             double rho_floor) {
    if (substeps < 1) throw std::invalid_argument("run_gauge_report: substeps must be >= 1");
    GaugeReport rep;
    rep.generator = g.to_string();
    rep.epsilon = epsilon;
    rep.substeps = substeps;
    rep.infinitesimal = physical_invariance_infinitesimal(s, g, rho_floor);
    rep.action = action_variation(s, canonical_rhs_unfiltered(s, eos, rho_floor), g, rho_floor);
    rep.charge_before = noether_charge(s, g, rho_floor);

    const ScalarField rho0 = s.rho;
    const VectorField v0 = reconstruct_velocity(s, rho_floor);
    const VectorField b0 = reconstruct_magnetic(s, rho_floor);
    const double srho = std::max(max_abs(rho0), kScaleFloor);
    const double sv = std::max(max_abs(v0), kScaleFloor);
    const double sb = std::max(max_abs(b0), kScaleFloor);

    const double h = epsilon / substeps;
    ClebschState cur = s;
    for (int k = 0; k < substeps; ++k) {
        cur = flow(cur, g, h, 1, rho_floor);
        rep.substep_norms.push_back({(k + 1) * h,
                                     max_abs(cur.rho - rho0) / srho,
                                     max_abs(reconstruct_velocity(cur, rho_floor) - v0) / sv,
                                     max_abs(reconstruct_magnetic(cur, rho_floor) - b0) / sb});
    }
    rep.rel_change_rho = rep.substep_norms.empty() ? 0.0 : rep.substep_norms.back()[1];
    rep.rel_change_v = rep.substep_norms.empty() ? 0.0 : rep.substep_norms.back()[2];
    rep.rel_change_b = rep.substep_norms.empty() ? 0.0 : rep.substep_norms.back()[3];
    rep.charge_after = noether_charge(cur, g, rho_floor);
    return rep;
}

std::string GaugeReport::to_text() const {
    std::string out;
    auto kv = [&out](const std::string& k, const std::string& v) { out += k + ": " + v + "\n"; };
    kv("generator", generator);
    kv("epsilon", format_double(epsilon));
    kv("substeps", std::to_string(substeps));
    kv("infinitesimal_residual_rho", format_double(infinitesimal.rho));
    kv("infinitesimal_residual_v", format_double(infinitesimal.v));
    kv("infinitesimal_residual_b", format_double(infinitesimal.b));
    kv("finite_flow_rel_change_rho", format_double(rel_change_rho));
    kv("finite_flow_rel_change_v", format_double(rel_change_v));
    kv("finite_flow_rel_change_b", format_double(rel_change_b));
    kv("action_path_direct", format_double(action.path_direct));
    kv("action_path_predicted", format_double(action.path_predicted));
    kv("action_gap", format_double(action.gap));
    kv("action_term_scale", format_double(action.term_scale));
    kv("action_relative_gap", format_double(action.relative_gap));
    kv("noether_charge_before", format_double(charge_before));
    kv("noether_charge_after", format_double(charge_after));
    return out;
}

std::string GaugeReport::substeps_csv() const {
    std::string out = "epsilon,rel_change_rho,rel_change_v,rel_change_b\n";
    for (const auto& row : substep_norms) {
        out += format_double(row[0]) + "," + format_double(row[1]) + "," + format_double(row[2]) +
               "," + format_double(row[3]) + "\n";
    }
    return out;
}

} // namespace cmhd
