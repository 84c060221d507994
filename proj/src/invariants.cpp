#include "cmhd/invariants.hpp"

#include <cinttypes>
#include <cstdio>
#include <random>

namespace cmhd {

namespace {

const double kScaleFloor = 1e-300;

} // namespace

void validate_weight(const WeightFunction& w, std::uint64_t seed) {
    if (!w.eval || !w.eval_dual)
        throw std::invalid_argument("WeightFunction '" + w.name + "' has no evaluator");
    const Grid g(4, 4, 4);
    std::mt19937_64 rng(seed);
    auto uniform = [&rng]() { return (rng() >> 11) * 0x1.0p-53 * 2.0 - 1.0; };
    auto random_field = [&]() {
        ScalarField f(g);
        for (auto& x : f.values.reshaped()) x = uniform();
        return f;
    };
    const std::array<ScalarField, 3> sigma{random_field(), random_field(), random_field()};
    const std::array<ScalarField, 3> phi{random_field(), random_field(), random_field()};
    const WeightValues base = w.eval(sigma, phi);
    const double h = 1e-5;
    const double tol = 1e-7;

    // Supplied partials vs central differences of f, slot by slot.
    for (int slot = 0; slot < 6; ++slot) {
        auto shifted_f = [&](double shift) {
            auto s2 = sigma;
            auto p2 = phi;
            if (slot < 3)
                s2[slot] = s2[slot] + shift;
            else
                p2[slot - 3] = p2[slot - 3] + shift;
            return w.eval(s2, p2).f;
        };
        const ScalarField fd = (shifted_f(h) - shifted_f(-h)) / (2.0 * h);
        const ScalarField& supplied = slot < 3 ? base.f1[slot] : base.f2[slot - 3];
        const double scale = std::max(max_abs(supplied), std::max(max_abs(fd), 1e-6));
        if (max_abs(fd - supplied) > tol * scale)
            throw std::invalid_argument("WeightFunction '" + w.name +
                                        "': supplied derivative disagrees with finite differences");
    }

    // Dual evaluator vs directional differences of (f, f1, f2) along a
    // random seed. This also exercises whatever curvature the formula
    // carries implicitly.
    const std::array<ScalarField, 3> ds{random_field(), random_field(), random_field()};
    const std::array<ScalarField, 3> dp{random_field(), random_field(), random_field()};
    std::array<DualScalarField, 3> sig_dual{DualScalarField::seeded(sigma[0], ds[0]),
                                            DualScalarField::seeded(sigma[1], ds[1]),
                                            DualScalarField::seeded(sigma[2], ds[2])};
    std::array<DualScalarField, 3> phi_dual{DualScalarField::seeded(phi[0], dp[0]),
                                            DualScalarField::seeded(phi[1], dp[1]),
                                            DualScalarField::seeded(phi[2], dp[2])};
    const WeightEvalT<DualScalarField> dual = w.eval_dual(sig_dual, phi_dual);
    auto shifted_all = [&](double shift) {
        std::array<ScalarField, 3> s2{sigma[0] + shift * ds[0], sigma[1] + shift * ds[1],
                                      sigma[2] + shift * ds[2]};
        std::array<ScalarField, 3> p2{phi[0] + shift * dp[0], phi[1] + shift * dp[1],
                                      phi[2] + shift * dp[2]};
        return w.eval(s2, p2);
    };
    const WeightValues plus = shifted_all(h);
    const WeightValues minus = shifted_all(-h);
    auto check_dir = [&](const ScalarField& fp, const ScalarField& fm, const DualScalarField& d,
                         const char* what) {
        const ScalarField fd = (fp - fm) / (2.0 * h);
        const double scale = std::max(max_abs(d.deriv), std::max(max_abs(fd), 1e-6));
        if (max_abs(fd - d.deriv) > tol * scale)
            throw std::invalid_argument("WeightFunction '" + w.name + "': dual evaluation of " +
                                        what + " disagrees with directional differences");
    };
    check_dir(plus.f, minus.f, dual.f, "f");
    for (int l = 0; l < 3; ++l) {
        check_dir(plus.f1[l], minus.f1[l], dual.f1[l], "f1");
        check_dir(plus.f2[l], minus.f2[l], dual.f2[l], "f2");
    }
}

const std::map<std::string, WeightFunction>& weight_registry() {
    static const std::map<std::string, WeightFunction> registry = [] {
        std::map<std::string, WeightFunction> m;
        auto add = [&m](WeightFunction w) {
            validate_weight(w);
            m.emplace(w.name, std::move(w));
        };
        add(make_weight("one", [](const auto& sigma, const auto&) {
            auto z = zeros_like(sigma[0]);
            return WeightEvalT<std::decay_t<decltype(z)>>{ones_like(sigma[0]), {z, z, z}, {z, z, z}};
        }));
        add(make_weight("sigma1", [](const auto& sigma, const auto&) {
            auto z = zeros_like(sigma[0]);
            return WeightEvalT<std::decay_t<decltype(z)>>{sigma[0],
                                                          {ones_like(sigma[0]), z, z},
                                                          {z, z, z}};
        }));
        add(make_weight("sin_phi1", [](const auto& sigma, const auto& phi) {
            auto z = zeros_like(sigma[0]);
            return WeightEvalT<std::decay_t<decltype(z)>>{sin(phi[0]),
                                                          {z, z, z},
                                                          {cos(phi[0]), z, z}};
        }));
        add(make_weight("cos_sigma2", [](const auto& sigma, const auto&) {
            auto z = zeros_like(sigma[0]);
            return WeightEvalT<std::decay_t<decltype(z)>>{cos(sigma[1]),
                                                          {z, -sin(sigma[1]), z},
                                                          {z, z, z}};
        }));
        return m;
    }();
    return registry;
}

WeightFunction lookup_weight(const std::string& name) {
    const auto& reg = weight_registry();
    auto it = reg.find(name);
    if (it == reg.end()) throw std::invalid_argument("unknown weight function '" + name + "'");
    return it->second;
}

std::array<ScalarField, 3> sigma_fields(const ClebschState& s) {
    return {s.mu[0] / s.rho, s.mu[1] / s.rho, s.mu[2] / s.rho};
}

double total_mass(const ScalarField& rho) { return integrate(rho); }

double magnetic_helicity(const VectorField& a, const VectorField& b) {
    return integrate(dot(a, b));
}

double magnetic_helicity(const ClebschState& s, double rho_floor) {
    return magnetic_helicity(vector_potential_clebsch(s, rho_floor),
                             reconstruct_magnetic(s, rho_floor));
}

double magnetic_helicity_coulomb(const VectorField& b) {
    return magnetic_helicity(inverse_curl(b), b);
}

double cross_helicity(const VectorField& v, const VectorField& b) { return integrate(dot(v, b)); }

double cross_helicity(const ClebschState& s, double rho_floor) {
    return cross_helicity(reconstruct_velocity(s, rho_floor), reconstruct_magnetic(s, rho_floor));
}

double cross_helicity_primed(const ClebschState& s, double rho_floor) {
    validate(s, rho_floor);
    return integrate(dot(dealias(primed_velocity_of<ScalarField>(s)),
                         reconstruct_magnetic(s, rho_floor)));
}

double generalized_mass(const ClebschState& s, const WeightFunction& w, double rho_floor) {
    validate(s, rho_floor);
    const WeightValues vals = w.eval(sigma_fields(s), s.phi);
    return integrate(s.rho * vals.f);
}

double generalized_helicity(const ClebschState& s, const WeightFunction& w, double rho_floor) {
    validate(s, rho_floor);
    const WeightValues vals = w.eval(sigma_fields(s), s.phi);
    const VectorField a = vector_potential_clebsch(s, rho_floor);
    const VectorField b = reconstruct_magnetic(s, rho_floor);
    return integrate(vals.f * dot(a, b));
}

double advection_residual(const DualScalarField& a, const VectorField& v) {
    const ScalarField transport = dot(v, grad(a.value));
    const double scale = max_abs(a.deriv) + max_abs(transport);
    return max_abs(dealias(a.deriv + transport)) / std::max(scale, kScaleFloor);
}

double continuity_residual(const DualScalarField& lambda, const VectorField& v) {
    const ScalarField flux_div = div(lambda.value * v);
    const double scale = max_abs(lambda.deriv) + max_abs(flux_div);
    return max_abs(dealias(lambda.deriv + flux_div)) / std::max(scale, kScaleFloor);
}

RuleReport rule_closure_suite(const ClebschState& s, const ClebschTangent& sdot,
                              const ClebschTangent& mismatched, const WeightFunction& w,
                              double tolerance, double negative_floor) {
    RuleReport report;
    const VectorField v = velocity_of<ScalarField>(s);

    auto run = [&](const ClebschTangent& tangent, bool negative, const std::string& suffix) {
        const DualClebschFields d = dual_fields(s, tangent);
        const std::array<DualScalarField, 3> sigma{d.mu[0] / d.rho, d.mu[1] / d.rho,
                                                   d.mu[2] / d.rho};

        auto record = [&](const std::string& name, double residual) {
            RuleCheck c;
            c.name = name + suffix;
            c.residual = residual;
            c.negative_control = negative;
            c.tolerance = negative ? negative_floor : tolerance;
            c.pass = negative ? residual >= negative_floor : residual <= tolerance;
            report.checks.push_back(std::move(c));
        };

        // rule 1: linear combinations stay in G2
        record("rule1_2rho", continuity_residual(2.0 * d.rho, v));
        record("rule1_rho_mu1_combo", continuity_residual(0.7 * d.rho + 1.3 * d.mu[0], v));
        // rule 2: smooth functions of advected scalars stay advected
        record("rule2_sin_phi1_sigma2", advection_residual(sin(d.phi[0]) * sigma[1], v));
        // rule 3: the ratio of two densities is advected
        record("rule3_sigma1", advection_residual(sigma[0], v));
        // rule 4: advected scalar times density is a density
        record("rule4_phi1_rho", continuity_residual(d.phi[0] * d.rho, v));
        // rule 5: grad a . (grad b x grad c) is a density
        record("rule5_sigma1_sigma2_phi2",
               continuity_residual(dot(grad(sigma[0]), cross(grad(sigma[1]), grad(d.phi[1]))), v));
        // A . B: the rule-1 sum of rule-5 generators
        const DualVectorField a_hat = vector_potential_of<DualScalarField>(d);
        const DualVectorField b_hat = magnetic_of<DualScalarField>(d);
        record("ab_density", continuity_residual(dot(a_hat, b_hat), v));
        // rho f(sigma, phi): the generalized-mass density
        const DualScalarField f = eval_weight(w, sigma, {d.phi[0], d.phi[1], d.phi[2]}).f;
        record("rho_weight_density", continuity_residual(d.rho * f, v));
        // phi^l is advected by definition of the canonical equations
        record("phi1_advected", advection_residual(d.phi[0], v));
    };

    run(sdot, false, "");
    run(mismatched, true, "_negative_control");
    return report;
}

void InvariantSeries::append(double t, std::vector<double> row) {
    if (row.size() != names.size())
        throw std::invalid_argument("InvariantSeries: row width does not match column names");
    if (!times.empty() && t <= times.back())
        throw std::invalid_argument("InvariantSeries: time stamps must increase strictly");
    times.push_back(t);
    samples.push_back(std::move(row));
}

DriftSummary InvariantSeries::drift(const std::string& name, double floor) const {
    auto it = std::find(names.begin(), names.end(), name);
    if (it == names.end()) throw std::invalid_argument("InvariantSeries: no column '" + name + "'");
    const std::size_t col = std::size_t(it - names.begin());
    DriftSummary d;
    if (samples.empty()) return d;
    d.initial = samples.front()[col];
    const double denom = std::max(std::abs(d.initial), floor);
    for (const auto& row : samples) {
        const double rel = std::abs(row[col] - d.initial) / denom;
        d.max_rel = std::max(d.max_rel, rel);
        d.final_rel = rel;
    }
    return d;
}

std::string InvariantSeries::to_csv() const {
    std::string out = "time";
    for (const auto& n : names) out += "," + n;
    out += "\n";
    char buf[40];
    for (std::size_t r = 0; r < times.size(); ++r) {
        std::snprintf(buf, sizeof buf, "%.17g", times[r]);
        out += buf;
        for (double v : samples[r]) {
            std::snprintf(buf, sizeof buf, "%.17g", v);
            out += ",";
            out += buf;
        }
        out += "\n";
    }
    return out;
}

bool RuleReport::all_pass() const {
    for (const auto& c : checks)
        if (!c.pass) return false;
    return true;
}

} // namespace cmhd
