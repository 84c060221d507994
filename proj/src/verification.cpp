#include "cmhd/verification.hpp"

#include <cmath>
#include <future>

namespace cmhd {

CheckResult CheckResult::upper(std::string suite, std::string name, double measured, double tol) {
    CheckResult c;
    c.suite = std::move(suite);
    c.name = std::move(name);
    c.measured = measured;
    c.tolerance = tol;
    c.kind = Kind::upper_bound;
    c.pass = measured <= tol;
    return c;
}

CheckResult CheckResult::lower(std::string suite, std::string name, double measured, double tol,
                               std::string detail) {
    CheckResult c;
    c.suite = std::move(suite);
    c.name = std::move(name);
    c.measured = measured;
    c.tolerance = tol;
    c.kind = Kind::lower_bound;
    c.pass = measured >= tol;
    c.detail = std::move(detail);
    return c;
}

CheckResult CheckResult::range(std::string suite, std::string name, double measured, double lo,
                               double hi) {
    CheckResult c;
    c.suite = std::move(suite);
    c.name = std::move(name);
    c.measured = measured;
    c.tolerance = lo;
    c.tolerance_high = hi;
    c.kind = Kind::range;
    c.pass = measured >= lo && measured <= hi;
    return c;
}

namespace {

using Checks = std::vector<CheckResult>;

ClebschTangent random_clebsch_tangent(const Grid& g, int cap, double amp, std::uint64_t seed) {
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

double rel_diff(double a, double b) {
    return std::abs(a - b) / std::max(std::max(std::abs(a), std::abs(b)), 1e-300);
}

std::vector<GaugeGenerator> six_generators() {
    return {GaugeGenerator::mass(),
            GaugeGenerator::magnetic_helicity(),
            GaugeGenerator::cross_helicity(),
            GaugeGenerator::generalized_mass(lookup_weight("sin_phi1")),
            GaugeGenerator::generalized_helicity(lookup_weight("cos_sigma2")),
            GaugeGenerator::non_conserving()};
}

std::string slug(const GaugeGenerator& g) {
    std::string s = g.to_string();
    for (auto& c : s) {
        if (c == ':') c = '_';
        c = char(std::tolower(static_cast<unsigned char>(c)));
    }
    return s;
}

// --------------------------------------------------------------------------
// operators: the spectral calculus identities
// --------------------------------------------------------------------------
Checks suite_operators(const SimulationConfig& cfg) {
    Checks out;
    const Grid& g = cfg.grid;
    const int cap = cfg.initial.mode_cap;
    const std::uint64_t seed = cfg.initial.seed;
    const ScalarField f = random_band_limited_field(g, cap, 0.3, seed + 9001);
    const VectorField v{random_band_limited_field(g, cap, 0.3, seed + 9002),
                        random_band_limited_field(g, cap, 0.3, seed + 9003),
                        random_band_limited_field(g, cap, 0.3, seed + 9004)};

    out.push_back(CheckResult::upper("operators", "div_curl",
                                     max_abs(div(curl(v))) / std::max(max_abs(v), 1e-30), 1e-12));
    out.push_back(CheckResult::upper("operators", "curl_grad",
                                     max_abs(curl(grad(f))) / std::max(max_abs(f), 1e-30), 1e-12));
    {
        const double lhs = integrate(dot(grad(f), v));
        const double rhs = -integrate(f * div(v));
        const double scale = std::abs(lhs) + std::abs(rhs) + max_abs(f) * max_abs(v);
        out.push_back(CheckResult::upper("operators", "integration_by_parts",
                                         std::abs(lhs - rhs) / scale, 1e-11));
    }
    {
        const VectorField b = curl(v); // solenoidal and mean-free by construction
        const VectorField a = inverse_curl(b);
        out.push_back(CheckResult::upper("operators", "inverse_curl_round_trip",
                                         max_abs(curl(a) - b) / std::max(max_abs(b), 1e-30),
                                         1e-11));
    }
    {
        const ScalarField h = random_band_limited_field(g, cap, 0.4, seed + 9005) + 0.9;
        const double gap = std::abs(integrate(f + 2.5 * h) - (integrate(f) + 2.5 * integrate(h)));
        out.push_back(CheckResult::upper("operators", "integrate_linearity",
                                         gap / (g.volume() * (max_abs(f) + max_abs(h))), 1e-13));
    }
    {
        ScalarField noise = f; // full-spectrum through pointwise nonlinearity
        noise.values = noise.values.sin() + 0.3 * noise.values.square();
        const ScalarField once = dealias(noise);
        out.push_back(CheckResult::upper("operators", "dealias_idempotent",
                                         max_abs(dealias(once) - once) /
                                             std::max(max_abs(once), 1e-30),
                                         1e-13));
        out.push_back(CheckResult::upper(
            "operators", "dealias_norm_nonincreasing",
            std::max(rms(once) / std::max(rms(noise), 1e-300) - 1.0, 0.0), 1e-13));
    }
    return out;
}

// --------------------------------------------------------------------------
// gradients: the canonical formulation against its Hamiltonian
// --------------------------------------------------------------------------
Checks suite_gradients(const SimulationConfig& cfg) {
    Checks out;
    const Grid& g = cfg.grid;
    const ClebschState s = make_initial_state(g, cfg.initial, cfg.rho_floor);

    const VectorField a = vector_potential_clebsch(s, cfg.rho_floor);
    const VectorField b = reconstruct_magnetic(s, cfg.rho_floor);
    out.push_back(CheckResult::upper("gradients", "curl_potential_matches_b",
                                     max_abs(curl(a) - b) / std::max(max_abs(b), 1e-30), 1e-11));
    out.push_back(CheckResult::upper("gradients", "b_divergence", divergence_residual(b), 1e-10));

    {
        // potential-form integrand versus the physical-field integrand
        VectorField u = grad(s.phi0);
        for (int l = 0; l < 3; ++l)
            u += (s.mu[l] / s.rho) * grad(s.alpha[l]) + (s.beta[l] / s.rho) * grad(s.phi[l]);
        VectorField braw = cross(grad(s.mu[0] / s.rho), grad(s.phi[0]));
        for (int l = 1; l < 3; ++l) braw += cross(grad(s.mu[l] / s.rho), grad(s.phi[l]));
        const double route_a =
            integrate(0.5 * (s.rho * norm_squared(u)) +
                      s.rho * internal_energy(s.rho, cfg.eos, cfg.rho_floor) +
                      0.5 * norm_squared(braw));
        out.push_back(CheckResult::upper(
            "gradients", "hamiltonian_two_routes",
            rel_diff(route_a, hamiltonian(s, cfg.eos, cfg.rho_floor).total()), 1e-12));
    }
    {
        const ClebschTangent rhs = canonical_rhs(s, cfg.eos, cfg.rho_floor);
        const double vol = g.volume();
        const double mass_flux =
            std::abs(integrate(rhs.rho)) / (vol * (max_abs(rhs.rho) + 1e-30));
        double mu_flux = 0.0;
        for (int l = 0; l < 3; ++l)
            mu_flux = std::max(mu_flux, std::abs(integrate(rhs.mu[l])) /
                                            (vol * (max_abs(rhs.mu[l]) + 1e-30)));
        out.push_back(CheckResult::upper("gradients", "rhs_mass_flux", mass_flux, 1e-11));
        out.push_back(CheckResult::upper("gradients", "rhs_mu_flux", mu_flux, 1e-11));
    }
    {
        // central-difference Gateaux derivative of H in 20 random directions
        const ClebschTangent rhs = canonical_rhs(s, cfg.eos, cfg.rho_floor);
        double worst = 0.0;
        for (int dir = 0; dir < 20; ++dir) {
            const ClebschTangent w = random_clebsch_tangent(g, cfg.initial.mode_cap, 0.1,
                                                            cfg.initial.seed + 600 + dir);
            // pairing terms kept separate so a direction with an accidentally
            // cancelling derivative is still measured against the magnitudes
            // that were summed
            std::vector<ScalarField> terms{rhs.phi0 * w.rho, -(rhs.rho * w.phi0)};
            for (int l = 0; l < 3; ++l) {
                terms.push_back(rhs.alpha[l] * w.mu[l]);
                terms.push_back(-(rhs.mu[l] * w.alpha[l]));
                terms.push_back(rhs.phi[l] * w.beta[l]);
                terms.push_back(-(rhs.beta[l] * w.phi[l]));
            }
            double analytic = 0.0;
            double term_scale = 0.0;
            for (const auto& t : terms) {
                const double v = integrate(t);
                analytic += v;
                term_scale += std::abs(v);
            }
            double best = std::numeric_limits<double>::infinity();
            for (double eps : {1e-2, 3e-3, 1e-3, 1e-4, 1e-5}) {
                const double fd =
                    (hamiltonian(advanced(s, w, eps), cfg.eos, cfg.rho_floor).total() -
                     hamiltonian(advanced(s, w, -eps), cfg.eos, cfg.rho_floor).total()) /
                    (2.0 * eps);
                const double scale =
                    std::max({std::abs(analytic), std::abs(fd), term_scale, 1e-300});
                best = std::min(best, std::abs(analytic - fd) / scale);
            }
            worst = std::max(worst, best);
        }
        out.push_back(CheckResult::upper("gradients", "gateaux_gradient", worst, 1e-6));
    }
    return out;
}

// --------------------------------------------------------------------------
// casimir: nullity, Hamiltonian-form consistency, antisymmetry
// --------------------------------------------------------------------------
Checks suite_casimir(const SimulationConfig& cfg) {
    Checks out;
    const Grid& g = cfg.grid;
    double worst[3] = {0.0, 0.0, 0.0};
    double worst_form = 0.0;
    for (int k = 0; k < 10; ++k) {
        auto recipe = cfg.initial;
        recipe.seed = cfg.initial.seed + 100 * k;
        const PhysicalState u =
            reconstruct_physical(make_initial_state(g, recipe, cfg.rho_floor), cfg.rho_floor);
        const auto res = casimir_nullity_residuals(u);
        for (int i = 0; i < 3; ++i) worst[i] = std::max(worst[i], res[i]);

        const PhysicalTangent direct = mhd_rhs(u, cfg.eos, cfg.rho_floor);
        const PhysicalTangent via =
            poisson_apply(u, hamiltonian_gradient(u, cfg.eos, cfg.rho_floor), cfg.rho_floor);
        worst_form = std::max(
            worst_form,
            std::max({max_abs(via.rho - direct.rho) / (max_abs(direct.rho) + 1e-30),
                      max_abs(via.v - direct.v) / (max_abs(direct.v) + 1e-30),
                      max_abs(via.b - direct.b) / (max_abs(direct.b) + 1e-30)}));
    }
    out.push_back(CheckResult::upper("casimir", "nullity_c1", worst[0], 1e-10));
    out.push_back(CheckResult::upper("casimir", "nullity_c2", worst[1], 1e-10));
    out.push_back(CheckResult::upper("casimir", "nullity_c3", worst[2], 1e-10));
    out.push_back(CheckResult::upper("casimir", "hamiltonian_form", worst_form, 1e-11));

    {
        const PhysicalState u =
            reconstruct_physical(make_initial_state(g, cfg.initial, cfg.rho_floor), cfg.rho_floor);
        const int cap = cfg.initial.mode_cap;
        auto tangent = [&](std::uint64_t seed) {
            return PhysicalTangent{random_band_limited_field(g, cap, 0.2, seed),
                                   {random_band_limited_field(g, cap, 0.2, seed + 1),
                                    random_band_limited_field(g, cap, 0.2, seed + 2),
                                    random_band_limited_field(g, cap, 0.2, seed + 3)},
                                   {random_band_limited_field(g, cap, 0.2, seed + 4),
                                    random_band_limited_field(g, cap, 0.2, seed + 5),
                                    random_band_limited_field(g, cap, 0.2, seed + 6)}};
        };
        double worst_pair = 0.0;
        for (int k = 0; k < 3; ++k) {
            const PhysicalTangent g1 = tangent(cfg.initial.seed + 7000 + 13 * k);
            const PhysicalTangent g2 = tangent(cfg.initial.seed + 7500 + 13 * k);
            const double lhs = pairing(g1, poisson_apply(u, g2, cfg.rho_floor));
            const double rhs = pairing(g2, poisson_apply(u, g1, cfg.rho_floor));
            worst_pair = std::max(worst_pair,
                                  std::abs(lhs + rhs) / (std::abs(lhs) + std::abs(rhs) + 1e-30));
        }
        out.push_back(CheckResult::upper("casimir", "antisymmetry", worst_pair, 1e-10));
    }
    return out;
}

// --------------------------------------------------------------------------
// gauge: invariance, finite flows, generator consistency
// --------------------------------------------------------------------------
Checks suite_gauge(const SimulationConfig& cfg) {
    Checks out;
    const ClebschState s = make_initial_state(cfg.grid, cfg.initial, cfg.rho_floor);
    const VectorField v0 = reconstruct_velocity(s, cfg.rho_floor);
    const VectorField b0 = reconstruct_magnetic(s, cfg.rho_floor);

    for (const auto& gen : six_generators()) {
        const InvarianceResiduals res = physical_invariance_infinitesimal(s, gen, cfg.rho_floor);
        out.push_back(CheckResult::upper("gauge", "invariance_" + slug(gen), res.max(), 1e-10));

        const ClebschState t = flow(s, gen, 0.1, 20, cfg.rho_floor);
        const double change =
            std::max({max_abs(t.rho - s.rho) / std::max(max_abs(s.rho), 1e-30),
                      max_abs(reconstruct_velocity(t, cfg.rho_floor) - v0) /
                          std::max(max_abs(v0), 1e-30),
                      max_abs(reconstruct_magnetic(t, cfg.rho_floor) - b0) /
                          std::max(max_abs(b0), 1e-30)});
        out.push_back(CheckResult::upper("gauge", "flow_change_" + slug(gen), change, 1e-8));
    }

    // Flow-integration order, measured at an eps large enough to expose the
    // truncation error. Generators whose velocity does not feed back into the
    // fields they move are integrated exactly by RK4 (the flow is linear in
    // eps); those report as saturated.
    for (const auto& gen : six_generators()) {
        auto change = [&](int substeps) {
            const ClebschState t = flow(s, gen, 2.0, substeps, cfg.rho_floor);
            return std::max(max_abs(reconstruct_velocity(t, cfg.rho_floor) - v0) /
                                std::max(max_abs(v0), 1e-30),
                            max_abs(reconstruct_magnetic(t, cfg.rho_floor) - b0) /
                                std::max(max_abs(b0), 1e-30));
        };
        const double c2 = change(2);
        const std::string name = "flow_order_" + slug(gen);
        if (c2 < 1e-12) {
            CheckResult c = CheckResult::range("gauge", name, 0.0, 0.0, 0.0);
            c.pass = true;
            c.detail = "saturated: the flow is integrated exactly at this amplitude";
            out.push_back(c);
        } else {
            const double order = std::log(c2 / change(8)) / std::log(4.0);
            out.push_back(CheckResult::range("gauge", name, order, 3.7, 4.3));
        }
    }

    // delta u = Jc dG: the closed-form generator lists against central
    // differences of the charge functionals.
    {
        struct Case {
            GaugeGenerator gen;
            std::function<double(const ClebschState&)> charge;
        };
        const WeightFunction wm = lookup_weight("sin_phi1");
        const WeightFunction wh = lookup_weight("cos_sigma2");
        const double floor = cfg.rho_floor;
        const std::vector<Case> cases = {
            {GaugeGenerator::magnetic_helicity(),
             [floor](const ClebschState& u) { return magnetic_helicity(u, floor); }},
            {GaugeGenerator::cross_helicity(),
             [floor](const ClebschState& u) { return cross_helicity(u, floor); }},
            {GaugeGenerator::generalized_mass(wm),
             [wm, floor](const ClebschState& u) { return generalized_mass(u, wm, floor); }},
            {GaugeGenerator::generalized_helicity(wh),
             [wh, floor](const ClebschState& u) { return generalized_helicity(u, wh, floor); }},
        };
        for (const auto& c : cases) {
            const ClebschTangent gv = gauge_velocity(s, c.gen, cfg.rho_floor);
            double worst = 0.0;
            for (int dir = 0; dir < 3; ++dir) {
                const ClebschTangent w = random_clebsch_tangent(
                    cfg.grid, cfg.initial.mode_cap, 0.1, cfg.initial.seed + 800 + dir);
                ScalarField sum = gv.phi0 * w.rho - gv.rho * w.phi0;
                for (int l = 0; l < 3; ++l)
                    sum += gv.alpha[l] * w.mu[l] - gv.mu[l] * w.alpha[l] +
                           gv.phi[l] * w.beta[l] - gv.beta[l] * w.phi[l];
                const double analytic = integrate(sum);
                double best = std::numeric_limits<double>::infinity();
                for (double eps : {1e-3, 1e-4, 1e-5}) {
                    const double fd = (c.charge(advanced(s, w, eps)) -
                                       c.charge(advanced(s, w, -eps))) /
                                      (2.0 * eps);
                    best = std::min(best, rel_diff(analytic, fd));
                }
                worst = std::max(worst, best);
            }
            out.push_back(
                CheckResult::upper("gauge", "generator_consistency_" + slug(c.gen), worst, 1e-6));
        }
    }
    return out;
}

// --------------------------------------------------------------------------
// noether: charges equal the invariants
// --------------------------------------------------------------------------
Checks suite_noether(const SimulationConfig& cfg) {
    Checks out;
    const ClebschState s = make_initial_state(cfg.grid, cfg.initial, cfg.rho_floor);
    const WeightFunction wm = lookup_weight("sin_phi1");
    const WeightFunction wh = lookup_weight("cos_sigma2");
    const double floor = cfg.rho_floor;

    out.push_back(CheckResult::upper(
        "noether", "charge_mass",
        rel_diff(noether_charge(s, GaugeGenerator::mass(), floor), total_mass(s.rho)), 1e-12));
    out.push_back(CheckResult::upper(
        "noether", "charge_magnetic_helicity",
        rel_diff(noether_charge(s, GaugeGenerator::magnetic_helicity(), floor),
                 magnetic_helicity(s, floor)),
        1e-10));
    out.push_back(CheckResult::upper(
        "noether", "charge_cross_helicity",
        rel_diff(noether_charge(s, GaugeGenerator::cross_helicity(), floor),
                 cross_helicity_primed(s, floor)),
        1e-10));
    out.push_back(CheckResult::upper(
        "noether", "charge_generalized_mass",
        rel_diff(noether_charge(s, GaugeGenerator::generalized_mass(wm), floor),
                 generalized_mass(s, wm, floor)),
        1e-10));
    out.push_back(CheckResult::upper(
        "noether", "charge_generalized_helicity",
        rel_diff(noether_charge(s, GaugeGenerator::generalized_helicity(wh), floor),
                 generalized_helicity(s, wh, floor)),
        1e-10));
    out.push_back(CheckResult::upper(
        "noether", "primed_cross_helicity",
        rel_diff(cross_helicity_primed(s, floor), cross_helicity(s, floor)), 1e-10));
    out.push_back(CheckResult::upper(
        "noether", "helicity_gauge_independence",
        rel_diff(magnetic_helicity(s, floor),
                 magnetic_helicity_coulomb(reconstruct_magnetic(s, floor))),
        1e-9));
    // f = 1 degenerates to the plain mass and helicity, bit for bit
    out.push_back(CheckResult::upper(
        "noether", "unit_weight_degeneracy",
        std::abs(generalized_mass(s, lookup_weight("one"), floor) - total_mass(s.rho)) +
            std::abs(generalized_helicity(s, lookup_weight("one"), floor) -
                     magnetic_helicity(s, floor)),
        0.0));
    return out;
}

// --------------------------------------------------------------------------
// action: the exact-differential claim and the remark contrast
// --------------------------------------------------------------------------
Checks suite_action(const SimulationConfig& cfg) {
    Checks out;
    const ClebschState s = make_initial_state(cfg.grid, cfg.initial, cfg.rho_floor);
    const ClebschTangent sdot = canonical_rhs_unfiltered(s, cfg.eos, cfg.rho_floor);

    for (const auto& gen : six_generators()) {
        const ActionVariation a = action_variation(s, sdot, gen, cfg.rho_floor);
        if (gen.kind == GaugeGenerator::Kind::non_conserving_remark) {
            out.push_back(CheckResult::lower("action", "remark_gap", a.relative_gap, 1e-3,
                                             "expected gap: the candidate Lambda0 must fail"));
            out.push_back(CheckResult::upper(
                "action", "remark_invariance",
                physical_invariance_infinitesimal(s, gen, cfg.rho_floor).max(), 1e-10));
        } else {
            out.push_back(CheckResult::upper("action", "gap_" + slug(gen), a.relative_gap, 1e-8));
        }
    }
    return out;
}

// --------------------------------------------------------------------------
// rules: the G1/G2 closure algebra with negative controls
// --------------------------------------------------------------------------
Checks suite_rules(const SimulationConfig& cfg) {
    Checks out;
    const ClebschState s = make_initial_state(cfg.grid, cfg.initial, cfg.rho_floor);
    const ClebschTangent sdot = canonical_rhs_unfiltered(s, cfg.eos, cfg.rho_floor);
    auto mismatched_recipe = cfg.initial;
    mismatched_recipe.seed = cfg.initial.seed + 424243;
    const ClebschTangent mismatched = canonical_rhs_unfiltered(
        make_initial_state(cfg.grid, mismatched_recipe, cfg.rho_floor), cfg.eos, cfg.rho_floor);

    const RuleReport report =
        rule_closure_suite(s, sdot, mismatched, lookup_weight("sin_phi1"), 1e-9, 1e-3);
    for (const auto& c : report.checks) {
        if (c.negative_control)
            out.push_back(
                CheckResult::lower("rules", c.name, c.residual, c.tolerance, "negative control"));
        else
            out.push_back(CheckResult::upper("rules", c.name, c.residual, c.tolerance));
    }
    return out;
}

// --------------------------------------------------------------------------
// equivalence: conservation drift, drift order, formulation agreement
// --------------------------------------------------------------------------
Checks suite_equivalence(const SimulationConfig& cfg) {
    Checks out;

    {
        SimulationConfig run = cfg;
        run.formulation = Formulation::clebsch;
        run.store_states = false;
        const TrajectoryRecord rec = simulate(run);
        for (const auto& n : rec.series.names)
            out.push_back(CheckResult::upper("equivalence", "drift_" + n,
                                             rec.series.drift(n).max_rel, 1e-8));

        const auto conv = convergence_study(run, {2.0 * cfg.dt, cfg.dt, 0.5 * cfg.dt});
        bool measurable = false;
        for (const auto& r : conv) {
            if (r.saturated) {
                CheckResult c =
                    CheckResult::range("equivalence", "convergence_" + r.name, 0.0, 0.0, 0.0);
                c.pass = true;
                c.detail = "saturated at the spectral floor; slope undefined";
                out.push_back(c);
            } else {
                measurable = true;
                out.push_back(
                    CheckResult::range("equivalence", "convergence_" + r.name, r.slope, 3.7, 4.3));
            }
        }
        out.push_back(CheckResult::lower("equivalence", "convergence_measurable",
                                         measurable ? 1.0 : 0.0, 1.0,
                                         "at least one invariant resolves the dt^4 order"));
    }

    {
        SimulationConfig run = cfg;
        run.formulation = Formulation::both;
        run.n_steps = 50;
        run.sample_every = 10;
        run.store_states = false;
        const EquivalenceReport rep = cross_formulation_check(run);
        out.push_back(CheckResult::upper("equivalence", "distance", rep.max_rel(), 1e-6));

        // Halving ratio with the stage filter off on both sides: isolates the
        // time-discretization part of the distance, which is what contracts
        // at the integrator order.
        SimulationConfig raw = run;
        raw.stage_filter = false;
        raw.dt = 2.0 * cfg.dt;
        raw.n_steps = 25;
        const double far = cross_formulation_check(raw).max_rel();
        raw.dt = cfg.dt;
        raw.n_steps = 50;
        const double near = cross_formulation_check(raw).max_rel();
        const double ratio = far / std::max(near, 1e-300);
        out.push_back(CheckResult::range("equivalence", "halving_ratio_unfiltered", ratio,
                                         std::pow(2.0, 3.7), std::pow(2.0, 4.3)));
    }
    return out;
}

} // namespace

const std::vector<std::string>& verify_suite_names() {
    static const std::vector<std::string> names = {"operators", "gradients", "casimir",
                                                   "gauge",     "noether",   "action",
                                                   "rules",     "equivalence"};
    return names;
}

std::vector<CheckResult> run_verify_suite(const std::string& suite, const SimulationConfig& cfg) {
    cfg.validate_config();
    if (suite == "operators") return suite_operators(cfg);
    if (suite == "gradients") return suite_gradients(cfg);
    if (suite == "casimir") return suite_casimir(cfg);
    if (suite == "gauge") return suite_gauge(cfg);
    if (suite == "noether") return suite_noether(cfg);
    if (suite == "action") return suite_action(cfg);
    if (suite == "rules") return suite_rules(cfg);
    if (suite == "equivalence") return suite_equivalence(cfg);
    if (suite == "all") return run_all_suites(cfg, false);
    throw std::invalid_argument("unknown verify suite '" + suite + "'");
}

std::vector<CheckResult> run_all_suites(const SimulationConfig& cfg, bool parallel) {
    const auto& names = verify_suite_names();
    std::vector<CheckResult> all;
    if (parallel) {
        std::vector<std::future<std::vector<CheckResult>>> futures;
        futures.reserve(names.size());
        for (const auto& n : names)
            futures.push_back(
                std::async(std::launch::async, [n, cfg] { return run_verify_suite(n, cfg); }));
        for (auto& f : futures) {
            auto part = f.get();
            all.insert(all.end(), part.begin(), part.end());
        }
    } else {
        for (const auto& n : names) {
            auto part = run_verify_suite(n, cfg);
            all.insert(all.end(), part.begin(), part.end());
        }
    }
    return all;
}

const std::map<std::string, RegistryEntry>& invariant_suite_registry() {
    // One entry per module-level invariant this artifact certifies; the
    // registry test asserts every entry resolves to an emitted check.
    static const std::map<std::string, RegistryEntry> registry = {
        {"spectral.div_curl_and_curl_grad_vanish", {"operators", "div_curl"}},
        {"spectral.integration_by_parts", {"operators", "integration_by_parts"}},
        {"spectral.inverse_curl_right_inverse", {"operators", "inverse_curl_round_trip"}},
        {"spectral.integrate_linear_positive", {"operators", "integrate_linearity"}},
        {"spectral.dealias_orthogonal_projection", {"operators", "dealias_idempotent"}},
        {"clebsch.curl_potential_equals_b", {"gradients", "curl_potential_matches_b"}},
        {"clebsch.reconstructed_b_solenoidal", {"gradients", "b_divergence"}},
        {"clebsch.hamiltonian_two_routes", {"gradients", "hamiltonian_two_routes"}},
        {"clebsch.gradient_consistency", {"gradients", "gateaux_gradient"}},
        {"clebsch.rhs_preserves_mass_and_mu", {"gradients", "rhs_mass_flux"}},
        {"eulerian.hamiltonian_form_consistency", {"casimir", "hamiltonian_form"}},
        {"eulerian.casimir_nullity", {"casimir", "nullity_c1"}},
        {"eulerian.antisymmetry_pairing", {"casimir", "antisymmetry"}},
        {"eulerian.conservation_under_evolution", {"equivalence", "drift_H"}},
        {"invariants.unit_weight_degeneracy", {"noether", "unit_weight_degeneracy"}},
        {"invariants.helicity_gauge_insensitivity", {"noether", "helicity_gauge_independence"}},
        {"invariants.primed_equals_unprimed", {"noether", "primed_cross_helicity"}},
        {"invariants.residuals_vanish_on_own_tangent", {"rules", "phi1_advected"}},
        {"invariants.negative_controls_fire", {"rules", "phi1_advected_negative_control"}},
        {"gauge.invariance_all_generators", {"gauge", "invariance_c1"}},
        {"gauge.finite_flow_preservation", {"gauge", "flow_change_c2"}},
        {"gauge.flow_integration_order", {"gauge", "flow_order_c3"}},
        {"gauge.noether_charges_match_invariants", {"noether", "charge_mass"}},
        {"gauge.action_two_path_gap", {"action", "gap_c2"}},
        {"gauge.remark_contrast", {"action", "remark_gap"}},
        {"gauge.generator_consistency", {"gauge", "generator_consistency_c2"}},
        {"gauge.generalized_constant_weight_degeneracy", {"noether", "charge_generalized_mass"}},
        {"dynamics.fixed_point_preservation", {"equivalence", "drift_C1"}},
        {"dynamics.drift_scales_dt4", {"equivalence", "convergence_measurable"}},
        {"dynamics.formulation_equivalence", {"equivalence", "distance"}},
        {"dynamics.generalized_drift_envelope", {"equivalence", "drift_GMass_sin_phi1"}},
    };
    return registry;
}

} // namespace cmhd
