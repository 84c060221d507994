#include "cmhd/dynamics.hpp"

#include <chrono>
#include <cmath>
#include <numbers>
#include <optional>
#include <random>

#include "cmhd/errors.hpp"

namespace cmhd {

namespace {

double uniform01(std::mt19937_64& rng) { return (rng() >> 11) * 0x1.0p-53; }

std::vector<double> invariant_row_clebsch(const ClebschState& s, const EquationOfState& eos,
                                          const std::vector<RegisteredInvariantSpec>& extra,
                                          double rho_floor) {
    std::vector<double> row;
    row.push_back(hamiltonian(s, eos, rho_floor).total());
    row.push_back(total_mass(s.rho));
    row.push_back(magnetic_helicity(s, rho_floor));
    row.push_back(cross_helicity(s, rho_floor));
    for (const auto& spec : extra) {
        const WeightFunction w = lookup_weight(spec.weight);
        row.push_back(spec.type == RegisteredInvariantSpec::Type::generalized_mass
                          ? generalized_mass(s, w, rho_floor)
                          : generalized_helicity(s, w, rho_floor));
    }
    return row;
}

std::vector<double> invariant_row_eulerian(const PhysicalState& u, const EquationOfState& eos,
                                           double rho_floor) {
    std::vector<double> row;
    row.push_back(hamiltonian(u, eos, rho_floor).total());
    row.push_back(total_mass(u.rho));
    row.push_back(max_abs(u.b) == 0.0 ? 0.0 : magnetic_helicity_coulomb(u.b));
    row.push_back(cross_helicity(u.v, u.b));
    return row;
}

} // namespace

void SimulationConfig::validate_config() const {
    eos.validate();
    if (!(dt > 0.0) || !std::isfinite(dt))
        throw std::invalid_argument("SimulationConfig: dt must be positive and finite");
    if (n_steps < 0) throw std::invalid_argument("SimulationConfig: n_steps must be >= 0");
    if (sample_every < 1) throw std::invalid_argument("SimulationConfig: sample_every must be >= 1");
    if (!(rho_floor > 0.0)) throw std::invalid_argument("SimulationConfig: rho_floor must be > 0");
    if (initial.mode_cap < 1) throw std::invalid_argument("SimulationConfig: mode_cap must be >= 1");
    const bool perturbs_rho = initial.id == RecipeSpec::Id::random_band_limited ||
                              initial.id == RecipeSpec::Id::hydrodynamic;
    if (perturbs_rho && initial.rho0 - initial.rho_amplitude < rho_floor)
        throw std::invalid_argument(
            "SimulationConfig: rho0 - rho_amplitude must stay above the density floor");
    for (const auto& spec : invariants) lookup_weight(spec.weight); // throws on unknown names
}

ScalarField random_band_limited_field(const Grid& g, int mode_cap, double amplitude,
                                      std::uint64_t seed) {
    if (mode_cap < 0) throw std::invalid_argument("random_band_limited_field: mode_cap < 0");
    ScalarField f(g);
    if (amplitude == 0.0 || mode_cap == 0) return f;
    std::mt19937_64 rng(seed);
    const double two_pi = 2.0 * std::numbers::pi;
    // One cosine per +/- mode pair; the first nonzero index positive picks a
    // unique representative of each pair.
    for (int sx = -mode_cap; sx <= mode_cap; ++sx) {
        for (int sy = -mode_cap; sy <= mode_cap; ++sy) {
            for (int sz = -mode_cap; sz <= mode_cap; ++sz) {
                if (sx == 0 && sy == 0 && sz == 0) continue;
                if (sx < 0 || (sx == 0 && (sy < 0 || (sy == 0 && sz < 0)))) continue;
                const double coeff = 0.5 + 0.5 * uniform01(rng);
                const double phase = two_pi * uniform01(rng);
                const double kx = two_pi * sx / g.lx;
                const double ky = two_pi * sy / g.ly;
                const double kz = two_pi * sz / g.lz;
                for (int i = 0; i < g.nx; ++i) {
                    const double px = kx * g.x(i);
                    for (int j = 0; j < g.ny; ++j) {
                        const double pxy = px + ky * g.y(j);
                        for (int k = 0; k < g.nz; ++k)
                            f.values[g.index(i, j, k)] +=
                                coeff * std::cos(pxy + kz * g.z(k) + phase);
                    }
                }
            }
        }
    }
    const double scale = max_abs(f);
    if (scale > 0.0) f.values *= amplitude / scale;
    return f;
}

ClebschState make_initial_state(const Grid& g, const RecipeSpec& r, double rho_floor) {
    ClebschState s = make_zero_clebsch_state(g, r.rho0);
    switch (r.id) {
        case RecipeSpec::Id::static_uniform:
            break;
        case RecipeSpec::Id::single_mode: {
            s.phi0 = ScalarField::sample(g, [&](double x, double, double) {
                return r.amplitude * std::sin(2.0 * std::numbers::pi * x / g.lx);
            });
            s.mu[0] = ScalarField::sample(g, [&](double x, double, double) {
                return r.amplitude * std::sin(2.0 * std::numbers::pi * x / g.lx);
            });
            s.phi[0] = ScalarField::sample(g, [&](double, double y, double) {
                return r.amplitude * std::sin(2.0 * std::numbers::pi * y / g.ly);
            });
            break;
        }
        case RecipeSpec::Id::random_band_limited:
        case RecipeSpec::Id::hydrodynamic: {
            const bool magnetic = r.id == RecipeSpec::Id::random_band_limited;
            s.phi0 = random_band_limited_field(g, r.mode_cap, r.amplitude, r.seed);
            s.rho = s.rho + random_band_limited_field(g, r.mode_cap, r.rho_amplitude, r.seed + 1);
            for (int l = 0; l < 3; ++l) {
                s.alpha[l] = random_band_limited_field(g, r.mode_cap, r.amplitude, r.seed + 2 + l);
                if (magnetic)
                    s.mu[l] =
                        random_band_limited_field(g, r.mode_cap, r.amplitude, r.seed + 5 + l);
                s.phi[l] = random_band_limited_field(g, r.mode_cap, r.amplitude, r.seed + 8 + l);
                s.beta[l] = random_band_limited_field(g, r.mode_cap, r.amplitude, r.seed + 11 + l);
            }
            break;
        }
    }
    validate(s, rho_floor);
    return s;
}

PhysicalState reconstruct_physical(const ClebschState& s, double rho_floor) {
    PhysicalState u{s.rho, reconstruct_velocity(s, rho_floor), reconstruct_magnetic(s, rho_floor),
                    s.time};
    validate(u, PhysicalStateTolerances{rho_floor, 1e-10, 1e-10});
    return u;
}

ClebschState rk4_step_clebsch(const ClebschState& s, double dt, const EquationOfState& eos,
                              double rho_floor, bool stage_filter) {
    if (!std::isfinite(dt)) throw std::invalid_argument("rk4_step_clebsch: dt must be finite");
    auto rhs = [&](const ClebschState& state) {
        return stage_filter ? canonical_rhs(state, eos, rho_floor)
                            : canonical_rhs_unfiltered(state, eos, rho_floor);
    };
    try {
        const ClebschTangent k1 = rhs(s);
        const ClebschTangent k2 = rhs(advanced(s, k1, 0.5 * dt));
        const ClebschTangent k3 = rhs(advanced(s, k2, 0.5 * dt));
        const ClebschTangent k4 = rhs(advanced(s, k3, dt));
        ClebschState out = advanced(
            s, add_scaled(add_scaled(add_scaled(k1, k2, 2.0), k3, 2.0), k4, 1.0), dt / 6.0);
        out.time = s.time + dt;
        validate(out, rho_floor);
        return out;
    } catch (const std::invalid_argument& e) {
        throw RuntimeAbort(std::string("rk4_step_clebsch: ") + e.what());
    }
}

PhysicalState rk4_step_eulerian(const PhysicalState& u, double dt, const EquationOfState& eos,
                                double rho_floor, bool stage_filter) {
    if (!std::isfinite(dt)) throw std::invalid_argument("rk4_step_eulerian: dt must be finite");
    auto rhs = [&](const PhysicalState& state) {
        return stage_filter ? mhd_rhs(state, eos, rho_floor)
                            : mhd_rhs_unfiltered(state, eos, rho_floor);
    };
    try {
        const PhysicalTangent k1 = rhs(u);
        const PhysicalTangent k2 = rhs(advanced(u, k1, 0.5 * dt));
        const PhysicalTangent k3 = rhs(advanced(u, k2, 0.5 * dt));
        const PhysicalTangent k4 = rhs(advanced(u, k3, dt));
        PhysicalState out = advanced(
            u, add_scaled(add_scaled(add_scaled(k1, k2, 2.0), k3, 2.0), k4, 1.0), dt / 6.0);
        out.time = u.time + dt;
        validate(out, PhysicalStateTolerances{rho_floor, 1e-10, 1e-10});
        return out;
    } catch (const std::invalid_argument& e) {
        throw RuntimeAbort(std::string("rk4_step_eulerian: ") + e.what());
    }
}

TrajectoryRecord simulate(const SimulationConfig& cfg) {
    cfg.validate_config();
    const auto t_start = std::chrono::steady_clock::now();
    TrajectoryRecord rec;

    const bool run_clebsch = cfg.formulation != Formulation::eulerian;
    const bool run_eulerian = cfg.formulation != Formulation::clebsch;

    ClebschState s = make_initial_state(cfg.grid, cfg.initial, cfg.rho_floor);
    std::optional<PhysicalState> u;
    if (run_eulerian) u = reconstruct_physical(s, cfg.rho_floor);

    // CFL advisory only: flow speed plus the fast (sound + Alfven) speed.
    // The verification runs are short by design, so this warns, never aborts.
    {
        const PhysicalState probe = u ? *u : reconstruct_physical(s, cfg.rho_floor);
        const double rho_min = probe.rho.values.minCoeff();
        const double sound2 =
            cfg.eos.k * cfg.eos.gamma * std::pow(rho_min, cfg.eos.gamma - 1.0);
        const double alfven2 = max_abs(probe.b) * max_abs(probe.b) / rho_min;
        const double speed = max_abs(probe.v) + std::sqrt(sound2 + alfven2);
        const double cfl = speed * cfg.dt / cfg.grid.min_spacing();
        if (cfl > 0.5)
            rec.warnings.push_back("CFL estimate " + std::to_string(cfl) +
                                   " exceeds 0.5; expect visible time-discretization error");
    }

    rec.series.names = {"H", "C1", "C2", "C3"};
    if (run_clebsch)
        for (const auto& spec : cfg.invariants) rec.series.names.push_back(spec.column());

    auto sample = [&](int step) {
        const double t = step * cfg.dt;
        if (run_clebsch) {
            s.time = t;
            rec.series.append(t, invariant_row_clebsch(s, cfg.eos, cfg.invariants, cfg.rho_floor));
            if (cfg.store_states) rec.clebsch_samples.push_back(s);
        } else {
            u->time = t;
            rec.series.append(t, invariant_row_eulerian(*u, cfg.eos, cfg.rho_floor));
        }
        if (run_eulerian && cfg.store_states) {
            u->time = t;
            rec.eulerian_samples.push_back(*u);
        }
    };

    sample(0);
    for (int step = 1; step <= cfg.n_steps; ++step) {
        try {
            if (run_clebsch)
                s = rk4_step_clebsch(s, cfg.dt, cfg.eos, cfg.rho_floor, cfg.stage_filter);
            if (run_eulerian)
                u = rk4_step_eulerian(*u, cfg.dt, cfg.eos, cfg.rho_floor, cfg.stage_filter);
        } catch (const RuntimeAbort& e) {
            rec.aborted = true;
            rec.abort_step = step;
            rec.abort_message = e.what();
            break;
        }
        if (step % cfg.sample_every == 0 || step == cfg.n_steps) sample(step);
    }

    rec.wall_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t_start).count();
    return rec;
}

EquivalenceReport cross_formulation_check(const SimulationConfig& cfg) {
    if (cfg.formulation != Formulation::both)
        throw std::invalid_argument("cross_formulation_check requires formulation = both");
    cfg.validate_config();

    ClebschState s = make_initial_state(cfg.grid, cfg.initial, cfg.rho_floor);
    // The Eulerian run starts from the Clebsch state's physical image; the
    // comparison below reconstructs with the same truncation setting the
    // steppers use, so the distance measures trajectory divergence only.
    auto velocity = [&](const ClebschState& state) {
        return cfg.stage_filter ? reconstruct_velocity(state, cfg.rho_floor)
                                : velocity_of<ScalarField>(state);
    };
    auto magnetic = [&](const ClebschState& state) {
        return cfg.stage_filter ? reconstruct_magnetic(state, cfg.rho_floor)
                                : magnetic_of<ScalarField>(state);
    };
    PhysicalState u{s.rho, velocity(s), magnetic(s), 0.0};
    if (cfg.stage_filter) validate(u, PhysicalStateTolerances{cfg.rho_floor, 1e-10, 1e-10});

    const double kTiny = 1e-30;
    const double scale_rho = std::max(max_abs(u.rho), kTiny);
    const double scale_v = std::max(max_abs(u.v), kTiny);
    const double scale_b = std::max(max_abs(u.b), kTiny);

    EquivalenceReport rep;
    auto sample = [&](int step) {
        const double t = step * cfg.dt;
        const double drho = max_abs(u.rho - s.rho) / scale_rho;
        const double dv = max_abs(u.v - velocity(s)) / scale_v;
        const double db = max_abs(u.b - magnetic(s)) / scale_b;
        rep.rows.push_back({t, drho, dv, db});
        rep.max_rel_rho = std::max(rep.max_rel_rho, drho);
        rep.max_rel_v = std::max(rep.max_rel_v, dv);
        rep.max_rel_b = std::max(rep.max_rel_b, db);
    };

    sample(0);
    for (int step = 1; step <= cfg.n_steps; ++step) {
        s = rk4_step_clebsch(s, cfg.dt, cfg.eos, cfg.rho_floor, cfg.stage_filter);
        u = rk4_step_eulerian(u, cfg.dt, cfg.eos, cfg.rho_floor, cfg.stage_filter);
        if (step % cfg.sample_every == 0 || step == cfg.n_steps) sample(step);
    }
    return rep;
}

std::vector<ConvergenceResult> convergence_study(const SimulationConfig& cfg,
                                                 const std::vector<double>& dt_list,
                                                 double saturation_floor) {
    if (dt_list.size() < 3)
        throw std::invalid_argument("convergence_study: need at least three step sizes");
    cfg.validate_config();
    const double horizon = cfg.dt * cfg.n_steps;

    std::vector<std::vector<double>> drifts_per_dt;
    std::vector<std::string> names;
    for (double dt : dt_list) {
        SimulationConfig run = cfg;
        run.dt = dt;
        run.n_steps = int(std::llround(horizon / dt));
        if (run.n_steps < 1)
            throw std::invalid_argument("convergence_study: horizon shorter than dt");
        run.sample_every = run.n_steps;
        run.store_states = false;
        const TrajectoryRecord rec = simulate(run);
        if (rec.aborted)
            throw RuntimeAbort("convergence_study: run aborted: " + rec.abort_message,
                               rec.abort_step);
        names = rec.series.names;
        std::vector<double> drifts;
        for (const auto& n : names) drifts.push_back(rec.series.drift(n).final_rel);
        drifts_per_dt.push_back(std::move(drifts));
    }

    std::vector<ConvergenceResult> results;
    for (std::size_t c = 0; c < names.size(); ++c) {
        ConvergenceResult r;
        r.name = names[c];
        double max_drift = 0.0;
        for (std::size_t i = 0; i < dt_list.size(); ++i) {
            r.drifts.push_back(drifts_per_dt[i][c]);
            max_drift = std::max(max_drift, drifts_per_dt[i][c]);
        }
        if (max_drift < saturation_floor) {
            r.saturated = true;
        } else {
            // least-squares slope of log(drift) against log(dt)
            double sx = 0, sy = 0, sxx = 0, sxy = 0;
            const double n = double(dt_list.size());
            for (std::size_t i = 0; i < dt_list.size(); ++i) {
                const double x = std::log(dt_list[i]);
                const double y = std::log(std::max(r.drifts[i], 1e-300));
                sx += x;
                sy += y;
                sxx += x * x;
                sxy += x * y;
            }
            r.slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
        }
        results.push_back(std::move(r));
    }
    return results;
}

} // namespace cmhd
