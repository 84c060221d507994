#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "cmhd/clebsch.hpp"
#include "cmhd/eulerian.hpp"
#include "cmhd/invariants.hpp"

namespace cmhd {

enum class Formulation { clebsch, eulerian, both };

/// Initial-condition recipes. All of them produce valid states by
/// construction; the random ones are band-limited to |mode| <= mode_cap per
/// axis, which keeps every nonlinear identity test far from the dealiasing
/// boundary.
struct RecipeSpec {
    enum class Id { static_uniform, single_mode, random_band_limited, hydrodynamic };
    Id id = Id::random_band_limited;
    double amplitude = 0.15;     // inf-norm of each non-density field
    double rho_amplitude = 0.04; // inf-norm of the density perturbation
    double rho0 = 1.0;
    int mode_cap = 2;
    std::uint64_t seed = 1234;
};

struct RegisteredInvariantSpec {
    enum class Type { generalized_mass, generalized_helicity };
    Type type = Type::generalized_mass;
    std::string weight = "one";
    std::string column() const {
        return (type == Type::generalized_mass ? "GMass_" : "GHel_") + weight;
    }
};

struct SimulationConfig {
    Grid grid = Grid::cubic(16);
    EquationOfState eos;
    double rho_floor = 0.1;
    double dt = 1e-3;
    int n_steps = 100;
    int sample_every = 10;
    Formulation formulation = Formulation::clebsch;
    RecipeSpec initial;
    std::vector<RegisteredInvariantSpec> invariants{
        {RegisteredInvariantSpec::Type::generalized_mass, "sin_phi1"},
        {RegisteredInvariantSpec::Type::generalized_helicity, "cos_sigma2"}};
    bool store_states = true;
    bool write_snapshots = false;
    /// Apply the 2/3 truncation to each RK stage derivative (the production
    /// setting). Switching it off isolates time-discretization error in
    /// convergence studies; see cross_formulation_check.
    bool stage_filter = true;

    void validate_config() const;
};

/// Deterministic zero-mean random field with |signed mode index| <= mode_cap
/// on every axis and inf-norm equal to amplitude.
ScalarField random_band_limited_field(const Grid& g, int mode_cap, double amplitude,
                                      std::uint64_t seed);

ClebschState make_initial_state(const Grid& g, const RecipeSpec& recipe, double rho_floor = 0.1);

/// The Eulerian image of a Clebsch state: (rho, reconstructed V, B).
PhysicalState reconstruct_physical(const ClebschState& s, double rho_floor = 0.1);

ClebschState rk4_step_clebsch(const ClebschState& s, double dt, const EquationOfState& eos,
                              double rho_floor = 0.1, bool stage_filter = true);
PhysicalState rk4_step_eulerian(const PhysicalState& u, double dt, const EquationOfState& eos,
                                double rho_floor = 0.1, bool stage_filter = true);

struct TrajectoryRecord {
    InvariantSeries series;
    std::vector<ClebschState> clebsch_samples;
    std::vector<PhysicalState> eulerian_samples;
    std::vector<std::string> warnings;
    bool aborted = false;
    int abort_step = -1;
    std::string abort_message;
    double wall_seconds = 0.0;
};

/// Runs the requested formulation(s) from the recipe state, sampling
/// invariants every sample_every steps (plus the initial and final states).
/// Sample times are step * dt exactly. A mid-run abort flushes the partial
/// record with the abort flagged.
TrajectoryRecord simulate(const SimulationConfig& cfg);

struct EquivalenceReport {
    // per sample: time, relative Linf distances of rho, V, B
    std::vector<std::array<double, 4>> rows;
    double max_rel_rho = 0.0;
    double max_rel_v = 0.0;
    double max_rel_b = 0.0;
    double max_rel() const { return std::max(max_rel_rho, std::max(max_rel_v, max_rel_b)); }
};

/// Lockstep Clebsch and Eulerian integration from the same physical initial
/// data; reports the Linf distance between the Eulerian state and the
/// reconstructed Clebsch state at every sample.
EquivalenceReport cross_formulation_check(const SimulationConfig& cfg);

struct ConvergenceResult {
    std::string name;
    std::vector<double> drifts; // final-time drift per dt
    double slope = 0.0;         // least-squares slope of log(drift) vs log(dt)
    bool saturated = false;     // all drifts at the machine floor; slope undefined
};

/// Re-runs the configured trajectory at each dt over the same time horizon
/// (cfg.dt * cfg.n_steps) and fits the conservation-drift order.
std::vector<ConvergenceResult> convergence_study(const SimulationConfig& cfg,
                                                 const std::vector<double>& dt_list,
                                                 double saturation_floor = 1e-12);

} // namespace cmhd
