#include "cmhd/config.hpp"

#include <fstream>
#include <set>

namespace cmhd {

namespace {

using nlohmann::json;

void reject_unknown_keys(const json& j, const std::set<std::string>& allowed,
                         const std::string& where) {
    for (auto it = j.begin(); it != j.end(); ++it)
        if (!allowed.count(it.key()))
            throw ConfigError("config: unknown key '" + it.key() + "' in " + where);
}

RecipeSpec::Id recipe_from_name(const std::string& name) {
    if (name == "static") return RecipeSpec::Id::static_uniform;
    if (name == "single-mode") return RecipeSpec::Id::single_mode;
    if (name == "random") return RecipeSpec::Id::random_band_limited;
    if (name == "hydrodynamic") return RecipeSpec::Id::hydrodynamic;
    throw ConfigError("config: unknown recipe '" + name +
                      "' (expected static | single-mode | random | hydrodynamic)");
}

std::string recipe_name(RecipeSpec::Id id) {
    switch (id) {
        case RecipeSpec::Id::static_uniform: return "static";
        case RecipeSpec::Id::single_mode: return "single-mode";
        case RecipeSpec::Id::random_band_limited: return "random";
        case RecipeSpec::Id::hydrodynamic: return "hydrodynamic";
    }
    return "?";
}

Formulation formulation_from_name(const std::string& name) {
    if (name == "clebsch") return Formulation::clebsch;
    if (name == "eulerian") return Formulation::eulerian;
    if (name == "both") return Formulation::both;
    throw ConfigError("config: unknown formulation '" + name +
                      "' (expected clebsch | eulerian | both)");
}

std::string formulation_name(Formulation f) {
    switch (f) {
        case Formulation::clebsch: return "clebsch";
        case Formulation::eulerian: return "eulerian";
        case Formulation::both: return "both";
    }
    return "?";
}

} // namespace

SimulationConfig config_from_json(const json& j) {
    SimulationConfig cfg;
    try {
        reject_unknown_keys(j, {"grid", "eos", "rho_floor", "time", "formulation", "initial",
                                "invariants", "output"},
                            "top level");
        if (j.contains("grid")) {
            const auto& g = j.at("grid");
            reject_unknown_keys(g, {"n", "box"}, "grid");
            std::array<int, 3> n{16, 16, 16};
            std::array<double, 3> box{2.0 * std::numbers::pi, 2.0 * std::numbers::pi,
                                      2.0 * std::numbers::pi};
            if (g.contains("n")) n = g.at("n").get<std::array<int, 3>>();
            if (g.contains("box")) box = g.at("box").get<std::array<double, 3>>();
            cfg.grid = Grid(n[0], n[1], n[2], box[0], box[1], box[2]);
        }
        if (j.contains("eos")) {
            const auto& e = j.at("eos");
            reject_unknown_keys(e, {"gamma", "k"}, "eos");
            cfg.eos.gamma = e.value("gamma", cfg.eos.gamma);
            cfg.eos.k = e.value("k", cfg.eos.k);
        }
        cfg.rho_floor = j.value("rho_floor", cfg.rho_floor);
        if (j.contains("time")) {
            const auto& t = j.at("time");
            reject_unknown_keys(t, {"dt", "n_steps", "sample_every", "stage_filter"}, "time");
            cfg.dt = t.value("dt", cfg.dt);
            cfg.n_steps = t.value("n_steps", cfg.n_steps);
            cfg.sample_every = t.value("sample_every", cfg.sample_every);
            cfg.stage_filter = t.value("stage_filter", cfg.stage_filter);
        }
        if (j.contains("formulation"))
            cfg.formulation = formulation_from_name(j.at("formulation").get<std::string>());
        if (j.contains("initial")) {
            const auto& i = j.at("initial");
            reject_unknown_keys(
                i, {"recipe", "amplitude", "rho_amplitude", "rho0", "mode_cap", "seed"},
                "initial");
            if (i.contains("recipe"))
                cfg.initial.id = recipe_from_name(i.at("recipe").get<std::string>());
            cfg.initial.amplitude = i.value("amplitude", cfg.initial.amplitude);
            cfg.initial.rho_amplitude = i.value("rho_amplitude", cfg.initial.rho_amplitude);
            cfg.initial.rho0 = i.value("rho0", cfg.initial.rho0);
            cfg.initial.mode_cap = i.value("mode_cap", cfg.initial.mode_cap);
            cfg.initial.seed = i.value("seed", cfg.initial.seed);
        }
        if (j.contains("invariants")) {
            cfg.invariants.clear();
            for (const auto& entry : j.at("invariants")) {
                reject_unknown_keys(entry, {"type", "weight"}, "invariants[]");
                RegisteredInvariantSpec spec;
                const std::string type = entry.at("type").get<std::string>();
                if (type == "generalized_mass")
                    spec.type = RegisteredInvariantSpec::Type::generalized_mass;
                else if (type == "generalized_helicity")
                    spec.type = RegisteredInvariantSpec::Type::generalized_helicity;
                else
                    throw ConfigError("config: unknown invariant type '" + type + "'");
                spec.weight = entry.at("weight").get<std::string>();
                cfg.invariants.push_back(std::move(spec));
            }
        }
        if (j.contains("output")) {
            const auto& o = j.at("output");
            reject_unknown_keys(o, {"store_states", "write_snapshots"}, "output");
            cfg.store_states = o.value("store_states", cfg.store_states);
            cfg.write_snapshots = o.value("write_snapshots", cfg.write_snapshots);
        }
        cfg.validate_config();
    } catch (const ConfigError&) {
        throw;
    } catch (const std::exception& e) {
        throw ConfigError(std::string("config: ") + e.what());
    }
    return cfg;
}

json config_to_json(const SimulationConfig& cfg) {
    json j;
    j["grid"] = {{"n", {cfg.grid.nx, cfg.grid.ny, cfg.grid.nz}},
                 {"box", {cfg.grid.lx, cfg.grid.ly, cfg.grid.lz}}};
    j["eos"] = {{"gamma", cfg.eos.gamma}, {"k", cfg.eos.k}};
    j["rho_floor"] = cfg.rho_floor;
    j["time"] = {{"dt", cfg.dt},
                 {"n_steps", cfg.n_steps},
                 {"sample_every", cfg.sample_every},
                 {"stage_filter", cfg.stage_filter}};
    j["formulation"] = formulation_name(cfg.formulation);
    j["initial"] = {{"recipe", recipe_name(cfg.initial.id)},
                    {"amplitude", cfg.initial.amplitude},
                    {"rho_amplitude", cfg.initial.rho_amplitude},
                    {"rho0", cfg.initial.rho0},
                    {"mode_cap", cfg.initial.mode_cap},
                    {"seed", cfg.initial.seed}};
    j["invariants"] = json::array();
    for (const auto& spec : cfg.invariants)
        j["invariants"].push_back(
            {{"type", spec.type == RegisteredInvariantSpec::Type::generalized_mass
                          ? "generalized_mass"
                          : "generalized_helicity"},
             {"weight", spec.weight}});
    j["output"] = {{"store_states", cfg.store_states}, {"write_snapshots", cfg.write_snapshots}};
    return j;
}

SimulationConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("config: cannot open '" + path + "'");
    json j;
    try {
        in >> j;
    } catch (const std::exception& e) {
        throw ConfigError("config: '" + path + "' is not valid JSON: " + e.what());
    }
    try {
        return config_from_json(j);
    } catch (const ConfigError& e) {
        throw ConfigError(std::string(e.what()) + " (in '" + path + "')");
    }
}

std::string config_schema() {
    json schema = {
        {"grid",
         {{"n", "three even integers >= 4 (grid points per axis); default [16,16,16]"},
          {"box", "three positive box lengths; default [2pi,2pi,2pi]"}}},
        {"eos",
         {{"gamma", "adiabatic exponent > 1; default 5/3"},
          {"k", "entropy constant > 0; default 1.0"}}},
        {"rho_floor", "density positivity floor > 0; runs abort below it; default 0.1"},
        {"time",
         {{"dt", "time step > 0; default 1e-3"},
          {"n_steps", "steps to integrate >= 0; default 100"},
          {"sample_every", "invariant sampling stride >= 1; default 10"},
          {"stage_filter",
           "apply the 2/3 truncation to each RK stage derivative; default true"}}},
        {"formulation", "clebsch | eulerian | both; default clebsch"},
        {"initial",
         {{"recipe", "static | single-mode | random | hydrodynamic; default random"},
          {"amplitude", "inf-norm of each non-density field; default 0.15"},
          {"rho_amplitude", "inf-norm of the density perturbation; default 0.04"},
          {"rho0", "background density; default 1.0"},
          {"mode_cap", "largest |mode index| per axis in random fields; default 2"},
          {"seed", "RNG seed (unsigned); default 1234"}}},
        {"invariants",
         {"list of generalized invariants to monitor; entries are",
          {{"type", "generalized_mass | generalized_helicity"},
           {"weight", "one | sigma1 | sin_phi1 | cos_sigma2"}}}},
        {"output",
         {{"store_states", "keep sampled states in memory (needed for probes); default true"},
          {"write_snapshots", "write sampled state snapshots under the output dir; default false"}}},
    };
    return schema.dump(2) + "\n";
}

} // namespace cmhd
