#include <doctest.h>

#include <filesystem>

#include "cmhd/config.hpp"
#include "cmhd/snapshot.hpp"
#include "cmhd/verification.hpp"
#include "test_support.hpp"

using namespace cmhd;
using namespace cmhd::test;
namespace fs = std::filesystem;

namespace {

fs::path temp_dir(const char* tag) {
    const fs::path p = fs::temp_directory_path() / (std::string("cmhd_test_") + tag);
    fs::remove_all(p);
    fs::create_directories(p);
    return p;
}

} // namespace

TEST_CASE("field snapshot round trip") {
    const fs::path dir = temp_dir("field");
    const Grid g(8, 12, 16, 1.0, 2.0, 3.0);
    const ScalarField f = white_noise(g, 42);
    write_field(dir / "f.field", "density", f, 0.75);
    const FieldSnapshot snap = read_field(dir / "f.field");
    CHECK(snap.name == "density");
    CHECK(snap.time == 0.75);
    CHECK(snap.field.grid == g);
    CHECK(max_abs(snap.field - f) == 0.0); // bit-exact payload

    CHECK_THROWS(read_field(dir / "missing.field"));
    CHECK_THROWS_AS(write_field(dir / "bad.field", "two words", f, 0.0), std::invalid_argument);
}

TEST_CASE("state snapshot round trips") {
    const fs::path dir = temp_dir("state");
    const EquationOfState eos;

    const ClebschState s = random_state(Grid::cubic(8), 7, 1, 0.1, 0.02);
    save_clebsch_state(dir / "clebsch", s, eos);
    const ClebschState s2 = load_clebsch_state(dir / "clebsch");
    CHECK(max_abs(s2.phi0 - s.phi0) == 0.0);
    CHECK(max_abs(s2.beta[2] - s.beta[2]) == 0.0);
    const std::string manifest = read_text_file(dir / "clebsch" / "state_manifest.json");
    CHECK(manifest.find("\"clebsch\"") != std::string::npos);

    const PhysicalState u = reconstruct_physical(s);
    save_physical_state(dir / "eulerian", u, eos);
    const PhysicalState u2 = load_physical_state(dir / "eulerian");
    CHECK(max_abs(u2.v - u.v) == 0.0);
    CHECK(max_abs(u2.b - u.b) == 0.0);
    CHECK(read_text_file(dir / "eulerian" / "state_manifest.json").find("\"eulerian\"") !=
          std::string::npos);
}

TEST_CASE("config json round trip and validation") {
    SimulationConfig cfg;
    cfg.grid = Grid(8, 16, 24, 1.0, 2.0, 3.0);
    cfg.eos.k = 7.5;
    cfg.dt = 2e-3;
    cfg.formulation = Formulation::both;
    cfg.initial.id = RecipeSpec::Id::hydrodynamic;
    cfg.initial.seed = 99;
    cfg.stage_filter = false;

    const SimulationConfig back = config_from_json(config_to_json(cfg));
    CHECK(back.grid == cfg.grid);
    CHECK(back.eos.k == cfg.eos.k);
    CHECK(back.dt == cfg.dt);
    CHECK(back.formulation == Formulation::both);
    CHECK(back.initial.id == RecipeSpec::Id::hydrodynamic);
    CHECK(back.initial.seed == 99);
    CHECK(back.stage_filter == false);

    SUBCASE("unknown keys are rejected") {
        auto j = config_to_json(cfg);
        j["typo"] = 1;
        CHECK_THROWS_AS(config_from_json(j), ConfigError);
    }
    SUBCASE("unknown recipe is rejected") {
        auto j = config_to_json(cfg);
        j["initial"]["recipe"] = "vortex";
        CHECK_THROWS_AS(config_from_json(j), ConfigError);
    }
    SUBCASE("unknown weight is rejected") {
        auto j = config_to_json(cfg);
        j["invariants"] = {{{"type", "generalized_mass"}, {"weight", "nope"}}};
        CHECK_THROWS_AS(config_from_json(j), ConfigError);
    }
    SUBCASE("bad grid is rejected") {
        auto j = config_to_json(cfg);
        j["grid"]["n"] = {7, 8, 8};
        CHECK_THROWS_AS(config_from_json(j), ConfigError);
    }
    SUBCASE("missing file names the path") {
        try {
            load_config("/no/such/config.json");
            FAIL("expected ConfigError");
        } catch (const ConfigError& e) {
            CHECK(std::string(e.what()).find("/no/such/config.json") != std::string::npos);
        }
    }
}

TEST_CASE("schema mentions every top-level key") {
    const std::string schema = config_schema();
    for (const char* key :
         {"grid", "eos", "rho_floor", "time", "formulation", "initial", "invariants", "output"})
        CHECK(schema.find(key) != std::string::npos);
}

TEST_CASE("every registered module invariant is reachable through a suite") {
    // Small, fast configuration: the closure property is about coverage,
    // not tolerances, so check presence of every registered check name.
    SimulationConfig cfg;
    cfg.grid = Grid::cubic(16);
    cfg.eos.k = 100.0;
    cfg.dt = 1e-3;
    cfg.n_steps = 10;
    cfg.sample_every = 5;
    cfg.initial.mode_cap = 1;
    cfg.initial.amplitude = 0.1;
    cfg.initial.rho_amplitude = 0.02;
    cfg.store_states = false;

    const auto& names = verify_suite_names();
    std::map<std::string, std::vector<std::string>> produced;
    // parallel on purpose: all suites are pure, and this exercises the same
    // path as `verify --parallel-suites`
    for (const auto& check : run_all_suites(cfg, true)) produced[check.suite].push_back(check.name);
    for (const auto& suite : names) CHECK(!produced[suite].empty());

    for (const auto& [invariant, entry] : invariant_suite_registry()) {
        INFO("invariant ", invariant, " expects ", entry.suite, "/", entry.check_prefix);
        CHECK(std::find(names.begin(), names.end(), entry.suite) != names.end());
        const auto& checks = produced[entry.suite];
        const bool found = std::any_of(checks.begin(), checks.end(), [&](const std::string& n) {
            return n.rfind(entry.check_prefix, 0) == 0;
        });
        CHECK(found);
    }
}
