// cmhd: simulate | verify | flow | print-schema
//
// Exit codes: 0 success, 1 verification check failed, 2 bad configuration or
// arguments, 3 runtime abort (density floor breach, non-finite fields).

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdio>
#include <filesystem>
#include <iostream>
#include <optional>

#include "cmhd/config.hpp"
#include "cmhd/errors.hpp"
#include "cmhd/gauge.hpp"
#include "cmhd/snapshot.hpp"
#include "cmhd/verification.hpp"
#include "cmhd/version.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitCheckFailed = 1;
constexpr int kExitBadConfig = 2;
constexpr int kExitRuntimeAbort = 3;

struct CommonOptions {
    std::string config_path;
    std::string out_dir = ".";
    std::optional<double> dt_override;
    std::optional<std::uint64_t> seed_override;
};

cmhd::SimulationConfig load_with_overrides(const CommonOptions& opt) {
    cmhd::SimulationConfig cfg = cmhd::load_config(opt.config_path);
    if (opt.dt_override) cfg.dt = *opt.dt_override;
    if (opt.seed_override) cfg.initial.seed = *opt.seed_override;
    cfg.validate_config();
    return cfg;
}

json drift_report(const cmhd::InvariantSeries& series) {
    json drifts = json::object();
    for (const auto& name : series.names) {
        const cmhd::DriftSummary d = series.drift(name);
        drifts[name] = {{"initial", d.initial},
                        {"final_relative_drift", d.final_rel},
                        {"max_relative_drift", d.max_rel}};
    }
    return drifts;
}

int cmd_simulate(const CommonOptions& opt) {
    const cmhd::SimulationConfig cfg = load_with_overrides(opt);
    const fs::path out(opt.out_dir);
    fs::create_directories(out);

    const cmhd::TrajectoryRecord rec = cmhd::simulate(cfg);
    for (const auto& w : rec.warnings) std::cerr << "warning: " << w << "\n";

    cmhd::write_text_file(out / "invariants.csv", rec.series.to_csv());

    json manifest;
    manifest["artifact_version"] = cmhd::kVersion;
    manifest["config"] = cmhd::config_to_json(cfg);
    manifest["seed"] = cfg.initial.seed;
    manifest["wall_seconds"] = rec.wall_seconds;
    manifest["warnings"] = rec.warnings;
    manifest["aborted"] = rec.aborted;
    if (rec.aborted) {
        manifest["abort_step"] = rec.abort_step;
        manifest["abort_message"] = rec.abort_message;
    }
    manifest["drift"] = drift_report(rec.series);
    cmhd::write_text_file(out / "manifest.json", manifest.dump(2) + "\n");

    if (cfg.write_snapshots) {
        for (std::size_t i = 0; i < rec.clebsch_samples.size(); ++i) {
            char name[32];
            std::snprintf(name, sizeof name, "clebsch_%04zu", i);
            cmhd::save_clebsch_state(out / name, rec.clebsch_samples[i], cfg.eos);
        }
        for (std::size_t i = 0; i < rec.eulerian_samples.size(); ++i) {
            char name[32];
            std::snprintf(name, sizeof name, "eulerian_%04zu", i);
            cmhd::save_physical_state(out / name, rec.eulerian_samples[i], cfg.eos);
        }
    }

    if (rec.aborted) {
        std::cerr << "aborted at step " << rec.abort_step << ": " << rec.abort_message << "\n";
        return kExitRuntimeAbort;
    }
    std::cout << "wrote " << (out / "invariants.csv").string() << " ("
              << rec.series.times.size() << " samples)\n";
    return kExitOk;
}

int cmd_verify(const CommonOptions& opt, const std::string& suite, bool parallel) {
    const cmhd::SimulationConfig cfg = load_with_overrides(opt);
    const auto& names = cmhd::verify_suite_names();
    if (suite != "all" && std::find(names.begin(), names.end(), suite) == names.end()) {
        std::cerr << "unknown suite '" << suite << "' (expected all";
        for (const auto& n : names) std::cerr << " | " << n;
        std::cerr << ")\n";
        return kExitBadConfig;
    }

    const std::vector<cmhd::CheckResult> results =
        suite == "all" ? cmhd::run_all_suites(cfg, parallel) : cmhd::run_verify_suite(suite, cfg);

    json checks = json::array();
    bool all_pass = true;
    for (const auto& c : results) {
        all_pass = all_pass && c.pass;
        const char* status = c.pass ? "PASS" : "FAIL";
        char bound[64];
        switch (c.kind) {
            case cmhd::CheckResult::Kind::upper_bound:
                std::snprintf(bound, sizeof bound, "<= %.3g", c.tolerance);
                break;
            case cmhd::CheckResult::Kind::lower_bound:
                std::snprintf(bound, sizeof bound, ">= %.3g", c.tolerance);
                break;
            case cmhd::CheckResult::Kind::range:
                std::snprintf(bound, sizeof bound, "in [%.3g, %.3g]", c.tolerance,
                              c.tolerance_high);
                break;
        }
        std::printf("%s  %-14s %-36s measured=%.3e  expected %s%s%s\n", status, c.suite.c_str(),
                    c.name.c_str(), c.measured, bound, c.detail.empty() ? "" : "  # ",
                    c.detail.c_str());
        checks.push_back({{"suite", c.suite},
                          {"name", c.name},
                          {"measured", c.measured},
                          {"tolerance", c.tolerance},
                          {"tolerance_high", c.tolerance_high},
                          {"kind",
                           c.kind == cmhd::CheckResult::Kind::upper_bound   ? "upper_bound"
                           : c.kind == cmhd::CheckResult::Kind::lower_bound ? "lower_bound"
                                                                            : "range"},
                          {"pass", c.pass},
                          {"detail", c.detail}});
    }

    const fs::path out(opt.out_dir);
    fs::create_directories(out);
    json manifest;
    manifest["artifact_version"] = cmhd::kVersion;
    manifest["config"] = cmhd::config_to_json(cfg);
    manifest["suite"] = suite;
    manifest["checks"] = checks;
    manifest["all_pass"] = all_pass;
    cmhd::write_text_file(out / "manifest.json", manifest.dump(2) + "\n");

    std::printf("%zu checks, %s\n", results.size(), all_pass ? "all passed" : "FAILURES present");
    return all_pass ? kExitOk : kExitCheckFailed;
}

int cmd_flow(const CommonOptions& opt, const std::string& generator_name, double epsilon,
             int substeps) {
    const cmhd::SimulationConfig cfg = load_with_overrides(opt);
    const cmhd::GaugeGenerator gen = cmhd::GaugeGenerator::parse(generator_name);

    const fs::path out(opt.out_dir);
    fs::create_directories(out);

    const cmhd::ClebschState before =
        cmhd::make_initial_state(cfg.grid, cfg.initial, cfg.rho_floor);
    const cmhd::GaugeReport rep =
        cmhd::run_gauge_report(before, cfg.eos, gen, epsilon, substeps, cfg.rho_floor);
    const cmhd::ClebschState after = cmhd::flow(before, gen, epsilon, substeps, cfg.rho_floor);

    cmhd::save_clebsch_state(out / "state_before", before, cfg.eos);
    cmhd::save_clebsch_state(out / "state_after", after, cfg.eos);
    cmhd::write_text_file(out / "gauge_report.txt", rep.to_text());
    cmhd::write_text_file(out / "gauge_substeps.csv", rep.substeps_csv());
    std::cout << rep.to_text();
    return kExitOk;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Dual-formulation ideal-MHD verification laboratory"};
    app.require_subcommand(1);

    CommonOptions opt;
    std::string suite = "all";
    bool parallel = false;
    std::string generator;
    double epsilon = 0.1;
    int substeps = 20;

    auto add_common = [&](CLI::App* sub, bool needs_out) {
        sub->add_option("--config", opt.config_path, "JSON configuration file")->required();
        auto* o = sub->add_option("--out", opt.out_dir, "output directory");
        if (needs_out) o->required();
        sub->add_option("--dt", opt.dt_override, "override the configured time step");
        sub->add_option("--seed", opt.seed_override, "override the configured RNG seed");
    };

    CLI::App* sim = app.add_subcommand("simulate", "run the configured time integration");
    add_common(sim, true);

    CLI::App* ver = app.add_subcommand("verify", "run verification suites");
    add_common(ver, false);
    ver->add_option("--suite", suite,
                    "operators | gradients | casimir | gauge | noether | action | rules | "
                    "equivalence | all");
    ver->add_flag("--parallel-suites", parallel, "run independent suites concurrently");

    CLI::App* flw = app.add_subcommand("flow", "apply a finite gauge flow to the recipe state");
    add_common(flw, true);
    flw->add_option("--generator", generator,
                    "C1 | C2 | C3 | GM:<weight> | GH:<weight> | REMARK")
        ->required();
    flw->add_option("--epsilon", epsilon, "flow parameter");
    flw->add_option("--substeps", substeps, "RK4 substeps")->check(CLI::PositiveNumber);

    CLI::App* schema = app.add_subcommand("print-schema", "print the configuration schema");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kExitOk : kExitBadConfig;
    }

    try {
        if (schema->parsed()) {
            std::cout << cmhd::config_schema();
            return kExitOk;
        }
        if (sim->parsed()) return cmd_simulate(opt);
        if (ver->parsed()) return cmd_verify(opt, suite, parallel);
        if (flw->parsed()) return cmd_flow(opt, generator, epsilon, substeps);
    } catch (const cmhd::RuntimeAbort& e) {
        std::cerr << "runtime abort: " << e.what() << "\n";
        return kExitRuntimeAbort;
    } catch (const cmhd::ConfigError& e) {
        std::cerr << e.what() << "\n";
        return kExitBadConfig;
    } catch (const std::invalid_argument& e) {
        std::cerr << e.what() << "\n";
        return kExitBadConfig;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitRuntimeAbort;
    }
    return kExitBadConfig;
}
