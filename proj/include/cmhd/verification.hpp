#pragma once

#include <map>

#include "cmhd/dynamics.hpp"
#include "cmhd/gauge.hpp"

namespace cmhd {

/// One executed check: measured value against its pinned tolerance. Kind
/// upper_bound is the usual "residual small"; lower_bound marks negative
/// controls and the expected-gap contrast (pass means the value EXCEEDS the
/// threshold); range is for measured convergence orders.
struct CheckResult {
    std::string suite;
    std::string name;
    double measured = 0.0;
    double tolerance = 0.0;      // upper bound, lower bound, or range low
    double tolerance_high = 0.0; // range checks only
    enum class Kind { upper_bound, lower_bound, range } kind = Kind::upper_bound;
    bool pass = false;
    std::string detail;

    static CheckResult upper(std::string suite, std::string name, double measured, double tol);
    static CheckResult lower(std::string suite, std::string name, double measured, double tol,
                             std::string detail = "");
    static CheckResult range(std::string suite, std::string name, double measured, double lo,
                             double hi);
};

/// Suites runnable through `cmhd verify --suite NAME` ("all" runs every one).
const std::vector<std::string>& verify_suite_names();

std::vector<CheckResult> run_verify_suite(const std::string& suite, const SimulationConfig& cfg);

/// Runs "all" either sequentially or with one task per suite.
std::vector<CheckResult> run_all_suites(const SimulationConfig& cfg, bool parallel = false);

/// Maps every module-level invariant this artifact certifies to the suite
/// and check-name prefix that exercises it; the registry test enforces the
/// closure property (each entry reachable through some suite).
struct RegistryEntry {
    std::string suite;
    std::string check_prefix;
};
const std::map<std::string, RegistryEntry>& invariant_suite_registry();

} // namespace cmhd
