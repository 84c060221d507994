#pragma once

#include <stdexcept>

#include "cmhd/field.hpp"

namespace cmhd {

/// Barotropic polytrope: internal energy E(rho) = K rho^(gamma-1)/(gamma-1),
/// so the specific enthalpy h = d(rho E)/d(rho) = K gamma rho^(gamma-1)/(gamma-1).
struct EquationOfState {
    double gamma = 5.0 / 3.0;
    double k = 1.0;

    void validate() const {
        if (!(gamma > 1.0)) throw std::invalid_argument("EquationOfState: gamma must be > 1");
        if (!(k > 0.0)) throw std::invalid_argument("EquationOfState: K must be > 0");
    }
};

/// The Hamiltonian split into its three additive parts.
struct EnergyBreakdown {
    double kinetic = 0.0;
    double thermal = 0.0;
    double magnetic = 0.0;
    double total() const { return kinetic + thermal + magnetic; }
};

inline void require_rho_floor(const ScalarField& rho, double floor, const char* what) {
    require_finite(rho, what);
    if (rho.values.minCoeff() < floor)
        throw std::invalid_argument(std::string(what) + ": density below the positivity floor");
}

inline ScalarField internal_energy(const ScalarField& rho, const EquationOfState& eos,
                                   double rho_floor = 0.1) {
    eos.validate();
    require_rho_floor(rho, rho_floor, "internal_energy");
    return {rho.grid, eos.k / (eos.gamma - 1.0) * rho.values.pow(eos.gamma - 1.0)};
}

inline ScalarField enthalpy(const ScalarField& rho, const EquationOfState& eos,
                            double rho_floor = 0.1) {
    eos.validate();
    require_rho_floor(rho, rho_floor, "enthalpy");
    return {rho.grid, eos.k * eos.gamma / (eos.gamma - 1.0) * rho.values.pow(eos.gamma - 1.0)};
}

} // namespace cmhd
