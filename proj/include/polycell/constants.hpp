// Copyright (c) 2026 the polycell developers.
// SPDX-License-Identifier: Apache-2.0

#ifndef POLYCELL_CONSTANTS_HPP
#define POLYCELL_CONSTANTS_HPP

namespace polycell::fcell {

/// Fundamental constants used throughout the cell model. Values are fixed at
/// construction; validate() rejects anything non-positive.
struct PhysicalConstants {
    double faraday = 96485.0;         // C/mol
    double gas_constant = 8.314;      // J/(mol K)
    double molar_mass_h2 = 2.016e-3;  // kg/mol
    double molar_mass_o2 = 32.00e-3;  // kg/mol
    double molar_mass_h2o = 18.015e-3;  // kg/mol

    void validate() const;
};

/// Default constants instance shared by operations that take no explicit set.
const PhysicalConstants& default_constants();

// Nitrogen only appears as the inert balance of air.
inline constexpr double kMolarMassN2 = 28.0134e-3;  // kg/mol

}  // namespace polycell::fcell

#endif
