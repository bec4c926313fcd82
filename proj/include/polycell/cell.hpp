// Copyright (c) 2026 the polycell developers.
// SPDX-License-Identifier: Apache-2.0

#ifndef POLYCELL_CELL_HPP
#define POLYCELL_CELL_HPP

#include <string>

#include "polycell/constants.hpp"

namespace polycell::fcell {

/// Flow-channel cross-section family. The cubic cell is the square-channel
/// base design; the pentagonal and hexagonal cells are the proposed variants.
enum class ChannelShape { Cubic, Pentagonal, Hexagonal };

const char* to_string(ChannelShape shape);
ChannelShape channel_shape_from_string(const std::string& name);

/// Cell geometry. All lengths in meters, areas in m^2. Presets carry the
/// published dimensions of the three designs; inlet areas are stored rather
/// than derived so the preset numbers survive rounding in the source tables.
struct CellGeometry {
    ChannelShape model_tag = ChannelShape::Cubic;
    double channel_side = 1.0e-3;
    double channel_length = 50.0e-3;
    double inlet_area = 1.0e-6;
    double active_area = 100.0e-6;
    double gdl_thickness = 0.26e-3;
    double cl_thickness = 0.03e-3;
    double membrane_thickness = 0.23e-3;

    void validate() const;

    int side_count() const;

    /// 4 A_in / wetted perimeter; equals channel_side for the square duct.
    double hydraulic_diameter() const;

    /// Laminar f*Re for the regular polygonal duct matching model_tag
    /// (56.91 square, 59.07 pentagon, 60.22 hexagon).
    double friction_constant() const;

    /// Catalyst-layer volume backing one electrode: cl_thickness * active_area.
    double catalyst_volume() const;
};

/// Membrane electrode assembly transport properties.
struct MEAProperties {
    double porosity_gdl = 0.5;
    double porosity_cl = 0.5;
    double porosity_mem = 0.6;
    double sigma_sol = 100.0;           // S/m
    double sigma_mem = 17.1;            // S/m
    double k_eff_electrode = 1.3;       // W/(m K)
    double permeability = 1.0e-12;      // m^2
    double contact_resistance = 0.0;    // ohm m^2

    void validate() const;
};

/// Butler-Volmer parameters for one electrode. The exchange current is the
/// volumetric product zeta*j_ref in A/m^3.
struct ElectrodeKinetics {
    double volumetric_exchange_current = 30.0;  // A/m^3
    double alpha_anodic = 0.5;
    double alpha_cathodic = 1.0;
    double concentration_exponent = 0.5;        // gamma
    double reference_concentration = 40.874;    // mol/m^3, 1 atm at 298.15 K

    void validate() const;
};

/// Inlet mass fractions of one feed stream. Unused species stay zero.
struct SpeciesFractions {
    double h2 = 0.0;
    double o2 = 0.0;
    double h2o = 0.0;
    double n2 = 0.0;

    double sum() const { return h2 + o2 + h2o + n2; }
};

/// Inlet boundary conditions shared by both electrodes.
struct OperatingPoint {
    double inlet_pressure = 101325.0;     // Pa
    double inlet_temperature = 353.15;    // K
    double rh_anode = 1.0;
    double rh_cathode = 1.0;
    double stoich_anode = 1.2;
    double stoich_cathode = 2.0;
    double mass_flow_anode = 1.3e-7;      // kg/s
    double mass_flow_cathode = 1.4e-6;    // kg/s
    SpeciesFractions anode_fractions;
    SpeciesFractions cathode_fractions;

    void validate() const;
};

/// Local gas mixture state inside a porous layer, with the reference data
/// needed by the effective-diffusivity correlation.
struct GasState {
    double pressure = 101325.0;          // Pa
    double temperature = 353.15;         // K
    double conc_h2 = 0.0;                // mol/m^3
    double conc_o2 = 0.0;                // mol/m^3
    double conc_h2o = 0.0;               // mol/m^3
    double liquid_volume = 0.0;          // m^3
    double total_pore_volume = 1.0e-9;   // m^3
    double diff_h2 = 1.10e-4;            // m^2/s at (ref_pressure, ref_temperature)
    double diff_o2 = 3.20e-5;            // m^2/s
    double diff_h2o = 7.35e-5;           // m^2/s
    double ref_pressure = 101325.0;      // Pa
    double ref_temperature = 353.15;     // K
    double viscosity = 2.1e-5;           // Pa s

    void validate() const;
};

/// Complete cell description consumed by the loss-budget solver.
struct CellSpec {
    CellGeometry geometry;
    MEAProperties mea;
    ElectrodeKinetics anode;
    ElectrodeKinetics cathode;
    double limiting_current = 1.4e4;     // A/m^2

    void validate() const;
};

/// Named presets "cubic", "pentagonal", "hexagonal" reproducing the published
/// geometry and MEA tables. Unknown names raise config_error.
CellSpec preset_cell(const std::string& name);

/// Published operating point for a preset: 1 atm, 353.15 K, RH 100%, with the
/// tabulated inlet compositions (the pentagonal cathode O2 fraction is 0.150
/// in the source table versus 0.151 for the other designs; copied verbatim).
OperatingPoint preset_operating_point(ChannelShape shape);

/// Rebuild an operating point at a new inlet pressure and temperature.
/// Compositions are recomputed from humidity equilibrium: the vapor mole
/// fraction is rh * p_sat(T) / P, the anode balance is hydrogen, and the
/// cathode balance is dry air at 0.21/0.79 O2/N2 molar split. Mass flows and
/// stoichiometries are kept from the base point.
OperatingPoint operating_point_at(const OperatingPoint& base, double pressure_pa,
                                  double temperature_k);

}  // namespace polycell::fcell

#endif
