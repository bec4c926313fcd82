// Copyright (c) 2026 the polycell developers.
// SPDX-License-Identifier: Apache-2.0
//
// Algebraic electrochemistry and transport relations of the reduced-order
// cell model. All functions are pure; SI units unless noted.

#ifndef POLYCELL_ELECTROCHEM_HPP
#define POLYCELL_ELECTROCHEM_HPP

#include <vector>

#include "polycell/cell.hpp"
#include "polycell/constants.hpp"

namespace polycell::fcell {

enum class Electrode { Anode, Cathode };
enum class Species { H2, O2, H2O };
enum class SourceBasis { Mass, Molar };

/// Water saturation pressure in Pa from the Springer cubic-log correlation,
/// valid for 273.15 K <= T <= 423.15 K:
///   log10(p_sat / atm) = -2.1794 + 0.02953 Tc - 9.1837e-5 Tc^2 + 1.4454e-7 Tc^3
/// with Tc the temperature in Celsius.
double saturation_pressure(double temperature_k);

/// a = vapor_pressure / sat_pressure, clamped to [0, 3].
double water_activity(double vapor_pressure_pa, double sat_pressure_pa);

/// Membrane water content lambda(a): cubic branch for a < 1, linear branch
/// 14 + 1.4 (a - 1) otherwise. The two branches disagree by 0.003 at a = 1;
/// the linear branch is used there.
double membrane_water_content(double activity);

/// Butler-Volmer volumetric transfer current in A/m^3. The anode form is
///   (zeta j_ref) (C/C_ref)^gamma [exp(alpha_a F eta / RT) - exp(-alpha_c F eta / RT)]
/// and the cathode form carries the opposite leading signs, so R_a >= 0 for
/// eta >= 0 and R_c >= 0 for eta <= 0.
double transfer_current(Electrode electrode, const ElectrodeKinetics& kinetics,
                        double concentration_ratio, double overpotential_v,
                        double temperature_k);

/// Overpotential solving transfer_current(eta) = target by bracketed bisection
/// (expanding bracket, 200-iteration cap, tolerance max(1e-10, 1e-8 |target|)).
double invert_transfer_current(Electrode electrode, const ElectrodeKinetics& kinetics,
                               double concentration_ratio, double target_current_a_m3,
                               double temperature_k);

/// Porosity-weighted arithmetic mean eps k_fluid + (1 - eps) k_solid.
double effective_thermal_conductivity(double porosity, double k_fluid, double k_solid);

/// eps^1.5 (1-s)^2.5 D0 (P0/P) (T/T0)^1.5.
double effective_diffusivity(double ref_diffusivity, double porosity, double saturation,
                             double pressure_pa, double temperature_k,
                             double ref_pressure_pa, double ref_temperature_k);

/// s = V_liquid / V_total.
double liquid_saturation(double liquid_volume, double total_volume);

/// Darcy momentum sink -(mu / beta) u per axis, in Pa/m.
double darcy_pressure_gradient(double viscosity, double permeability, double velocity);

/// Faradaic species source for a volumetric rate: H2 and O2 are consumed
/// (negative), product water is positive. Mass basis in kg/(m^3 s), molar in
/// mol/(m^3 s).
double species_source(Species species, double rate_a_m3, SourceBasis basis,
                      const PhysicalConstants& constants = default_constants());

/// i (membrane_thickness / sigma_mem + contact_resistance).
double ohmic_overpotential(double current_density, double membrane_thickness,
                           const MEAProperties& mea);

/// -(RT/2F) ln(1 - i/i_lim); raises limiting_current_error at i >= i_lim.
double concentration_overpotential(double current_density, double limiting_current,
                                   double temperature_k,
                                   const PhysicalConstants& constants = default_constants());

/// Nernst open-circuit voltage with reactant partial pressures in atm taken
/// from the inlet stream compositions:
///   E = 1.229 - 0.85e-3 (T - 298.15) + (RT/2F) ln(p_H2 sqrt(p_O2)).
double reversible_voltage(const OperatingPoint& op,
                          const PhysicalConstants& constants = default_constants());

/// Current density satisfying the loss budget
///   V = E_rev - eta_act,an(i) - |eta_act,cat(i)| - eta_ohm(i) - eta_conc(i)
/// by bisection on [0, i_lim). Returns 0 for V >= E_rev; residual <= 1e-8 V.
double solve_current_at_voltage(const CellSpec& cell, const OperatingPoint& op,
                                double cell_voltage);

struct PolarizationPoint {
    double voltage = 0.0;          // V
    double current_density = 0.0;  // A/m^2
    double power_density = 0.0;    // W/m^2
};
using PolarizationCurve = std::vector<PolarizationPoint>;

/// Per-voltage solve_current_at_voltage with power density V * i. Solver
/// failures are rethrown with the offending voltage in the message.
PolarizationCurve polarization_curve(const CellSpec& cell, const OperatingPoint& op,
                                     const std::vector<double>& voltages);

/// i_ave = rate * catalyst_volume / membrane_area: the zero-dimensional
/// reduction of the catalyst-layer volume integral.
double average_current_density(double volumetric_rate, double catalyst_volume,
                               double membrane_area);

/// Species mass flows of one stream in kg/s.
struct StreamFlows {
    double h2 = 0.0;
    double o2 = 0.0;
    double h2o = 0.0;
    double n2 = 0.0;

    double total() const { return h2 + o2 + h2o + n2; }
};

struct ChannelOutlet {
    StreamFlows anode_inlet;
    StreamFlows cathode_inlet;
    StreamFlows anode_outlet;
    StreamFlows cathode_outlet;
};

/// Faraday balance at total current I: H2 out = in - M_H2 I/2F, O2 out =
/// in - M_O2 I/4F, cathode water out = in + M_H2O I/2F, inerts pass through.
/// Raises starvation_error naming the species when consumption exceeds supply.
ChannelOutlet channel_outlet_state(const OperatingPoint& op,
                                   const PhysicalConstants& constants,
                                   double total_current_a);

struct ChannelFlow {
    double velocity = 0.0;       // m/s
    double reynolds = 0.0;
    double pressure_drop = 0.0;  // Pa
    bool laminar = true;         // false flags Re > 2300; the estimate is kept
};

/// Laminar fully developed duct pressure drop
///   dP = (f Re) mu L u / (2 D_h^2),  u = mass_flow / (rho A_in),
/// using the geometry's polygonal friction constant.
ChannelFlow channel_pressure_drop(const CellGeometry& geometry, double viscosity,
                                  double density, double mass_flow);

struct PowerReport {
    double production_power = 0.0;   // W
    double consumption_power = 0.0;  // W
    double ratio = 0.0;              // consumption / production; 0 when production is 0
    double pressure_drop = 0.0;      // Pa
    double inlet_velocity = 0.0;     // m/s
};

/// P_pro = i V A_eff and P_cons = dP A_in u_in, as plain products.
PowerReport power_report(double current_density, double cell_voltage,
                         const CellGeometry& geometry, double pressure_drop,
                         double inlet_velocity);

/// Electro-osmotic water flux n_d i / F with drag coefficient n_d = 2.5 lambda / 22.
double electroosmotic_drag_flux(double water_content, double current_density,
                                const PhysicalConstants& constants = default_constants());

/// Mole fraction of each species from stream mass fractions.
struct MoleFractions {
    double h2 = 0.0;
    double o2 = 0.0;
    double h2o = 0.0;
    double n2 = 0.0;
};
MoleFractions mole_fractions(const SpeciesFractions& mass_fractions,
                             const PhysicalConstants& constants = default_constants());

/// Mixture molar mass in kg/mol from stream mass fractions.
double mixture_molar_mass(const SpeciesFractions& mass_fractions,
                          const PhysicalConstants& constants = default_constants());

/// Sutherland viscosity of air in Pa s (reference 1.716e-5 at 273.15 K, S = 110.4).
double air_viscosity(double temperature_k);

/// Ideal-gas density P M / (R T).
double gas_density(double pressure_pa, double temperature_k, double molar_mass,
                   const PhysicalConstants& constants = default_constants());

/// Full desk-scale power evaluation at one operating point: solve the loss
/// budget at cell_voltage, check reactant supply at the resulting current,
/// and charge pumping losses to the cathode air stream.
PowerReport evaluate_power(const CellSpec& cell, const OperatingPoint& op,
                           double cell_voltage);

}  // namespace polycell::fcell

#endif
