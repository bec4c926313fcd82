// Copyright (c) 2026 the polycell developers.
// SPDX-License-Identifier: Apache-2.0

#include "polycell/electrochem.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "polycell/errors.hpp"
#include "polycell/units.hpp"

namespace polycell::fcell {

namespace {

constexpr double kExponentCap = 500.0;
constexpr int kBisectionCap = 200;

}  // namespace

double saturation_pressure(double temperature_k) {
    if (temperature_k < 273.15 || temperature_k > 423.15) {
        throw domain_error("saturation_pressure: temperature outside [273.15, 423.15] K");
    }
    const double tc = units::kelvin_to_celsius(temperature_k);
    const double log10_atm =
        -2.1794 + 0.02953 * tc - 9.1837e-5 * tc * tc + 1.4454e-7 * tc * tc * tc;
    return units::atm_to_pa(std::pow(10.0, log10_atm));
}

double water_activity(double vapor_pressure_pa, double sat_pressure_pa) {
    if (sat_pressure_pa <= 0) {
        throw domain_error("water_activity: saturation pressure must be positive");
    }
    if (vapor_pressure_pa < 0) {
        throw domain_error("water_activity: vapor pressure must be non-negative");
    }
    return std::min(vapor_pressure_pa / sat_pressure_pa, 3.0);
}

double membrane_water_content(double activity) {
    if (activity < 0) {
        throw domain_error("membrane_water_content: activity must be non-negative");
    }
    if (activity < 1.0) {
        return 0.043 + 17.81 * activity - 39.85 * activity * activity +
               36.0 * activity * activity * activity;
    }
    return 14.0 + 1.4 * (activity - 1.0);
}

double transfer_current(Electrode electrode, const ElectrodeKinetics& kinetics,
                        double concentration_ratio, double overpotential_v,
                        double temperature_k) {
    kinetics.validate();
    if (temperature_k <= 0) {
        throw domain_error("transfer_current: temperature must be positive");
    }
    if (concentration_ratio < 0) {
        throw domain_error("transfer_current: concentration ratio must be non-negative");
    }
    const PhysicalConstants& c = default_constants();
    const double f_eta_rt =
        c.faraday * overpotential_v / (c.gas_constant * temperature_k);
    const double up = kinetics.alpha_anodic * f_eta_rt;
    const double down = -kinetics.alpha_cathodic * f_eta_rt;
    if (std::abs(up) > kExponentCap || std::abs(down) > kExponentCap) {
        throw saturation_error("transfer_current: exponent overflow at overpotential " +
                               std::to_string(overpotential_v) + " V");
    }
    const double amplitude =
        kinetics.volumetric_exchange_current *
        std::pow(concentration_ratio, kinetics.concentration_exponent);
    const double pair = std::exp(up) - std::exp(down);
    return electrode == Electrode::Anode ? amplitude * pair : -amplitude * pair;
}

double invert_transfer_current(Electrode electrode, const ElectrodeKinetics& kinetics,
                               double concentration_ratio, double target_current_a_m3,
                               double temperature_k) {
    if (target_current_a_m3 < 0) {
        throw domain_error("invert_transfer_current: target must be non-negative "
                           "(both electrode forms are non-negative on their branch)");
    }
    if (target_current_a_m3 == 0.0) return 0.0;

    const PhysicalConstants& c = default_constants();
    // Anode current grows with eta > 0, cathode with eta < 0; invert on the
    // magnitude axis and restore the sign at the end.
    const double sign = electrode == Electrode::Anode ? 1.0 : -1.0;
    auto current_at = [&](double eta_mag) {
        return transfer_current(electrode, kinetics, concentration_ratio,
                                sign * eta_mag, temperature_k);
    };

    const double alpha_max = std::max(kinetics.alpha_anodic, kinetics.alpha_cathodic);
    const double eta_cap =
        (kExponentCap - 1.0) * c.gas_constant * temperature_k / (c.faraday * alpha_max);

    double hi = std::min(0.1, eta_cap);
    while (current_at(hi) < target_current_a_m3) {
        if (hi >= eta_cap) {
            throw convergence_error("invert_transfer_current: target " +
                                    std::to_string(target_current_a_m3) +
                                    " A/m^3 not bracketable below the exponent cap");
        }
        hi = std::min(2.0 * hi, eta_cap);
    }

    const double tol = std::max(1e-10, 1e-8 * target_current_a_m3);
    double lo = 0.0;
    for (int it = 0; it < kBisectionCap; ++it) {
        const double mid = 0.5 * (lo + hi);
        const double value = current_at(mid);
        if (std::abs(value - target_current_a_m3) <= tol) return sign * mid;
        if (value < target_current_a_m3) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    throw convergence_error("invert_transfer_current: no convergence within " +
                            std::to_string(kBisectionCap) + " iterations");
}

double effective_thermal_conductivity(double porosity, double k_fluid, double k_solid) {
    if (porosity < 0 || porosity > 1) {
        throw domain_error("effective_thermal_conductivity: porosity outside [0, 1]");
    }
    if (k_fluid < 0 || k_solid < 0) {
        throw domain_error("effective_thermal_conductivity: conductivities must be non-negative");
    }
    return porosity * k_fluid + (1.0 - porosity) * k_solid;
}

double effective_diffusivity(double ref_diffusivity, double porosity, double saturation,
                             double pressure_pa, double temperature_k,
                             double ref_pressure_pa, double ref_temperature_k) {
    if (porosity < 0 || porosity > 1) {
        throw domain_error("effective_diffusivity: porosity outside [0, 1]");
    }
    if (saturation < 0 || saturation > 1) {
        throw domain_error("effective_diffusivity: saturation outside [0, 1]");
    }
    if (pressure_pa <= 0 || temperature_k <= 0 || ref_pressure_pa <= 0 ||
        ref_temperature_k <= 0) {
        throw domain_error("effective_diffusivity: pressures and temperatures must be positive");
    }
    if (ref_diffusivity < 0) {
        throw domain_error("effective_diffusivity: reference diffusivity must be non-negative");
    }
    return std::pow(porosity, 1.5) * std::pow(1.0 - saturation, 2.5) * ref_diffusivity *
           (ref_pressure_pa / pressure_pa) *
           std::pow(temperature_k / ref_temperature_k, 1.5);
}

double liquid_saturation(double liquid_volume, double total_volume) {
    if (total_volume <= 0) {
        throw domain_error("liquid_saturation: total volume must be positive");
    }
    if (liquid_volume < 0 || liquid_volume > total_volume) {
        throw domain_error("liquid_saturation: liquid volume outside [0, total volume]");
    }
    return liquid_volume / total_volume;
}

double darcy_pressure_gradient(double viscosity, double permeability, double velocity) {
    if (permeability <= 0) {
        throw domain_error("darcy_pressure_gradient: permeability must be positive");
    }
    if (viscosity <= 0) {
        throw domain_error("darcy_pressure_gradient: viscosity must be positive");
    }
    return -(viscosity / permeability) * velocity;
}

double species_source(Species species, double rate_a_m3, SourceBasis basis,
                      const PhysicalConstants& constants) {
    if (rate_a_m3 < 0) {
        throw domain_error("species_source: rate must be non-negative");
    }
    const double two_f = 2.0 * constants.faraday;
    const double four_f = 4.0 * constants.faraday;
    double molar = 0.0;
    double mass = 0.0;
    switch (species) {
        case Species::H2:
            molar = -rate_a_m3 / two_f;
            mass = constants.molar_mass_h2 * molar;
            break;
        case Species::O2:
            molar = -rate_a_m3 / four_f;
            mass = constants.molar_mass_o2 * molar;
            break;
        case Species::H2O:
            molar = rate_a_m3 / two_f;
            mass = constants.molar_mass_h2o * molar;
            break;
    }
    return basis == SourceBasis::Mass ? mass : molar;
}

double ohmic_overpotential(double current_density, double membrane_thickness,
                           const MEAProperties& mea) {
    if (current_density < 0) {
        throw domain_error("ohmic_overpotential: current density must be non-negative");
    }
    if (membrane_thickness <= 0) {
        throw domain_error("ohmic_overpotential: membrane thickness must be positive");
    }
    mea.validate();
    return current_density * (membrane_thickness / mea.sigma_mem + mea.contact_resistance);
}

double concentration_overpotential(double current_density, double limiting_current,
                                   double temperature_k,
                                   const PhysicalConstants& constants) {
    if (current_density < 0) {
        throw domain_error("concentration_overpotential: current density must be non-negative");
    }
    if (limiting_current <= 0) {
        throw domain_error("concentration_overpotential: limiting current must be positive");
    }
    if (temperature_k <= 0) {
        throw domain_error("concentration_overpotential: temperature must be positive");
    }
    if (current_density >= limiting_current) {
        throw limiting_current_error("concentration_overpotential: current density " +
                                     std::to_string(current_density) +
                                     " A/m^2 at or above the limiting current " +
                                     std::to_string(limiting_current) + " A/m^2");
    }
    const double rt_2f =
        constants.gas_constant * temperature_k / (2.0 * constants.faraday);
    return -rt_2f * std::log(1.0 - current_density / limiting_current);
}

MoleFractions mole_fractions(const SpeciesFractions& w, const PhysicalConstants& c) {
    const double n_h2 = w.h2 / c.molar_mass_h2;
    const double n_o2 = w.o2 / c.molar_mass_o2;
    const double n_h2o = w.h2o / c.molar_mass_h2o;
    const double n_n2 = w.n2 / kMolarMassN2;
    const double total = n_h2 + n_o2 + n_h2o + n_n2;
    if (total <= 0) {
        throw domain_error("mole_fractions: empty stream");
    }
    MoleFractions x;
    x.h2 = n_h2 / total;
    x.o2 = n_o2 / total;
    x.h2o = n_h2o / total;
    x.n2 = n_n2 / total;
    return x;
}

double mixture_molar_mass(const SpeciesFractions& w, const PhysicalConstants& c) {
    const MoleFractions x = mole_fractions(w, c);
    return x.h2 * c.molar_mass_h2 + x.o2 * c.molar_mass_o2 +
           x.h2o * c.molar_mass_h2o + x.n2 * kMolarMassN2;
}

double air_viscosity(double temperature_k) {
    if (temperature_k <= 0) {
        throw domain_error("air_viscosity: temperature must be positive");
    }
    constexpr double mu0 = 1.716e-5;
    constexpr double t0 = 273.15;
    constexpr double s = 110.4;
    return mu0 * std::pow(temperature_k / t0, 1.5) * (t0 + s) / (temperature_k + s);
}

double gas_density(double pressure_pa, double temperature_k, double molar_mass,
                   const PhysicalConstants& constants) {
    if (pressure_pa <= 0 || temperature_k <= 0 || molar_mass <= 0) {
        throw domain_error("gas_density: inputs must be positive");
    }
    return pressure_pa * molar_mass / (constants.gas_constant * temperature_k);
}

double reversible_voltage(const OperatingPoint& op, const PhysicalConstants& constants) {
    op.validate();
    const MoleFractions anode = mole_fractions(op.anode_fractions, constants);
    const MoleFractions cathode = mole_fractions(op.cathode_fractions, constants);
    const double p_atm = units::pa_to_atm(op.inlet_pressure);
    const double p_h2 = anode.h2 * p_atm;
    const double p_o2 = cathode.o2 * p_atm;
    if (p_h2 <= 0 || p_o2 <= 0) {
        throw domain_error("reversible_voltage: reactant partial pressure is zero");
    }
    const double rt_2f =
        constants.gas_constant * op.inlet_temperature / (2.0 * constants.faraday);
    return 1.229 - 0.85e-3 * (op.inlet_temperature - 298.15) +
           rt_2f * std::log(p_h2 * std::sqrt(p_o2));
}

namespace {

// Reactant concentration ratios C/C_ref at the inlet state, ideal gas.
struct ConcentrationRatios {
    double anode = 1.0;
    double cathode = 1.0;
};

ConcentrationRatios concentration_ratios(const CellSpec& cell, const OperatingPoint& op,
                                         const PhysicalConstants& c) {
    const MoleFractions anode = mole_fractions(op.anode_fractions, c);
    const MoleFractions cathode = mole_fractions(op.cathode_fractions, c);
    const double molar_density =
        op.inlet_pressure / (c.gas_constant * op.inlet_temperature);
    ConcentrationRatios r;
    r.anode = anode.h2 * molar_density / cell.anode.reference_concentration;
    r.cathode = cathode.o2 * molar_density / cell.cathode.reference_concentration;
    return r;
}

double loss_budget_voltage(const CellSpec& cell, const OperatingPoint& op,
                           const ConcentrationRatios& ratios, double e_rev,
                           double current_density) {
    const double rate = current_density / cell.geometry.cl_thickness;
    const double eta_an =
        invert_transfer_current(Electrode::Anode, cell.anode, ratios.anode, rate,
                                op.inlet_temperature);
    const double eta_cat =
        invert_transfer_current(Electrode::Cathode, cell.cathode, ratios.cathode, rate,
                                op.inlet_temperature);
    const double eta_ohm = ohmic_overpotential(
        current_density, cell.geometry.membrane_thickness, cell.mea);
    const double eta_conc = concentration_overpotential(
        current_density, cell.limiting_current, op.inlet_temperature);
    return e_rev - eta_an - std::abs(eta_cat) - eta_ohm - eta_conc;
}

}  // namespace

double solve_current_at_voltage(const CellSpec& cell, const OperatingPoint& op,
                                double cell_voltage) {
    cell.validate();
    op.validate();
    if (cell_voltage <= 0) {
        throw domain_error("solve_current_at_voltage: cell voltage must be positive");
    }
    const PhysicalConstants& c = default_constants();
    const double e_rev = reversible_voltage(op, c);
    if (cell_voltage >= e_rev) return 0.0;

    const ConcentrationRatios ratios = concentration_ratios(cell, op, c);
    auto voltage_at = [&](double i) {
        return loss_budget_voltage(cell, op, ratios, e_rev, i);
    };

    // voltage_at is strictly decreasing in i, from e_rev at i = 0 toward
    // -inf at the limiting current; bisect just inside the singular end.
    double lo = 0.0;
    double hi = cell.limiting_current * (1.0 - 1e-12);
    if (voltage_at(hi) > cell_voltage) {
        throw convergence_error("solve_current_at_voltage: requested voltage lies "
                                "below the limiting-current knee");
    }
    double mid = 0.0;
    for (int it = 0; it < kBisectionCap; ++it) {
        mid = 0.5 * (lo + hi);
        const double v = voltage_at(mid);
        if (std::abs(v - cell_voltage) <= 1e-10) return mid;
        if (v > cell_voltage) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    if (std::abs(voltage_at(mid) - cell_voltage) <= 1e-8) return mid;
    throw convergence_error("solve_current_at_voltage: no convergence within " +
                            std::to_string(kBisectionCap) + " iterations");
}

PolarizationCurve polarization_curve(const CellSpec& cell, const OperatingPoint& op,
                                     const std::vector<double>& voltages) {
    if (voltages.empty()) {
        throw domain_error("polarization_curve: voltage list is empty");
    }
    PolarizationCurve curve;
    curve.reserve(voltages.size());
    for (double v : voltages) {
        try {
            const double i = solve_current_at_voltage(cell, op, v);
            curve.push_back({v, i, v * i});
        } catch (const convergence_error& e) {
            throw convergence_error("at voltage " + std::to_string(v) + " V: " + e.what());
        } catch (const domain_error& e) {
            throw domain_error("at voltage " + std::to_string(v) + " V: " + e.what());
        }
    }
    return curve;
}

double average_current_density(double volumetric_rate, double catalyst_volume,
                               double membrane_area) {
    if (membrane_area <= 0) {
        throw domain_error("average_current_density: membrane area must be positive");
    }
    if (volumetric_rate < 0 || catalyst_volume < 0) {
        throw domain_error("average_current_density: rate and volume must be non-negative");
    }
    return volumetric_rate * catalyst_volume / membrane_area;
}

ChannelOutlet channel_outlet_state(const OperatingPoint& op,
                                   const PhysicalConstants& constants,
                                   double total_current_a) {
    op.validate();
    if (total_current_a < 0) {
        throw domain_error("channel_outlet_state: total current must be non-negative");
    }
    ChannelOutlet out;
    out.anode_inlet.h2 = op.mass_flow_anode * op.anode_fractions.h2;
    out.anode_inlet.o2 = op.mass_flow_anode * op.anode_fractions.o2;
    out.anode_inlet.h2o = op.mass_flow_anode * op.anode_fractions.h2o;
    out.anode_inlet.n2 = op.mass_flow_anode * op.anode_fractions.n2;
    out.cathode_inlet.h2 = op.mass_flow_cathode * op.cathode_fractions.h2;
    out.cathode_inlet.o2 = op.mass_flow_cathode * op.cathode_fractions.o2;
    out.cathode_inlet.h2o = op.mass_flow_cathode * op.cathode_fractions.h2o;
    out.cathode_inlet.n2 = op.mass_flow_cathode * op.cathode_fractions.n2;

    const double h2_consumed =
        constants.molar_mass_h2 * total_current_a / (2.0 * constants.faraday);
    const double o2_consumed =
        constants.molar_mass_o2 * total_current_a / (4.0 * constants.faraday);
    const double h2o_produced =
        constants.molar_mass_h2o * total_current_a / (2.0 * constants.faraday);

    if (h2_consumed > out.anode_inlet.h2) {
        throw starvation_error("h2", "channel_outlet_state: hydrogen demand " +
                                         std::to_string(h2_consumed) +
                                         " kg/s exceeds anode supply");
    }
    if (o2_consumed > out.cathode_inlet.o2) {
        throw starvation_error("o2", "channel_outlet_state: oxygen demand " +
                                         std::to_string(o2_consumed) +
                                         " kg/s exceeds cathode supply");
    }

    out.anode_outlet = out.anode_inlet;
    out.anode_outlet.h2 -= h2_consumed;
    out.cathode_outlet = out.cathode_inlet;
    out.cathode_outlet.o2 -= o2_consumed;
    out.cathode_outlet.h2o += h2o_produced;
    return out;
}

ChannelFlow channel_pressure_drop(const CellGeometry& geometry, double viscosity,
                                  double density, double mass_flow) {
    geometry.validate();
    if (viscosity <= 0 || density <= 0) {
        throw domain_error("channel_pressure_drop: viscosity and density must be positive");
    }
    if (mass_flow < 0) {
        throw domain_error("channel_pressure_drop: mass flow must be non-negative");
    }
    const double d_h = geometry.hydraulic_diameter();
    ChannelFlow flow;
    flow.velocity = mass_flow / (density * geometry.inlet_area);
    flow.reynolds = density * flow.velocity * d_h / viscosity;
    flow.laminar = flow.reynolds <= 2300.0;
    flow.pressure_drop = geometry.friction_constant() * viscosity *
                         geometry.channel_length * flow.velocity / (2.0 * d_h * d_h);
    return flow;
}

PowerReport power_report(double current_density, double cell_voltage,
                         const CellGeometry& geometry, double pressure_drop,
                         double inlet_velocity) {
    if (current_density < 0 || cell_voltage < 0 || pressure_drop < 0 ||
        inlet_velocity < 0) {
        throw domain_error("power_report: inputs must be non-negative");
    }
    PowerReport report;
    report.production_power = current_density * cell_voltage * geometry.active_area;
    report.consumption_power = pressure_drop * geometry.inlet_area * inlet_velocity;
    report.pressure_drop = pressure_drop;
    report.inlet_velocity = inlet_velocity;
    report.ratio = report.production_power > 0.0
                       ? report.consumption_power / report.production_power
                       : 0.0;
    return report;
}

double electroosmotic_drag_flux(double water_content, double current_density,
                                const PhysicalConstants& constants) {
    if (water_content < 0 || current_density < 0) {
        throw domain_error("electroosmotic_drag_flux: inputs must be non-negative");
    }
    const double drag = 2.5 * water_content / 22.0;
    return drag * current_density / constants.faraday;
}

PowerReport evaluate_power(const CellSpec& cell, const OperatingPoint& op,
                           double cell_voltage) {
    const PhysicalConstants& c = default_constants();
    const double i = solve_current_at_voltage(cell, op, cell_voltage);
    channel_outlet_state(op, c, i * cell.geometry.active_area);

    const double mu = air_viscosity(op.inlet_temperature);
    const double molar_mass = mixture_molar_mass(op.cathode_fractions, c);
    const double rho = gas_density(op.inlet_pressure, op.inlet_temperature, molar_mass, c);
    const ChannelFlow flow =
        channel_pressure_drop(cell.geometry, mu, rho, op.mass_flow_cathode);
    return power_report(i, cell_voltage, cell.geometry, flow.pressure_drop,
                        flow.velocity);
}

}  // namespace polycell::fcell
