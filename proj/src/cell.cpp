// Copyright (c) 2026 the polycell developers.
// SPDX-License-Identifier: Apache-2.0

#include "polycell/cell.hpp"

#include <cmath>
#include <string>

#include "polycell/electrochem.hpp"
#include "polycell/errors.hpp"

namespace polycell::fcell {

void PhysicalConstants::validate() const {
    if (faraday <= 0 || gas_constant <= 0 || molar_mass_h2 <= 0 ||
        molar_mass_o2 <= 0 || molar_mass_h2o <= 0) {
        throw contract_error("PhysicalConstants: all entries must be strictly positive");
    }
}

const PhysicalConstants& default_constants() {
    static const PhysicalConstants constants{};
    return constants;
}

const char* to_string(ChannelShape shape) {
    switch (shape) {
        case ChannelShape::Cubic: return "cubic";
        case ChannelShape::Pentagonal: return "pentagonal";
        case ChannelShape::Hexagonal: return "hexagonal";
    }
    throw contract_error("ChannelShape: unknown enumerator");
}

ChannelShape channel_shape_from_string(const std::string& name) {
    if (name == "cubic") return ChannelShape::Cubic;
    if (name == "pentagonal") return ChannelShape::Pentagonal;
    if (name == "hexagonal") return ChannelShape::Hexagonal;
    throw config_error("unknown channel shape '" + name +
                       "' (expected cubic, pentagonal, or hexagonal)");
}

void CellGeometry::validate() const {
    if (channel_side <= 0 || channel_length <= 0 || inlet_area <= 0 ||
        active_area <= 0 || gdl_thickness <= 0 || cl_thickness <= 0 ||
        membrane_thickness <= 0) {
        throw contract_error("CellGeometry: all lengths and areas must be positive");
    }
    if (active_area <= inlet_area) {
        throw contract_error("CellGeometry: active_area must exceed inlet_area");
    }
}

int CellGeometry::side_count() const {
    switch (model_tag) {
        case ChannelShape::Cubic: return 4;
        case ChannelShape::Pentagonal: return 5;
        case ChannelShape::Hexagonal: return 6;
    }
    throw contract_error("CellGeometry: unknown model_tag");
}

double CellGeometry::hydraulic_diameter() const {
    const double perimeter = side_count() * channel_side;
    if (perimeter <= 0 || inlet_area <= 0) {
        throw domain_error("hydraulic diameter undefined for degenerate channel");
    }
    return 4.0 * inlet_area / perimeter;
}

double CellGeometry::friction_constant() const {
    // Laminar fully developed f*Re for regular polygonal ducts.
    switch (model_tag) {
        case ChannelShape::Cubic: return 56.91;
        case ChannelShape::Pentagonal: return 59.07;
        case ChannelShape::Hexagonal: return 60.22;
    }
    throw contract_error("CellGeometry: unknown model_tag");
}

double CellGeometry::catalyst_volume() const {
    return cl_thickness * active_area;
}

void MEAProperties::validate() const {
    auto porosity_ok = [](double eps) { return eps > 0.0 && eps < 1.0; };
    if (!porosity_ok(porosity_gdl) || !porosity_ok(porosity_cl) ||
        !porosity_ok(porosity_mem)) {
        throw contract_error("MEAProperties: porosities must lie in (0, 1)");
    }
    if (sigma_sol <= 0 || sigma_mem <= 0 || k_eff_electrode <= 0 ||
        permeability <= 0) {
        throw contract_error("MEAProperties: conductivities and permeability must be positive");
    }
    if (contact_resistance < 0) {
        throw contract_error("MEAProperties: contact_resistance must be non-negative");
    }
}

void ElectrodeKinetics::validate() const {
    if (volumetric_exchange_current <= 0) {
        throw contract_error("ElectrodeKinetics: exchange current must be positive");
    }
    if (alpha_anodic <= 0 || alpha_anodic > 2 || alpha_cathodic <= 0 ||
        alpha_cathodic > 2) {
        throw contract_error("ElectrodeKinetics: transfer coefficients must lie in (0, 2]");
    }
    if (concentration_exponent < 0) {
        throw contract_error("ElectrodeKinetics: concentration exponent must be non-negative");
    }
    if (reference_concentration <= 0) {
        throw contract_error("ElectrodeKinetics: reference concentration must be positive");
    }
}

void OperatingPoint::validate() const {
    if (inlet_pressure <= 0 || inlet_temperature <= 0) {
        throw contract_error("OperatingPoint: pressure and temperature must be positive");
    }
    if (rh_anode < 0 || rh_anode > 1 || rh_cathode < 0 || rh_cathode > 1) {
        throw contract_error("OperatingPoint: relative humidity must lie in [0, 1]");
    }
    if (stoich_anode <= 0 || stoich_cathode <= 0) {
        throw contract_error("OperatingPoint: stoichiometries must be positive");
    }
    if (mass_flow_anode <= 0 || mass_flow_cathode <= 0) {
        throw contract_error("OperatingPoint: mass flows must be positive");
    }
    auto check_stream = [](const SpeciesFractions& w, const char* which) {
        for (double f : {w.h2, w.o2, w.h2o, w.n2}) {
            if (f < 0.0 || f > 1.0) {
                throw contract_error(std::string("OperatingPoint: ") + which +
                                     " mass fractions must lie in [0, 1]");
            }
        }
        // The published boundary table rounds to three digits (the anode side
        // sums to 0.999); a 1% band absorbs that.
        if (std::abs(w.sum() - 1.0) > 0.01) {
            throw contract_error(std::string("OperatingPoint: ") + which +
                                 " mass fractions must sum to 1 within 0.01");
        }
    };
    check_stream(anode_fractions, "anode");
    check_stream(cathode_fractions, "cathode");
}

void GasState::validate() const {
    if (pressure <= 0 || temperature <= 0 || ref_pressure <= 0 ||
        ref_temperature <= 0) {
        throw contract_error("GasState: pressures and temperatures must be positive");
    }
    if (conc_h2 < 0 || conc_o2 < 0 || conc_h2o < 0) {
        throw contract_error("GasState: concentrations must be non-negative");
    }
    if (liquid_volume < 0 || liquid_volume > total_pore_volume ||
        total_pore_volume <= 0) {
        throw contract_error("GasState: need 0 <= liquid_volume <= total_pore_volume");
    }
    if (diff_h2 <= 0 || diff_o2 <= 0 || diff_h2o <= 0 || viscosity <= 0) {
        throw contract_error("GasState: diffusivities and viscosity must be positive");
    }
}

void CellSpec::validate() const {
    geometry.validate();
    mea.validate();
    anode.validate();
    cathode.validate();
    if (limiting_current <= 0) {
        throw contract_error("CellSpec: limiting current must be positive");
    }
}

namespace {

CellGeometry preset_geometry(ChannelShape shape) {
    CellGeometry g;
    g.model_tag = shape;
    switch (shape) {
        case ChannelShape::Cubic:
            g.channel_side = 1.0e-3;
            g.channel_length = 50.0e-3;
            g.inlet_area = 1.0e-6;
            break;
        case ChannelShape::Pentagonal:
            g.channel_side = 0.4e-3;
            g.channel_length = 123.5e-3;
            g.inlet_area = 0.28e-6;
            break;
        case ChannelShape::Hexagonal:
            g.channel_side = 0.3e-3;
            g.channel_length = 151.5e-3;
            g.inlet_area = 0.28e-6;
            break;
    }
    g.active_area = 100.0e-6;
    g.gdl_thickness = 0.26e-3;
    g.cl_thickness = 0.03e-3;
    g.membrane_thickness = 0.23e-3;
    return g;
}

}  // namespace

CellSpec preset_cell(const std::string& name) {
    const ChannelShape shape = channel_shape_from_string(name);
    CellSpec cell;
    cell.geometry = preset_geometry(shape);
    cell.mea = MEAProperties{};
    cell.anode = ElectrodeKinetics{};
    cell.anode.volumetric_exchange_current = 30.0;
    cell.anode.concentration_exponent = 0.5;
    cell.cathode = ElectrodeKinetics{};
    cell.cathode.volumetric_exchange_current = 0.004;
    cell.cathode.concentration_exponent = 1.0;
    cell.limiting_current = 1.4e4;
    cell.validate();
    return cell;
}

OperatingPoint preset_operating_point(ChannelShape shape) {
    OperatingPoint op;
    op.anode_fractions.h2 = 0.113;
    op.anode_fractions.h2o = 0.886;
    op.cathode_fractions.o2 = shape == ChannelShape::Pentagonal ? 0.150 : 0.151;
    op.cathode_fractions.h2o = 0.353;
    op.cathode_fractions.n2 = 0.496;
    op.validate();
    return op;
}

OperatingPoint operating_point_at(const OperatingPoint& base, double pressure_pa,
                                  double temperature_k) {
    if (pressure_pa <= 0 || temperature_k <= 0) {
        throw domain_error("operating_point_at: pressure and temperature must be positive");
    }
    const PhysicalConstants& c = default_constants();
    OperatingPoint op = base;
    op.inlet_pressure = pressure_pa;
    op.inlet_temperature = temperature_k;

    const double p_sat = saturation_pressure(temperature_k);

    auto vapor_fraction = [&](double rh) {
        const double x = rh * p_sat / pressure_pa;
        if (x >= 1.0) {
            throw domain_error("operating_point_at: vapor pressure exceeds total pressure");
        }
        return x;
    };

    {
        const double x_h2o = vapor_fraction(op.rh_anode);
        const double x_h2 = 1.0 - x_h2o;
        const double m_h2 = x_h2 * c.molar_mass_h2;
        const double m_h2o = x_h2o * c.molar_mass_h2o;
        const double total = m_h2 + m_h2o;
        op.anode_fractions = SpeciesFractions{};
        op.anode_fractions.h2 = m_h2 / total;
        op.anode_fractions.h2o = m_h2o / total;
    }
    {
        const double x_h2o = vapor_fraction(op.rh_cathode);
        const double x_dry = 1.0 - x_h2o;
        const double x_o2 = 0.21 * x_dry;
        const double x_n2 = 0.79 * x_dry;
        const double m_o2 = x_o2 * c.molar_mass_o2;
        const double m_n2 = x_n2 * kMolarMassN2;
        const double m_h2o = x_h2o * c.molar_mass_h2o;
        const double total = m_o2 + m_n2 + m_h2o;
        op.cathode_fractions = SpeciesFractions{};
        op.cathode_fractions.o2 = m_o2 / total;
        op.cathode_fractions.n2 = m_n2 / total;
        op.cathode_fractions.h2o = m_h2o / total;
    }
    op.validate();
    return op;
}

}  // namespace polycell::fcell
