// Copyright (c) 2026 the polycell developers.
// SPDX-License-Identifier: Apache-2.0

#ifndef POLYCELL_UNITS_HPP
#define POLYCELL_UNITS_HPP

namespace polycell::units {

// All internal computation is SI. The CLI and persisted artifacts speak
// atm and degrees Celsius; these are the only conversion constants.
inline constexpr double kPascalPerAtm = 101325.0;
inline constexpr double kCelsiusOffset = 273.15;

inline constexpr double atm_to_pa(double atm) { return atm * kPascalPerAtm; }
inline constexpr double pa_to_atm(double pa) { return pa / kPascalPerAtm; }
inline constexpr double celsius_to_kelvin(double c) { return c + kCelsiusOffset; }
inline constexpr double kelvin_to_celsius(double k) { return k - kCelsiusOffset; }

}  // namespace polycell::units

#endif
