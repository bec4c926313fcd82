// Copyright (c) 2026 the polycell developers.
// SPDX-License-Identifier: Apache-2.0

#ifndef POLYCELL_QUADRATIC_HPP
#define POLYCELL_QUADRATIC_HPP

#include <string>

#include "polycell/dataset.hpp"

namespace polycell::surrogate {

/// Bivariate quadratic response surface
///   value = c_pp P^2 + c_pt P T + c_p P + c_tt T^2 + c_t T + c_0
/// with P in atm, T in Celsius, value in W. The raw unit basis is kept so the
/// fitted coefficients are directly comparable with the published ones.
struct QuadraticSurface {
    double c_pp = 0.0;
    double c_pt = 0.0;
    double c_p = 0.0;
    double c_tt = 0.0;
    double c_t = 0.0;
    double c_0 = 0.0;
};

double evaluate_surface(const QuadraticSurface& surface, double pressure_atm,
                        double temperature_c);

struct FitResult {
    QuadraticSurface surface;
    double rms_residual = 0.0;  // W
};

/// Least squares over the six-term basis via Householder QR. Needs at least
/// six rows of full column rank; otherwise raises rank_error.
FitResult fit_quadratic(const Dataset& dataset);

/// The published response-surface coefficients for the pentagonal and
/// hexagonal designs. No surface exists for the cubic base design.
QuadraticSurface paper_surface(ModelTag model, ObjectiveTag objective);

/// Key-value persistence of the six coefficients, version-tagged
/// polycell-surface-v1, with 17-significant-digit floats.
std::string serialize_surface(const QuadraticSurface& surface);
QuadraticSurface deserialize_surface(const std::string& text);
void write_surface(const std::string& path, const QuadraticSurface& surface);
QuadraticSurface read_surface(const std::string& path);

}  // namespace polycell::surrogate

#endif
