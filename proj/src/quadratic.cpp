// Copyright (c) 2026 the polycell developers.
// SPDX-License-Identifier: Apache-2.0

#include "polycell/quadratic.hpp"

#include <array>
#include <cmath>
#include <vector>

#include "polycell/errors.hpp"
#include "polycell/textio.hpp"

namespace polycell::surrogate {

double evaluate_surface(const QuadraticSurface& s, double pressure_atm,
                        double temperature_c) {
    const double p = pressure_atm;
    const double t = temperature_c;
    return s.c_pp * p * p + s.c_pt * p * t + s.c_p * p + s.c_tt * t * t +
           s.c_t * t + s.c_0;
}

FitResult fit_quadratic(const Dataset& dataset) {
    dataset.validate();
    constexpr std::size_t kTerms = 6;
    const std::size_t n = dataset.rows.size();
    if (n < kTerms) {
        throw rank_error("fit_quadratic: " + std::to_string(n) +
                         " rows cannot determine 6 coefficients");
    }

    // Column-major design matrix [P^2, PT, P, T^2, T, 1] and right-hand side.
    std::vector<std::array<double, kTerms>> a(n);
    std::vector<double> b(n);
    for (std::size_t i = 0; i < n; ++i) {
        const double p = dataset.rows[i].pressure;
        const double t = dataset.rows[i].temperature;
        a[i] = {p * p, p * t, p, t * t, t, 1.0};
        b[i] = dataset.rows[i].value;
    }

    // Householder QR, reflectors applied in place.
    std::array<double, kTerms> diag{};
    for (std::size_t k = 0; k < kTerms; ++k) {
        double norm = 0.0;
        for (std::size_t i = k; i < n; ++i) norm += a[i][k] * a[i][k];
        norm = std::sqrt(norm);
        if (norm == 0.0) {
            throw rank_error("fit_quadratic: rank-deficient design matrix at column " +
                             std::to_string(k));
        }
        const double alpha = a[k][k] >= 0.0 ? -norm : norm;
        diag[k] = alpha;
        // Householder vector stored in the eliminated column.
        a[k][k] -= alpha;
        double v_norm_sq = 0.0;
        for (std::size_t i = k; i < n; ++i) v_norm_sq += a[i][k] * a[i][k];
        if (v_norm_sq == 0.0) continue;
        for (std::size_t j = k + 1; j < kTerms; ++j) {
            double dot = 0.0;
            for (std::size_t i = k; i < n; ++i) dot += a[i][k] * a[i][j];
            const double scale = 2.0 * dot / v_norm_sq;
            for (std::size_t i = k; i < n; ++i) a[i][j] -= scale * a[i][k];
        }
        double dot_b = 0.0;
        for (std::size_t i = k; i < n; ++i) dot_b += a[i][k] * b[i];
        const double scale_b = 2.0 * dot_b / v_norm_sq;
        for (std::size_t i = k; i < n; ++i) b[i] -= scale_b * a[i][k];
    }

    double max_diag = 0.0;
    for (double d : diag) max_diag = std::max(max_diag, std::abs(d));
    for (std::size_t k = 0; k < kTerms; ++k) {
        if (std::abs(diag[k]) <= 1e-12 * max_diag) {
            throw rank_error("fit_quadratic: rank-deficient design matrix (pivot " +
                             std::to_string(k) + " negligible)");
        }
    }

    // Back substitution on R (upper triangle with diag[] on the diagonal).
    std::array<double, kTerms> x{};
    for (std::size_t k = kTerms; k-- > 0;) {
        double sum = b[k];
        for (std::size_t j = k + 1; j < kTerms; ++j) sum -= a[k][j] * x[j];
        x[k] = sum / diag[k];
    }

    double residual_sq = 0.0;
    for (std::size_t i = kTerms; i < n; ++i) residual_sq += b[i] * b[i];

    FitResult result;
    result.surface = {x[0], x[1], x[2], x[3], x[4], x[5]};
    result.rms_residual = std::sqrt(residual_sq / static_cast<double>(n));
    return result;
}

QuadraticSurface paper_surface(ModelTag model, ObjectiveTag objective) {
    if (model == ModelTag::Pentagonal && objective == ObjectiveTag::Production) {
        return {3.266e-6, 5.816e-8, -3.127e-5, -1.928e-8, 2.936e-6, -3.027e-5};
    }
    if (model == ModelTag::Pentagonal && objective == ObjectiveTag::Consumption) {
        return {-5.112e-9, -4.847e-10, 6.669e-8, 5.415e-11, -4.154e-9, 1.172e-7};
    }
    if (model == ModelTag::Hexagonal && objective == ObjectiveTag::Production) {
        return {3.82e-6, -6.802e-8, -2.82e-5, -9.945e-10, 5.052e-7, 5.251e-5};
    }
    if (model == ModelTag::Hexagonal && objective == ObjectiveTag::Consumption) {
        return {-1.111e-7, -1.365e-8, 1.68e-6, 2.4647e-9, -2.729e-7, 9.1835e-6};
    }
    throw config_error(std::string("paper_surface: no published surface for the '") +
                       to_string(model) + "' design");
}

namespace {

constexpr const char* kSurfaceFormat = "polycell-surface-v1";

}  // namespace

std::string serialize_surface(const QuadraticSurface& s) {
    KvDocument doc;
    doc.set("format", kSurfaceFormat);
    doc.set("c_pp", s.c_pp);
    doc.set("c_pt", s.c_pt);
    doc.set("c_p", s.c_p);
    doc.set("c_tt", s.c_tt);
    doc.set("c_t", s.c_t);
    doc.set("c_0", s.c_0);
    return doc.serialize();
}

QuadraticSurface deserialize_surface(const std::string& text) {
    KvDocument doc = KvDocument::parse(text);
    const std::string* format = doc.find("format");
    if (format == nullptr || *format != kSurfaceFormat) {
        throw io_error("surface file: missing or unsupported format tag (expected " +
                       std::string(kSurfaceFormat) + ")");
    }
    auto coefficient = [&](const char* key) {
        const std::string* value = doc.find(key);
        if (value == nullptr) {
            throw io_error(std::string("surface file: missing key '") + key + "'");
        }
        return parse_double(*value);
    };
    QuadraticSurface s;
    s.c_pp = coefficient("c_pp");
    s.c_pt = coefficient("c_pt");
    s.c_p = coefficient("c_p");
    s.c_tt = coefficient("c_tt");
    s.c_t = coefficient("c_t");
    s.c_0 = coefficient("c_0");
    return s;
}

void write_surface(const std::string& path, const QuadraticSurface& surface) {
    write_file_atomic(path, serialize_surface(surface));
}

QuadraticSurface read_surface(const std::string& path) {
    return deserialize_surface(read_file(path));
}

}  // namespace polycell::surrogate
