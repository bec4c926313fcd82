// Copyright (c) 2026 the polycell developers.
// SPDX-License-Identifier: Apache-2.0

#ifndef POLYCELL_ERRORS_HPP
#define POLYCELL_ERRORS_HPP

#include <cstddef>
#include <stdexcept>
#include <string>

namespace polycell {

/// Base class for all toolkit errors.
class error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Input outside an operation's declared domain.
class domain_error : public error {
public:
    using error::error;
};

/// API misuse (shape mismatch, unevaluated individual, empty front, ...).
class contract_error : public error {
public:
    using error::error;
};

/// Iterative solver hit its iteration cap without meeting tolerance.
class convergence_error : public error {
public:
    using error::error;
};

/// Butler-Volmer exponent too large to evaluate.
class saturation_error : public error {
public:
    using error::error;
};

/// Requested current density at or above the limiting current.
class limiting_current_error : public error {
public:
    using error::error;
};

/// Reactant consumption exceeds supply; names the species.
class starvation_error : public error {
public:
    starvation_error(const std::string& species, const std::string& what)
        : error(what), species_(species) {}
    const std::string& species() const { return species_; }

private:
    std::string species_;
};

/// Training loss blew up; carries the offending epoch.
class divergence_error : public error {
public:
    divergence_error(std::size_t epoch, const std::string& what)
        : error(what), epoch_(epoch) {}
    std::size_t epoch() const { return epoch_; }

private:
    std::size_t epoch_;
};

/// Rank-deficient least-squares design matrix.
class rank_error : public error {
public:
    using error::error;
};

/// A feature with zero range cannot be min-max normalized.
class degenerate_feature_error : public error {
public:
    using error::error;
};

/// Objective evaluator returned a non-finite value.
class evaluation_error : public error {
public:
    using error::error;
};

/// Config file parse failure, unknown key, or invalid value.
class config_error : public error {
public:
    using error::error;
};

/// Filesystem failure while reading or persisting artifacts.
class io_error : public error {
public:
    using error::error;
};

/// Too many grid points failed during a sweep.
class sweep_error : public error {
public:
    using error::error;
};

}  // namespace polycell

#endif
