#pragma once

#include <stdexcept>
#include <string>

namespace cmpol {

// Error taxonomy. One type per contract-violation class so callers and tests
// can catch precisely instead of string-matching.

// Bad factor dimension, slot index, or operator layout for a builder.
struct DimensionError : std::invalid_argument {
    explicit DimensionError(const std::string& msg) : std::invalid_argument(msg) {}
};

// Operands live on different spaces.
struct SpaceMismatchError : std::invalid_argument {
    explicit SpaceMismatchError(const std::string& msg) : std::invalid_argument(msg) {}
};

// State fails norm / trace / hermiticity / positivity validation.
struct StateError : std::invalid_argument {
    explicit StateError(const std::string& msg) : std::invalid_argument(msg) {}
};

// A Hamiltonian argument is not Hermitian.
struct NonHermitianError : std::invalid_argument {
    explicit NonHermitianError(const std::string& msg) : std::invalid_argument(msg) {}
};

// Parameters outside the physical domain of a formula (nonpositive frequency,
// zero distance, undefined criticality, ...).
struct RegimeError : std::domain_error {
    explicit RegimeError(const std::string& msg) : std::domain_error(msg) {}
};

// Squeezing undefined: |Delta_m| <= 2|K_s| (hyperbolic regime).
struct SqueezingError : std::domain_error {
    explicit SqueezingError(const std::string& msg) : std::domain_error(msg) {}
};

// Lower polariton unstable (G >= G_c): omega_minus not real.
struct InstabilityError : std::domain_error {
    explicit InstabilityError(const std::string& msg) : std::domain_error(msg) {}
};

// Degenerate detunings where a mixing angle is undefined.
struct DegeneracyError : std::domain_error {
    explicit DegeneracyError(const std::string& msg) : std::domain_error(msg) {}
};

// Integrator failure: tolerance not met, positivity lost, step budget spent.
struct IntegrationError : std::runtime_error {
    explicit IntegrationError(const std::string& msg) : std::runtime_error(msg) {}
};

// Config parse or validation failure (unknown key, bad value, missing file).
struct ConfigError : std::runtime_error {
    explicit ConfigError(const std::string& msg) : std::runtime_error(msg) {}
};

// Output artifact violates its contract (ragged table, NaN, unwritable path).
struct ArtifactError : std::runtime_error {
    explicit ArtifactError(const std::string& msg) : std::runtime_error(msg) {}
};

}  // namespace cmpol
