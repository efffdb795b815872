#pragma once

#include <Eigen/Dense>
#include <complex>
#include <string>
#include <vector>

#include "cmpol/errors.hpp"
#include "cmpol/space.hpp"

namespace cmpol {

using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;
using Complex = std::complex<double>;

// ---- single-factor matrices ----

// Truncated bosonic annihilation operator: <n-1|a|n> = sqrt(n), n = 1..dim-1.
// On the truncation the corner identity holds: [a, a^dag] = I - dim |d-1><d-1|.
Matrix annihilation(int dim);
Matrix creation(int dim);
Matrix number_operator(int dim);

// Qubit basis is ordered (excited, ground): index 0 = excited, 1 = ground,
// so sigma_z = diag(1, -1) and sigma_plus raises ground to excited.
Matrix pauli_z();
Matrix pauli_plus();
Matrix pauli_minus();
Matrix pauli_x();
Matrix pauli_y();

Matrix identity(int dim);

// |n><n| on a single factor.
Matrix fock_projector(int dim, int n);

// Single-mode squeeze unitary S = exp(r/2 (a^dag^2 - a^2)), chosen so that
// S^dag a S = cosh(r) a + sinh(r) a^dag up to truncation error.
Matrix squeeze_operator(int dim, double r);

// ---- tensor-product helpers ----

// Kronecker product; a is the slower (leftmost) factor.
Matrix kron(const Matrix& a, const Matrix& b);

// ---- operators on a product space ----

// Dense operator tied to a space. Value semantics; arithmetic checks that
// both operands share the same space.
struct Operator {
    SpaceDescriptor space;
    Matrix mat;

    Operator() = default;
    Operator(SpaceDescriptor sp, Matrix m);

    Operator adjoint() const { return {space, mat.adjoint()}; }
    bool is_hermitian(double tol = 1e-12) const;
};

Operator operator+(const Operator& a, const Operator& b);
Operator operator-(const Operator& a, const Operator& b);
Operator operator*(const Operator& a, const Operator& b);
Operator operator*(Complex c, const Operator& a);
Operator operator*(double c, const Operator& a);

Operator commutator(const Operator& a, const Operator& b);
Operator anticommutator(const Operator& a, const Operator& b);

// Identity on the full space.
Operator identity_on(const SpaceDescriptor& space);

// Lift a single-factor matrix into the given slot, identity elsewhere.
Operator embed(const Matrix& op, const SpaceDescriptor& space, int slot);

// ---- states ----

// Pure or mixed state on a space. Pure states keep the amplitude vector;
// density() materializes |psi><psi| on demand.
struct QuantumState {
    SpaceDescriptor space;
    Vector psi;  // nonempty iff pure
    Matrix rho;  // nonempty iff mixed

    bool is_pure() const { return psi.size() > 0; }
    Matrix density() const;

    // Throws StateError on norm/trace/hermiticity/positivity violations.
    void validate(double tol = 1e-10, double positivity_tol = 1e-8) const;

    static QuantumState pure(SpaceDescriptor space, Vector amplitudes);
    static QuantumState mixed(SpaceDescriptor space, Matrix density);
};

// Basis vector |n> on one factor.
Vector fock_state(int dim, int n);

// Product state from per-factor vectors, slot order matching the space.
QuantumState product_state(const SpaceDescriptor& space,
                           const std::vector<Vector>& factors);

// Product basis state from per-slot indices (qubits: 0 = excited, 1 = ground).
QuantumState basis_state(const SpaceDescriptor& space,
                         const std::vector<int>& indices);

// <psi|O|psi> or tr(rho O).
Complex expectation(const Operator& op, const QuantumState& state);

}  // namespace cmpol
