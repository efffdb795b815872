#pragma once

#include <string>
#include <utility>
#include <vector>

#include "cmpol/operators.hpp"

namespace cmpol {

// Collapse channel L with rate gamma, contributing
// gamma (L rho L^dag - 1/2 {L^dag L, rho}) to the master equation.
struct CollapseChannel {
    Operator op;
    double rate = 0.0;
};

// Master-equation model: Hamiltonian plus collapse channels on one space.
struct LindbladModel {
    Operator H;
    std::vector<CollapseChannel> channels;

    explicit LindbladModel(Operator hamiltonian);

    // Throws SpaceMismatchError on a foreign-space operator and RegimeError
    // on a negative rate. Zero-rate channels are dropped.
    void add_collapse(Operator op, double rate);
};

// Right-hand side -i[H, rho] + dissipators, evaluated directly on matrices.
Matrix liouvillian_apply(const LindbladModel& model, const Matrix& rho);

// Dense superoperator acting on vec(rho) with column stacking, so that
// vec(A rho B) = (B^T kron A) vec(rho). Dimension is total^2 x total^2.
Matrix superoperator_matrix(const LindbladModel& model);

struct NamedObservable {
    std::string name;
    Operator op;
};

// Observable set for spaces laid out as (spin, ..., mode, ...): the first
// n_spins slots must be qubits, remaining slots are bosonic modes named in
// order as the lower and upper polariton. Emits per-spin excited-state
// populations, mode occupations, and top-Fock truncation monitors.
std::vector<NamedObservable> standard_observables(const SpaceDescriptor& space,
                                                  int n_spins);

}  // namespace cmpol
