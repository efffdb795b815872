#pragma once

#include "cmpol/operators.hpp"

namespace cmpol {

// Hamiltonian builders for each stage of the model-reduction chain. All
// energies are angular frequencies (rad/s) in the drive rotating frame and
// every returned operator is Hermitian by construction. Builders validate
// the factor layout of `space` and throw DimensionError on mismatch.

// spin + cavity + magnon with Kerr term and coherent magnon drive:
// (2, n_c, n_m)
Operator build_h_sys(const SpaceDescriptor& space, double Delta_nv, double Delta_c,
                     double delta_m, double K, double Omega_d, double lambda,
                     double g_m);

// fluctuation Hamiltonian after the mean-field shift, quadratic two-magnon
// terms instead of drive and quartic Kerr: (2, n_c, n_m)
Operator build_h_lin(const SpaceDescriptor& space, double Delta_nv, double Delta_c,
                     double Delta_m, double K_s, double lambda, double g_m);

// cavity + squeezed magnon with counter-rotating coupling
// G (a + a^dag)(m + m^dag): (n_c, n_m)
Operator build_h_cms(const SpaceDescriptor& space, double Delta_c, double Delta_s,
                     double G);

// spin + both polariton branches with rotating and counter-rotating
// spin-polariton couplings: (2, n_minus, n_plus)
Operator build_h_cmp(const SpaceDescriptor& space, double Delta_nv,
                     double omega_minus, double omega_plus, double g_r, double g_cr,
                     double g_r_prime, double g_cr_prime);

// Jaynes-Cummings reduction, spin + lower polariton: (2, n_minus)
Operator build_h_jc(const SpaceDescriptor& space, double Delta_nv,
                    double omega_minus, double g_r);

// Tavis-Cummings reduction, two spins + lower polariton: (2, 2, n_minus)
Operator build_h_tc(const SpaceDescriptor& space, double Delta_nv,
                    double omega_minus, double g_r);

// dispersive two-spin exchange model: (2, 2)
Operator build_h_eff(const SpaceDescriptor& space, double g_eff, double omega_eff);

}  // namespace cmpol
