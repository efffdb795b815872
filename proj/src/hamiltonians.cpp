#include "cmpol/hamiltonians.hpp"

#include "cmpol/errors.hpp"

namespace cmpol {

namespace {

void require_layout(const SpaceDescriptor& space, int n_factors,
                    std::initializer_list<int> spin_slots, const char* builder) {
    if (space.factors() != n_factors)
        throw DimensionError(std::string(builder) + ": expected " +
                             std::to_string(n_factors) + " factors, got " +
                             space.str());
    for (int slot : spin_slots)
        if (space.dim(slot) != 2)
            throw DimensionError(std::string(builder) + ": slot " +
                                 std::to_string(slot) + " must be a spin (dim 2)");
}

// helpers returning full-space embeddings of single-mode primitives
Operator mode_number(const SpaceDescriptor& space, int slot) {
    return embed(number_operator(space.dim(slot)), space, slot);
}

Operator mode_annihilate(const SpaceDescriptor& space, int slot) {
    return embed(annihilation(space.dim(slot)), space, slot);
}

}  // namespace

Operator build_h_sys(const SpaceDescriptor& space, double Delta_nv, double Delta_c,
                     double delta_m, double K, double Omega_d, double lambda,
                     double g_m) {
    require_layout(space, 3, {0}, "build_h_sys");
    const Operator sz = embed(pauli_z(), space, 0);
    const Operator sp = embed(pauli_plus(), space, 0);
    const Operator a = mode_annihilate(space, 1);
    const Operator m = mode_annihilate(space, 2);
    const Operator nm = mode_number(space, 2);

    Operator h = 0.5 * Delta_nv * sz + Delta_c * mode_number(space, 1) +
                 delta_m * nm;
    // normal-ordered Kerr m^dag m^dag m m = n(n-1)
    h = h + K * (nm * nm - nm);
    h = h + Omega_d * (m + m.adjoint());
    h = h + lambda * (sp * a + a.adjoint() * sp.adjoint());
    h = h + g_m * (a.adjoint() * m + a * m.adjoint());
    return h;
}

Operator build_h_lin(const SpaceDescriptor& space, double Delta_nv, double Delta_c,
                     double Delta_m, double K_s, double lambda, double g_m) {
    require_layout(space, 3, {0}, "build_h_lin");
    const Operator sz = embed(pauli_z(), space, 0);
    const Operator sp = embed(pauli_plus(), space, 0);
    const Operator a = mode_annihilate(space, 1);
    const Operator m = mode_annihilate(space, 2);

    Operator h = 0.5 * Delta_nv * sz + Delta_c * mode_number(space, 1) +
                 Delta_m * mode_number(space, 2);
    h = h + K_s * (m * m + m.adjoint() * m.adjoint());
    h = h + lambda * (sp * a + a.adjoint() * sp.adjoint());
    h = h + g_m * (a.adjoint() * m + a * m.adjoint());
    return h;
}

Operator build_h_cms(const SpaceDescriptor& space, double Delta_c, double Delta_s,
                     double G) {
    require_layout(space, 2, {}, "build_h_cms");
    const Operator a = mode_annihilate(space, 0);
    const Operator m = mode_annihilate(space, 1);
    const Operator xa = a + a.adjoint();
    const Operator xm = m + m.adjoint();
    return Delta_c * mode_number(space, 0) + Delta_s * mode_number(space, 1) +
           G * (xa * xm);
}

Operator build_h_cmp(const SpaceDescriptor& space, double Delta_nv,
                     double omega_minus, double omega_plus, double g_r, double g_cr,
                     double g_r_prime, double g_cr_prime) {
    require_layout(space, 3, {0}, "build_h_cmp");
    const Operator sz = embed(pauli_z(), space, 0);
    const Operator sp = embed(pauli_plus(), space, 0);
    const Operator pm = mode_annihilate(space, 1);
    const Operator pp = mode_annihilate(space, 2);

    Operator h = 0.5 * Delta_nv * sz + omega_minus * mode_number(space, 1) +
                 omega_plus * mode_number(space, 2);
    Operator couple = g_r * (sp * pm) + g_cr * (sp * pm.adjoint()) +
                      g_r_prime * (sp * pp) + g_cr_prime * (sp * pp.adjoint());
    return h + couple + couple.adjoint();
}

Operator build_h_jc(const SpaceDescriptor& space, double Delta_nv,
                    double omega_minus, double g_r) {
    require_layout(space, 2, {0}, "build_h_jc");
    const Operator sz = embed(pauli_z(), space, 0);
    const Operator sp = embed(pauli_plus(), space, 0);
    const Operator p = mode_annihilate(space, 1);
    return 0.5 * Delta_nv * sz + omega_minus * mode_number(space, 1) +
           g_r * (sp * p + p.adjoint() * sp.adjoint());
}

Operator build_h_tc(const SpaceDescriptor& space, double Delta_nv,
                    double omega_minus, double g_r) {
    require_layout(space, 3, {0, 1}, "build_h_tc");
    const Operator sz1 = embed(pauli_z(), space, 0);
    const Operator sz2 = embed(pauli_z(), space, 1);
    const Operator sp1 = embed(pauli_plus(), space, 0);
    const Operator sp2 = embed(pauli_plus(), space, 1);
    const Operator p = mode_annihilate(space, 2);

    Operator h = 0.5 * Delta_nv * (sz1 + sz2) + omega_minus * mode_number(space, 2);
    Operator couple = g_r * (sp1 * p + sp2 * p);
    return h + couple + couple.adjoint();
}

Operator build_h_eff(const SpaceDescriptor& space, double g_eff, double omega_eff) {
    require_layout(space, 2, {0, 1}, "build_h_eff");
    const Operator sz1 = embed(pauli_z(), space, 0);
    const Operator sz2 = embed(pauli_z(), space, 1);
    const Operator sp1 = embed(pauli_plus(), space, 0);
    const Operator sp2 = embed(pauli_plus(), space, 1);
    Operator flip = g_eff * (sp1 * sp2.adjoint());
    return 0.5 * omega_eff * (sz1 + sz2) + flip + flip.adjoint();
}

}  // namespace cmpol
