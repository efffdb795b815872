#include "cmpol/lindblad.hpp"

#include "cmpol/errors.hpp"

namespace cmpol {

LindbladModel::LindbladModel(Operator hamiltonian) : H(std::move(hamiltonian)) {}

void LindbladModel::add_collapse(Operator op, double rate) {
    if (op.space != H.space)
        throw SpaceMismatchError("collapse operator lives on " + op.space.str() +
                                 ", model on " + H.space.str());
    if (rate < 0.0) throw RegimeError("collapse rate must be >= 0");
    if (rate == 0.0) return;
    channels.push_back({std::move(op), rate});
}

Matrix liouvillian_apply(const LindbladModel& model, const Matrix& rho) {
    const Complex i(0, 1);
    Matrix out = -i * (model.H.mat * rho - rho * model.H.mat);
    for (const auto& ch : model.channels) {
        const Matrix& L = ch.op.mat;
        const Matrix Lrho = L * rho;
        const Matrix LdL = L.adjoint() * L;
        out += ch.rate * (Lrho * L.adjoint() -
                          0.5 * (LdL * rho + rho * LdL));
    }
    return out;
}

Matrix superoperator_matrix(const LindbladModel& model) {
    const Eigen::Index n = model.H.mat.rows();
    const Matrix id = Matrix::Identity(n, n);
    const Complex i(0, 1);
    Matrix s = -i * (kron(id, model.H.mat) - kron(model.H.mat.transpose(), id));
    for (const auto& ch : model.channels) {
        const Matrix& L = ch.op.mat;
        const Matrix LdL = L.adjoint() * L;
        s += ch.rate * (kron(L.conjugate(), L) -
                        0.5 * (kron(id, LdL) + kron(LdL.transpose(), id)));
    }
    return s;
}

std::vector<NamedObservable> standard_observables(const SpaceDescriptor& space,
                                                  int n_spins) {
    if (n_spins < 0 || n_spins > space.factors())
        throw DimensionError("standard observables: n_spins out of range for " +
                             space.str());
    for (int k = 0; k < n_spins; ++k)
        if (space.dim(k) != 2)
            throw DimensionError("standard observables: slot " + std::to_string(k) +
                                 " must be a spin (dim 2)");
    const int n_modes = space.factors() - n_spins;
    if (n_modes > 2)
        throw DimensionError("standard observables: at most two mode slots");

    std::vector<NamedObservable> obs;
    const Matrix excited = pauli_plus() * pauli_minus();
    for (int k = 0; k < n_spins; ++k)
        obs.push_back({"spin" + std::to_string(k + 1) + "_occupation",
                       embed(excited, space, k)});
    static const char* mode_prefix[2] = {"lp", "hp"};
    for (int j = 0; j < n_modes; ++j) {
        const int slot = n_spins + j;
        const int d = space.dim(slot);
        obs.push_back({std::string(mode_prefix[j]) + "_occupation",
                       embed(number_operator(d), space, slot)});
        const std::string top = j == 0 ? "top_fock_population"
                                       : "hp_top_fock_population";
        obs.push_back({top, embed(fock_projector(d, d - 1), space, slot)});
    }
    return obs;
}

}  // namespace cmpol
