#include "cmpol/operators.hpp"

#include <cmath>

namespace cmpol {

// ---- single-factor matrices ----

Matrix annihilation(int dim) {
    if (dim < 2) throw DimensionError("annihilation needs dim >= 2");
    Matrix a = Matrix::Zero(dim, dim);
    for (int n = 1; n < dim; ++n) a(n - 1, n) = std::sqrt(double(n));
    return a;
}

Matrix creation(int dim) { return annihilation(dim).adjoint(); }

Matrix number_operator(int dim) {
    if (dim < 2) throw DimensionError("number operator needs dim >= 2");
    Matrix n = Matrix::Zero(dim, dim);
    for (int k = 0; k < dim; ++k) n(k, k) = double(k);
    return n;
}

Matrix pauli_z() {
    Matrix s(2, 2);
    s << 1, 0, 0, -1;
    return s;
}

Matrix pauli_plus() {
    // |e><g| in the (excited, ground) ordering.
    Matrix s = Matrix::Zero(2, 2);
    s(0, 1) = 1;
    return s;
}

Matrix pauli_minus() { return pauli_plus().adjoint(); }

Matrix pauli_x() { return pauli_plus() + pauli_minus(); }

Matrix pauli_y() {
    Matrix s = Matrix::Zero(2, 2);
    s(0, 1) = Complex(0, -1);
    s(1, 0) = Complex(0, 1);
    return s;
}

Matrix identity(int dim) {
    if (dim < 1) throw DimensionError("identity needs dim >= 1");
    return Matrix::Identity(dim, dim);
}

Matrix fock_projector(int dim, int n) {
    if (dim < 2) throw DimensionError("fock projector needs dim >= 2");
    if (n < 0 || n >= dim)
        throw DimensionError("fock level " + std::to_string(n) +
                             " outside dim " + std::to_string(dim));
    Matrix p = Matrix::Zero(dim, dim);
    p(n, n) = 1;
    return p;
}

Matrix squeeze_operator(int dim, double r) {
    const Matrix a = annihilation(dim);
    const Matrix gen = 0.5 * r * (creation(dim) * creation(dim) - a * a);
    // gen is anti-Hermitian; exponentiate through the Hermitian -i*gen
    Eigen::SelfAdjointEigenSolver<Matrix> es(Complex(0, -1) * gen);
    const Vector phases =
        (Complex(0, 1) * es.eigenvalues().cast<Complex>()).array().exp();
    return es.eigenvectors() * phases.asDiagonal() * es.eigenvectors().adjoint();
}

// ---- tensor-product helpers ----

Matrix kron(const Matrix& a, const Matrix& b) {
    const Eigen::Index ar = a.rows(), ac = a.cols();
    const Eigen::Index br = b.rows(), bc = b.cols();
    Matrix out(ar * br, ac * bc);
    for (Eigen::Index i = 0; i < ar; ++i)
        for (Eigen::Index j = 0; j < ac; ++j)
            out.block(i * br, j * bc, br, bc) = a(i, j) * b;
    return out;
}

// ---- operators on a product space ----

Operator::Operator(SpaceDescriptor sp, Matrix m) : space(std::move(sp)), mat(std::move(m)) {
    const int n = space.total();
    if (mat.rows() != n || mat.cols() != n)
        throw DimensionError("matrix is " + std::to_string(mat.rows()) + "x" +
                             std::to_string(mat.cols()) + " but space " +
                             space.str() + " has total dim " + std::to_string(n));
}

bool Operator::is_hermitian(double tol) const {
    const double scale = std::max(1.0, mat.cwiseAbs().maxCoeff());
    return (mat - mat.adjoint()).cwiseAbs().maxCoeff() <= tol * scale;
}

static void check_same_space(const Operator& a, const Operator& b, const char* what) {
    if (a.space != b.space)
        throw SpaceMismatchError(std::string(what) + ": spaces " + a.space.str() +
                                 " and " + b.space.str() + " differ");
}

Operator operator+(const Operator& a, const Operator& b) {
    check_same_space(a, b, "operator+");
    return {a.space, a.mat + b.mat};
}

Operator operator-(const Operator& a, const Operator& b) {
    check_same_space(a, b, "operator-");
    return {a.space, a.mat - b.mat};
}

Operator operator*(const Operator& a, const Operator& b) {
    check_same_space(a, b, "operator*");
    return {a.space, a.mat * b.mat};
}

Operator operator*(Complex c, const Operator& a) { return {a.space, c * a.mat}; }
Operator operator*(double c, const Operator& a) { return {a.space, c * a.mat}; }

Operator commutator(const Operator& a, const Operator& b) {
    check_same_space(a, b, "commutator");
    return {a.space, a.mat * b.mat - b.mat * a.mat};
}

Operator anticommutator(const Operator& a, const Operator& b) {
    check_same_space(a, b, "anticommutator");
    return {a.space, a.mat * b.mat + b.mat * a.mat};
}

Operator identity_on(const SpaceDescriptor& space) {
    return {space, Matrix::Identity(space.total(), space.total())};
}

Operator embed(const Matrix& op, const SpaceDescriptor& space, int slot) {
    const int d = space.dim(slot);  // validates slot
    if (op.rows() != d || op.cols() != d)
        throw DimensionError("embed: operator is " + std::to_string(op.rows()) +
                             "x" + std::to_string(op.cols()) + " but slot " +
                             std::to_string(slot) + " of " + space.str() +
                             " has dim " + std::to_string(d));
    Matrix out = Matrix::Identity(1, 1);
    for (int k = 0; k < space.factors(); ++k)
        out = kron(out, k == slot ? op : identity(space.dim(k)));
    return {space, std::move(out)};
}

// ---- states ----

Matrix QuantumState::density() const {
    if (is_pure()) return psi * psi.adjoint();
    return rho;
}

void QuantumState::validate(double tol, double positivity_tol) const {
    const int n = space.total();
    if (is_pure()) {
        if (psi.size() != n)
            throw StateError("state vector length " + std::to_string(psi.size()) +
                             " does not match space " + space.str());
        if (std::abs(psi.norm() - 1.0) > tol)
            throw StateError("state vector norm deviates from 1 by more than tolerance");
        return;
    }
    if (rho.rows() != n || rho.cols() != n)
        throw StateError("density matrix does not match space " + space.str());
    if ((rho - rho.adjoint()).cwiseAbs().maxCoeff() > tol)
        throw StateError("density matrix not Hermitian within tolerance");
    if (std::abs(rho.trace().real() - 1.0) > tol || std::abs(rho.trace().imag()) > tol)
        throw StateError("density matrix trace deviates from 1 beyond tolerance");
    Eigen::SelfAdjointEigenSolver<Matrix> es(0.5 * (rho + rho.adjoint()),
                                             Eigen::EigenvaluesOnly);
    if (es.eigenvalues().minCoeff() < -positivity_tol)
        throw StateError("density matrix has eigenvalue below -positivity tolerance");
}

QuantumState QuantumState::pure(SpaceDescriptor space, Vector amplitudes) {
    QuantumState s;
    s.space = std::move(space);
    s.psi = std::move(amplitudes);
    if (s.psi.size() != s.space.total())
        throw StateError("state vector length does not match space " + s.space.str());
    return s;
}

QuantumState QuantumState::mixed(SpaceDescriptor space, Matrix density) {
    QuantumState s;
    s.space = std::move(space);
    s.rho = std::move(density);
    if (s.rho.rows() != s.space.total() || s.rho.cols() != s.space.total())
        throw StateError("density matrix does not match space " + s.space.str());
    return s;
}

Vector fock_state(int dim, int n) {
    if (dim < 2) throw DimensionError("fock state needs dim >= 2");
    if (n < 0 || n >= dim)
        throw DimensionError("fock level " + std::to_string(n) + " outside dim " +
                             std::to_string(dim));
    Vector v = Vector::Zero(dim);
    v(n) = 1;
    return v;
}

QuantumState product_state(const SpaceDescriptor& space,
                           const std::vector<Vector>& factors) {
    if (static_cast<int>(factors.size()) != space.factors())
        throw DimensionError("product state needs one factor vector per slot of " +
                             space.str());
    Matrix v = Matrix::Ones(1, 1);
    for (int k = 0; k < space.factors(); ++k) {
        if (factors[static_cast<std::size_t>(k)].size() != space.dim(k))
            throw DimensionError("factor " + std::to_string(k) +
                                 " has wrong length for " + space.str());
        v = kron(v, factors[static_cast<std::size_t>(k)]);
    }
    return QuantumState::pure(space, Vector(v.col(0)));
}

QuantumState basis_state(const SpaceDescriptor& space, const std::vector<int>& indices) {
    if (static_cast<int>(indices.size()) != space.factors())
        throw DimensionError("basis state needs one index per slot of " + space.str());
    std::vector<Vector> f;
    f.reserve(indices.size());
    for (int k = 0; k < space.factors(); ++k)
        f.push_back(fock_state(space.dim(k), indices[static_cast<std::size_t>(k)]));
    return product_state(space, f);
}

Complex expectation(const Operator& op, const QuantumState& state) {
    if (op.space != state.space)
        throw SpaceMismatchError("expectation: operator space " + op.space.str() +
                                 " does not match state space " + state.space.str());
    if (state.is_pure()) return state.psi.dot(op.mat * state.psi);
    return (op.mat * state.rho).trace();
}

}  // namespace cmpol
