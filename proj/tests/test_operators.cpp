#include <random>

#include "doctest.h"

#include "cmpol/errors.hpp"
#include "cmpol/operators.hpp"
#include "helpers.hpp"

using namespace cmpol;
using test_util::max_abs;
using test_util::random_density;
using test_util::random_hermitian;
using test_util::random_matrix;
using test_util::random_unit_vector;

TEST_SUITE("operators") {

TEST_CASE("ladder operators satisfy the truncation corner identity") {
    for (int d = 2; d <= 12; ++d) {
        const Matrix comm = annihilation(d) * creation(d) - creation(d) * annihilation(d);
        const Matrix expected =
            identity(d) - static_cast<double>(d) * fock_projector(d, d - 1);
        CHECK(max_abs(comm - expected) < 1e-12);
    }
}

TEST_CASE("number operator counts quanta and matches ladder product") {
    for (int d = 2; d <= 12; ++d) {
        CHECK(max_abs(number_operator(d) - creation(d) * annihilation(d)) < 1e-12);
        for (int n = 0; n < d; ++n)
            CHECK(std::abs(number_operator(d)(n, n) - Complex(n, 0.0)) < 1e-15);
    }
}

TEST_CASE("pauli conventions put the excited state first") {
    CHECK(pauli_z()(0, 0) == Complex(1.0, 0.0));
    CHECK(pauli_z()(1, 1) == Complex(-1.0, 0.0));
    // sigma_plus raises ground (index 1) to excited (index 0)
    Vector ground = fock_state(2, 1);
    CHECK(max_abs(pauli_plus() * ground - fock_state(2, 0)) == 0.0);
    CHECK(max_abs(pauli_plus() - pauli_minus().adjoint()) == 0.0);
    CHECK(max_abs(pauli_x() - (pauli_plus() + pauli_minus())) < 1e-15);
}

TEST_CASE("adjoint is an involution and an antihomomorphism") {
    std::mt19937 rng(52001);
    std::uniform_int_distribution<int> dim(2, 8);
    for (int k = 0; k < 500; ++k) {
        const int d = dim(rng);
        const SpaceDescriptor space({d});
        const Operator a{space, random_matrix(rng, d, d)};
        const Operator b{space, random_matrix(rng, d, d)};
        CHECK(max_abs(a.adjoint().adjoint().mat - a.mat) == 0.0);
        const double scale = std::max(1.0, max_abs((a * b).mat));
        CHECK(max_abs((a * b).adjoint().mat - (b.adjoint() * a.adjoint()).mat) <
              1e-13 * scale);
    }
}

TEST_CASE("embedding preserves spectra with the right multiplicity") {
    std::mt19937 rng(52002);
    std::uniform_int_distribution<int> n_factors(2, 3);
    std::uniform_int_distribution<int> dim(2, 4);
    for (int k = 0; k < 500; ++k) {
        std::vector<int> dims(static_cast<std::size_t>(n_factors(rng)));
        for (auto& d : dims) d = dim(rng);
        const SpaceDescriptor space(dims);
        std::uniform_int_distribution<int> pick(0, space.factors() - 1);
        const int slot = pick(rng);
        const Matrix local = random_hermitian(rng, space.dim(slot));
        const Operator lifted = embed(local, space, slot);

        Eigen::SelfAdjointEigenSolver<Matrix> es_local(local, Eigen::EigenvaluesOnly);
        Eigen::SelfAdjointEigenSolver<Matrix> es_full(lifted.mat,
                                                      Eigen::EigenvaluesOnly);
        const int copies = space.total() / space.dim(slot);
        std::vector<double> expected;
        for (int i = 0; i < space.dim(slot); ++i)
            expected.insert(expected.end(), static_cast<std::size_t>(copies),
                            es_local.eigenvalues()(i));
        std::sort(expected.begin(), expected.end());
        const double scale = std::max(1.0, std::abs(expected.back()));
        for (int i = 0; i < space.total(); ++i)
            CHECK(std::abs(es_full.eigenvalues()(i) -
                           expected[static_cast<std::size_t>(i)]) < 1e-10 * scale);
    }
}

TEST_CASE("expectation of a Hermitian operator is real") {
    std::mt19937 rng(52003);
    std::uniform_int_distribution<int> dim(2, 12);
    for (int k = 0; k < 500; ++k) {
        const int d = dim(rng);
        const SpaceDescriptor space({d});
        Matrix h = random_hermitian(rng, d);
        h /= std::max(1.0, max_abs(h));
        const Operator op{space, h};
        const Complex pure_val =
            expectation(op, QuantumState::pure(space, random_unit_vector(rng, d)));
        const Complex mixed_val =
            expectation(op, QuantumState::mixed(space, random_density(rng, d)));
        CHECK(std::abs(pure_val.imag()) < 1e-10);
        CHECK(std::abs(mixed_val.imag()) < 1e-10);
    }
}

TEST_CASE("slot zero is the slowest kronecker index") {
    const SpaceDescriptor space({2, 3});
    CHECK(max_abs(embed(pauli_z(), space, 0).mat - kron(pauli_z(), identity(3))) ==
          0.0);
    CHECK(max_abs(embed(number_operator(3), space, 1).mat -
                  kron(identity(2), number_operator(3))) == 0.0);
    // |g> x |2> lands at flat index 1*3 + 2
    const QuantumState s = basis_state(space, {1, 2});
    CHECK(std::abs(s.psi(5) - 1.0) == 0.0);
    CHECK(s.psi.cwiseAbs().sum() == doctest::Approx(1.0).epsilon(1e-15));
}

TEST_CASE("squeeze operator is unitary and realizes the Bogoliubov map") {
    const int dim = 100;
    for (double r : {0.3, -0.6}) {
        const Matrix s = squeeze_operator(dim, r);
        CHECK(max_abs(s.adjoint() * s - identity(dim)) < 1e-12);
        CHECK(max_abs(squeeze_operator(dim, -r) - s.adjoint()) < 1e-12);
        const Matrix mapped = s.adjoint() * annihilation(dim) * s;
        const Matrix expected =
            std::cosh(r) * annihilation(dim) + std::sinh(r) * creation(dim);
        // truncation corrupts the top of the ladder; compare the low block
        CHECK(max_abs(mapped.topLeftCorner(12, 12) - expected.topLeftCorner(12, 12)) <
              1e-8);
    }
    CHECK(max_abs(squeeze_operator(12, 0.0) - identity(12)) < 1e-14);
}

TEST_CASE("operator arithmetic requires matching spaces") {
    const Operator a{SpaceDescriptor({2, 3}), Matrix::Identity(6, 6)};
    const Operator b{SpaceDescriptor({3, 2}), Matrix::Identity(6, 6)};
    CHECK_THROWS_AS(a + b, SpaceMismatchError);
    CHECK_THROWS_AS(a - b, SpaceMismatchError);
    CHECK_THROWS_AS(a * b, SpaceMismatchError);
    CHECK_THROWS_AS(commutator(a, b), SpaceMismatchError);
}

TEST_CASE("commutator identities hold") {
    std::mt19937 rng(52004);
    const SpaceDescriptor space({4});
    const Operator a{space, random_matrix(rng, 4, 4)};
    const Operator b{space, random_matrix(rng, 4, 4)};
    CHECK(max_abs((commutator(a, b) + commutator(b, a)).mat) < 1e-13);
    CHECK(max_abs(anticommutator(a, b).mat - (a * b + b * a).mat) == 0.0);
}

TEST_CASE("hermiticity test uses an absolute tolerance") {
    const SpaceDescriptor space({2});
    Matrix m = pauli_x();
    CHECK(Operator{space, m}.is_hermitian());
    m(0, 1) += Complex(0.0, 1e-6);
    CHECK_FALSE(Operator{space, m}.is_hermitian(1e-9));
    CHECK(Operator{space, m}.is_hermitian(1e-3));
}

TEST_CASE("state constructors check shape and validate checks physics") {
    const SpaceDescriptor space({2, 2});
    CHECK_THROWS_AS(QuantumState::pure(space, fock_state(2, 0)), StateError);
    CHECK_THROWS_AS(QuantumState::mixed(space, Matrix::Identity(3, 3)), StateError);

    QuantumState unnormalized = QuantumState::pure(space, Vector::Ones(4));
    CHECK_THROWS_AS(unnormalized.validate(), StateError);

    Matrix bad_herm = Matrix::Identity(4, 4) / 4.0;
    bad_herm(0, 1) = Complex(0.0, 0.1);
    CHECK_THROWS_AS(QuantumState::mixed(space, bad_herm).validate(), StateError);

    Matrix negative = Matrix::Zero(4, 4);
    negative(0, 0) = 1.3;
    negative(1, 1) = -0.3;
    CHECK_THROWS_AS(QuantumState::mixed(space, negative).validate(), StateError);

    basis_state(space, {0, 1}).validate();
    QuantumState::mixed(space, Matrix::Identity(4, 4) / 4.0).validate();
}

TEST_CASE("product states combine factor amplitudes in slot order") {
    const SpaceDescriptor space({2, 3});
    Vector spin(2);
    spin << Complex(0.6, 0.0), Complex(0.8, 0.0);
    const QuantumState s = product_state(space, {spin, fock_state(3, 1)});
    s.validate();
    CHECK(std::abs(s.psi(1) - 0.6) < 1e-15);
    CHECK(std::abs(s.psi(4) - 0.8) < 1e-15);

    const SpaceDescriptor wrong({2, 4});
    CHECK_THROWS_AS(product_state(wrong, {spin, fock_state(3, 1)}), DimensionError);
    CHECK_THROWS_AS(basis_state(space, {0}), DimensionError);
    CHECK_THROWS_AS(fock_state(3, 3), DimensionError);
}

TEST_CASE("expectation rejects foreign spaces and evaluates basics") {
    const SpaceDescriptor space({2, 3});
    const Operator n1 = embed(number_operator(3), space, 1);
    const QuantumState s = basis_state(space, {0, 2});
    CHECK(expectation(n1, s).real() == doctest::Approx(2.0).epsilon(1e-14));
    const QuantumState other = basis_state(SpaceDescriptor({3, 2}), {0, 0});
    CHECK_THROWS_AS(expectation(n1, other), SpaceMismatchError);
}

}  // TEST_SUITE
