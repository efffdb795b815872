#pragma once

#include <algorithm>
#include <cmath>
#include <random>

#include "cmpol/operators.hpp"

namespace test_util {

using cmpol::Complex;
using cmpol::Matrix;
using cmpol::Vector;

inline double rel_err(double a, double b) {
    const double scale = std::max({std::abs(a), std::abs(b), 1e-300});
    return std::abs(a - b) / scale;
}

inline Matrix random_matrix(std::mt19937& rng, int rows, int cols) {
    std::normal_distribution<double> d(0.0, 1.0);
    Matrix m(rows, cols);
    for (int i = 0; i < rows; ++i)
        for (int j = 0; j < cols; ++j) m(i, j) = Complex(d(rng), d(rng));
    return m;
}

inline Matrix random_hermitian(std::mt19937& rng, int dim) {
    const Matrix m = random_matrix(rng, dim, dim);
    return 0.5 * (m + m.adjoint());
}

inline Vector random_unit_vector(std::mt19937& rng, int dim) {
    Vector v = random_matrix(rng, dim, 1).col(0);
    v /= v.norm();
    return v;
}

inline Matrix random_density(std::mt19937& rng, int dim) {
    const Matrix m = random_matrix(rng, dim, dim);
    Matrix rho = m * m.adjoint();
    rho /= rho.trace().real();
    return rho;
}

inline double max_abs(const Matrix& m) { return m.cwiseAbs().maxCoeff(); }

}  // namespace test_util
