#pragma once

// Independent reference implementations used only by the test suite. The
// spectral oracle goes through Eigen's dense QR eigensolver, the linear
// solves through Eigen's full-pivot LU, and the Neumann oracle is a plain
// partial sum; none of them share code with the library kernels they check.

#include <complex>
#include <cstdint>
#include <random>

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>

#include "valuedom/matrix.hpp"

namespace oracles {

inline Eigen::MatrixXd to_eigen(const valuedom::Matrix& m) {
    Eigen::MatrixXd out(m.rows(), m.cols());
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j) out(static_cast<Eigen::Index>(i),
                                                       static_cast<Eigen::Index>(j)) = m(i, j);
    return out;
}

inline valuedom::Matrix from_eigen(const Eigen::MatrixXd& m) {
    valuedom::Matrix out(static_cast<std::size_t>(m.rows()), static_cast<std::size_t>(m.cols()));
    for (Eigen::Index i = 0; i < m.rows(); ++i)
        for (Eigen::Index j = 0; j < m.cols(); ++j)
            out(static_cast<std::size_t>(i), static_cast<std::size_t>(j)) = m(i, j);
    return out;
}

/// Maximum-modulus eigenvalue by a dense QR eigensolver.
inline double dominant_eigenvalue(const valuedom::Matrix& m) {
    Eigen::EigenSolver<Eigen::MatrixXd> solver(to_eigen(m), /*computeEigenvectors=*/false);
    double best = 0.0;
    for (Eigen::Index i = 0; i < solver.eigenvalues().size(); ++i)
        best = std::max(best, std::abs(solver.eigenvalues()(i)));
    return best;
}

/// Left eigenvector for the largest-real eigenvalue, normalized y1 = 1.
inline valuedom::Vector left_perron(const valuedom::Matrix& m) {
    Eigen::EigenSolver<Eigen::MatrixXd> solver(to_eigen(m).transpose());
    Eigen::Index which = 0;
    for (Eigen::Index i = 1; i < solver.eigenvalues().size(); ++i)
        if (solver.eigenvalues()(i).real() > solver.eigenvalues()(which).real()) which = i;
    valuedom::Vector y(m.rows());
    const Eigen::VectorXcd col = solver.eigenvectors().col(which);
    for (std::size_t i = 0; i < m.rows(); ++i) y[i] = col(static_cast<Eigen::Index>(i)).real();
    const double y1 = y[0];
    for (double& v : y) v /= y1;
    return y;
}

/// Truncated Neumann series sum_{k<=terms} m^k.
inline valuedom::Matrix neumann_inverse(const valuedom::Matrix& m, int terms) {
    valuedom::Matrix sum = valuedom::Matrix::identity(m.rows());
    valuedom::Matrix power = valuedom::Matrix::identity(m.rows());
    for (int k = 1; k <= terms; ++k) {
        power = power * m;
        sum += power;
    }
    return sum;
}

/// Dense full-pivot solve of A^T v = rhs (for row-system checks v^T A = rhs^T).
inline valuedom::Vector solve_row_system(const valuedom::Matrix& a, const valuedom::Vector& rhs) {
    Eigen::VectorXd b(static_cast<Eigen::Index>(rhs.size()));
    for (std::size_t i = 0; i < rhs.size(); ++i) b(static_cast<Eigen::Index>(i)) = rhs[i];
    Eigen::VectorXd v = to_eigen(a).transpose().fullPivLu().solve(b);
    valuedom::Vector out(rhs.size());
    for (std::size_t i = 0; i < rhs.size(); ++i) out[i] = v(static_cast<Eigen::Index>(i));
    return out;
}

/// Random strictly positive square matrix, deterministic in the seed.
inline valuedom::Matrix random_positive_matrix(std::size_t n, std::uint64_t seed,
                                               double lo = 0.05, double hi = 1.0) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> dist(lo, hi);
    valuedom::Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) m(i, j) = dist(rng);
    return m;
}

/// Random nonnegative irreducible matrix: a sparse draw plus a cycle floor.
inline valuedom::Matrix random_irreducible_matrix(std::size_t n, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> dist(0.0, 1.0);
    valuedom::Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            if (dist(rng) < 0.5) m(i, j) = dist(rng);
    for (std::size_t i = 0; i < n; ++i) m(i, (i + 1) % n) += 0.1 + dist(rng);
    return m;
}

} // namespace oracles
