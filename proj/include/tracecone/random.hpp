#pragma once

// Seeded random elements for fuzzing and instance synthesis.

#include <cmath>
#include <numbers>
#include <random>
#include <vector>

#include "tracecone/algebra.hpp"

namespace tracecone {

using Rng = std::mt19937_64;

inline Matrix random_gaussian_matrix(Index rows, Index cols, Rng& rng) {
    std::normal_distribution<double> normal(0.0, 1.0);
    Matrix m(rows, cols);
    for (Index j = 0; j < cols; ++j) {
        for (Index i = 0; i < rows; ++i) m(i, j) = Complex(normal(rng), normal(rng));
    }
    return m;
}

/// Haar-distributed unitary: QR of a complex Ginibre matrix with the phases of
/// diag(R) moved into Q.
inline Matrix random_unitary_matrix(Index n, Rng& rng) {
    const Matrix z = random_gaussian_matrix(n, n, rng);
    Eigen::HouseholderQR<Matrix> qr(z);
    Matrix q = qr.householderQ() * Matrix::Identity(n, n);
    const Matrix r = qr.matrixQR().triangularView<Eigen::Upper>();
    for (Index j = 0; j < n; ++j) {
        const double mag = std::abs(r(j, j));
        if (mag > 0.0) q.col(j) *= r(j, j) / mag;
    }
    return q;
}

/// exp of a uniform draw from [log lo, log hi].
inline double log_uniform(double lo, double hi, Rng& rng) {
    std::uniform_real_distribution<double> uniform(std::log(lo), std::log(hi));
    return std::exp(uniform(rng));
}

inline AlgebraElement random_unitary(const AlgebraPtr& algebra, Rng& rng) {
    std::vector<Matrix> blocks;
    for (Index n : algebra->dims()) blocks.push_back(random_unitary_matrix(n, rng));
    return {algebra, std::move(blocks)};
}

/// Hermitian element with i.i.d. Gaussian entries of the given scale.
inline AlgebraElement random_hermitian(const AlgebraPtr& algebra, Rng& rng, double scale = 1.0) {
    std::vector<Matrix> blocks;
    for (Index n : algebra->dims()) {
        const Matrix g = random_gaussian_matrix(n, n, rng);
        blocks.push_back((g + g.adjoint()) * (0.5 * scale));
    }
    return {algebra, std::move(blocks)};
}

/// Random element of the band P_{lo,hi}: U diag(lambda) U* with Haar U and
/// eigenvalues log-uniform in [lo, hi].
inline PositiveElement random_positive(const AlgebraPtr& algebra, Rng& rng, double lo, double hi) {
    std::vector<Matrix> blocks;
    for (Index n : algebra->dims()) {
        const Matrix u = random_unitary_matrix(n, rng);
        RealVector lambda(n);
        for (Index j = 0; j < n; ++j) lambda(j) = log_uniform(lo, hi, rng);
        Matrix m = u * lambda.cast<Complex>().asDiagonal() * u.adjoint();
        blocks.push_back((m + m.adjoint()) * 0.5);
    }
    return positivize(AlgebraElement(algebra, std::move(blocks)));
}

/// Random invertible U diag(sigma) V* whose singular values lie in
/// [cond^{-1/2}, cond^{1/2}], so that its condition number is at most cond.
/// When the algebra has at least two diagonal slots the two extremes are
/// attained and the condition number equals cond.
inline AlgebraElement random_invertible(const AlgebraPtr& algebra, Rng& rng, double cond) {
    const double hi = std::sqrt(std::max(cond, 1.0));
    const double lo = 1.0 / hi;
    const Index total = algebra->total_dim();
    std::vector<double> sigma(static_cast<std::size_t>(total));
    for (auto& s : sigma) s = log_uniform(lo, hi, rng);
    if (total >= 2) {
        std::uniform_int_distribution<Index> pick(0, total - 1);
        const Index first = pick(rng);
        Index second = pick(rng);
        while (second == first) second = pick(rng);
        sigma[static_cast<std::size_t>(first)] = lo;
        sigma[static_cast<std::size_t>(second)] = hi;
    }
    std::vector<Matrix> blocks;
    std::size_t offset = 0;
    for (Index n : algebra->dims()) {
        RealVector s(n);
        for (Index j = 0; j < n; ++j) s(j) = sigma[offset++];
        const Matrix u = random_unitary_matrix(n, rng);
        const Matrix v = random_unitary_matrix(n, rng);
        blocks.push_back(u * s.cast<Complex>().asDiagonal() * v.adjoint());
    }
    return {algebra, std::move(blocks)};
}

}  // namespace tracecone
