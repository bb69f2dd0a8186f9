#pragma once

// Finite-dimensional finite von Neumann algebras A = M_{n_1}(C) + ... + M_{n_k}(C)
// with the faithful normalized trace tau(x) = sum_i w_i tr(x_i) / n_i.

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <memory>
#include <numeric>
#include <span>
#include <sstream>
#include <utility>
#include <vector>

#include "tracecone/errors.hpp"

namespace tracecone {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using RealVector = Eigen::VectorXd;
using Index = Eigen::Index;

namespace tolerance {
/// Relative bound on ||x - x*||_F for inputs treated as Hermitian.
inline constexpr double hermitian = 1e-10;
/// Smallest admissible eigenvalue of a positive element.
inline constexpr double positive = 1e-12;
/// Relative reconstruction residual of a Hermitian eigendecomposition.
inline constexpr double eig_reconstruction = 1e-10;
/// Largest admissible max_eig / min_eig ratio for spectral maps.
inline constexpr double max_condition = 1e12;
/// Absolute slack on eigenvalue comparisons against band edges.
inline constexpr double band = 1e-10;
inline constexpr double trace_normalization = 1e-12;
}  // namespace tolerance

class BlockAlgebra;
using AlgebraPtr = std::shared_ptr<const BlockAlgebra>;

/// Shape of the algebra: block sizes n_i and trace weights w_i with sum 1.
class BlockAlgebra {
public:
    static AlgebraPtr make(std::vector<Index> dims, std::vector<double> weights) {
        if (dims.empty()) throw Error(Errc::invalid_algebra, "an algebra needs at least one block");
        if (dims.size() != weights.size()) {
            throw Error(Errc::invalid_algebra, "block_dims and trace_weights differ in length");
        }
        for (Index d : dims) {
            if (d < 1) throw Error(Errc::invalid_algebra, "block dimensions must be >= 1");
        }
        double total = 0.0;
        for (double w : weights) {
            if (!(w > 0.0) || !std::isfinite(w)) {
                throw Error(Errc::invalid_algebra, "trace weights must be positive (faithful trace)");
            }
            total += w;
        }
        if (std::abs(total - 1.0) > tolerance::trace_normalization) {
            std::ostringstream msg;
            msg.precision(17);
            msg << "trace not normalized: weights sum to " << total;
            throw Error(Errc::invalid_algebra, msg.str());
        }
        return AlgebraPtr(new BlockAlgebra(std::move(dims), std::move(weights)));
    }

    /// M_n(C) with the normalized trace tr/n.
    static AlgebraPtr matrices(Index n) { return make({n}, {1.0}); }

    std::size_t block_count() const noexcept { return dims_.size(); }
    Index dim(std::size_t block) const { return dims_.at(block); }
    double weight(std::size_t block) const { return weights_.at(block); }
    std::span<const Index> dims() const noexcept { return dims_; }
    std::span<const double> weights() const noexcept { return weights_; }

    /// Total matrix size sum n_i.
    Index total_dim() const noexcept { return std::accumulate(dims_.begin(), dims_.end(), Index{0}); }

    /// Real dimension of the self-adjoint part, sum n_i^2.
    Index hermitian_dim() const noexcept {
        Index total = 0;
        for (Index d : dims_) total += d * d;
        return total;
    }

    bool operator==(const BlockAlgebra&) const = default;

private:
    BlockAlgebra(std::vector<Index> dims, std::vector<double> weights)
        : dims_(std::move(dims)), weights_(std::move(weights)) {}

    std::vector<Index> dims_;
    std::vector<double> weights_;
};

inline bool same_algebra(const AlgebraPtr& a, const AlgebraPtr& b) {
    return a == b || (a && b && *a == *b);
}

/// One element of the algebra, stored as one dense complex matrix per block.
class AlgebraElement {
public:
    AlgebraElement(AlgebraPtr algebra, std::vector<Matrix> blocks)
        : algebra_(std::move(algebra)), blocks_(std::move(blocks)) {
        if (!algebra_) throw Error(Errc::malformed_element, "element without an algebra");
        if (blocks_.size() != algebra_->block_count()) {
            throw Error(Errc::malformed_element, "number of blocks does not match the algebra");
        }
        for (std::size_t i = 0; i < blocks_.size(); ++i) {
            const Index n = algebra_->dim(i);
            if (blocks_[i].rows() != n || blocks_[i].cols() != n) {
                std::ostringstream msg;
                msg << "block " << i << " has shape " << blocks_[i].rows() << "x" << blocks_[i].cols()
                    << ", expected " << n << "x" << n;
                throw Error(Errc::malformed_element, msg.str());
            }
        }
    }

    static AlgebraElement identity(const AlgebraPtr& algebra) { return scalar(algebra, 1.0); }
    static AlgebraElement zero(const AlgebraPtr& algebra) { return scalar(algebra, 0.0); }

    static AlgebraElement scalar(const AlgebraPtr& algebra, Complex value) {
        std::vector<Matrix> blocks;
        for (Index n : algebra->dims()) blocks.push_back(value * Matrix::Identity(n, n));
        return {algebra, std::move(blocks)};
    }

    /// Diagonal element; `entries` runs over all blocks in order (length sum n_i).
    static AlgebraElement diagonal(const AlgebraPtr& algebra, std::span<const double> entries) {
        if (static_cast<Index>(entries.size()) != algebra->total_dim()) {
            throw Error(Errc::malformed_element, "diagonal length does not match the algebra");
        }
        std::vector<Matrix> blocks;
        std::size_t offset = 0;
        for (Index n : algebra->dims()) {
            Matrix m = Matrix::Zero(n, n);
            for (Index j = 0; j < n; ++j) m(j, j) = entries[offset++];
            blocks.push_back(std::move(m));
        }
        return {algebra, std::move(blocks)};
    }

    static AlgebraElement diagonal(const AlgebraPtr& algebra, std::initializer_list<double> entries) {
        return diagonal(algebra, std::span<const double>(entries.begin(), entries.size()));
    }

    const AlgebraPtr& algebra() const noexcept { return algebra_; }
    std::size_t block_count() const noexcept { return blocks_.size(); }
    const Matrix& block(std::size_t i) const { return blocks_.at(i); }
    std::span<const Matrix> blocks() const noexcept { return blocks_; }

    AlgebraElement adjoint() const {
        return map_blocks([](const Matrix& m) -> Matrix { return m.adjoint(); });
    }

    /// Hermitian part (x + x*) / 2.
    AlgebraElement hermitian_part() const {
        return map_blocks([](const Matrix& m) -> Matrix { return (m + m.adjoint()) * 0.5; });
    }

    /// Smallest singular value over all blocks.
    double min_singular_value() const {
        double lo = std::numeric_limits<double>::infinity();
        for (const auto& m : blocks_) {
            Eigen::JacobiSVD<Matrix> svd(m);
            lo = std::min(lo, svd.singularValues().minCoeff());
        }
        return lo;
    }

    AlgebraElement inverse() const {
        if (!(min_singular_value() > tolerance::positive)) {
            throw Error(Errc::not_invertible, "element is singular (smallest singular value <= 1e-12)");
        }
        return map_blocks([](const Matrix& m) -> Matrix { return m.partialPivLu().inverse(); });
    }

    template <class Fn>
    AlgebraElement map_blocks(Fn&& fn) const {
        std::vector<Matrix> out;
        out.reserve(blocks_.size());
        for (const auto& m : blocks_) out.push_back(fn(m));
        return {algebra_, std::move(out)};
    }

    template <class Fn>
    AlgebraElement zip_blocks(const AlgebraElement& other, Fn&& fn) const {
        require_same_algebra(other);
        std::vector<Matrix> out;
        out.reserve(blocks_.size());
        for (std::size_t i = 0; i < blocks_.size(); ++i) out.push_back(fn(blocks_[i], other.blocks_[i]));
        return {algebra_, std::move(out)};
    }

    void require_same_algebra(const AlgebraElement& other) const {
        if (!same_algebra(algebra_, other.algebra_)) {
            throw Error(Errc::malformed_element, "elements belong to different algebras");
        }
    }

    friend AlgebraElement operator+(const AlgebraElement& x, const AlgebraElement& y) {
        return x.zip_blocks(y, [](const Matrix& a, const Matrix& b) -> Matrix { return a + b; });
    }
    friend AlgebraElement operator-(const AlgebraElement& x, const AlgebraElement& y) {
        return x.zip_blocks(y, [](const Matrix& a, const Matrix& b) -> Matrix { return a - b; });
    }
    friend AlgebraElement operator*(const AlgebraElement& x, const AlgebraElement& y) {
        return x.zip_blocks(y, [](const Matrix& a, const Matrix& b) -> Matrix { return a * b; });
    }
    friend AlgebraElement operator*(Complex s, const AlgebraElement& x) {
        return x.map_blocks([s](const Matrix& m) -> Matrix { return s * m; });
    }
    friend AlgebraElement operator*(const AlgebraElement& x, Complex s) { return s * x; }
    friend AlgebraElement operator-(const AlgebraElement& x) { return Complex(-1.0) * x; }

private:
    AlgebraPtr algebra_;
    std::vector<Matrix> blocks_;
};

/// tau(x) = sum_i w_i tr(x_i) / n_i.
inline Complex trace(const AlgebraElement& x) {
    Complex total = 0.0;
    const auto& alg = *x.algebra();
    for (std::size_t i = 0; i < x.block_count(); ++i) {
        total += alg.weight(i) * x.block(i).trace() / static_cast<double>(alg.dim(i));
    }
    return total;
}

/// Re tau(x* y), the real inner product inducing norm2.
inline double inner(const AlgebraElement& x, const AlgebraElement& y) {
    x.require_same_algebra(y);
    const auto& alg = *x.algebra();
    double total = 0.0;
    for (std::size_t i = 0; i < x.block_count(); ++i) {
        const Complex frob = (x.block(i).array().conjugate() * y.block(i).array()).sum();
        total += alg.weight(i) * frob.real() / static_cast<double>(alg.dim(i));
    }
    return total;
}

/// ||x||_2 = tau(x* x)^{1/2}.
inline double norm2(const AlgebraElement& x) {
    const auto& alg = *x.algebra();
    double total = 0.0;
    for (std::size_t i = 0; i < x.block_count(); ++i) {
        total += alg.weight(i) * x.block(i).squaredNorm() / static_cast<double>(alg.dim(i));
    }
    return std::sqrt(total);
}

/// Operator norm: largest singular value over all blocks.
inline double uniform_norm(const AlgebraElement& x) {
    double hi = 0.0;
    for (const auto& m : x.blocks()) {
        Eigen::JacobiSVD<Matrix> svd(m);
        hi = std::max(hi, svd.singularValues().maxCoeff());
    }
    return hi;
}

inline bool is_hermitian(const AlgebraElement& x, double rel_tol = tolerance::hermitian) {
    for (const auto& m : x.blocks()) {
        if ((m - m.adjoint()).norm() > rel_tol * std::max(1.0, m.norm())) return false;
    }
    return true;
}

/// Real orthonormal coordinates of the Hermitian part of x: the Euclidean dot
/// product of two coordinate vectors equals inner() of the elements.
inline RealVector hermitian_coordinates(const AlgebraElement& x) {
    const auto& alg = *x.algebra();
    RealVector out(alg.hermitian_dim());
    Index k = 0;
    for (std::size_t b = 0; b < x.block_count(); ++b) {
        const Matrix& m = x.block(b);
        const Index n = alg.dim(b);
        const double s = std::sqrt(alg.weight(b) / static_cast<double>(n));
        const double s2 = s * std::sqrt(2.0);
        for (Index j = 0; j < n; ++j) out(k++) = s * m(j, j).real();
        for (Index j = 0; j < n; ++j) {
            for (Index l = j + 1; l < n; ++l) {
                const Complex v = 0.5 * (m(j, l) + std::conj(m(l, j)));
                out(k++) = s2 * v.real();
                out(k++) = s2 * v.imag();
            }
        }
    }
    return out;
}

inline AlgebraElement from_hermitian_coordinates(const AlgebraPtr& algebra, const RealVector& coords) {
    if (coords.size() != algebra->hermitian_dim()) {
        throw Error(Errc::malformed_element, "coordinate vector has the wrong length");
    }
    std::vector<Matrix> blocks;
    Index k = 0;
    for (std::size_t b = 0; b < algebra->block_count(); ++b) {
        const Index n = algebra->dim(b);
        const double s = std::sqrt(algebra->weight(b) / static_cast<double>(n));
        const double s2 = s * std::sqrt(2.0);
        Matrix m = Matrix::Zero(n, n);
        for (Index j = 0; j < n; ++j) m(j, j) = coords(k++) / s;
        for (Index j = 0; j < n; ++j) {
            for (Index l = j + 1; l < n; ++l) {
                const Complex v(coords(k) / s2, coords(k + 1) / s2);
                k += 2;
                m(j, l) = v;
                m(l, j) = std::conj(v);
            }
        }
        blocks.push_back(std::move(m));
    }
    return {algebra, std::move(blocks)};
}

struct BlockSpectrum {
    RealVector values;  // ascending
    Matrix vectors;     // unitary, columns are eigenvectors
};

/// Per-block eigendecomposition of a Hermitian element.
using Spectrum = std::vector<BlockSpectrum>;

/// Eigendecomposition of the Hermitian part of x; fails with NotHermitian when
/// x is farther than the Hermitian tolerance from its Hermitian part.
inline Spectrum hermitian_eig(const AlgebraElement& x) {
    if (!is_hermitian(x)) throw Error(Errc::not_hermitian, "element is not Hermitian within tolerance");
    Spectrum out;
    out.reserve(x.block_count());
    for (const auto& m : x.blocks()) {
        const Matrix h = (m + m.adjoint()) * 0.5;
        Eigen::SelfAdjointEigenSolver<Matrix> solver(h);
        if (solver.info() != Eigen::Success) {
            throw Error(Errc::not_hermitian, "eigensolver failed to converge");
        }
        out.push_back({solver.eigenvalues(), solver.eigenvectors()});
    }
    return out;
}

/// U f(Lambda) U* per block.
template <class Fn>
AlgebraElement from_spectrum(const AlgebraPtr& algebra, const Spectrum& spectrum, Fn&& fn) {
    std::vector<Matrix> blocks;
    blocks.reserve(spectrum.size());
    for (const auto& s : spectrum) {
        const RealVector mapped = s.values.unaryExpr([&](double v) { return static_cast<double>(fn(v)); });
        Matrix m = s.vectors * mapped.cast<Complex>().asDiagonal() * s.vectors.adjoint();
        blocks.push_back((m + m.adjoint()) * 0.5);
    }
    return {algebra, std::move(blocks)};
}

inline double min_eigenvalue(const Spectrum& spectrum) {
    double lo = std::numeric_limits<double>::infinity();
    for (const auto& s : spectrum) lo = std::min(lo, s.values.minCoeff());
    return lo;
}

inline double max_eigenvalue(const Spectrum& spectrum) {
    double hi = -std::numeric_limits<double>::infinity();
    for (const auto& s : spectrum) hi = std::max(hi, s.values.maxCoeff());
    return hi;
}

class PositiveElement;
PositiveElement positivize(const AlgebraElement& x);

/// A point of the cone P: Hermitian with every eigenvalue >= 1e-12. The
/// eigendecomposition computed during certification is kept with the value.
class PositiveElement {
public:
    const AlgebraElement& element() const noexcept { return element_; }
    const AlgebraPtr& algebra() const noexcept { return element_.algebra(); }
    double min_eig() const noexcept { return min_eig_; }
    double max_eig() const noexcept { return max_eig_; }
    double condition() const noexcept { return max_eig_ / min_eig_; }
    const Spectrum& spectrum() const noexcept { return *spectrum_; }

    static PositiveElement identity(const AlgebraPtr& algebra) {
        return positivize(AlgebraElement::identity(algebra));
    }

private:
    friend PositiveElement positivize(const AlgebraElement& x);

    PositiveElement(AlgebraElement element, std::shared_ptr<const Spectrum> spectrum)
        : element_(std::move(element)),
          spectrum_(std::move(spectrum)),
          min_eig_(min_eigenvalue(*spectrum_)),
          max_eig_(max_eigenvalue(*spectrum_)) {}

    AlgebraElement element_;
    std::shared_ptr<const Spectrum> spectrum_;
    double min_eig_;
    double max_eig_;
};

/// Certification gate into P. The stored element is the Hermitian part of x.
inline PositiveElement positivize(const AlgebraElement& x) {
    auto spectrum = std::make_shared<const Spectrum>(hermitian_eig(x));
    const double lo = min_eigenvalue(*spectrum);
    if (!(lo >= tolerance::positive)) {
        std::ostringstream msg;
        msg.precision(6);
        msg << "smallest eigenvalue " << lo << " is below 1e-12";
        throw Error(Errc::not_positive, msg.str());
    }
    return PositiveElement(x.hermitian_part(), std::move(spectrum));
}

/// Scalar functions applied through the eigendecomposition.
struct SpectralFunction {
    enum class Kind { power, log, exp, sqrt, inv_sqrt };

    Kind kind = Kind::power;
    double exponent = 1.0;

    static constexpr SpectralFunction power(double t) { return {Kind::power, t}; }
    static constexpr SpectralFunction log() { return {Kind::log, 0.0}; }
    static constexpr SpectralFunction exp() { return {Kind::exp, 0.0}; }
    static constexpr SpectralFunction sqrt() { return {Kind::sqrt, 0.5}; }
    static constexpr SpectralFunction inv_sqrt() { return {Kind::inv_sqrt, -0.5}; }

    double operator()(double x) const {
        switch (kind) {
            case Kind::power: return std::pow(x, exponent);
            case Kind::log: return std::log(x);
            case Kind::exp: return std::exp(x);
            case Kind::sqrt: return std::sqrt(x);
            case Kind::inv_sqrt: return 1.0 / std::sqrt(x);
        }
        return x;
    }
};

namespace detail {

inline void require_spectral_domain(double lo, double hi, SpectralFunction f) {
    if (f.kind == SpectralFunction::Kind::exp) return;
    if (!(lo >= tolerance::positive)) {
        throw Error(Errc::not_positive, "spectral map needs a positive element");
    }
    if (hi / lo > tolerance::max_condition) {
        throw Error(Errc::ill_conditioned, "condition number exceeds 1e12");
    }
}

}  // namespace detail

inline AlgebraElement spectral_map(const PositiveElement& a, SpectralFunction f) {
    detail::require_spectral_domain(a.min_eig(), a.max_eig(), f);
    return from_spectrum(a.algebra(), a.spectrum(), f);
}

/// Hermitian overload: exp accepts any Hermitian input, the other functions
/// still require positivity.
inline AlgebraElement spectral_map(const AlgebraElement& hermitian, SpectralFunction f) {
    const Spectrum spectrum = hermitian_eig(hermitian);
    detail::require_spectral_domain(min_eigenvalue(spectrum), max_eigenvalue(spectrum), f);
    return from_spectrum(hermitian.algebra(), spectrum, f);
}

inline AlgebraElement sqrt(const PositiveElement& a) { return spectral_map(a, SpectralFunction::sqrt()); }
inline AlgebraElement inv_sqrt(const PositiveElement& a) { return spectral_map(a, SpectralFunction::inv_sqrt()); }
inline AlgebraElement log(const PositiveElement& a) { return spectral_map(a, SpectralFunction::log()); }
inline AlgebraElement exp_hermitian(const AlgebraElement& x) { return spectral_map(x, SpectralFunction::exp()); }

}  // namespace tracecone
