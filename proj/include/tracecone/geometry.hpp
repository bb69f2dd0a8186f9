#pragma once

// Metric geometry of the cone P with the trace 2-norm Finsler structure:
// geodesics, the distance d2, midpoints, the congruence action, order bands
// and finite-depth geodesic hulls.

#include <cstdint>
#include <map>
#include <optional>
#include <random>
#include <span>
#include <vector>

#include "tracecone/algebra.hpp"
#include "tracecone/parallel.hpp"

namespace tracecone {

namespace detail {

/// Sum over blocks of w_i/n_i * sum_j log(mu_j)^2, where mu are the eigenvalues
/// of s p s with s = a^{-1/2}. Returns d2(a, p)^2.
inline double squared_distance_with(const AlgebraElement& a_inv_sqrt, const PositiveElement& p) {
    const auto& alg = *p.algebra();
    double total = 0.0;
    for (std::size_t i = 0; i < alg.block_count(); ++i) {
        const Matrix& s = a_inv_sqrt.block(i);
        Matrix w = s * p.element().block(i) * s;
        w = (w + w.adjoint()) * 0.5;
        Eigen::SelfAdjointEigenSolver<Matrix> solver(w, Eigen::EigenvaluesOnly);
        const RealVector& mu = solver.eigenvalues();
        if (!(mu.minCoeff() > 0.0)) {
            throw Error(Errc::not_positive, "a^{-1/2} b a^{-1/2} lost positivity");
        }
        double block_sum = 0.0;
        for (Index j = 0; j < mu.size(); ++j) {
            const double l = std::log(mu(j));
            block_sum += l * l;
        }
        total += alg.weight(i) * block_sum / static_cast<double>(alg.dim(i));
    }
    return total;
}

/// log(a^{-1/2} p a^{-1/2}), the initial velocity of the geodesic from a to p
/// in coordinates whitened at a.
inline AlgebraElement whitened_log(const AlgebraElement& a_inv_sqrt, const PositiveElement& p) {
    const AlgebraElement w = (a_inv_sqrt * p.element() * a_inv_sqrt).hermitian_part();
    const Spectrum spectrum = hermitian_eig(w);
    if (!(min_eigenvalue(spectrum) > 0.0)) {
        throw Error(Errc::not_positive, "a^{-1/2} b a^{-1/2} lost positivity");
    }
    return from_spectrum(p.algebra(), spectrum, [](double v) { return std::log(v); });
}

/// Lookup of near-duplicate elements. The key is a fixed linear functional
/// with ||probe||_2 = 1, so |key(x) - key(y)| <= ||x - y||_2 <= ||x - y||; a
/// candidate only has to be compared with entries whose key is within the
/// tolerance.
class NearDuplicateIndex {
public:
    explicit NearDuplicateIndex(const AlgebraPtr& algebra) : probe_(make_probe(algebra)) {}

    double key(const AlgebraElement& x) const { return inner(probe_, x); }

    template <class Close>
    std::optional<std::size_t> find(double key, double tol, Close&& close) const {
        for (auto it = keys_.lower_bound(key - tol); it != keys_.end() && it->first <= key + tol; ++it) {
            if (close(it->second)) return it->second;
        }
        return std::nullopt;
    }

    void insert(double key, std::size_t id) { keys_.emplace(key, id); }

private:
    static AlgebraElement make_probe(const AlgebraPtr& algebra) {
        std::mt19937_64 rng(0x7ace'c0de'5eedULL);
        std::uniform_real_distribution<double> uniform(-1.0, 1.0);
        std::vector<Matrix> blocks;
        for (Index n : algebra->dims()) {
            Matrix m(n, n);
            for (Index i = 0; i < n; ++i) {
                for (Index j = 0; j < n; ++j) m(i, j) = Complex(uniform(rng), uniform(rng));
            }
            blocks.push_back(std::move(m));
        }
        AlgebraElement probe(algebra, std::move(blocks));
        return Complex(1.0 / norm2(probe)) * probe;
    }

    AlgebraElement probe_;
    std::multimap<double, std::size_t> keys_;
};

}  // namespace detail

/// d2(a, b) = ||log(a^{-1/2} b a^{-1/2})||_2, from the eigenvalues directly.
inline double distance(const PositiveElement& a, const PositiveElement& b) {
    a.element().require_same_algebra(b.element());
    return std::sqrt(detail::squared_distance_with(inv_sqrt(a), b));
}

/// The geodesic t -> a^{1/2} (a^{-1/2} b a^{-1/2})^t a^{1/2}. Construction
/// caches a^{1/2}, a^{-1/2} and the eigendecomposition of a^{-1/2} b a^{-1/2}.
class GeodesicSegment {
public:
    GeodesicSegment(PositiveElement a, PositiveElement b)
        : a_(std::move(a)), b_(std::move(b)), a_sqrt_(sqrt(a_)), a_inv_sqrt_(inv_sqrt(a_)) {
        a_.element().require_same_algebra(b_.element());
        w_ = hermitian_eig((a_inv_sqrt_ * b_.element() * a_inv_sqrt_).hermitian_part());
        if (!(min_eigenvalue(w_) > 0.0)) {
            throw Error(Errc::not_positive, "a^{-1/2} b a^{-1/2} is not positive definite");
        }
        frames_.reserve(w_.size());
        for (std::size_t i = 0; i < w_.size(); ++i) frames_.push_back(a_sqrt_.block(i) * w_[i].vectors);
    }

    const PositiveElement& start() const noexcept { return a_; }
    const PositiveElement& end() const noexcept { return b_; }
    const AlgebraElement& start_sqrt() const noexcept { return a_sqrt_; }
    const AlgebraElement& start_inv_sqrt() const noexcept { return a_inv_sqrt_; }
    const Spectrum& whitened_end() const noexcept { return w_; }

    /// Point at parameter t; t outside [0, 1] extends the geodesic.
    PositiveElement operator()(double t) const {
        std::vector<Matrix> blocks;
        blocks.reserve(frames_.size());
        for (std::size_t i = 0; i < frames_.size(); ++i) {
            const RealVector powered = w_[i].values.unaryExpr([t](double v) { return std::pow(v, t); });
            Matrix m = frames_[i] * powered.cast<Complex>().asDiagonal() * frames_[i].adjoint();
            blocks.push_back((m + m.adjoint()) * 0.5);
        }
        return positivize(AlgebraElement(a_.algebra(), std::move(blocks)));
    }

    /// d2(a, b), from the cached spectrum.
    double length() const {
        const auto& alg = *a_.algebra();
        double total = 0.0;
        for (std::size_t i = 0; i < w_.size(); ++i) {
            const double s = w_[i].values.unaryExpr([](double v) { return std::log(v) * std::log(v); }).sum();
            total += alg.weight(i) * s / static_cast<double>(alg.dim(i));
        }
        return std::sqrt(total);
    }

private:
    PositiveElement a_;
    PositiveElement b_;
    AlgebraElement a_sqrt_;
    AlgebraElement a_inv_sqrt_;
    Spectrum w_;
    std::vector<Matrix> frames_;  // a^{1/2} V per block
};

inline PositiveElement geodesic_eval(const GeodesicSegment& segment, double t) { return segment(t); }

inline PositiveElement midpoint(const PositiveElement& a, const PositiveElement& b) {
    return GeodesicSegment(a, b)(0.5);
}

/// I_g(a) = g a g*.
inline PositiveElement congruence(const AlgebraElement& g, const PositiveElement& a) {
    g.require_same_algebra(a.element());
    if (!(g.min_singular_value() > tolerance::positive)) {
        throw Error(Errc::not_invertible, "congruence needs an invertible g");
    }
    return positivize((g * a.element() * g.adjoint()).hermitian_part());
}

/// Order interval P_{c1,c2} = {a in P : c1 <= a <= c2}. A degenerate band
/// c1 == c2 is allowed so that the trivial group's band (1, 1) is representable.
struct Band {
    double c1;
    double c2;

    Band(double lo, double hi) : c1(lo), c2(hi) {
        if (!(lo > 0.0) || !(hi >= lo) || !std::isfinite(hi)) {
            throw Error(Errc::invalid_argument, "band needs 0 < c1 <= c2");
        }
    }

    /// Largest d2-distance between two points of the band.
    double diameter() const { return std::log(c2 / c1); }
};

inline bool in_band(const PositiveElement& a, const Band& band) {
    return band.c1 - tolerance::band <= a.min_eig() && a.max_eig() <= band.c2 + tolerance::band;
}

struct HullOptions {
    /// Cap on the size of a generation.
    std::size_t max_points = 5000;
    /// Seed of the pair subsampler used once the cap would be exceeded.
    std::uint64_t seed = 0;
    /// Throw BudgetExceeded instead of subsampling pairs.
    bool fail_on_cap = false;
};

/// Finite-depth approximation X_1 <= X_2 <= ... of the geodesic convex hull.
struct HullApproximation {
    std::vector<std::vector<PositiveElement>> generations;
    int depth = 0;
    int samples_per_pair = 0;
    bool subsampled = false;

    const std::vector<PositiveElement>& last() const { return generations.back(); }
};

namespace detail {

inline bool hull_duplicate(const AlgebraElement& x, const AlgebraElement& y) {
    return norm2(x - y) <= 1e-9 * (1.0 + norm2(x));
}

}  // namespace detail

/// X_1 = points (deduplicated), X_{n+1} = X_n plus gamma_{a,b}(t) for pairs of
/// X_n and interior t on the grid k/(samples_per_pair - 1).
inline HullApproximation hull_expand(std::span<const PositiveElement> points, int depth,
                                     int samples_per_pair = 5, const HullOptions& options = {}) {
    if (points.empty()) throw Error(Errc::empty_set, "hull of an empty set");
    if (depth < 1) throw Error(Errc::invalid_argument, "hull depth must be >= 1");
    if (samples_per_pair < 2) throw Error(Errc::invalid_argument, "samples_per_pair must be >= 2");

    const AlgebraPtr& algebra = points.front().algebra();
    for (const auto& p : points) p.element().require_same_algebra(points.front().element());

    std::vector<double> grid;
    for (int k = 1; k + 1 < samples_per_pair; ++k) grid.push_back(static_cast<double>(k) / (samples_per_pair - 1));

    HullApproximation hull;
    hull.depth = depth;
    hull.samples_per_pair = samples_per_pair;

    detail::NearDuplicateIndex index(algebra);
    std::vector<PositiveElement> current;
    auto try_insert = [&](const PositiveElement& p) {
        const double key = index.key(p.element());
        const double tol = 1e-9 * (1.0 + norm2(p.element()));
        const auto hit = index.find(key, tol, [&](std::size_t id) {
            return detail::hull_duplicate(p.element(), current[id].element());
        });
        if (hit) return;
        index.insert(key, current.size());
        current.push_back(p);
    };

    for (const auto& p : points) {
        if (current.size() >= options.max_points) {
            throw Error(Errc::budget_exceeded, "input set exceeds the generation cap");
        }
        try_insert(p);
    }
    hull.generations.push_back(current);

    for (int generation = 2; generation <= depth; ++generation) {
        const std::vector<PositiveElement>& previous = hull.generations.back();
        const std::size_t n = previous.size();
        const std::size_t pair_count = n * (n - 1) / 2;
        const std::size_t per_pair = grid.size();

        std::vector<std::pair<std::size_t, std::size_t>> pairs;
        const std::size_t room = options.max_points - std::min(options.max_points, current.size());
        const std::size_t pair_budget = per_pair == 0 ? pair_count : room / per_pair;
        if (pair_count <= pair_budget) {
            pairs.reserve(pair_count);
            for (std::size_t i = 0; i < n; ++i) {
                for (std::size_t j = i + 1; j < n; ++j) pairs.emplace_back(i, j);
            }
        } else {
            if (options.fail_on_cap) {
                throw Error(Errc::budget_exceeded, "hull generation would exceed the point cap");
            }
            hull.subsampled = true;
            // Selection sampling over the pairs in lexicographic order.
            std::mt19937_64 rng(options.seed + static_cast<std::uint64_t>(generation));
            std::uniform_real_distribution<double> uniform(0.0, 1.0);
            std::size_t needed = pair_budget;
            std::size_t remaining = pair_count;
            for (std::size_t i = 0; i < n && needed > 0; ++i) {
                for (std::size_t j = i + 1; j < n && needed > 0; ++j, --remaining) {
                    if (uniform(rng) * static_cast<double>(remaining) < static_cast<double>(needed)) {
                        pairs.emplace_back(i, j);
                        --needed;
                    }
                }
            }
        }

        const auto candidates = parallel_map(pairs.size(), [&](std::size_t k) {
            const GeodesicSegment segment(previous[pairs[k].first], previous[pairs[k].second]);
            std::vector<PositiveElement> out;
            out.reserve(per_pair);
            for (double t : grid) out.push_back(segment(t));
            return out;
        });
        for (const auto& batch : candidates) {
            for (const auto& p : batch) try_insert(p);
        }
        hull.generations.push_back(current);
    }
    return hull;
}

}  // namespace tracecone
