#pragma once

// Minimal enclosing d2-balls (circumcenters) of finite subsets of P, and the
// Karcher mean as an independent fixed-point construction.

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <numeric>
#include <optional>
#include <span>
#include <vector>

#include "tracecone/geometry.hpp"
#include "tracecone/parallel.hpp"

namespace tracecone {

struct FarthestPoint {
    double radius = 0.0;
    std::size_t index = 0;
};

struct EnclosingBall {
    PositiveElement center;
    double radius = 0.0;
    int iterations = 0;
    /// Radius of the best center found so far, one entry per iteration.
    std::vector<double> radius_history;
    bool converged = false;
};

struct CircumcenterOptions {
    double tol = 1e-8;
    /// Non-positive means 50 |S| + 1000.
    int max_iter = 0;
    /// Polish the farthest-point iterate with the minimax SQP stage.
    bool refine = true;
    /// Farthest-point iterations run before refinement.
    int warm_start_iterations = 64;
};

struct KarcherOptions {
    double tol = 1e-8;
    int max_iter = 2000;
};

struct KarcherMean {
    PositiveElement mean;
    /// ||sum_i log(c^{-1/2} S_i c^{-1/2})||_2 at the returned point.
    double gradient_norm = 0.0;
    int iterations = 0;
    bool converged = false;
};

namespace detail {

inline void require_points(std::span<const PositiveElement> points) {
    if (points.empty()) throw Error(Errc::empty_set, "the point set is empty");
    for (const auto& p : points) p.element().require_same_algebra(points.front().element());
}

inline std::vector<double> squared_distances(const PositiveElement& c, std::span<const PositiveElement> points) {
    const AlgebraElement s = inv_sqrt(c);
    return parallel_map(points.size(), [&](std::size_t i) { return squared_distance_with(s, points[i]); }, 16);
}

/// Largest entry, smallest index on ties.
inline FarthestPoint farthest(const std::vector<double>& squared) {
    FarthestPoint out{squared.front(), 0};
    for (std::size_t i = 1; i < squared.size(); ++i) {
        if (squared[i] > out.radius) out = {squared[i], i};
    }
    out.radius = std::sqrt(out.radius);
    return out;
}

/// Euclidean projection onto the probability simplex.
inline RealVector project_to_simplex(const RealVector& v) {
    RealVector sorted = v;
    std::sort(sorted.data(), sorted.data() + sorted.size(), std::greater<>());
    double cumulative = 0.0;
    double theta = 0.0;
    for (Index k = 0; k < sorted.size(); ++k) {
        cumulative += sorted(k);
        const double candidate = (cumulative - 1.0) / static_cast<double>(k + 1);
        if (sorted(k) - candidate > 0.0) theta = candidate;
    }
    return (v.array() - theta).max(0.0).matrix();
}

/// Local model of max_i d2(c', S_i)^2 around c, with c' = c^{1/2} exp(X) c^{1/2}:
///   max_i (f_i - 2 <l_i, X>) + rho |X|^2,
/// where l_i are the whitened logs and f_i = |l_i|^2. The minimizer is
/// X = Phi w / rho with w maximizing the concave dual
///   f.w - |Phi w|^2 / rho over the simplex,
/// which is solved with accelerated projected gradient.
struct MinimaxModel {
    Eigen::MatrixXd phi;  // columns l_i in Hermitian coordinates
    RealVector f;

    double primal(const RealVector& x, double rho) const {
        return (f - 2.0 * phi.transpose() * x).maxCoeff() + rho * x.squaredNorm();
    }

    double dual(const RealVector& w, double rho) const { return f.dot(w) - (phi * w).squaredNorm() / rho; }

    /// max f - primal(x), computed against f - max f so that it stays
    /// accurate when the model decrease is far below the size of f.
    double decrease(const RealVector& x, double rho) const {
        const RealVector g0 = f.array() - f.maxCoeff();
        return -((g0 - 2.0 * phi.transpose() * x).maxCoeff() + rho * x.squaredNorm());
    }

    RealVector solve(RealVector& w, double rho) const {
        const Index m = f.size();
        if (m == 1) {
            w = RealVector::Ones(1);
            return phi.col(0) / rho;
        }
        const Eigen::MatrixXd gram_small = phi * phi.transpose();
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(gram_small, Eigen::EigenvaluesOnly);
        const double lipschitz = std::max(2.0 * es.eigenvalues().maxCoeff() / rho, 1e-300);
        const double shift = f.maxCoeff();
        const RealVector g0 = f.array() - shift;

        RealVector y = w;
        RealVector w_prev = w;
        double momentum = 1.0;
        for (int it = 0; it < 20000; ++it) {
            const RealVector grad = 2.0 * phi.transpose() * (phi * y) / rho - g0;
            RealVector next = project_to_simplex(y - grad / lipschitz);
            const double next_momentum = 0.5 * (1.0 + std::sqrt(1.0 + 4.0 * momentum * momentum));
            // Gradient-based adaptive restart keeps the dual monotone enough.
            if ((y - next).dot(next - w_prev) > 0.0) {
                y = next;
                momentum = 1.0;
            } else {
                y = next + ((momentum - 1.0) / next_momentum) * (next - w_prev);
                momentum = next_momentum;
            }
            w_prev = next;
            if (it % 16 == 15) {
                const RealVector x = phi * next / rho;
                const double lower = g0.dot(next) - (phi * next).squaredNorm() / rho;
                const double upper = -decrease(x, rho);
                const double gap = upper - lower;
                if (gap <= 1e-4 * std::abs(lower) || gap <= 1e-300) break;
            }
        }
        w = w_prev;
        return phi * w / rho;
    }
};

}  // namespace detail

/// (max_i d2(candidate, S_i), smallest index attaining it).
inline FarthestPoint max_radius(const PositiveElement& candidate, std::span<const PositiveElement> points) {
    detail::require_points(points);
    candidate.element().require_same_algebra(points.front().element());
    return detail::farthest(detail::squared_distances(candidate, points));
}

/// Circumcenter of a finite set: farthest-point iteration
///   a_{k+1} = gamma_{a_k, f_k}(1 / (k + 1)),  a_0 = S_0,
/// followed (when options.refine) by a sequential minimax QP stage that
/// converges to the exact minimal-ball center. `converged == false` marks a
/// best-effort iterate.
inline EnclosingBall circumcenter(std::span<const PositiveElement> points, const CircumcenterOptions& options = {}) {
    detail::require_points(points);
    const int max_iter = options.max_iter > 0 ? options.max_iter
                                              : 50 * static_cast<int>(points.size()) + 1000;

    if (points.size() == 1) return {points.front(), 0.0, 0, {0.0}, true};

    PositiveElement current = points.front();
    FarthestPoint far = max_radius(current, points);
    EnclosingBall ball{current, far.radius, 0, {far.radius}, far.radius == 0.0};
    if (ball.converged) return ball;

    const int warm_limit = options.refine ? std::min(max_iter, options.warm_start_iterations) : max_iter;
    for (int k = 0; k < warm_limit; ++k) {
        const PositiveElement next = GeodesicSegment(current, points[far.index])(1.0 / (k + 1.0));
        const double step = distance(current, next);
        current = next;
        far = max_radius(current, points);
        ++ball.iterations;
        if (far.radius < ball.radius) {
            ball.center = current;
            ball.radius = far.radius;
        }
        ball.radius_history.push_back(ball.radius);
        const std::size_t h = ball.radius_history.size();
        if (h > 10 && ball.radius_history[h - 11] - ball.radius < options.tol && step <= options.tol) {
            ball.converged = true;
            return ball;
        }
    }
    if (!options.refine) return ball;

    const AlgebraPtr& algebra = points.front().algebra();
    const std::size_t m = points.size();
    current = ball.center;
    RealVector weights = RealVector::Constant(static_cast<Index>(m), 1.0 / static_cast<double>(m));
    double rho = 1.0;
    // Gradient norm |sum_i w_i l_i| after the last accepted local step.
    std::optional<double> local_gradient;
    RealVector last_step;
    bool reversed = false;

    for (int it = ball.iterations; it < max_iter; ++it) {
        const AlgebraElement c_sqrt = sqrt(current);
        const AlgebraElement c_inv_sqrt = inv_sqrt(current);
        const auto logs = parallel_map(m, [&](std::size_t i) {
            return hermitian_coordinates(detail::whitened_log(c_inv_sqrt, points[i]));
        }, 16);
        detail::MinimaxModel model{Eigen::MatrixXd(algebra->hermitian_dim(), static_cast<Index>(m)),
                                   RealVector(static_cast<Index>(m))};
        for (std::size_t i = 0; i < m; ++i) {
            model.phi.col(static_cast<Index>(i)) = logs[i];
            model.f(static_cast<Index>(i)) = logs[i].squaredNorm();
        }
        const double value = model.f.maxCoeff();

        // Below the noise floor of the radius the old weights' gradient is the
        // progress measure: stalled or reversing means rho is too small, slow
        // means too large.
        if (local_gradient) {
            const double progress = (model.phi * weights).norm();
            if (reversed || progress >= *local_gradient) {
                rho *= 2.0;
            } else if (progress > 0.5 * *local_gradient) {
                rho = std::max(1.0, rho / std::numbers::sqrt2);
            }
        }

        std::optional<PositiveElement> accepted;
        double accepted_radius = 0.0;
        double step = 0.0;
        while (true) {
            RealVector trial_weights = weights;
            const RealVector x = model.solve(trial_weights, rho);
            const double predicted = model.decrease(x, rho);
            step = x.norm();
            const PositiveElement candidate =
                positivize(c_sqrt * exp_hermitian(from_hermitian_coordinates(algebra, x)) * c_sqrt);
            // Below this scale the decrease test drowns in rounding; the model
            // step is taken as is and rho is steered by gradient progress.
            const bool local = predicted <= 1e-12 * std::max(value, 1e-300);
            const double radius = max_radius(candidate, points).radius;
            if (local || radius * radius <= value - 0.1 * predicted) {
                weights = trial_weights;
                accepted = candidate;
                accepted_radius = radius;
                reversed = local && local_gradient && last_step.size() == x.size() &&
                           x.dot(last_step) < -0.5 * step * last_step.norm();
                local_gradient.reset();
                last_step = x;
                if (local) {
                    local_gradient = rho * step;
                } else {
                    rho = std::max(1.0, 0.5 * rho);
                }
                break;
            }
            rho *= 4.0;
            if (rho > 1e12) break;
        }
        if (!accepted) break;

        current = *accepted;
        ++ball.iterations;
        ball.center = current;
        ball.radius = accepted_radius;
        ball.radius_history.push_back(ball.radius);
        if (step <= 1e-2 * options.tol) {
            ball.converged = true;
            break;
        }
    }
    ball.radius = max_radius(ball.center, points).radius;
    return ball;
}

inline EnclosingBall circumcenter(std::span<const PositiveElement> points, double tol, int max_iter) {
    CircumcenterOptions options;
    options.tol = tol;
    options.max_iter = max_iter;
    return circumcenter(points, options);
}

/// Karcher mean by the damped fixed-point iteration
///   c <- c^{1/2} exp(step * mean_i log(c^{-1/2} S_i c^{-1/2})) c^{1/2},
/// with the step halved whenever the gradient norm grows.
inline KarcherMean karcher_mean(std::span<const PositiveElement> points, const KarcherOptions& options = {}) {
    detail::require_points(points);
    const AlgebraPtr& algebra = points.front().algebra();
    const std::size_t m = points.size();

    PositiveElement current = points.front();
    KarcherMean best{current, std::numeric_limits<double>::infinity(), 0, false};
    double step = 1.0;
    double previous = std::numeric_limits<double>::infinity();

    for (int it = 0; it <= options.max_iter; ++it) {
        const AlgebraElement c_sqrt = sqrt(current);
        const AlgebraElement c_inv_sqrt = inv_sqrt(current);
        const auto logs = parallel_map(m, [&](std::size_t i) {
            return detail::whitened_log(c_inv_sqrt, points[i]);
        }, 16);
        AlgebraElement gradient = AlgebraElement::zero(algebra);
        for (const auto& l : logs) gradient = gradient + l;
        const double norm = norm2(gradient);

        if (norm < best.gradient_norm) {
            best.mean = current;
            best.gradient_norm = norm;
        }
        best.iterations = it;
        if (norm <= options.tol) {
            best.converged = true;
            break;
        }
        if (norm > previous) step *= 0.5;
        previous = norm;
        const AlgebraElement velocity = Complex(step / static_cast<double>(m)) * gradient;
        current = positivize(c_sqrt * exp_hermitian(velocity) * c_sqrt);
    }
    return best;
}

inline KarcherMean karcher_mean(std::span<const PositiveElement> points, double tol, int max_iter) {
    return karcher_mean(points, KarcherOptions{tol, max_iter});
}

}  // namespace tracecone
