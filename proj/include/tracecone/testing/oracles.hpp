#pragma once

// Brute-force reference solutions used by the property suites and tests.
// Nothing here calls the cone-geometry or circumcenter code.

#include <cmath>
#include <limits>
#include <vector>

namespace tracecone::testing {

/// A commuting (diagonal) point of P in one 2x2 block with trace weight 1,
/// written in log coordinates: diag(exp(u), exp(v)). In these coordinates
/// d2 is Euclidean distance scaled by 1/sqrt(2).
struct LogPoint {
    double u = 0.0;
    double v = 0.0;
};

inline double log_distance(LogPoint a, LogPoint b) {
    const double du = a.u - b.u;
    const double dv = a.v - b.v;
    return std::sqrt(0.5 * (du * du + dv * dv));
}

inline double max_log_distance(LogPoint c, const std::vector<LogPoint>& points) {
    double r = 0.0;
    for (const auto& p : points) r = std::max(r, log_distance(c, p));
    return r;
}

struct LogBall {
    LogPoint center;
    double radius = 0.0;
};

/// Minimal enclosing ball by enumeration: every ball spanned by one point, by
/// a diametral pair or by the circumcircle of a triple is tried, and the
/// smallest one containing every point wins.
inline LogBall enumerate_min_ball(const std::vector<LogPoint>& points) {
    LogBall best{{0.0, 0.0}, std::numeric_limits<double>::infinity()};
    auto consider = [&](LogPoint c) {
        const double r = max_log_distance(c, points);
        if (r < best.radius) best = {c, r};
    };
    const std::size_t n = points.size();
    for (std::size_t i = 0; i < n; ++i) {
        consider(points[i]);
        for (std::size_t j = i + 1; j < n; ++j) {
            consider({0.5 * (points[i].u + points[j].u), 0.5 * (points[i].v + points[j].v)});
            for (std::size_t k = j + 1; k < n; ++k) {
                const LogPoint a = points[i], b = points[j], c = points[k];
                const double d = 2.0 * (a.u * (b.v - c.v) + b.u * (c.v - a.v) + c.u * (a.v - b.v));
                if (std::abs(d) < 1e-14) continue;
                const double a2 = a.u * a.u + a.v * a.v;
                const double b2 = b.u * b.u + b.v * b.v;
                const double c2 = c.u * c.u + c.v * c.v;
                consider({(a2 * (b.v - c.v) + b2 * (c.v - a.v) + c2 * (a.v - b.v)) / d,
                          (a2 * (c.u - b.u) + b2 * (a.u - c.u) + c2 * (b.u - a.u)) / d});
            }
        }
    }
    return best;
}

/// Grid search for the minimax center over diag(e^u, e^v) with u, v in
/// [-half_width, half_width] at the given step.
inline LogBall grid_search_min_ball(const std::vector<LogPoint>& points, double half_width, double step) {
    LogBall best{{0.0, 0.0}, std::numeric_limits<double>::infinity()};
    const long count = static_cast<long>(std::floor(2.0 * half_width / step + 1e-9));
    for (long i = 0; i <= count; ++i) {
        const double u = -half_width + static_cast<double>(i) * step;
        for (long j = 0; j <= count; ++j) {
            const LogPoint c{u, -half_width + static_cast<double>(j) * step};
            const double r = max_log_distance(c, points);
            if (r < best.radius) best = {c, r};
        }
    }
    return best;
}

}  // namespace tracecone::testing
