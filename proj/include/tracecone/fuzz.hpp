#pragma once

// Seeded property suites. Each trial draws its own generator seeded with
// seed + trial_index and returns named measurements; a check passes when the
// worst measurement over all trials is within its tolerance.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "tracecone/circumcenter.hpp"
#include "tracecone/geometry.hpp"
#include "tracecone/io.hpp"
#include "tracecone/parallel.hpp"
#include "tracecone/random.hpp"
#include "tracecone/synth.hpp"
#include "tracecone/testing/oracles.hpp"
#include "tracecone/unitarization.hpp"

namespace tracecone::fuzz {

enum class Suite { algebra, metric, band, hull, circumcenter, unitarize, all };

inline constexpr std::string_view to_string(Suite suite) noexcept {
    switch (suite) {
        case Suite::algebra: return "algebra";
        case Suite::metric: return "metric";
        case Suite::band: return "band";
        case Suite::hull: return "hull";
        case Suite::circumcenter: return "circumcenter";
        case Suite::unitarize: return "unitarize";
        case Suite::all: return "all";
    }
    return "all";
}

inline Suite parse_suite(std::string_view text) {
    for (Suite s : {Suite::algebra, Suite::metric, Suite::band, Suite::hull, Suite::circumcenter, Suite::unitarize,
                    Suite::all}) {
        if (text == to_string(s)) return s;
    }
    throw Error(Errc::invalid_argument, "unknown suite '" + std::string(text) + "'");
}

struct Measurement {
    std::string name;
    double value = 0.0;
    std::optional<double> tolerance;  // absent: informational
};

using Measurements = std::vector<Measurement>;

/// The algebras trials cycle through.
inline const std::vector<AlgebraPtr>& standard_algebras() {
    static const std::vector<AlgebraPtr> algebras{
        BlockAlgebra::matrices(2),
        BlockAlgebra::matrices(4),
        BlockAlgebra::make({2, 3}, {0.4, 0.6}),
        BlockAlgebra::make({1, 1}, {0.5, 0.5}),
    };
    return algebras;
}

inline double uniform_in(Rng& rng, double lo, double hi) {
    return std::uniform_real_distribution<double>(lo, hi)(rng);
}

/// ||x - y|| / (1 + ||y||) in the uniform norm.
inline double relative_gap(const AlgebraElement& x, const AlgebraElement& y) {
    return uniform_norm(x - y) / (1.0 + uniform_norm(y));
}

/// d(x,y)^2 + 4 d(w,z)^2 - 2 (d(w,x)^2 + d(w,y)^2) with z the midpoint; the
/// semi-parallelogram law says this is <= 0.
inline double semi_parallelogram_excess(const PositiveElement& x, const PositiveElement& y,
                                        const PositiveElement& w) {
    const PositiveElement z = midpoint(x, y);
    const double dxy = distance(x, y);
    const double dwz = distance(w, z);
    const double dwx = distance(w, x);
    const double dwy = distance(w, y);
    return dxy * dxy + 4.0 * dwz * dwz - 2.0 * (dwx * dwx + dwy * dwy);
}

struct ConvexityExcess {
    double midpoint = 0.0;  // worst d(t_i) - (d(t_{i-1}) + d(t_{i+1})) / 2
    double chord = 0.0;     // worst d(t) - ((1 - t) d(a1,a2) + t d(b1,b2))
};

/// t -> d(gamma_1(t), gamma_2(t)) sampled on an 11-point grid.
inline ConvexityExcess convexity_excess(const GeodesicSegment& first, const GeodesicSegment& second) {
    std::vector<double> d;
    std::vector<double> ts;
    for (int i = 0; i <= 10; ++i) {
        const double t = i / 10.0;
        ts.push_back(t);
        d.push_back(distance(first(t), second(t)));
    }
    ConvexityExcess out{-1e300, -1e300};
    for (std::size_t i = 1; i + 1 < d.size(); ++i) out.midpoint = std::max(out.midpoint, d[i] - 0.5 * (d[i - 1] + d[i + 1]));
    const double d0 = distance(first.start(), second.start());
    const double d1 = distance(first.end(), second.end());
    for (std::size_t i = 0; i < d.size(); ++i) out.chord = std::max(out.chord, d[i] - ((1.0 - ts[i]) * d0 + ts[i] * d1));
    return out;
}

inline double band_excess(const PositiveElement& p, const Band& band) {
    return std::max({0.0, band.c1 - p.min_eig(), p.max_eig() - band.c2});
}

/// A point at d2-distance `radius` from c in a random direction.
inline PositiveElement perturb(const PositiveElement& c, double radius, Rng& rng) {
    AlgebraElement direction = random_hermitian(c.algebra(), rng);
    direction = Complex(radius / norm2(direction)) * direction;
    const AlgebraElement root = sqrt(c);
    return positivize(root * exp_hermitian(direction) * root);
}

/// Random instance in the acceptance distribution: cyclic-k (k <= 12),
/// dihedral-k (k <= 8), perm-3 or random-unitary-order-n (n <= 48), one or two
/// blocks of size <= 4, conjugator condition number in [1, 10].
inline SynthInstance random_group_instance(Rng& rng) {
    std::uniform_int_distribution<int> family(0, 3);
    GroupSpec spec;
    switch (family(rng)) {
        case 0: spec = {GroupFamily::cyclic, std::uniform_int_distribution<int>(2, 12)(rng)}; break;
        case 1: spec = {GroupFamily::dihedral, std::uniform_int_distribution<int>(2, 8)(rng)}; break;
        case 2: spec = {GroupFamily::permutation, 3}; break;
        default: spec = {GroupFamily::random_unitary, std::uniform_int_distribution<int>(2, 48)(rng)}; break;
    }
    const int blocks = std::uniform_int_distribution<int>(1, 2)(rng);
    std::vector<Index> dims;
    std::vector<double> weights;
    for (int b = 0; b < blocks; ++b) {
        dims.push_back(std::uniform_int_distribution<Index>(blocks == 1 ? 2 : 1, 4)(rng));
        weights.push_back(uniform_in(rng, 0.2, 1.0));
    }
    double total = 0.0;
    for (double w : weights) total += w;
    for (double& w : weights) w /= total;
    const AlgebraPtr algebra = BlockAlgebra::make(dims, weights);
    const double cond = log_uniform(1.0, 10.0, rng);
    return synthesize(algebra, spec, cond, rng());
}

inline Measurements algebra_trial(Rng& rng, std::size_t trial) {
    const auto& algebras = standard_algebras();
    const AlgebraPtr& alg = algebras[trial % algebras.size()];
    Measurements out;

    std::vector<Matrix> xb, yb;
    for (Index n : alg->dims()) {
        xb.push_back(random_gaussian_matrix(n, n, rng));
        yb.push_back(random_gaussian_matrix(n, n, rng));
    }
    const AlgebraElement x(alg, xb), y(alg, yb);
    out.push_back({"algebra.trace_cyclic", std::abs(trace(x * y) - trace(y * x)) / (1.0 + norm2(x) * norm2(y)), 1e-10});

    const AlgebraElement h = random_hermitian(alg, rng);
    out.push_back({"algebra.norm_ordering", norm2(h) - uniform_norm(h), 1e-12});
    double smallest = 1.0;
    for (std::size_t b = 0; b < alg->block_count(); ++b) {
        smallest = std::min(smallest, alg->weight(b) / static_cast<double>(alg->dim(b)));
    }
    out.push_back({"algebra.faithfulness", std::max(0.0, std::sqrt(smallest) * uniform_norm(h) - norm2(h)), 1e-12});

    const Spectrum spectrum = hermitian_eig(h);
    const AlgebraElement rebuilt = from_spectrum(alg, spectrum, [](double v) { return v; });
    double recon = 0.0;
    for (std::size_t b = 0; b < alg->block_count(); ++b) {
        recon = std::max(recon, (rebuilt.block(b) - h.block(b)).norm() / std::max(1.0, h.block(b).norm()));
    }
    out.push_back({"algebra.eig_reconstruction", recon, 1e-10});

    const PositiveElement a = random_positive(alg, rng, 1e-3, 1e3);
    out.push_back({"algebra.exp_log_roundtrip", relative_gap(exp_hermitian(log(a)), a.element()), 1e-9});
    const AlgebraElement root = sqrt(a);
    out.push_back({"algebra.sqrt_roundtrip", relative_gap(root * root, a.element()), 1e-9});

    const double s = uniform_in(rng, -1.0, 1.0);
    const double t = uniform_in(rng, -1.0, 1.0);
    const AlgebraElement as = spectral_map(a, SpectralFunction::power(s));
    const AlgebraElement at = spectral_map(a, SpectralFunction::power(t));
    const AlgebraElement ast = spectral_map(a, SpectralFunction::power(s + t));
    out.push_back({"algebra.power_composition",
                   uniform_norm(ast - as * at) / (1.0 + uniform_norm(as) * uniform_norm(at)), 1e-9});

    const PositiveElement base = random_positive(alg, rng, 1e-2, 1e2);
    std::vector<Matrix> pb;
    for (Index n : alg->dims()) pb.push_back(random_gaussian_matrix(n, n, rng));
    const AlgebraElement p(alg, pb);
    const PositiveElement bigger = positivize(base.element() + p * p.adjoint() + AlgebraElement::scalar(alg, 1e-3));
    const double gap = min_eigenvalue(hermitian_eig(sqrt(bigger) - sqrt(base)));
    out.push_back({"algebra.sqrt_operator_monotone", std::max(0.0, -gap), 1e-9});
    return out;
}

inline Measurements metric_trial(Rng& rng, std::size_t trial) {
    const AlgebraPtr& alg = standard_algebras()[trial % 3];
    Measurements out;
    const PositiveElement a = random_positive(alg, rng, 1e-2, 1e2);
    const PositiveElement b = random_positive(alg, rng, 1e-2, 1e2);
    const PositiveElement c = random_positive(alg, rng, 1e-2, 1e2);

    const GeodesicSegment ab(a, b);
    out.push_back({"metric.endpoints",
                   std::max(relative_gap(ab(0.0).element(), a.element()), relative_gap(ab(1.0).element(), b.element())),
                   1e-9});
    const double dab = distance(a, b);
    out.push_back({"metric.symmetry", std::abs(dab - distance(b, a)) / (1.0 + dab), 1e-9});
    out.push_back({"metric.triangle", distance(a, c) - dab - distance(b, c), 1e-8});
    const double t = uniform_in(rng, 0.0, 1.0);
    const PositiveElement forward = ab(t);
    out.push_back({"metric.inversion_symmetry",
                   relative_gap(GeodesicSegment(b, a)(1.0 - t).element(), forward.element()), 1e-9});
    const PositiveElement m = ab(0.5);
    out.push_back({"metric.midpoint_equidistance",
                   std::max(std::abs(distance(a, m) - dab / 2), std::abs(distance(m, b) - dab / 2)), 1e-8});

    double excess = -1e300;
    for (int k = 0; k < 20; ++k) {
        excess = std::max(excess, semi_parallelogram_excess(a, b, random_positive(alg, rng, 1e-2, 1e2)));
    }
    out.push_back({"metric.semi_parallelogram", excess, 1e-8});

    const PositiveElement e = random_positive(alg, rng, 1e-2, 1e2);
    const ConvexityExcess convex = convexity_excess(ab, GeodesicSegment(c, e));
    out.push_back({"metric.convexity_midpoint", convex.midpoint, 1e-8});
    out.push_back({"metric.convexity_chord", convex.chord, 1e-8});

    // cond(g) up to 1e3 on top of cond(a) up to 1e4 leaves g a g* with
    // condition 1e10, where double precision alone costs about 1e-8; these
    // two checks draw from P_{1e-1,1e1} instead.
    const AlgebraElement g = random_invertible(alg, rng, log_uniform(1.0, 1e3, rng));
    const PositiveElement p = random_positive(alg, rng, 1e-1, 1e1);
    const PositiveElement q = random_positive(alg, rng, 1e-1, 1e1);
    const double dpq = distance(p, q);
    const PositiveElement gp = congruence(g, p);
    const PositiveElement gq = congruence(g, q);
    out.push_back({"metric.isometry", std::abs(distance(gp, gq) - dpq) / (1.0 + dpq), 1e-8});
    const GeodesicSegment pq(p, q);
    const GeodesicSegment moved(gp, gq);
    double equivariance = 0.0;
    for (double s : {0.25, 0.5, 0.75}) {
        equivariance = std::max(equivariance, relative_gap(moved(s).element(), congruence(g, pq(s)).element()));
    }
    out.push_back({"metric.equivariance", equivariance, 1e-8});
    return out;
}

inline Measurements band_trial(Rng& rng, std::size_t trial) {
    const AlgebraPtr& alg = standard_algebras()[trial % standard_algebras().size()];
    const Band band(0.25, 4.0);
    Measurements out;
    const PositiveElement a = random_positive(alg, rng, band.c1, band.c2);
    const PositiveElement b = random_positive(alg, rng, band.c1, band.c2);
    const double d = distance(a, b);
    const double l2 = norm2(a.element() - b.element());
    out.push_back({"band.d2_bounded", d - band.diameter(), 1e-8});
    out.push_back({"band.ratio_l2_over_d2", l2 / d, std::nullopt});
    out.push_back({"band.ratio_d2_over_l2", d / l2, std::nullopt});
    const GeodesicSegment segment(a, b);
    double worst = 0.0;
    for (int i = 0; i <= 8; ++i) worst = std::max(worst, band_excess(segment(i / 8.0), band));
    out.push_back({"band.geodesic_convexity", worst, tolerance::band});
    return out;
}

inline Measurements hull_trial(Rng& rng, std::size_t trial) {
    const AlgebraPtr& alg = standard_algebras()[(trial % 3 == 1) ? 3 : trial % 3];
    const Band band(0.25, 4.0);
    Measurements out;
    std::vector<PositiveElement> points;
    for (int i = 0; i < 3; ++i) points.push_back(random_positive(alg, rng, band.c1, band.c2));

    const HullApproximation hull = hull_expand(points, 3, 3);
    double worst = 0.0;
    for (const auto& generation : hull.generations) {
        for (const auto& p : generation) worst = std::max(worst, band_excess(p, band));
    }
    out.push_back({"hull.band_containment", worst, tolerance::band});

    double missing = 0.0;
    for (std::size_t n = 0; n + 1 < hull.generations.size(); ++n) {
        for (std::size_t i = 0; i < hull.generations[n].size(); ++i) {
            if (relative_gap(hull.generations[n][i].element(), hull.generations[n + 1][i].element()) > 0.0) missing += 1.0;
        }
    }
    out.push_back({"hull.monotone_generations", missing, 0.0});

    // X_2 of the moved set equals the moved X_2.
    const AlgebraElement g = random_invertible(alg, rng, log_uniform(1.0, 10.0, rng));
    std::vector<PositiveElement> moved;
    for (const auto& p : points) moved.push_back(congruence(g, p));
    const HullApproximation hull_moved = hull_expand(moved, 2, 3);
    double mismatch = 0.0;
    for (const auto& p : hull.generations[1]) {
        const PositiveElement image = congruence(g, p);
        double nearest = 1e300;
        for (const auto& q : hull_moved.last()) nearest = std::min(nearest, distance(image, q));
        mismatch = std::max(mismatch, nearest);
    }
    out.push_back({"hull.congruence_invariance", mismatch, 1e-8});

    // Midpoints depend continuously on the endpoints: a_n -> a* forces
    // m(a_n, c) -> m(a*, c) at half the rate.
    const auto& x2 = hull.generations[1];
    const GeodesicSegment path(x2[0], x2[x2.size() - 1]);
    const PositiveElement limit = path(0.5);
    const PositiveElement& anchor = x2[1 % x2.size()];
    const PositiveElement limit_mid = midpoint(limit, anchor);
    double continuity = -1e300;
    for (int n = 1; n <= 20; ++n) {
        const PositiveElement approx = path(0.5 + std::ldexp(1.0, -n));
        continuity = std::max(continuity,
                              distance(midpoint(approx, anchor), limit_mid) - 0.5 * distance(approx, limit));
    }
    out.push_back({"hull.closure_continuity", continuity, 1e-8});
    out.push_back({"hull.closure_limit_in_band", band_excess(limit_mid, band), tolerance::band});
    return out;
}

inline Measurements circumcenter_trial(Rng& rng, std::size_t trial) {
    const AlgebraPtr& alg = standard_algebras()[trial % 3];
    Measurements out;
    const double tol = 1e-8;

    const PositiveElement x = random_positive(alg, rng, 1e-2, 1e2);
    const PositiveElement y = random_positive(alg, rng, 1e-2, 1e2);
    const std::vector<PositiveElement> pair{x, y};
    const EnclosingBall two = circumcenter(pair);
    out.push_back({"circumcenter.two_point_radius", std::abs(two.radius - distance(x, y) / 2), tol});
    out.push_back({"circumcenter.two_point_center", distance(two.center, midpoint(x, y)), 10 * tol});

    const int count = std::uniform_int_distribution<int>(3, 6)(rng);
    std::vector<PositiveElement> points;
    for (int i = 0; i < count; ++i) points.push_back(random_positive(alg, rng, 1e-2, 1e2));
    const EnclosingBall ball = circumcenter(points);
    out.push_back({"circumcenter.converged", ball.converged ? 0.0 : 1.0, 0.0});
    double farthest = 0.0;
    for (const auto& p : points) farthest = std::max(farthest, distance(ball.center, p));
    out.push_back({"circumcenter.radius_consistency", std::abs(farthest - ball.radius), 1e-9});
    double rise = 0.0;
    for (std::size_t i = 1; i < ball.radius_history.size(); ++i) {
        rise = std::max(rise, ball.radius_history[i] - ball.radius_history[i - 1]);
    }
    out.push_back({"circumcenter.history_nonincreasing", rise, 1e-7});
    double shortfall = -1e300;
    for (int k = 0; k < 50; ++k) {
        const PositiveElement z = perturb(ball.center, 0.1 * uniform_in(rng, 0.0, 1.0), rng);
        shortfall = std::max(shortfall, ball.radius - max_radius(z, points).radius);
    }
    out.push_back({"circumcenter.minimality", shortfall, tol});
    out.push_back({"circumcenter.in_band", band_excess(ball.center, Band(1e-2, 1e2)), tolerance::band});

    const AlgebraElement g = random_invertible(alg, rng, log_uniform(1.0, 10.0, rng));
    std::vector<PositiveElement> moved;
    for (const auto& p : points) moved.push_back(congruence(g, p));
    const EnclosingBall moved_ball = circumcenter(moved);
    out.push_back({"circumcenter.equivariance", distance(moved_ball.center, congruence(g, ball.center)), 10 * tol});

    // Commuting diagonal points against the enumeration oracle.
    const AlgebraPtr m2 = standard_algebras()[0];
    const double span = std::log(4.0);
    std::vector<testing::LogPoint> logs;
    std::vector<PositiveElement> diagonal;
    const int diag_count = std::uniform_int_distribution<int>(2, 4)(rng);
    for (int i = 0; i < diag_count; ++i) {
        const testing::LogPoint lp{uniform_in(rng, -span, span), uniform_in(rng, -span, span)};
        logs.push_back(lp);
        diagonal.push_back(positivize(AlgebraElement::diagonal(m2, {std::exp(lp.u), std::exp(lp.v)})));
    }
    const testing::LogBall oracle = testing::enumerate_min_ball(logs);
    const EnclosingBall diag_ball = circumcenter(diagonal);
    const PositiveElement oracle_center =
        positivize(AlgebraElement::diagonal(m2, {std::exp(oracle.center.u), std::exp(oracle.center.v)}));
    out.push_back({"circumcenter.diagonal_oracle_center", distance(diag_ball.center, oracle_center), 1e-3});
    out.push_back({"circumcenter.diagonal_oracle_radius", std::abs(diag_ball.radius - oracle.radius), 1e-6});
    return out;
}

inline Measurements unitarize_trial(Rng& rng, std::size_t) {
    Measurements out;
    const SynthInstance instance = random_group_instance(rng);
    const GroupTable table = close_group(instance.algebra, instance.generators);
    out.push_back({"unitarize.closure", table.closed ? 0.0 : 1.0, 0.0});
    if (!table.closed) return out;

    UnitarizeOptions options;
    const UnitarizationCertificate by_center = unitarize(table, options);
    options.method = FixedPointMethod::karcher;
    const UnitarizationCertificate by_mean = unitarize(table, options);

    out.push_back({"unitarize.residual_unitarity", by_center.residual_unitarity, 1e-7});
    out.push_back({"unitarize.residual_fixed_point", by_center.residual_fixed_point, 1e-7});
    out.push_back({"unitarize.orbit_band", by_center.orbit_band_ok ? 0.0 : 1.0, 0.0});
    out.push_back({"unitarize.unitarizer_band", by_center.unitarizer_band_ok ? 0.0 : 1.0, 0.0});
    out.push_back({"unitarize.karcher_residual_unitarity", by_mean.residual_unitarity, 1e-7});
    out.push_back({"unitarize.karcher_residual_fixed_point", by_mean.residual_fixed_point, 1e-7});
    const bool both = verify_certificate(by_center, table, 1e-6) && verify_certificate(by_mean, table, 1e-6);
    out.push_back({"unitarize.cross_method_verify", both ? 0.0 : 1.0, 0.0});

    const AlgebraElement s1_inv = by_center.unitarizer.inverse();
    const AlgebraElement s2_inv = by_mean.unitarizer.inverse();
    double singular = 0.0;
    for (const auto& h : table.elements) {
        for (const AlgebraElement& u : {by_center.unitarizer * h * s1_inv, by_mean.unitarizer * h * s2_inv}) {
            for (const auto& m : u.blocks()) {
                Eigen::JacobiSVD<Matrix> svd(m);
                singular = std::max(singular, (svd.singularValues().array() - 1.0).abs().maxCoeff());
            }
        }
    }
    out.push_back({"unitarize.cross_method_singular_values", singular, 1e-6});

    std::uniform_int_distribution<std::size_t> pick(0, table.order() - 1);
    double morphism = 0.0;
    const AlgebraElement& s = by_center.unitarizer;
    for (int k = 0; k < 10; ++k) {
        const AlgebraElement& h1 = table.elements[pick(rng)];
        const AlgebraElement& h2 = table.elements[pick(rng)];
        morphism = std::max(morphism, relative_gap((s * h1 * s1_inv) * (s * h2 * s1_inv), s * (h1 * h2) * s1_inv));
    }
    out.push_back({"unitarize.homomorphism", morphism, 1e-9});

    std::vector<AlgebraElement> unitarized;
    for (const auto& g : instance.generators) unitarized.push_back(s * g * s1_inv);
    const UnitarizationCertificate again = unitarize(instance.algebra, unitarized);
    const PositiveElement ss = positivize(again.unitarizer * again.unitarizer.adjoint());
    out.push_back({"unitarize.idempotence", distance(ss, PositiveElement::identity(instance.algebra)), 1e-8});
    return out;
}

inline Measurements run_trial(Suite suite, Rng& rng, std::size_t trial) {
    switch (suite) {
        case Suite::algebra: return algebra_trial(rng, trial);
        case Suite::metric: return metric_trial(rng, trial);
        case Suite::band: return band_trial(rng, trial);
        case Suite::hull: return hull_trial(rng, trial);
        case Suite::circumcenter: return circumcenter_trial(rng, trial);
        case Suite::unitarize: return unitarize_trial(rng, trial);
        case Suite::all: break;
    }
    return {};
}

/// Runs `trials` trials of one suite (or every suite) and folds them into one
/// record per measurement name, in first-seen order.
inline std::vector<CheckRecord> run_suite(Suite suite, std::size_t trials, std::uint64_t seed) {
    if (suite == Suite::all) {
        std::vector<CheckRecord> all;
        for (Suite s : {Suite::algebra, Suite::metric, Suite::band, Suite::hull, Suite::circumcenter, Suite::unitarize}) {
            auto part = run_suite(s, trials, seed);
            all.insert(all.end(), part.begin(), part.end());
        }
        return all;
    }

    const auto results = parallel_map(trials, [&](std::size_t i) {
        Rng rng(seed + i);
        try {
            return run_trial(suite, rng, i);
        } catch (const Error& e) {
            return Measurements{{std::string(to_string(suite)) + ".errors", 1.0, 0.0}};
        }
    }, 1);

    std::vector<Measurement> worst;
    for (const auto& trial : results) {
        for (const auto& m : trial) {
            auto it = std::find_if(worst.begin(), worst.end(), [&](const Measurement& w) { return w.name == m.name; });
            if (it == worst.end()) {
                worst.push_back(m);
            } else if (!(it->value >= m.value)) {
                it->value = m.value;  // NaN propagates as a failure
            }
        }
    }
    std::vector<CheckRecord> records;
    for (const auto& w : worst) {
        records.push_back(w.tolerance ? make_check(w.name, w.value, *w.tolerance) : make_info(w.name, w.value));
    }
    return records;
}

}  // namespace tracecone::fuzz
