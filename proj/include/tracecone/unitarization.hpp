#pragma once

// Unitarization of finite (uniformly bounded) groups of invertible elements:
// close the group, take the orbit {h h*} of the identity under I_h, find a
// point a fixed by every I_h and conjugate by s = a^{-1/2}.

#include <algorithm>
#include <deque>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "tracecone/circumcenter.hpp"
#include "tracecone/geometry.hpp"
#include "tracecone/parallel.hpp"

namespace tracecone {

enum class ClosureStatus { closed, order_cap, norm_growth };

inline constexpr std::string_view to_string(ClosureStatus status) noexcept {
    switch (status) {
        case ClosureStatus::closed: return "closed";
        case ClosureStatus::order_cap: return "order cap";
        case ClosureStatus::norm_growth: return "norm growth detected";
    }
    return "unknown";
}

/// Products whose uniform norm exceeds this certify an unbounded group.
inline constexpr double norm_growth_threshold = 1e6;

struct GroupTable {
    AlgebraPtr algebra;
    /// Element 0 is the identity; order is the breadth-first discovery order.
    std::vector<AlgebraElement> elements;
    /// M = max ||h|| over the table.
    double uniform_bound = 1.0;
    bool closed = false;
    ClosureStatus status = ClosureStatus::closed;
    /// Table index of each generator (absent when closure stopped early).
    std::vector<std::optional<std::size_t>> generator_indices;

    std::size_t order() const noexcept { return elements.size(); }
};

namespace detail {

inline bool group_duplicate(const AlgebraElement& x, const AlgebraElement& y) {
    // ||.||_2 <= ||.|| gives a cheap rejection before the SVD.
    const AlgebraElement diff = x - y;
    const double tol = 1e-8 * (1.0 + uniform_norm(x));
    return norm2(diff) <= tol && uniform_norm(diff) <= tol;
}

/// Deduplicating element set keyed on the near-duplicate index.
class ElementSet {
public:
    explicit ElementSet(const AlgebraPtr& algebra) : index_(algebra) {}

    std::optional<std::size_t> find(const AlgebraElement& x) const {
        const double tol = 1e-8 * (1.0 + uniform_norm(x));
        return index_.find(index_.key(x), tol, [&](std::size_t id) { return group_duplicate(x, items_[id]); });
    }

    /// Index of x, inserting it when new.
    std::pair<std::size_t, bool> insert(const AlgebraElement& x) {
        if (auto hit = find(x)) return {*hit, false};
        index_.insert(index_.key(x), items_.size());
        items_.push_back(x);
        return {items_.size() - 1, true};
    }

    const std::vector<AlgebraElement>& items() const noexcept { return items_; }
    std::vector<AlgebraElement> release() && { return std::move(items_); }

private:
    NearDuplicateIndex index_;
    std::vector<AlgebraElement> items_;
};

}  // namespace detail

/// Breadth-first closure of the generators (and their inverses) under right
/// multiplication. Stops with status norm_growth as soon as a product has
/// norm above 1e6, or order_cap when more than max_order elements appear.
inline GroupTable close_group(const AlgebraPtr& algebra, std::span<const AlgebraElement> generators,
                              std::size_t max_order = 10000) {
    std::vector<AlgebraElement> steps;
    for (const auto& g : generators) {
        if (!same_algebra(g.algebra(), algebra)) {
            throw Error(Errc::malformed_element, "generator belongs to a different algebra");
        }
        steps.push_back(g);
        steps.push_back(g.inverse());
    }

    GroupTable table;
    table.algebra = algebra;
    table.closed = true;
    table.status = ClosureStatus::closed;

    detail::ElementSet set(algebra);
    set.insert(AlgebraElement::identity(algebra));
    double bound = 1.0;
    for (std::size_t head = 0; head < set.items().size() && table.closed; ++head) {
        for (const auto& step : steps) {
            AlgebraElement product = set.items()[head] * step;
            const double norm = uniform_norm(product);
            if (norm > norm_growth_threshold) {
                table.closed = false;
                table.status = ClosureStatus::norm_growth;
                break;
            }
            if (set.find(product)) continue;
            if (set.items().size() >= max_order) {
                table.closed = false;
                table.status = ClosureStatus::order_cap;
                break;
            }
            bound = std::max(bound, norm);
            set.insert(product);
        }
    }
    for (const auto& g : generators) table.generator_indices.push_back(set.find(g));
    table.elements = std::move(set).release();
    table.uniform_bound = bound;
    return table;
}

/// Deduplicated orbit {h h* : h in H} of the identity.
inline std::vector<PositiveElement> orbit_of_identity(const GroupTable& table, bool allow_partial = false) {
    if (!table.closed && !allow_partial) {
        throw Error(Errc::invalid_argument, "orbit requested for a group table that is not closed");
    }
    const auto products = parallel_map(table.elements.size(), [&](std::size_t i) {
        return (table.elements[i] * table.elements[i].adjoint()).hermitian_part();
    });
    detail::ElementSet set(table.algebra);
    std::vector<PositiveElement> orbit;
    for (const auto& p : products) {
        if (set.insert(p).second) orbit.push_back(positivize(p));
    }
    return orbit;
}

enum class FixedPointMethod { circumcenter, karcher };

inline constexpr std::string_view to_string(FixedPointMethod method) noexcept {
    return method == FixedPointMethod::circumcenter ? "circumcenter" : "karcher";
}

struct UnitarizeOptions {
    double tol = 1e-8;
    /// Non-positive selects the solver default.
    int max_iter = 0;
    std::size_t max_order = 10000;
    FixedPointMethod method = FixedPointMethod::circumcenter;
    /// Unitarize the orbit of an unfinished closure instead of failing.
    bool allow_partial = false;
};

struct UnitarizationCertificate {
    PositiveElement center;      // a
    AlgebraElement unitarizer;   // s = a^{-1/2}
    Band band;                   // (1/M, M)
    double residual_unitarity = 0.0;
    double residual_fixed_point = 0.0;
    bool orbit_band_ok = false;
    bool unitarizer_band_ok = false;
    bool converged = false;
    FixedPointMethod method = FixedPointMethod::circumcenter;
    std::size_t group_order = 0;
    std::size_t orbit_size = 0;
    int iterations = 0;
    /// Center-to-orbit radius for the circumcenter method, gradient norm for Karcher.
    double solver_measure = 0.0;
};

struct CertificateResiduals {
    double unitarity = 0.0;
    double fixed_point = 0.0;
    bool orbit_band_ok = false;
    bool unitarizer_band_ok = false;
};

namespace detail {

/// max_h ||(s h s^{-1})(s h s^{-1})* - 1|| over the table.
inline double unitarity_residual(const AlgebraElement& s, const AlgebraElement& s_inv,
                                 std::span<const AlgebraElement> elements) {
    const AlgebraElement one = AlgebraElement::identity(s.algebra());
    const auto values = parallel_map(elements.size(), [&](std::size_t i) {
        const AlgebraElement u = s * elements[i] * s_inv;
        return uniform_norm(u * u.adjoint() - one);
    });
    return values.empty() ? 0.0 : *std::max_element(values.begin(), values.end());
}

/// max_h d2(h a h*, a) over the table.
inline double fixed_point_residual(const PositiveElement& a, std::span<const AlgebraElement> elements) {
    const AlgebraElement a_inv_sqrt = inv_sqrt(a);
    const auto values = parallel_map(elements.size(), [&](std::size_t i) {
        return std::sqrt(squared_distance_with(a_inv_sqrt, congruence(elements[i], a)));
    });
    return values.empty() ? 0.0 : *std::max_element(values.begin(), values.end());
}

inline bool orbit_in_band(std::span<const AlgebraElement> elements, double bound) {
    const Band band(1.0 / (bound * bound), bound * bound);
    return std::all_of(elements.begin(), elements.end(), [&](const AlgebraElement& h) {
        return in_band(positivize((h * h.adjoint()).hermitian_part()), band);
    });
}

}  // namespace detail

/// Fixed point and unitarizer for a table, using a precomputed finite orbit.
inline UnitarizationCertificate unitarize(const GroupTable& table, std::span<const PositiveElement> orbit,
                                          const UnitarizeOptions& options = {}) {
    if (orbit.empty()) throw Error(Errc::empty_set, "empty orbit");
    const double bound = table.uniform_bound;

    std::optional<PositiveElement> center;
    bool converged = false;
    int iterations = 0;
    double measure = 0.0;
    if (options.method == FixedPointMethod::circumcenter) {
        CircumcenterOptions copts;
        copts.tol = options.tol;
        copts.max_iter = options.max_iter;
        EnclosingBall ball = circumcenter(orbit, copts);
        center = ball.center;
        converged = ball.converged;
        iterations = ball.iterations;
        measure = ball.radius;
    } else {
        KarcherOptions kopts;
        kopts.tol = options.tol;
        if (options.max_iter > 0) kopts.max_iter = options.max_iter;
        KarcherMean mean = karcher_mean(orbit, kopts);
        center = mean.mean;
        converged = mean.converged;
        iterations = mean.iterations;
        measure = mean.gradient_norm;
    }

    AlgebraElement s = inv_sqrt(*center);
    const AlgebraElement s_inv = sqrt(*center);
    const PositiveElement s_positive = positivize(s);

    UnitarizationCertificate cert{*center, s, Band(1.0 / bound, bound)};
    cert.residual_unitarity = detail::unitarity_residual(s, s_inv, table.elements);
    cert.residual_fixed_point = detail::fixed_point_residual(*center, table.elements);
    cert.orbit_band_ok = table.closed && detail::orbit_in_band(table.elements, bound);
    cert.unitarizer_band_ok = in_band(s_positive, cert.band);
    cert.converged = converged;
    cert.method = options.method;
    cert.group_order = table.order();
    cert.orbit_size = orbit.size();
    cert.iterations = iterations;
    cert.solver_measure = measure;
    return cert;
}

inline UnitarizationCertificate unitarize(const GroupTable& table, const UnitarizeOptions& options = {}) {
    if (!table.closed && !options.allow_partial) {
        throw Error(Errc::order_exceeded, std::string(to_string(table.status)) + " after " +
                                              std::to_string(table.order()) + " elements");
    }
    const auto orbit = orbit_of_identity(table, options.allow_partial);
    return unitarize(table, orbit, options);
}

/// Full pipeline from generators. OrderExceeded carries the closure diagnosis
/// ("norm growth detected" or "order cap").
inline UnitarizationCertificate unitarize(const AlgebraPtr& algebra, std::span<const AlgebraElement> generators,
                                          const UnitarizeOptions& options = {}) {
    return unitarize(close_group(algebra, generators, options.max_order), options);
}

/// Recomputes every residual of a certificate from the table alone, sharing
/// nothing with unitarize(): s^{-1} comes from an LU inverse and the bands from
/// fresh eigendecompositions.
inline CertificateResiduals recompute_residuals(const UnitarizationCertificate& cert, const GroupTable& table) {
    CertificateResiduals out;
    double bound = 0.0;
    for (const auto& h : table.elements) bound = std::max(bound, uniform_norm(h));
    if (table.elements.empty()) bound = 1.0;

    const AlgebraElement s_inv = cert.unitarizer.inverse();
    out.unitarity = detail::unitarity_residual(cert.unitarizer, s_inv, table.elements);
    out.fixed_point = detail::fixed_point_residual(cert.center, table.elements);
    out.orbit_band_ok = table.closed && detail::orbit_in_band(table.elements, bound);
    const Spectrum s_spectrum = hermitian_eig(cert.unitarizer);
    const double lo = min_eigenvalue(s_spectrum);
    const double hi = max_eigenvalue(s_spectrum);
    out.unitarizer_band_ok = lo > 0.0 && 1.0 / bound - tolerance::band <= lo && hi <= bound + tolerance::band;
    return out;
}

/// True iff both recomputed residuals are within tol and both band checks hold.
inline bool verify_certificate(const UnitarizationCertificate& cert, const GroupTable& table, double tol) {
    try {
        const CertificateResiduals r = recompute_residuals(cert, table);
        return r.unitarity <= tol && r.fixed_point <= tol && r.orbit_band_ok && r.unitarizer_band_ok;
    } catch (const Error&) {
        return false;
    }
}

}  // namespace tracecone
