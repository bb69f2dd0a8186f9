#pragma once

// Ground-truth instances: unitary representations u_i of small finite groups,
// published as g u_i g^{-1} for a hidden random conjugator g.

#include <cmath>
#include <cstdint>
#include <numbers>
#include <string>
#include <string_view>
#include <vector>

#include "tracecone/algebra.hpp"
#include "tracecone/random.hpp"

namespace tracecone {

enum class GroupFamily { cyclic, dihedral, permutation, random_unitary };

struct GroupSpec {
    GroupFamily family = GroupFamily::cyclic;
    int parameter = 1;  // k for cyclic-k / dihedral-k / perm-k, n for random-unitary-order-n

    std::string name() const {
        switch (family) {
            case GroupFamily::cyclic: return "cyclic-" + std::to_string(parameter);
            case GroupFamily::dihedral: return "dihedral-" + std::to_string(parameter);
            case GroupFamily::permutation: return "perm-" + std::to_string(parameter);
            case GroupFamily::random_unitary: return "random-unitary-order-" + std::to_string(parameter);
        }
        return {};
    }
};

inline GroupSpec parse_group_spec(std::string_view text) {
    auto number_after = [&](std::string_view prefix) {
        const std::string digits(text.substr(prefix.size()));
        std::size_t used = 0;
        int value = 0;
        try {
            value = std::stoi(digits, &used);
        } catch (const std::exception&) {
            used = 0;
        }
        if (digits.empty() || used != digits.size()) {
            throw Error(Errc::invalid_argument, "bad group parameter in '" + std::string(text) + "'");
        }
        return value;
    };
    GroupSpec spec;
    if (text.starts_with("cyclic-")) {
        spec = {GroupFamily::cyclic, number_after("cyclic-")};
        if (spec.parameter < 1) throw Error(Errc::invalid_argument, "cyclic-k needs k >= 1");
    } else if (text.starts_with("dihedral-")) {
        spec = {GroupFamily::dihedral, number_after("dihedral-")};
        if (spec.parameter < 2) throw Error(Errc::invalid_argument, "dihedral-k needs k >= 2");
    } else if (text.starts_with("perm-")) {
        spec = {GroupFamily::permutation, number_after("perm-")};
        if (spec.parameter < 2) throw Error(Errc::invalid_argument, "perm-k needs k >= 2");
    } else if (text.starts_with("random-unitary-order-")) {
        spec = {GroupFamily::random_unitary, number_after("random-unitary-order-")};
        if (spec.parameter < 1) throw Error(Errc::invalid_argument, "group order must be >= 1");
    } else {
        throw Error(Errc::invalid_argument, "unknown group family '" + std::string(text) + "'");
    }
    return spec;
}

struct SynthInstance {
    AlgebraPtr algebra;
    GroupSpec group;
    /// The group family actually realized (random-unitary resolves to a concrete family).
    GroupSpec realized;
    std::vector<AlgebraElement> unitary_generators;
    AlgebraElement conjugator;
    std::vector<AlgebraElement> generators;
};

namespace detail {

/// Representation of one generator restricted to a single block, before the
/// block's random change of unitary basis.
using BlockRep = std::vector<Matrix>;  // one matrix per group generator

inline Complex root_of_unity(int k, long long e) {
    const double angle = 2.0 * std::numbers::pi * static_cast<double>(e % k) / static_cast<double>(k);
    return std::polar(1.0, angle);
}

inline BlockRep cyclic_block(Index n, int k, bool first, Rng& rng) {
    std::uniform_int_distribution<int> exponent(0, k - 1);
    Matrix u = Matrix::Zero(n, n);
    for (Index j = 0; j < n; ++j) u(j, j) = root_of_unity(k, (first && j == 0) ? 1 : exponent(rng));
    return {u};
}

/// Direct sum of 2-dimensional irreps rotation -> diag(w^j, w^-j),
/// reflection -> swap, padded with the sign character when n is odd.
inline BlockRep dihedral_block(Index n, int k, bool first, Rng& rng) {
    std::uniform_int_distribution<int> twist(1, std::max(1, (k - 1) / 2 + (k % 2 == 0 ? 1 : 0)));
    Matrix r = Matrix::Zero(n, n);
    Matrix f = Matrix::Zero(n, n);
    Index j = 0;
    bool faithful = first;
    for (; j + 1 < n; j += 2) {
        const int t = faithful ? 1 : twist(rng);
        faithful = false;
        r(j, j) = root_of_unity(k, t);
        r(j + 1, j + 1) = root_of_unity(k, k - t);
        f(j, j + 1) = 1.0;
        f(j + 1, j) = 1.0;
    }
    if (j < n) {
        r(j, j) = 1.0;
        f(j, j) = -1.0;
    }
    return {r, f};
}

inline Matrix permutation_matrix(const std::vector<int>& image) {
    const Index k = static_cast<Index>(image.size());
    Matrix p = Matrix::Zero(k, k);
    for (Index i = 0; i < k; ++i) p(image[static_cast<std::size_t>(i)], i) = 1.0;
    return p;
}

/// S_k generated by the transposition (0 1) and the k-cycle, realized as a
/// direct sum of permutation representations, standard representations and
/// sign characters filling n dimensions.
inline BlockRep permutation_block(Index n, int k) {
    std::vector<int> swap(static_cast<std::size_t>(k));
    std::vector<int> cycle(static_cast<std::size_t>(k));
    for (int i = 0; i < k; ++i) {
        swap[static_cast<std::size_t>(i)] = i;
        cycle[static_cast<std::size_t>(i)] = (i + 1) % k;
    }
    std::swap(swap[0], swap[1]);
    const Matrix p_swap = permutation_matrix(swap);
    const Matrix p_cycle = permutation_matrix(cycle);

    // Orthonormal basis of the sum-zero subspace.
    Matrix diffs = Matrix::Zero(k, k - 1);
    for (int i = 0; i + 1 < k; ++i) {
        diffs(i, i) = 1.0;
        diffs(i + 1, i) = -1.0;
    }
    Eigen::HouseholderQR<Matrix> qr(diffs);
    const Matrix basis = qr.householderQ() * Matrix::Identity(k, k - 1);

    Matrix a = Matrix::Zero(n, n);
    Matrix b = Matrix::Zero(n, n);
    Index j = 0;
    while (n - j >= k) {
        a.block(j, j, k, k) = p_swap;
        b.block(j, j, k, k) = p_cycle;
        j += k;
    }
    if (k >= 3 && n - j >= k - 1) {
        a.block(j, j, k - 1, k - 1) = basis.adjoint() * p_swap * basis;
        b.block(j, j, k - 1, k - 1) = basis.adjoint() * p_cycle * basis;
        j += k - 1;
    }
    for (; j < n; ++j) {
        a(j, j) = -1.0;
        b(j, j) = (k % 2 == 0) ? -1.0 : 1.0;
    }
    return {a, b};
}

inline GroupSpec resolve_random_family(int order, Rng& rng) {
    std::vector<GroupSpec> options{{GroupFamily::cyclic, order}};
    if (order % 2 == 0 && order / 2 >= 2) options.push_back({GroupFamily::dihedral, order / 2});
    if (order == 6) options.push_back({GroupFamily::permutation, 3});
    if (order == 24) options.push_back({GroupFamily::permutation, 4});
    std::uniform_int_distribution<std::size_t> pick(0, options.size() - 1);
    return options[pick(rng)];
}

}  // namespace detail

/// Deterministic in (algebra, group, cond, seed). cond <= 1 means g = 1.
inline SynthInstance synthesize(const AlgebraPtr& algebra, const GroupSpec& group, double cond, std::uint64_t seed) {
    Rng rng(seed);
    const GroupSpec realized =
        group.family == GroupFamily::random_unitary ? detail::resolve_random_family(group.parameter, rng) : group;

    std::vector<std::vector<Matrix>> per_generator;
    for (std::size_t b = 0; b < algebra->block_count(); ++b) {
        const Index n = algebra->dim(b);
        detail::BlockRep rep;
        switch (realized.family) {
            case GroupFamily::cyclic: rep = detail::cyclic_block(n, realized.parameter, b == 0, rng); break;
            case GroupFamily::dihedral: rep = detail::dihedral_block(n, realized.parameter, b == 0, rng); break;
            case GroupFamily::permutation: rep = detail::permutation_block(n, realized.parameter); break;
            case GroupFamily::random_unitary: break;
        }
        const Matrix basis = random_unitary_matrix(n, rng);
        if (per_generator.empty()) per_generator.resize(rep.size());
        for (std::size_t g = 0; g < rep.size(); ++g) {
            per_generator[g].push_back(basis * rep[g] * basis.adjoint());
        }
    }

    std::vector<AlgebraElement> unitaries;
    for (auto& blocks : per_generator) unitaries.emplace_back(algebra, std::move(blocks));

    AlgebraElement g = cond <= 1.0 ? AlgebraElement::identity(algebra) : random_invertible(algebra, rng, cond);
    const AlgebraElement g_inv = g.inverse();
    std::vector<AlgebraElement> published;
    for (const auto& u : unitaries) published.push_back(g * u * g_inv);

    return {algebra, group, realized, std::move(unitaries), std::move(g), std::move(published)};
}

}  // namespace tracecone
