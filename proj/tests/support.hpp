#pragma once

#include <initializer_list>
#include <vector>

#include "tracecone/algebra.hpp"

namespace support {

using namespace tracecone;

inline PositiveElement pos_diag(const AlgebraPtr& alg, std::initializer_list<double> entries) {
    return positivize(AlgebraElement::diagonal(alg, entries));
}

/// Single-block element from real rows.
inline AlgebraElement real_matrix(const AlgebraPtr& alg, std::initializer_list<std::initializer_list<double>> rows) {
    const Index n = static_cast<Index>(rows.size());
    Matrix m(n, n);
    Index i = 0;
    for (const auto& row : rows) {
        Index j = 0;
        for (double v : row) m(i, j++) = v;
        ++i;
    }
    return {alg, {m}};
}

inline double max_entry_gap(const AlgebraElement& x, const AlgebraElement& y) {
    double gap = 0.0;
    for (std::size_t b = 0; b < x.block_count(); ++b) gap = std::max(gap, (x.block(b) - y.block(b)).cwiseAbs().maxCoeff());
    return gap;
}

}  // namespace support
