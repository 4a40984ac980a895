#pragma once

#include "frobsum/graded.hpp"
#include "frobsum/rep.hpp"

#include <random>
#include <vector>

namespace frobsum {

/// Random unimodular integer matrix built from a few shear operations, so
/// conjugation keeps entries exactly integral and reasonably small.
inline void random_unimodular_pair(std::mt19937_64& rng, int n, Matrix<long long>& U,
                                   Matrix<long long>& Uinv, int ops = 3) {
    U = Matrix<long long>::identity(static_cast<std::size_t>(n));
    Uinv = Matrix<long long>::identity(static_cast<std::size_t>(n));
    if (n < 2) return;
    std::uniform_int_distribution<int> row(0, n - 1);
    std::uniform_int_distribution<int> coef(0, 1);
    struct Op {
        int i, j, s;
    };
    std::vector<Op> done;
    for (int t = 0; t < ops; ++t) {
        int i = row(rng), j = row(rng);
        if (i == j) continue;
        int s = coef(rng) == 0 ? 1 : -1;
        for (int c = 0; c < n; ++c) U.at(j, c) += s * U.at(i, c);
        done.push_back({i, j, s});
    }
    for (auto it = done.rbegin(); it != done.rend(); ++it)
        for (int c = 0; c < n; ++c) Uinv.at(it->j, c) -= it->s * Uinv.at(it->i, c);
}

namespace detail {

// Integer matrices of exact finite multiplicative order.
inline Matrix<long long> order_block(int size, int ord) {
    if (size == 1) {
        Matrix<long long> m(1, 1);
        m.at(0, 0) = ord == 2 ? -1 : 1;
        return m;
    }
    if (size == 2) {
        Matrix<long long> m(2, 2);
        switch (ord) {
            case 1: return Matrix<long long>::identity(2);
            case 2:  // swap
                m.at(0, 1) = 1;
                m.at(1, 0) = 1;
                return m;
            case 3:  // companion of x^2 + x + 1
                m.at(0, 1) = -1;
                m.at(1, 0) = 1;
                m.at(1, 1) = -1;
                return m;
            case 4:  // quarter rotation
                m.at(0, 1) = -1;
                m.at(1, 0) = 1;
                return m;
            case 6:  // companion of x^2 - x + 1
                m.at(0, 1) = -1;
                m.at(1, 0) = 1;
                m.at(1, 1) = 1;
                return m;
            default: throw std::logic_error("unsupported 2x2 block order");
        }
    }
    if (size == 3 && ord == 3) {  // 3-cycle permutation
        Matrix<long long> m(3, 3);
        m.at(0, 2) = 1;
        m.at(1, 0) = 1;
        m.at(2, 1) = 1;
        return m;
    }
    throw std::logic_error("unsupported block shape");
}

}  // namespace detail

/// A random integer matrix A of the given dimension with A^m = I exactly,
/// assembled from finite-order blocks and conjugated by a unimodular matrix.
inline Matrix<long long> random_matrix_of_order_dividing(std::mt19937_64& rng, int dim, int m) {
    struct Choice {
        int size, ord;
    };
    std::vector<Matrix<long long>> blocks;
    int remaining = dim;
    while (remaining > 0) {
        std::vector<Choice> cands;
        cands.push_back({1, 1});
        if (m % 2 == 0) cands.push_back({1, 2});
        if (remaining >= 2) {
            if (m % 3 == 0) cands.push_back({2, 3});
            if (m % 4 == 0) cands.push_back({2, 4});
            if (m % 6 == 0) cands.push_back({2, 6});
            if (m % 2 == 0) cands.push_back({2, 2});
        }
        if (remaining >= 3 && m % 3 == 0) cands.push_back({3, 3});
        std::uniform_int_distribution<std::size_t> pick(0, cands.size() - 1);
        Choice c = cands[pick(rng)];
        blocks.push_back(detail::order_block(c.size, c.ord));
        remaining -= c.size;
    }
    Matrix<long long> A(static_cast<std::size_t>(dim), static_cast<std::size_t>(dim));
    std::size_t off = 0;
    for (const auto& b : blocks) {
        for (std::size_t i = 0; i < b.rows(); ++i)
            for (std::size_t j = 0; j < b.cols(); ++j) A.at(off + i, off + j) = b.at(i, j);
        off += b.rows();
    }
    Matrix<long long> U, Uinv;
    random_unimodular_pair(rng, dim, U, Uinv);
    return U * A * Uinv;
}

/// A random exact integer representation of the cyclic subgroup H of a
/// cyclic group: the subgroup generator goes to a matrix of order dividing
/// |H|, the rest are its powers.
inline MatrixRep<long long> random_cyclic_subgroup_rep(std::mt19937_64& rng, const Subgroup& H,
                                                       int dim) {
    const FiniteGroup& G = H.group();
    const int hord = static_cast<int>(H.members().size());
    const int step = G.order() / hord;  // H = <step> inside Z/|G|
    Matrix<long long> A = random_matrix_of_order_dividing(rng, dim, hord);
    MatrixRep<long long> rep;
    rep.group = H.group_ptr();
    rep.domain = H.members();
    rep.dim = dim;
    for (int h : H.members()) {
        if (h % step != 0) throw std::logic_error("subgroup is not the expected cyclic subgroup");
        rep.images.emplace(h, A.pow(static_cast<unsigned long long>(h / step)));
    }
    return rep;
}

/// A random full representation of a cyclic group Z/M.
inline MatrixRep<long long> random_cyclic_group_rep(std::mt19937_64& rng, GroupPtr G, int dim) {
    const int M = G->order();
    Matrix<long long> A = random_matrix_of_order_dividing(rng, dim, M);
    MatrixRep<long long> rep;
    rep.group = std::move(G);
    rep.domain.resize(M);
    rep.dim = dim;
    for (int g = 0; g < M; ++g) {
        rep.domain[g] = g;
        rep.images.emplace(g, A.pow(static_cast<unsigned long long>(g)));
    }
    return rep;
}

/// A random bounded graded representation: a random nonempty set of degrees
/// in [deg_lo, deg_hi], each carrying a random invertible integer matrix with
/// small entries.
inline GradedRep<long long> random_graded_rep(std::mt19937_64& rng, int deg_lo, int deg_hi,
                                              int max_dim) {
    std::uniform_int_distribution<int> dimd(1, max_dim);
    std::uniform_int_distribution<int> entry(-2, 2);
    std::uniform_int_distribution<int> flip(0, 1);
    std::map<int, Matrix<long long>> pieces;
    for (int deg = deg_lo; deg <= deg_hi; ++deg) {
        if (flip(rng) == 0) continue;
        const int dim = dimd(rng);
        Matrix<long long> m(static_cast<std::size_t>(dim), static_cast<std::size_t>(dim));
        do {
            for (std::size_t i = 0; i < m.rows(); ++i)
                for (std::size_t j = 0; j < m.cols(); ++j) m.at(i, j) = entry(rng);
        } while (!is_invertible(m));
        pieces.emplace(deg, std::move(m));
    }
    if (pieces.empty()) {
        Matrix<long long> m(1, 1);
        m.at(0, 0) = 1 + 2 * flip(rng);
        pieces.emplace(0, std::move(m));
    }
    return make_graded_rep(std::move(pieces), std::max(std::abs(deg_lo), std::abs(deg_hi)), max_dim);
}

}  // namespace frobsum
