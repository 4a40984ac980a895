#pragma once

#include "frobsum/common.hpp"
#include "frobsum/group.hpp"
#include "frobsum/matrix.hpp"

#include <map>
#include <optional>
#include <stdexcept>
#include <unordered_map>
#include <vector>

namespace frobsum {

/// A matrix representation of a group or of a subgroup of it, with exact
/// scalar entries. `domain` lists the element indices the representation is
/// defined on (the whole group or the members of a subgroup).
template <typename T>
struct MatrixRep {
    GroupPtr group;
    std::vector<int> domain;
    int dim = 0;
    std::unordered_map<int, Matrix<T>> images;

    const Matrix<T>& image(int g) const {
        auto it = images.find(g);
        if (it == images.end()) throw std::invalid_argument("element outside the representation domain");
        return it->second;
    }

    bool defined_on(int g) const { return images.count(g) != 0; }

    /// Exhaustive check of image(a) * image(b) == image(ab) over the domain.
    bool is_homomorphism() const {
        for (int a : domain)
            for (int b : domain) {
                int ab = group->op(a, b);
                if (!defined_on(ab)) return false;
                if (image(a) * image(b) != image(ab)) return false;
            }
        return true;
    }

    /// Element-wise traces (the character, as far as this artifact needs it).
    std::map<int, T> character() const {
        std::map<int, T> out;
        for (int g : domain) out[g] = image(g).trace();
        return out;
    }
};

template <typename T>
MatrixRep<T> make_rep(GroupPtr group, std::vector<int> domain, std::vector<Matrix<T>> images) {
    if (domain.size() != images.size())
        throw std::invalid_argument("one image per domain element required");
    MatrixRep<T> rep;
    rep.group = std::move(group);
    rep.domain = std::move(domain);
    if (rep.domain.empty()) throw std::invalid_argument("empty representation domain");
    rep.dim = static_cast<int>(images[0].rows());
    for (std::size_t i = 0; i < images.size(); ++i) {
        if (images[i].rows() != images[i].cols() ||
            static_cast<int>(images[i].rows()) != rep.dim)
            throw std::invalid_argument("representation images must be square of equal size");
        rep.images.emplace(rep.domain[i], std::move(images[i]));
    }
    if (!rep.defined_on(0) || rep.image(0) != Matrix<T>::identity(rep.dim))
        throw std::invalid_argument("identity must map to the identity matrix");
    return rep;
}

/// (g*rho)(h) = rho(g h g^-1); requires the domain subgroup to be normal.
template <typename T>
MatrixRep<T> conjugate_rep(const Subgroup& H, const MatrixRep<T>& rho, int g) {
    if (!H.normal()) throw std::invalid_argument("conjugate_rep requires a normal subgroup");
    const FiniteGroup& G = H.group();
    MatrixRep<T> out;
    out.group = rho.group;
    out.domain = rho.domain;
    out.dim = rho.dim;
    for (int h : rho.domain) out.images.emplace(h, rho.image(G.op(G.op(g, h), G.inverse(g))));
    return out;
}

namespace detail {

// Decode a flat index into a length-d tuple of digits in [0, dim),
// slot 0 most significant (lexicographic tuple order).
inline void decode_tuple(long long idx, int d, int dim, std::vector<int>& out) {
    out.assign(d, 0);
    for (int i = d - 1; i >= 0; --i) {
        out[i] = static_cast<int>(idx % dim);
        idx /= dim;
    }
}

inline long long encode_tuple(const std::vector<int>& t, int dim) {
    long long idx = 0;
    for (int v : t) idx = idx * dim + v;
    return idx;
}

}  // namespace detail

/// The matrix of the tensor induction of rho at a single group element g:
/// with right-coset representatives g_1, ..., g_d and g_i g = h_i g_tau(i),
/// the image sends m_1 x ... x m_d to rho(h_1) m_tau(1) x ... x rho(h_d) m_tau(d).
template <typename T>
Matrix<T> tensor_induction_image(const Subgroup& H, const MatrixRep<T>& rho, int g) {
    const FiniteGroup& G = H.group();
    const int d = H.index();
    const int dim = rho.dim;
    long long total = 1;
    for (int i = 0; i < d; ++i) {
        total *= dim;
        if (total > matrix_budget()) throw BudgetExceeded("induced dimension exceeds matrix budget");
    }
    std::vector<int> tau(d);
    std::vector<const Matrix<T>*> factors(d);
    for (int i = 0; i < d; ++i) {
        const int x = G.op(H.coset_reps()[i], g);
        const int j = H.coset_of(x);
        const int h = G.op(x, G.inverse(H.coset_reps()[j]));
        if (!H.contains(h)) throw std::logic_error("coset bookkeeping failure");
        tau[i] = j;
        factors[i] = &rho.image(h);
    }
    Matrix<T> kron = kron_all(factors);
    // multiply on the right by the slot permutation: column b of the result
    // is column perm(b) of kron, where perm(b)_i = b_tau(i)
    Matrix<T> out(static_cast<std::size_t>(total), static_cast<std::size_t>(total));
    std::vector<int> bt, pt(d);
    for (long long b = 0; b < total; ++b) {
        detail::decode_tuple(b, d, dim, bt);
        for (int i = 0; i < d; ++i) pt[i] = bt[tau[i]];
        const long long src = detail::encode_tuple(pt, dim);
        for (long long a = 0; a < total; ++a)
            out.at(static_cast<std::size_t>(a), static_cast<std::size_t>(b)) =
                kron.at(static_cast<std::size_t>(a), static_cast<std::size_t>(src));
    }
    return out;
}

/// Tensor induction of a subgroup representation to the whole group.
template <typename T>
MatrixRep<T> tensor_induction(const Subgroup& H, const MatrixRep<T>& rho) {
    const FiniteGroup& G = H.group();
    MatrixRep<T> out;
    out.group = H.group_ptr();
    out.domain.resize(G.order());
    for (int g = 0; g < G.order(); ++g) out.domain[g] = g;
    long long total = 1;
    for (int i = 0; i < H.index(); ++i) total *= rho.dim;
    out.dim = static_cast<int>(total);
    for (int g = 0; g < G.order(); ++g) out.images.emplace(g, tensor_induction_image(H, rho, g));
    return out;
}

/// A subgroup representation together with descent isomorphisms Psi_sigma,
/// one per coset, satisfying the cocycle condition
///   Psi_sigma . Psi_tau = rho(h_{sigma,tau}) . Psi_{sigma tau},
/// with h_{sigma,tau} = lift(sigma) lift(tau) lift(sigma tau)^-1.
template <typename T>
struct CocycleDatum {
    Subgroup sub;
    Quotient quot;
    MatrixRep<T> rep;           // representation of the subgroup
    std::vector<int> lift;      // quotient element -> chosen parent representative
    std::vector<Matrix<T>> psi; // quotient element -> Psi_sigma

    bool operator==(const CocycleDatum& o) const {
        return sub.members() == o.sub.members() && lift == o.lift && psi == o.psi &&
               rep.images.size() == o.rep.images.size() &&
               [&] {
                   for (int h : rep.domain)
                       if (!o.rep.defined_on(h) || rep.image(h) != o.rep.image(h)) return false;
                   return true;
               }();
    }

    void validate() const {
        const FiniteGroup& G = sub.group();
        const int m = quot.qgroup->order();
        if (static_cast<int>(lift.size()) != m || static_cast<int>(psi.size()) != m)
            throw std::invalid_argument("cocycle datum: wrong number of lifts or isomorphisms");
        for (int s = 0; s < m; ++s) {
            if (quot.class_of[lift[s]] != s)
                throw std::invalid_argument("cocycle datum: lift lies in the wrong coset");
            if (!is_invertible(psi[s]))
                throw std::invalid_argument("cocycle datum: Psi is not invertible");
        }
        if (lift[0] != 0 || psi[0] != Matrix<T>::identity(rep.dim))
            throw std::invalid_argument("cocycle datum: identity coset must lift to the identity");
        // each Psi_sigma intertwines rho and the conjugate representation
        for (int s = 0; s < m; ++s)
            for (int h : rep.domain) {
                const int conj = G.op(G.op(lift[s], h), G.inverse(lift[s]));
                if (psi[s] * rep.image(h) != rep.image(conj) * psi[s])
                    throw std::invalid_argument("cocycle datum: Psi does not intertwine");
            }
        // cocycle condition
        for (int s = 0; s < m; ++s)
            for (int t = 0; t < m; ++t) {
                const int st = quot.qgroup->op(s, t);
                const int h = G.op(G.op(lift[s], lift[t]), G.inverse(lift[st]));
                if (!sub.contains(h)) throw std::logic_error("cocycle defect left the subgroup");
                if (psi[s] * psi[t] != rep.image(h) * psi[st])
                    throw std::invalid_argument("cocycle condition fails");
            }
    }
};

template <typename T>
MatrixRep<T> restrict_rep(const MatrixRep<T>& pi, const Subgroup& H) {
    MatrixRep<T> out;
    out.group = pi.group;
    out.domain = H.members();
    out.dim = pi.dim;
    for (int h : H.members()) out.images.emplace(h, pi.image(h));
    return out;
}

/// Restriction of a full representation to a cocycle datum: rho = pi|_H and
/// Psi_sigma = pi(lift(sigma)). Default lifts are the canonical coset
/// representatives (smallest element in each coset).
template <typename T>
CocycleDatum<T> restrict_to_cocycle(const MatrixRep<T>& pi, const Subgroup& H,
                                    std::optional<std::vector<int>> lift = std::nullopt) {
    if (!H.normal()) throw std::invalid_argument("cocycle machinery requires a normal subgroup");
    CocycleDatum<T> out{H, make_quotient(H), restrict_rep(pi, H), {}, {}};
    const int m = out.quot.qgroup->order();
    out.lift = lift ? *lift : out.quot.canon_rep;
    if (static_cast<int>(out.lift.size()) != m)
        throw std::invalid_argument("wrong number of lifts");
    if (out.lift[0] != 0)
        throw std::invalid_argument("identity coset must lift to the identity element");
    out.psi.reserve(m);
    for (int s = 0; s < m; ++s) out.psi.push_back(pi.image(out.lift[s]));
    return out;
}

/// Inverse direction: pi(g) = rho(h) . Psi_sigma for g = h lift(sigma).
/// Validates the datum and asserts the homomorphism property of the result.
template <typename T>
MatrixRep<T> reconstruct_from_cocycle(const CocycleDatum<T>& datum) {
    datum.validate();
    const FiniteGroup& G = datum.sub.group();
    MatrixRep<T> out;
    out.group = datum.sub.group_ptr();
    out.domain.resize(G.order());
    for (int g = 0; g < G.order(); ++g) out.domain[g] = g;
    out.dim = datum.rep.dim;
    for (int g = 0; g < G.order(); ++g) {
        const int s = datum.quot.class_of[g];
        const int h = G.op(g, G.inverse(datum.lift[s]));
        if (!datum.sub.contains(h)) throw std::logic_error("coset decomposition failure");
        out.images.emplace(g, datum.rep.image(h) * datum.psi[s]);
    }
    if (!out.is_homomorphism())
        throw std::logic_error("reconstructed map is not a homomorphism");
    return out;
}

/// Tensor induction through the cocycle category: forms the tensor product
/// of the coset-conjugate representations with the rotation isomorphisms
/// Psi_sigma : (x)_tau m_tau -> (x)_tau rho(h_{tau,sigma})(m_{tau sigma}),
/// then reconstructs a representation of the whole group.
template <typename T>
MatrixRep<T> tensor_induction_via_cocycle(const Subgroup& H, const MatrixRep<T>& rho,
                                          std::optional<std::vector<int>> lift_opt = std::nullopt) {
    if (!H.normal()) throw std::invalid_argument("cocycle machinery requires a normal subgroup");
    const FiniteGroup& G = H.group();
    Quotient quot = make_quotient(H);
    const int d = quot.qgroup->order();
    const int dim = rho.dim;
    std::vector<int> lift = lift_opt ? *lift_opt : quot.canon_rep;
    if (static_cast<int>(lift.size()) != d) throw std::invalid_argument("wrong number of lifts");
    if (lift[0] != 0) throw std::invalid_argument("identity coset must lift to the identity");
    for (int s = 0; s < d; ++s)
        if (quot.class_of[lift[s]] != s) throw std::invalid_argument("lift lies in the wrong coset");

    long long total = 1;
    for (int i = 0; i < d; ++i) {
        total *= dim;
        if (total > matrix_budget()) throw BudgetExceeded("induced dimension exceeds matrix budget");
    }

    // big representation of H on the product of the conjugates
    MatrixRep<T> big;
    big.group = H.group_ptr();
    big.domain = H.members();
    big.dim = static_cast<int>(total);
    for (int h : H.members()) {
        std::vector<Matrix<T>> conj;
        conj.reserve(d);
        std::vector<const Matrix<T>*> ptrs;
        for (int t = 0; t < d; ++t)
            conj.push_back(rho.image(G.op(G.op(lift[t], h), G.inverse(lift[t]))));
        for (const auto& mres : conj) ptrs.push_back(&mres);
        big.images.emplace(h, kron_all(ptrs));
    }

    // Psi_sigma: slot tau of the output receives rho(h_{tau,sigma}) applied
    // to input slot (tau sigma)
    std::vector<Matrix<T>> psi;
    psi.reserve(d);
    std::vector<int> bt(d), pt(d);
    for (int s = 0; s < d; ++s) {
        std::vector<const Matrix<T>*> ptrs(d);
        std::vector<Matrix<T>> hold;
        hold.reserve(d);
        std::vector<int> shift(d);
        for (int t = 0; t < d; ++t) {
            const int ts = quot.qgroup->op(t, s);
            const int h = G.op(G.op(lift[t], lift[s]), G.inverse(lift[ts]));
            if (!H.contains(h)) throw std::logic_error("cocycle defect left the subgroup");
            hold.push_back(rho.image(h));
            shift[t] = ts;
        }
        for (int t = 0; t < d; ++t) ptrs[t] = &hold[t];
        Matrix<T> kron = kron_all(ptrs);
        Matrix<T> mat(static_cast<std::size_t>(total), static_cast<std::size_t>(total));
        for (long long b = 0; b < total; ++b) {
            detail::decode_tuple(b, d, dim, bt);
            for (int t = 0; t < d; ++t) pt[t] = bt[shift[t]];
            const long long src = detail::encode_tuple(pt, dim);
            for (long long a = 0; a < total; ++a)
                mat.at(static_cast<std::size_t>(a), static_cast<std::size_t>(b)) =
                    kron.at(static_cast<std::size_t>(a), static_cast<std::size_t>(src));
        }
        psi.push_back(std::move(mat));
    }

    CocycleDatum<T> datum{H, std::move(quot), std::move(big), std::move(lift), std::move(psi)};
    return reconstruct_from_cocycle(datum);
}

/// Both sides of the Frobenius trace identity for a cyclic tower: the trace
/// of the tensor induction at g against the trace of rho at g^r. The
/// identity is only asserted when the coset of g generates the quotient.
template <typename T>
struct TraceCheck {
    bool generator_coset = false;
    T induced_trace{};
    T power_trace{};
};

template <typename T>
TraceCheck<T> frobenius_trace_check(const Subgroup& H, const MatrixRep<T>& rho, int g) {
    const FiniteGroup& G = H.group();
    const int r = H.index();
    TraceCheck<T> out;
    // order of the coset gH in G/H
    int cur = g, ord = 1;
    while (!H.contains(cur)) {
        cur = G.op(cur, g);
        ++ord;
    }
    out.generator_coset = (ord == r);
    out.induced_trace = tensor_induction_image(H, rho, g).trace();
    out.power_trace = rho.image(G.power(g, r)).trace();
    return out;
}

}  // namespace frobsum
