#pragma once

#include "frobsum/field.hpp"

#include <cmath>
#include <complex>
#include <numeric>
#include <stdexcept>
#include <vector>

namespace frobsum {

/// Exact root of unity e^{2 pi i k / order}; the exponent is kept reduced.
struct RootOfUnity {
    long long order = 1;
    long long k = 0;

    static RootOfUnity one() { return {1, 0}; }

    RootOfUnity normalized() const {
        long long g = std::gcd(order, ((k % order) + order) % order);
        if (g == 0) g = order;  // k == 0
        return {order / g, (((k % order) + order) % order) / g};
    }

    bool is_one() const { return ((k % order) + order) % order == 0; }

    RootOfUnity operator*(const RootOfUnity& o) const {
        const long long l = std::lcm(order, o.order);
        long long e = (k % order) * (l / order) + (o.k % o.order) * (l / o.order);
        e = ((e % l) + l) % l;
        return {l, e};
    }

    RootOfUnity conj() const { return {order, ((order - k) % order + order) % order}; }

    bool operator==(const RootOfUnity& o) const {
        auto a = normalized(), b = o.normalized();
        return a.order == b.order && a.k == b.k;
    }

    std::complex<double> value() const {
        const double ang = 2.0 * 3.14159265358979323846 * static_cast<double>(((k % order) + order) % order) /
                           static_cast<double>(order);
        return {std::cos(ang), std::sin(ang)};
    }
};

/// Additive or multiplicative character of a finite field with exact
/// root-of-unity values. Additive: x -> zeta_p^{AbsTr(a x)}. Multiplicative:
/// g^j -> zeta_{q-1}^{c j} for the canonical generator g.
class Character {
public:
    enum class Kind { additive, multiplicative };

    static Character additive(const FiniteField& K, const FieldElement& a) {
        if (&a.field() != &K) throw std::invalid_argument("character parameter in wrong field");
        Character c;
        c.kind_ = Kind::additive;
        c.field_ = &K;
        c.add_param_ = a;
        return c;
    }

    static Character multiplicative(const FiniteField& K, long long c) {
        Character ch;
        ch.kind_ = Kind::multiplicative;
        ch.field_ = &K;
        const long long m = K.q() - 1;
        ch.mult_exp_ = m == 0 ? 0 : ((c % m) + m) % m;
        return ch;
    }

    Kind kind() const { return kind_; }
    const FiniteField& field() const { return *field_; }
    const FieldElement& additive_param() const { return add_param_; }
    long long multiplicative_exp() const { return mult_exp_; }

    bool is_trivial() const {
        return kind_ == Kind::additive ? add_param_.is_zero() : mult_exp_ == 0;
    }

    /// Order as an element of the character group.
    long long order() const {
        if (kind_ == Kind::additive) return add_param_.is_zero() ? 1 : field_->p();
        const long long m = field_->q() - 1;
        if (m == 0 || mult_exp_ == 0) return 1;
        return m / std::gcd(m, mult_exp_);
    }

    RootOfUnity value(const FieldElement& x) const {
        if (&x.field() != field_) throw std::invalid_argument("argument in wrong field");
        if (kind_ == Kind::additive) {
            const FiniteField& P = make_field(field_->p(), 1);
            FieldElement t = rel_trace(add_param_ * x, P);
            return RootOfUnity{field_->p(), t.index()};
        }
        if (x.is_zero()) throw std::domain_error("multiplicative character at zero");
        const long long m = field_->q() - 1;
        if (m == 0) return RootOfUnity::one();
        return RootOfUnity{m, (mult_exp_ * (field_->dlog(x) % m)) % m};
    }

    std::complex<double> eval(const FieldElement& x) const { return value(x).value(); }

private:
    Character() : kind_(Kind::additive), field_(nullptr), mult_exp_(0) {}

    Kind kind_;
    const FiniteField* field_;
    FieldElement add_param_;
    long long mult_exp_ = 0;
};

/// Pullback of a character of k along the relative norm (multiplicative) or
/// relative trace (additive) from the degree-r extension. Both pullbacks are
/// again characters of the extension:
///   additive:        psi_a . Tr  =  psi_{embed(a)},
///   multiplicative:  chi_c . N has exponent c . dlog(N(g_r)) . (q^r-1)/(q-1).
inline Character pullback_by_norm(const Character& chi, const FiniteField& ext) {
    const FiniteField& k = chi.field();
    if (ext.p() != k.p() || ext.n() % k.n() != 0)
        throw std::invalid_argument("pullback: tower mismatch");
    if (chi.kind() == Character::Kind::additive) {
        const FieldElement lifted = Embedding::get(k, ext).apply(chi.additive_param());
        return Character::additive(ext, lifted);
    }
    const long long m = ext.q() - 1;
    if (m == 0) return Character::multiplicative(ext, 0);
    const long long mk = k.q() - 1;
    if (mk == 0) return Character::multiplicative(ext, 0);
    const FieldElement norm_gen = rel_norm(ext.generator(), k);
    const long long e = k.dlog(norm_gen);
    // chi(N(g_r^j)) = zeta_{q-1}^{c e j}; as a character of ext this is the
    // exponent c e (q^r-1)/(q-1) on zeta_{q^r-1}
    const long long lifted_exp = ((chi.multiplicative_exp() * e) % mk) * (m / mk);
    return Character::multiplicative(ext, lifted_exp % m);
}

/// Compensated (Kahan) accumulator for complex sums.
struct KahanComplex {
    std::complex<double> sum{0.0, 0.0};
    std::complex<double> carry{0.0, 0.0};

    void add(std::complex<double> v) {
        const std::complex<double> y = v - carry;
        const std::complex<double> t = sum + y;
        carry = (t - sum) - y;
        sum = t;
    }
};

/// DFT on the additive group of K: out[b] = sum_x psi_b(x) beta(x), with
/// beta indexed by element index.
inline std::vector<std::complex<double>> dft_additive(const FiniteField& K,
                                                      const std::vector<std::complex<double>>& beta) {
    if (static_cast<long long>(beta.size()) != K.q())
        throw std::invalid_argument("dft_additive: wrong input size");
    std::vector<std::complex<double>> out(beta.size());
    for (long long b = 0; b < K.q(); ++b) {
        Character psi = Character::additive(K, K.from_index(b));
        KahanComplex acc;
        for (long long x = 0; x < K.q(); ++x) acc.add(psi.eval(K.from_index(x)) * beta[x]);
        out[static_cast<std::size_t>(b)] = acc.sum;
    }
    return out;
}

inline std::vector<std::complex<double>> idft_additive(const FiniteField& K,
                                                       const std::vector<std::complex<double>>& hat) {
    if (static_cast<long long>(hat.size()) != K.q())
        throw std::invalid_argument("idft_additive: wrong input size");
    std::vector<std::complex<double>> out(hat.size());
    for (long long x = 0; x < K.q(); ++x) {
        KahanComplex acc;
        FieldElement xe = K.from_index(x);
        for (long long b = 0; b < K.q(); ++b) {
            Character psi = Character::additive(K, K.from_index(b));
            acc.add(std::conj(psi.eval(xe)) * hat[static_cast<std::size_t>(b)]);
        }
        out[static_cast<std::size_t>(x)] = acc.sum / static_cast<double>(K.q());
    }
    return out;
}

/// DFT on the multiplicative group: out[c] = sum_{x != 0} chi_c(x) beta(x).
/// beta is indexed by element index (entry 0 is ignored); out by character
/// exponent 0 <= c < q-1.
inline std::vector<std::complex<double>> dft_multiplicative(
    const FiniteField& K, const std::vector<std::complex<double>>& beta) {
    if (static_cast<long long>(beta.size()) != K.q())
        throw std::invalid_argument("dft_multiplicative: wrong input size");
    const long long m = K.q() - 1;
    std::vector<std::complex<double>> out(static_cast<std::size_t>(m));
    for (long long c = 0; c < m; ++c) {
        Character chi = Character::multiplicative(K, c);
        KahanComplex acc;
        for (long long x = 1; x < K.q(); ++x) acc.add(chi.eval(K.from_index(x)) * beta[x]);
        out[static_cast<std::size_t>(c)] = acc.sum;
    }
    return out;
}

inline std::vector<std::complex<double>> idft_multiplicative(
    const FiniteField& K, const std::vector<std::complex<double>>& hat) {
    const long long m = K.q() - 1;
    if (static_cast<long long>(hat.size()) != m)
        throw std::invalid_argument("idft_multiplicative: wrong input size");
    std::vector<std::complex<double>> out(static_cast<std::size_t>(K.q()));
    for (long long x = 1; x < K.q(); ++x) {
        KahanComplex acc;
        FieldElement xe = K.from_index(x);
        for (long long c = 0; c < m; ++c) {
            Character chi = Character::multiplicative(K, c);
            acc.add(std::conj(chi.eval(xe)) * hat[static_cast<std::size_t>(c)]);
        }
        out[static_cast<std::size_t>(x)] = acc.sum / static_cast<double>(m);
    }
    return out;
}

}  // namespace frobsum
