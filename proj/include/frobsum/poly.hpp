#pragma once

#include "frobsum/field.hpp"

#include <algorithm>
#include <numeric>
#include <optional>
#include <set>
#include <utility>
#include <vector>

namespace frobsum {

/// Polynomial over a finite field, coefficients little-endian. The zero
/// polynomial has an empty coefficient vector and degree -1.
class Polynomial {
public:
    explicit Polynomial(const FiniteField& base) : base_(&base) {}

    Polynomial(const FiniteField& base, std::vector<FieldElement> coeffs)
        : base_(&base), c_(std::move(coeffs)) {
        for (const auto& c : c_)
            if (&c.field() != base_) throw std::invalid_argument("coefficient in wrong field");
        trim();
    }

    static Polynomial from_indices(const FiniteField& base, const std::vector<long long>& idx) {
        std::vector<FieldElement> c;
        c.reserve(idx.size());
        for (long long i : idx) c.push_back(base.from_index(i));
        return Polynomial(base, std::move(c));
    }

    static Polynomial x(const FiniteField& base) {
        return Polynomial(base, {base.zero(), base.one()});
    }

    const FiniteField& base() const { return *base_; }
    int degree() const { return static_cast<int>(c_.size()) - 1; }
    bool is_zero() const { return c_.empty(); }
    const std::vector<FieldElement>& coeffs() const { return c_; }

    FieldElement coeff(int i) const {
        if (i < 0 || i >= static_cast<int>(c_.size())) return base_->zero();
        return c_[i];
    }
    FieldElement leading() const {
        if (is_zero()) throw std::domain_error("leading coefficient of zero polynomial");
        return c_.back();
    }

    bool operator==(const Polynomial& o) const { return base_ == o.base_ && c_ == o.c_; }

    FieldElement eval(const FieldElement& x) const {
        if (&x.field() != base_) throw std::invalid_argument("evaluation point in wrong field");
        FieldElement acc = base_->zero();
        for (int i = degree(); i >= 0; --i) acc = acc * x + c_[i];
        return acc;
    }

    Polynomial derivative() const {
        std::vector<FieldElement> d;
        for (int i = 1; i <= degree(); ++i) d.push_back(c_[i].scaled(i));
        return Polynomial(*base_, std::move(d));
    }

    Polynomial monic() const {
        if (is_zero()) return *this;
        FieldElement inv = leading().inv();
        std::vector<FieldElement> c;
        c.reserve(c_.size());
        for (const auto& v : c_) c.push_back(v * inv);
        return Polynomial(*base_, std::move(c));
    }

    Polynomial operator+(const Polynomial& o) const {
        require_same(o);
        std::vector<FieldElement> r;
        const std::size_t m = std::max(c_.size(), o.c_.size());
        r.reserve(m);
        for (std::size_t i = 0; i < m; ++i) {
            FieldElement a = i < c_.size() ? c_[i] : base_->zero();
            FieldElement b = i < o.c_.size() ? o.c_[i] : base_->zero();
            r.push_back(a + b);
        }
        return Polynomial(*base_, std::move(r));
    }

    Polynomial operator-(const Polynomial& o) const {
        require_same(o);
        std::vector<FieldElement> r;
        const std::size_t m = std::max(c_.size(), o.c_.size());
        r.reserve(m);
        for (std::size_t i = 0; i < m; ++i) {
            FieldElement a = i < c_.size() ? c_[i] : base_->zero();
            FieldElement b = i < o.c_.size() ? o.c_[i] : base_->zero();
            r.push_back(a - b);
        }
        return Polynomial(*base_, std::move(r));
    }

    Polynomial operator*(const Polynomial& o) const {
        require_same(o);
        if (is_zero() || o.is_zero()) return Polynomial(*base_);
        std::vector<FieldElement> r(c_.size() + o.c_.size() - 1, base_->zero());
        for (std::size_t i = 0; i < c_.size(); ++i) {
            if (c_[i].is_zero()) continue;
            for (std::size_t j = 0; j < o.c_.size(); ++j) r[i + j] = r[i + j] + c_[i] * o.c_[j];
        }
        return Polynomial(*base_, std::move(r));
    }

    std::pair<Polynomial, Polynomial> divmod(const Polynomial& d) const {
        require_same(d);
        if (d.is_zero()) throw std::domain_error("division by zero polynomial");
        Polynomial rem = *this;
        std::vector<FieldElement> quot(
            std::max<int>(0, degree() - d.degree() + 1), base_->zero());
        const FieldElement lead_inv = d.leading().inv();
        while (!rem.is_zero() && rem.degree() >= d.degree()) {
            const int shift = rem.degree() - d.degree();
            FieldElement f = rem.leading() * lead_inv;
            quot[shift] = f;
            std::vector<FieldElement> sub(shift, base_->zero());
            for (const auto& c : d.c_) sub.push_back(c * f);
            rem = rem - Polynomial(*base_, std::move(sub));
        }
        return {Polynomial(*base_, std::move(quot)), rem};
    }

    Polynomial operator%(const Polynomial& d) const { return divmod(d).second; }
    Polynomial operator/(const Polynomial& d) const { return divmod(d).first; }

    /// gcd(f, f') is constant iff f is squarefree; f' = 0 means f is a p-th
    /// power, hence not squarefree (for nonconstant f).
    bool is_squarefree() const {
        if (degree() <= 0) return !is_zero();
        Polynomial d = derivative();
        if (d.is_zero()) return false;
        return gcd(*this, d).degree() == 0;
    }

    /// Coefficient-wise embedding into an extension of the base field.
    Polynomial embedded(const FiniteField& sup) const {
        if (&sup == base_) return *this;
        const Embedding& e = Embedding::get(*base_, sup);
        std::vector<FieldElement> c;
        c.reserve(c_.size());
        for (const auto& v : c_) c.push_back(e.apply(v));
        return Polynomial(sup, std::move(c));
    }

    static Polynomial gcd(Polynomial a, Polynomial b) {
        a.require_same(b);
        while (!b.is_zero()) {
            Polynomial r = a % b;
            a = std::move(b);
            b = std::move(r);
        }
        return a.monic();
    }

    /// this^e mod m, square-and-multiply.
    Polynomial powmod(long long e, const Polynomial& m) const {
        Polynomial base = *this % m;
        Polynomial acc(*base_, {base_->one()});
        while (e > 0) {
            if (e & 1) acc = (acc * base) % m;
            e >>= 1;
            if (e) base = (base * base) % m;
        }
        return acc;
    }

private:
    void require_same(const Polynomial& o) const {
        if (base_ != o.base_) throw std::invalid_argument("polynomials over different fields");
    }
    void trim() {
        while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
    }

    const FiniteField* base_;
    std::vector<FieldElement> c_;
};

/// Smallest m such that all roots of f lie in the degree-m extension of the
/// coefficient field: the lcm of the degrees of the irreducible factors,
/// found by stripping distinct-degree gcd layers in ascending order.
inline int splitting_degree(const Polynomial& f) {
    if (f.is_zero()) throw std::invalid_argument("splitting degree of zero polynomial");
    const FiniteField& B = f.base();
    Polynomial work = f.monic();
    long long result = 1;
    Polynomial x = Polynomial::x(B);
    Polynomial frob = x;  // x^(Q^i) mod work, maintained incrementally
    int i = 0;
    while (work.degree() > 0) {
        ++i;
        frob = frob.powmod(B.q(), work);
        Polynomial h = Polynomial::gcd(work, frob - x);
        if (h.degree() > 0) {
            result = std::lcm(result, static_cast<long long>(i));
            // strip all copies; repeated factors of the same degree divide out here
            while (true) {
                auto [q, r] = work.divmod(h);
                if (!r.is_zero()) break;
                work = q;
            }
            frob = frob % work;
            x = Polynomial::x(B) % work;  // degree of work may have dropped below 2
        }
        if (i > f.degree()) throw std::logic_error("splitting degree scan overran the degree");
    }
    return static_cast<int>(result);
}

/// All roots of f in K (which must contain f's coefficient field), with
/// multiplicities. Roots are scanned exhaustively, multiplicities obtained by
/// repeated division.
inline std::vector<std::pair<FieldElement, int>> poly_roots(const Polynomial& f,
                                                            const FiniteField& K) {
    if (f.is_zero()) throw std::invalid_argument("roots of zero polynomial");
    Polynomial g = f.embedded(K);
    std::vector<std::pair<FieldElement, int>> out;
    if (g.degree() <= 0) return out;
    for (long long i = 0; i < K.q(); ++i) {
        FieldElement cand = K.from_index(i);
        if (!g.eval(cand).is_zero()) continue;
        Polynomial lin(K, {-cand, K.one()});
        int mult = 0;
        Polynomial h = g;
        while (true) {
            auto [q, r] = h.divmod(lin);
            if (!r.is_zero()) break;
            ++mult;
            h = q;
        }
        out.emplace_back(cand, mult);
    }
    return out;
}

struct CriticalValues {
    const FiniteField* splitting;       // splitting field of f' as extension of f's base
    std::vector<FieldElement> values;   // S = f(critical points), deduplicated, index order
};

/// Critical values of f: the images under f of the roots of f', computed in
/// a splitting field of f'. Requires deg f coprime to the characteristic.
inline CriticalValues critical_values(const Polynomial& f) {
    const FiniteField& Kr = f.base();
    const int d = f.degree();
    if (d < 1) throw HypothesisViolation("polynomial must be nonconstant");
    if (d % Kr.p() == 0)
        throw HypothesisViolation("degree divisible by the characteristic");
    Polynomial fp = f.derivative();
    // d coprime to p forces a nonzero derivative of degree d-1
    CriticalValues out;
    if (fp.degree() <= 0) {
        out.splitting = &Kr;
        return out;
    }
    const int m = splitting_degree(fp);
    const FiniteField& L = make_field(Kr.p(), Kr.n() * m);
    Polynomial fL = f.embedded(L);
    std::set<long long> seen;
    for (const auto& [root, mult] : poly_roots(fp, L)) {
        FieldElement v = fL.eval(root);
        if (seen.insert(v.index()).second) out.values.push_back(v);
    }
    out.splitting = &L;
    std::sort(out.values.begin(), out.values.end(),
              [](const FieldElement& a, const FieldElement& b) { return a.index() < b.index(); });
    return out;
}

enum class SumMode { trace, norm };

/// Genericity of a target a in k relative to f over k_r: a must avoid the
/// r-fold Frobenius-twisted sum set (trace mode) or product set (norm mode)
/// of the critical values of f. The verdict is independent of the splitting
/// model; `model` forces a specific one (it must contain the canonical
/// splitting field).
inline bool genericity_check_in(const FieldElement& a, const Polynomial& f, const FiniteField& k,
                                SumMode mode, const FiniteField& model) {
    const FiniteField& Kr = f.base();
    if (Kr.p() != k.p() || Kr.n() % k.n() != 0)
        throw std::invalid_argument("genericity: tower mismatch");
    if (&a.field() != &k) throw std::invalid_argument("genericity: a must lie in the base field");
    const int r = Kr.n() / k.n();
    CriticalValues cv = critical_values(f);
    if (cv.values.empty()) return true;
    if (model.n() % cv.splitting->n() != 0 || model.p() != k.p())
        throw std::invalid_argument("genericity: model does not contain the splitting field");
    const Embedding& lift = Embedding::get(*cv.splitting, model);
    // twisted[i] = S^(q^i), computed by iterated q-th powering
    std::vector<std::vector<FieldElement>> twisted(r);
    for (const auto& s : cv.values) twisted[0].push_back(lift.apply(s));
    for (int i = 1; i < r; ++i)
        for (const auto& s : twisted[i - 1]) twisted[i].push_back(s.pow(k.q()));

    const FieldElement aM = Embedding::get(k, model).apply(a);
    const std::size_t m = cv.values.size();
    std::vector<std::size_t> pick(r, 0);
    while (true) {
        FieldElement acc = mode == SumMode::trace ? model.zero() : model.one();
        for (int i = 0; i < r; ++i)
            acc = mode == SumMode::trace ? acc + twisted[i][pick[i]] : acc * twisted[i][pick[i]];
        if (acc == aM) return false;
        int i = r - 1;
        while (i >= 0 && pick[i] == m - 1) pick[i--] = 0;
        if (i < 0) break;
        ++pick[i];
    }
    return true;
}

inline bool genericity_check(const FieldElement& a, const Polynomial& f, const FiniteField& k,
                             SumMode mode) {
    CriticalValues cv = critical_values(f);
    if (cv.values.empty()) return true;
    return genericity_check_in(a, f, k, mode, *cv.splitting);
}

}  // namespace frobsum
