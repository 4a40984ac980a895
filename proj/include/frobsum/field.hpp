#pragma once

#include "frobsum/common.hpp"

#include <algorithm>
#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace frobsum {

class FiniteField;
class FieldElement;

namespace detail {

// Polynomial helpers over GF(p) used before any FiniteField exists
// (canonical modulus search). Coefficient vectors are little-endian.
using PVec = std::vector<int32_t>;

inline void pm_trim(PVec& a) {
    while (!a.empty() && a.back() == 0) a.pop_back();
}

inline long long mod_inverse(long long a, long long p) {
    long long t = 0, new_t = 1, r = p, new_r = ((a % p) + p) % p;
    while (new_r != 0) {
        long long quot = r / new_r;
        t -= quot * new_t;
        std::swap(t, new_t);
        r -= quot * new_r;
        std::swap(r, new_r);
    }
    if (r != 1) throw std::invalid_argument("element not invertible mod p");
    return ((t % p) + p) % p;
}

inline PVec pm_mul(const PVec& a, const PVec& b, long long p) {
    if (a.empty() || b.empty()) return {};
    PVec r(a.size() + b.size() - 1, 0);
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i] == 0) continue;
        for (std::size_t j = 0; j < b.size(); ++j)
            r[i + j] = static_cast<int32_t>((r[i + j] + 1LL * a[i] * b[j]) % p);
    }
    pm_trim(r);
    return r;
}

inline PVec pm_mod(PVec a, const PVec& m, long long p) {
    pm_trim(a);
    const long long lead_inv = mod_inverse(m.back(), p);
    while (a.size() >= m.size()) {
        long long c = (1LL * a.back() * lead_inv) % p;
        std::size_t shift = a.size() - m.size();
        for (std::size_t i = 0; i < m.size(); ++i) {
            long long v = a[shift + i] - c * m[i] % p;
            a[shift + i] = static_cast<int32_t>(((v % p) + p) % p);
        }
        pm_trim(a);
        if (a.empty()) break;
    }
    return a;
}

inline PVec pm_powmod(PVec base, long long e, const PVec& m, long long p) {
    base = pm_mod(std::move(base), m, p);
    PVec acc{1};
    while (e > 0) {
        if (e & 1) acc = pm_mod(pm_mul(acc, base, p), m, p);
        e >>= 1;
        if (e) base = pm_mod(pm_mul(base, base, p), m, p);
    }
    return acc;
}

inline PVec pm_gcd(PVec a, PVec b, long long p) {
    pm_trim(a);
    pm_trim(b);
    while (!b.empty()) {
        PVec r = pm_mod(a, b, p);
        a = std::move(b);
        b = std::move(r);
    }
    if (!a.empty() && a.back() != 1) {
        long long inv = mod_inverse(a.back(), p);
        for (auto& c : a) c = static_cast<int32_t>((1LL * c * inv) % p);
    }
    return a;
}

inline bool is_prime_ll(long long v) {
    if (v < 2) return false;
    for (long long d = 2; d * d <= v; ++d)
        if (v % d == 0) return false;
    return true;
}

// x^(p^k) mod f, computed by iterating the p-th power map.
inline PVec pm_frob_power(const PVec& f, long long p, int k) {
    PVec t{0, 1};
    for (int i = 0; i < k; ++i) t = pm_powmod(std::move(t), p, f, p);
    return t;
}

inline bool pm_is_irreducible(const PVec& f, long long p) {
    const int n = static_cast<int>(f.size()) - 1;
    if (n <= 0) return false;
    if (n == 1) return true;
    // x^(p^n) must reduce to x, and for every prime divisor l of n the
    // polynomial x^(p^(n/l)) - x must be coprime to f.
    PVec x{0, 1};
    if (pm_frob_power(f, p, n) != x) return false;
    int m = n;
    for (int l = 2; l * l <= m; ++l) {
        if (m % l != 0) continue;
        while (m % l == 0) m /= l;
        PVec t = pm_frob_power(f, p, n / l);
        // t - x
        if (t.size() < 2) t.resize(2, 0);
        t[1] = static_cast<int32_t>(((t[1] - 1) % p + p) % p);
        pm_trim(t);
        PVec g = pm_gcd(f, t, p);
        if (g.size() != 1) return false;
    }
    if (m > 1) {
        PVec t = pm_frob_power(f, p, n / m);
        if (t.size() < 2) t.resize(2, 0);
        t[1] = static_cast<int32_t>(((t[1] - 1) % p + p) % p);
        pm_trim(t);
        PVec g = pm_gcd(f, t, p);
        if (g.size() != 1) return false;
    }
    return true;
}

// Lexicographically smallest monic irreducible of degree n over GF(p).
// Lower coefficients (c_0, ..., c_{n-1}) are compared left to right, so the
// enumeration counts with c_{n-1} as the fastest digit.
inline PVec canonical_modulus(long long p, int n) {
    if (n == 1) return PVec{0, 1};  // the polynomial x
    std::vector<int32_t> low(n, 0);
    while (true) {
        PVec f(low.begin(), low.end());
        f.push_back(1);
        if (pm_is_irreducible(f, p)) return f;
        int i = n - 1;
        while (i >= 0 && low[i] == p - 1) low[i--] = 0;
        if (i < 0) throw std::logic_error("no irreducible polynomial found");
        ++low[i];
    }
}

}  // namespace detail

/// An element of a finite field, stored as its coefficient vector over the
/// prime field in the modulus basis (little-endian).
class FieldElement {
public:
    FieldElement() : f_(nullptr) {}

    const FiniteField& field() const {
        if (!f_) throw std::logic_error("use of default-constructed FieldElement");
        return *f_;
    }
    const std::vector<int32_t>& coeffs() const { return c_; }

    bool is_zero() const {
        for (int32_t c : c_)
            if (c != 0) return false;
        return true;
    }

    long long index() const;
    std::string digits() const;

    bool operator==(const FieldElement& o) const { return f_ == o.f_ && c_ == o.c_; }
    bool operator!=(const FieldElement& o) const { return !(*this == o); }

    FieldElement operator+(const FieldElement& o) const;
    FieldElement operator-(const FieldElement& o) const;
    FieldElement operator*(const FieldElement& o) const;
    FieldElement operator/(const FieldElement& o) const;
    FieldElement operator-() const;
    FieldElement pow(long long e) const;  // e >= 0
    FieldElement inv() const;
    FieldElement scaled(long long s) const;  // multiplication by a prime-field scalar

private:
    friend class FiniteField;
    FieldElement(const FiniteField* f, std::vector<int32_t> c) : f_(f), c_(std::move(c)) {}

    const FiniteField* f_;
    std::vector<int32_t> c_;
};

/// GF(p^n) with the canonical (lexicographically smallest) monic irreducible
/// modulus, so that serialized elements are reproducible across runs.
/// Instances are interned: use make_field and compare by address.
class FiniteField {
public:
    long long p() const { return p_; }
    int n() const { return n_; }
    long long q() const { return q_; }
    const std::vector<int32_t>& modulus() const { return mod_; }

    FieldElement zero() const { return FieldElement(this, std::vector<int32_t>(n_, 0)); }
    FieldElement one() const { return from_residue(1); }

    /// Embeds an integer residue via the prime subfield.
    FieldElement from_residue(long long r) const {
        std::vector<int32_t> c(n_, 0);
        c[0] = static_cast<int32_t>(((r % p_) + p_) % p_);
        return FieldElement(this, std::move(c));
    }

    FieldElement from_coeffs(std::vector<int32_t> c) const {
        if (static_cast<int>(c.size()) > n_) throw std::invalid_argument("coefficient vector too long");
        c.resize(n_, 0);
        for (auto& v : c) v = static_cast<int32_t>(((v % p_) + p_) % p_);
        return FieldElement(this, std::move(c));
    }

    /// idx = sum c_i p^i identifies the element; this is the canonical
    /// enumeration order used for all deterministic choices.
    FieldElement from_index(long long idx) const {
        if (idx < 0 || idx >= q_) throw std::invalid_argument("element index out of range");
        std::vector<int32_t> c(n_, 0);
        for (int i = 0; i < n_ && idx > 0; ++i) {
            c[i] = static_cast<int32_t>(idx % p_);
            idx /= p_;
        }
        return FieldElement(this, std::move(c));
    }

    long long index_of(const FieldElement& x) const {
        require_own(x);
        long long idx = 0;
        for (int i = n_ - 1; i >= 0; --i) idx = idx * p_ + x.c_[i];
        return idx;
    }

    /// First element in canonical enumeration order with multiplicative
    /// order q-1.
    long long generator_index() const {
        std::lock_guard<std::mutex> lk(cache_mu_);
        if (gen_idx_ < 0) {
            std::vector<long long> prime_divs;
            long long m = q_ - 1;
            for (long long d = 2; d * d <= m; ++d) {
                if (m % d == 0) {
                    prime_divs.push_back(d);
                    while (m % d == 0) m /= d;
                }
            }
            if (m > 1) prime_divs.push_back(m);
            for (long long i = 1; i < q_; ++i) {
                FieldElement x = from_index(i);
                bool full = true;
                for (long long d : prime_divs) {
                    if (x.pow((q_ - 1) / d) == one()) {
                        full = false;
                        break;
                    }
                }
                if (full) {
                    gen_idx_ = i;
                    break;
                }
            }
            if (gen_idx_ < 0) throw std::logic_error("no multiplicative generator found");
        }
        return gen_idx_;
    }

    FieldElement generator() const { return from_index(generator_index()); }

    /// Discrete log of x with respect to the canonical generator.
    long long dlog(const FieldElement& x) const {
        require_own(x);
        if (x.is_zero()) throw std::domain_error("discrete log of zero");
        const long long g = generator_index();
        std::lock_guard<std::mutex> lk(cache_mu_);
        if (dlog_.empty()) {
            dlog_.assign(static_cast<std::size_t>(q_), -1);
            FieldElement cur = one();
            FieldElement gen = from_index(g);
            for (long long j = 0; j < q_ - 1; ++j) {
                dlog_[static_cast<std::size_t>(index_of(cur))] = j;
                cur = cur * gen;
            }
        }
        return dlog_[static_cast<std::size_t>(index_of(x))];
    }

private:
    friend const FiniteField& make_field(long long, int);
    friend class FieldElement;

    FiniteField(long long p, int n, std::vector<int32_t> mod)
        : p_(p), n_(n), mod_(std::move(mod)) {
        q_ = 1;
        for (int i = 0; i < n_; ++i) q_ *= p_;
    }

    FiniteField(const FiniteField&) = delete;
    FiniteField& operator=(const FiniteField&) = delete;

    void require_own(const FieldElement& x) const {
        if (x.f_ != this) throw std::invalid_argument("element belongs to a different field");
    }

    std::vector<int32_t> add_(const std::vector<int32_t>& a, const std::vector<int32_t>& b) const {
        std::vector<int32_t> r(n_);
        for (int i = 0; i < n_; ++i) r[i] = static_cast<int32_t>((a[i] + b[i]) % p_);
        return r;
    }
    std::vector<int32_t> sub_(const std::vector<int32_t>& a, const std::vector<int32_t>& b) const {
        std::vector<int32_t> r(n_);
        for (int i = 0; i < n_; ++i) r[i] = static_cast<int32_t>(((a[i] - b[i]) % p_ + p_) % p_);
        return r;
    }
    std::vector<int32_t> mul_(const std::vector<int32_t>& a, const std::vector<int32_t>& b) const {
        std::vector<long long> conv(2 * n_ - 1, 0);
        for (int i = 0; i < n_; ++i) {
            if (a[i] == 0) continue;
            for (int j = 0; j < n_; ++j) conv[i + j] = (conv[i + j] + 1LL * a[i] * b[j]) % p_;
        }
        // reduce by the monic modulus
        for (int i = 2 * n_ - 2; i >= n_; --i) {
            long long c = conv[i] % p_;
            if (c == 0) continue;
            conv[i] = 0;
            for (int j = 0; j < n_; ++j)
                conv[i - n_ + j] = ((conv[i - n_ + j] - c * mod_[j]) % p_ + p_) % p_;
        }
        std::vector<int32_t> r(n_);
        for (int i = 0; i < n_; ++i) r[i] = static_cast<int32_t>(((conv[i] % p_) + p_) % p_);
        return r;
    }

    long long p_;
    int n_;
    long long q_;
    std::vector<int32_t> mod_;

    mutable std::mutex cache_mu_;
    mutable long long gen_idx_ = -1;
    mutable std::vector<long long> dlog_;
};

/// Interned field factory. The same (p, n) always yields the same object,
/// hence the same modulus and the same serialized elements.
inline const FiniteField& make_field(long long p, int n) {
    if (!detail::is_prime_ll(p)) throw std::invalid_argument("p must be prime");
    if (n < 1) throw std::invalid_argument("extension degree must be positive");
    long long q = 1;
    for (int i = 0; i < n; ++i) {
        if (q > scan_budget() / p) throw BudgetExceeded("field cardinality exceeds scan budget");
        q *= p;
    }
    static std::mutex mu;
    static std::map<std::pair<long long, int>, std::unique_ptr<FiniteField>> registry;
    std::lock_guard<std::mutex> lk(mu);
    auto key = std::make_pair(p, n);
    auto it = registry.find(key);
    if (it == registry.end()) {
        auto mod = detail::canonical_modulus(p, n);
        it = registry.emplace(key, std::unique_ptr<FiniteField>(new FiniteField(p, n, std::move(mod)))).first;
    }
    return *it->second;
}

inline long long FieldElement::index() const { return field().index_of(*this); }

inline std::string FieldElement::digits() const {
    const FiniteField& F = field();
    std::string s;
    if (F.p() <= 10) {
        for (int i = F.n() - 1; i >= 0; --i) s += static_cast<char>('0' + c_[i]);
    } else {
        for (int i = F.n() - 1; i >= 0; --i) {
            s += std::to_string(c_[i]);
            if (i > 0) s += '.';
        }
    }
    return s;
}

inline FieldElement FieldElement::operator+(const FieldElement& o) const {
    field().require_own(o);
    return FieldElement(f_, f_->add_(c_, o.c_));
}
inline FieldElement FieldElement::operator-(const FieldElement& o) const {
    field().require_own(o);
    return FieldElement(f_, f_->sub_(c_, o.c_));
}
inline FieldElement FieldElement::operator*(const FieldElement& o) const {
    field().require_own(o);
    return FieldElement(f_, f_->mul_(c_, o.c_));
}
inline FieldElement FieldElement::operator-() const {
    return FieldElement(f_, f_->sub_(std::vector<int32_t>(f_->n(), 0), c_));
}
inline FieldElement FieldElement::scaled(long long s) const {
    const long long p = field().p();
    s = ((s % p) + p) % p;
    std::vector<int32_t> r(c_.size());
    for (std::size_t i = 0; i < c_.size(); ++i) r[i] = static_cast<int32_t>((c_[i] * s) % p);
    return FieldElement(f_, std::move(r));
}
inline FieldElement FieldElement::pow(long long e) const {
    if (e < 0) throw std::invalid_argument("negative exponent; use inv()");
    FieldElement base = *this;
    FieldElement acc = field().one();
    while (e > 0) {
        if (e & 1) acc = acc * base;
        e >>= 1;
        if (e) base = base * base;
    }
    return acc;
}
inline FieldElement FieldElement::inv() const {
    if (is_zero()) throw std::domain_error("inverse of zero");
    return pow(field().q() - 2);
}
inline FieldElement FieldElement::operator/(const FieldElement& o) const { return *this * o.inv(); }

/// The canonical embedding GF(p^m) -> GF(p^n) for m | n: the generator of the
/// subfield is sent to the smallest (in canonical enumeration order) root of
/// the subfield modulus in the superfield. Instances are interned.
class Embedding {
public:
    static const Embedding& get(const FiniteField& sub, const FiniteField& sup);

    const FiniteField& sub() const { return *sub_; }
    const FiniteField& sup() const { return *sup_; }
    const FieldElement& generator_image() const { return powers_[sub_->n() > 1 ? 1 : 0]; }

    FieldElement apply(const FieldElement& x) const {
        if (&x.field() != sub_) throw std::invalid_argument("element not in the source field");
        FieldElement acc = sup_->zero();
        for (int i = 0; i < sub_->n(); ++i) acc = acc + powers_[i].scaled(x.coeffs()[i]);
        return acc;
    }

    bool in_image(const FieldElement& y) const { return static_cast<bool>(preimage(y)); }

    std::optional<FieldElement> preimage(const FieldElement& y) const {
        if (&y.field() != sup_) throw std::invalid_argument("element not in the target field");
        // solve M x = y over GF(p) using the precomputed row reduction
        const long long p = sub_->p();
        std::vector<long long> w(sup_->n(), 0);
        for (int i = 0; i < sup_->n(); ++i) {
            long long acc = 0;
            for (int j = 0; j < sup_->n(); ++j) acc = (acc + rowop_[i][j] * y.coeffs()[j]) % p;
            w[i] = acc;
        }
        std::vector<int32_t> x(sub_->n(), 0);
        for (int r = 0; r < static_cast<int>(pivots_.size()); ++r)
            x[pivots_[r]] = static_cast<int32_t>(w[r]);
        for (int i = static_cast<int>(pivots_.size()); i < sup_->n(); ++i)
            if (w[i] % p != 0) return std::nullopt;
        // verify (guards against a non-pivot inconsistency pattern)
        FieldElement cand = sub_->from_coeffs(x);
        if (apply(cand) != y) return std::nullopt;
        return cand;
    }

private:
    Embedding(const FiniteField& sub, const FiniteField& sup) : sub_(&sub), sup_(&sup) {
        if (sub.p() != sup.p() || sup.n() % sub.n() != 0)
            throw std::invalid_argument("not a subfield (degree must divide, same characteristic)");
        // find the smallest root of sub's modulus in sup
        std::optional<FieldElement> root;
        for (long long i = 0; i < sup.q(); ++i) {
            FieldElement cand = sup.from_index(i);
            FieldElement acc = sup.zero();
            FieldElement powv = sup.one();
            for (std::size_t j = 0; j < sub.modulus().size(); ++j) {
                acc = acc + powv.scaled(sub.modulus()[j]);
                powv = powv * cand;
            }
            if (acc.is_zero()) {
                root = cand;
                break;
            }
        }
        if (!root) throw std::logic_error("subfield modulus has no root in the superfield");
        powers_.reserve(sub.n());
        FieldElement cur = sup.one();
        for (int i = 0; i < sub.n(); ++i) {
            powers_.push_back(cur);
            cur = cur * *root;
        }
        build_solver();
    }

    void build_solver() {
        const long long p = sub_->p();
        const int rows = sup_->n(), cols = sub_->n();
        std::vector<std::vector<long long>> a(rows, std::vector<long long>(cols, 0));
        for (int j = 0; j < cols; ++j)
            for (int i = 0; i < rows; ++i) a[i][j] = powers_[j].coeffs()[i];
        rowop_.assign(rows, std::vector<long long>(rows, 0));
        for (int i = 0; i < rows; ++i) rowop_[i][i] = 1;
        int r = 0;
        for (int c = 0; c < cols && r < rows; ++c) {
            int piv = -1;
            for (int i = r; i < rows; ++i)
                if (a[i][c] % p != 0) {
                    piv = i;
                    break;
                }
            if (piv < 0) continue;
            std::swap(a[piv], a[r]);
            std::swap(rowop_[piv], rowop_[r]);
            long long inv = detail::mod_inverse(a[r][c], p);
            for (int j = 0; j < cols; ++j) a[r][j] = (a[r][j] * inv) % p;
            for (int j = 0; j < rows; ++j) rowop_[r][j] = (rowop_[r][j] * inv) % p;
            for (int i = 0; i < rows; ++i) {
                if (i == r || a[i][c] % p == 0) continue;
                long long f = a[i][c] % p;
                for (int j = 0; j < cols; ++j) a[i][j] = ((a[i][j] - f * a[r][j]) % p + p) % p;
                for (int j = 0; j < rows; ++j)
                    rowop_[i][j] = ((rowop_[i][j] - f * rowop_[r][j]) % p + p) % p;
            }
            pivots_.push_back(c);
            ++r;
        }
        if (static_cast<int>(pivots_.size()) != cols)
            throw std::logic_error("embedding matrix is not injective");
    }

    const FiniteField* sub_;
    const FiniteField* sup_;
    std::vector<FieldElement> powers_;
    std::vector<std::vector<long long>> rowop_;
    std::vector<int> pivots_;
};

inline const Embedding& Embedding::get(const FiniteField& sub, const FiniteField& sup) {
    static std::mutex mu;
    static std::map<std::pair<const FiniteField*, const FiniteField*>, std::unique_ptr<Embedding>> registry;
    std::lock_guard<std::mutex> lk(mu);
    auto key = std::make_pair(&sub, &sup);
    auto it = registry.find(key);
    if (it == registry.end())
        it = registry.emplace(key, std::unique_ptr<Embedding>(new Embedding(sub, sup))).first;
    return *it->second;
}

/// x -> x^Q with Q the cardinality of the base field; generates
/// Gal(parent/base) when base is a subfield.
inline FieldElement frobenius(const FieldElement& x, const FiniteField& base) {
    const FiniteField& top = x.field();
    if (top.p() != base.p() || top.n() % base.n() != 0)
        throw std::invalid_argument("frobenius: base is not a subfield");
    return x.pow(base.q());
}

/// Relative trace: sum of the Gal(top/bottom)-conjugates of y, returned as an
/// element of the bottom field.
inline FieldElement rel_trace(const FieldElement& y, const FiniteField& bottom) {
    const FiniteField& top = y.field();
    if (top.p() != bottom.p() || top.n() % bottom.n() != 0)
        throw std::invalid_argument("rel_trace: tower mismatch");
    const int r = top.n() / bottom.n();
    FieldElement acc = top.zero();
    FieldElement t = y;
    for (int i = 0; i < r; ++i) {
        acc = acc + t;
        if (i + 1 < r) t = t.pow(bottom.q());
    }
    auto pre = Embedding::get(bottom, top).preimage(acc);
    if (!pre) throw std::logic_error("trace landed outside the bottom field");
    return *pre;
}

/// Relative norm: product of the Gal(top/bottom)-conjugates of y, returned as
/// an element of the bottom field.
inline FieldElement rel_norm(const FieldElement& y, const FiniteField& bottom) {
    const FiniteField& top = y.field();
    if (top.p() != bottom.p() || top.n() % bottom.n() != 0)
        throw std::invalid_argument("rel_norm: tower mismatch");
    const int r = top.n() / bottom.n();
    if (y.is_zero()) return bottom.zero();
    FieldElement acc = top.one();
    FieldElement t = y;
    for (int i = 0; i < r; ++i) {
        acc = acc * t;
        if (i + 1 < r) t = t.pow(bottom.q());
    }
    auto pre = Embedding::get(bottom, top).preimage(acc);
    if (!pre) throw std::logic_error("norm landed outside the bottom field");
    return *pre;
}

}  // namespace frobsum
