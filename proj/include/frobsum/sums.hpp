#pragma once

#include "frobsum/characters.hpp"
#include "frobsum/poly.hpp"

#include <cmath>
#include <complex>
#include <limits>
#include <optional>
#include <vector>

namespace frobsum {

/// An integer-valued function on k_r (affine domain) or on k_r^x
/// (multiplicative domain, the value at 0 is unused).
struct TraceFunction {
    enum class Domain { affine, multiplicative };
    enum class Provenance { kernel_sheaf, character, pullback, custom };

    const FiniteField* field = nullptr;  // k_r
    Domain domain = Domain::affine;
    Provenance provenance = Provenance::custom;
    std::vector<long long> values;       // indexed by element index
    std::optional<Polynomial> source;    // defining polynomial for kernel_sheaf

    long long at(const FieldElement& y) const {
        if (&y.field() != field) throw std::invalid_argument("argument in wrong field");
        if (domain == Domain::multiplicative && y.is_zero())
            throw std::domain_error("multiplicative trace function at zero");
        return values[static_cast<std::size_t>(y.index())];
    }
};

/// Trace function of the kernel of the direct-image trace map of f:
/// t(y) = #{x in k_r : f(x) = y} - 1, by exhaustive scan of x. The domain
/// restricts where y ranges, never where x does.
inline TraceFunction kernel_trace_function(const Polynomial& f, TraceFunction::Domain domain) {
    if (f.degree() < 1) throw HypothesisViolation("kernel trace function needs a nonconstant polynomial");
    const FiniteField& Kr = f.base();
    TraceFunction t;
    t.field = &Kr;
    t.domain = domain;
    t.provenance = TraceFunction::Provenance::kernel_sheaf;
    t.source = f;
    t.values.assign(static_cast<std::size_t>(Kr.q()), -1);
    for (long long x = 0; x < Kr.q(); ++x) {
        const long long y = f.eval(Kr.from_index(x)).index();
        ++t.values[static_cast<std::size_t>(y)];
    }
    if (domain == TraceFunction::Domain::multiplicative) t.values[0] = 0;
    return t;
}

inline TraceFunction constant_trace_function(const FiniteField& Kr, TraceFunction::Domain domain,
                                             long long v) {
    TraceFunction t;
    t.field = &Kr;
    t.domain = domain;
    t.provenance = TraceFunction::Provenance::custom;
    t.values.assign(static_cast<std::size_t>(Kr.q()), v);
    if (domain == TraceFunction::Domain::multiplicative) t.values[0] = 0;
    return t;
}

enum class BoundStatus { holds, violated, not_asserted };

inline const char* to_string(BoundStatus s) {
    switch (s) {
        case BoundStatus::holds: return "holds";
        case BoundStatus::violated: return "violated";
        default: return "not-asserted";
    }
}

/// A restricted sum over a trace fiber (mode trace) or norm fiber (mode
/// norm), with the hypotheses, genericity and bound bookkeeping. The bound
/// is only asserted (holds/violated) when the hypotheses hold and the target
/// is generic; otherwise the report is marked not-asserted.
struct SumReport {
    long long q = 0;
    int r = 0;
    int d = 0;           // degree of the defining polynomial; 0 when unknown
    SumMode mode = SumMode::trace;
    FieldElement a;      // target in the base field
    long long sum = 0;   // exact
    bool generic = false;
    bool hypotheses_ok = false;
    double bound = std::numeric_limits<double>::quiet_NaN();
    bool satisfied = false;
    BoundStatus status = BoundStatus::not_asserted;
};

namespace detail {

inline bool derivative_multiplicities_small(const Polynomial& f) {
    Polynomial fp = f.derivative();
    if (fp.is_zero()) return false;
    if (fp.degree() == 0) return true;
    const int m = splitting_degree(fp);
    const FiniteField& L = make_field(f.base().p(), f.base().n() * m);
    for (const auto& [root, mult] : poly_roots(fp, L))
        if (mult >= f.base().p()) return false;
    return true;
}

}  // namespace detail

inline SumReport restricted_sum(const TraceFunction& t, const FiniteField& k, SumMode mode,
                                const FieldElement& a) {
    const FiniteField& Kr = *t.field;
    if (Kr.p() != k.p() || Kr.n() % k.n() != 0)
        throw std::invalid_argument("restricted_sum: tower mismatch");
    if (&a.field() != &k) throw std::invalid_argument("restricted_sum: target must lie in the base field");
    if (mode == SumMode::norm && a.is_zero())
        throw std::invalid_argument("restricted_sum: norm target must be nonzero");
    if (mode == SumMode::norm && t.domain != TraceFunction::Domain::multiplicative)
        throw std::invalid_argument("restricted_sum: norm constraint needs a multiplicative domain");
    if (mode == SumMode::trace && t.domain != TraceFunction::Domain::affine)
        throw std::invalid_argument("restricted_sum: trace constraint needs an affine domain");

    SumReport rep;
    rep.q = k.q();
    rep.r = Kr.n() / k.n();
    rep.mode = mode;
    rep.a = a;

    long long sum = 0;
    const long long start = mode == SumMode::norm ? 1 : 0;
    for (long long yi = start; yi < Kr.q(); ++yi) {
        FieldElement y = Kr.from_index(yi);
        FieldElement v = mode == SumMode::trace ? rel_trace(y, k) : rel_norm(y, k);
        if (v == a) sum += t.values[static_cast<std::size_t>(yi)];
    }
    rep.sum = sum;

    if (t.source) {
        const Polynomial& f = *t.source;
        rep.d = f.degree();
        const long long p = k.p();
        bool hyp = rep.d >= 1 && rep.d % p != 0;
        if (mode == SumMode::norm && hyp)
            hyp = f.is_squarefree() && detail::derivative_multiplicities_small(f);
        rep.hypotheses_ok = hyp;
        if (hyp) {
            rep.generic = genericity_check(a, f, k, mode);
            double b = std::pow(static_cast<double>(rep.d - 1), rep.r) *
                       std::pow(static_cast<double>(rep.q), (rep.r - 1) / 2.0);
            if (mode == SumMode::norm) b *= rep.r;
            rep.bound = b;
            rep.satisfied = std::llabs(rep.sum) <= rep.bound + 1e-9;
            rep.status = rep.generic
                             ? (rep.satisfied ? BoundStatus::holds : BoundStatus::violated)
                             : BoundStatus::not_asserted;
        }
    }
    return rep;
}

/// Finite Fubini identity behind the norm/trace restricted sums: for every
/// character chi of the base group, the DFT of the fiber-sum function equals
/// the sum of (pullback chi) * t over the extension. This is unconditional;
/// a failure indicates an implementation bug, not a mathematical exception.
inline bool fubini_check(const TraceFunction& t, const FiniteField& k, SumMode mode,
                         double tol = 1e-9) {
    const FiniteField& Kr = *t.field;
    if (Kr.p() != k.p() || Kr.n() % k.n() != 0)
        throw std::invalid_argument("fubini_check: tower mismatch");

    if (mode == SumMode::trace) {
        if (t.domain != TraceFunction::Domain::affine)
            throw std::invalid_argument("fubini_check: trace mode needs an affine domain");
        std::vector<long long> beta(static_cast<std::size_t>(k.q()), 0);
        for (long long yi = 0; yi < Kr.q(); ++yi)
            beta[static_cast<std::size_t>(rel_trace(Kr.from_index(yi), k).index())] +=
                t.values[static_cast<std::size_t>(yi)];
        for (long long b = 0; b < k.q(); ++b) {
            Character psi = Character::additive(k, k.from_index(b));
            Character pulled = pullback_by_norm(psi, Kr);
            KahanComplex lhs, rhs;
            for (long long x = 0; x < k.q(); ++x)
                lhs.add(psi.eval(k.from_index(x)) * static_cast<double>(beta[static_cast<std::size_t>(x)]));
            for (long long yi = 0; yi < Kr.q(); ++yi)
                rhs.add(pulled.eval(Kr.from_index(yi)) *
                        static_cast<double>(t.values[static_cast<std::size_t>(yi)]));
            if (std::abs(lhs.sum - rhs.sum) > tol) return false;
        }
        return true;
    }

    if (t.domain != TraceFunction::Domain::multiplicative)
        throw std::invalid_argument("fubini_check: norm mode needs a multiplicative domain");
    std::vector<long long> beta(static_cast<std::size_t>(k.q()), 0);
    for (long long yi = 1; yi < Kr.q(); ++yi)
        beta[static_cast<std::size_t>(rel_norm(Kr.from_index(yi), k).index())] +=
            t.values[static_cast<std::size_t>(yi)];
    const long long m = k.q() - 1;
    for (long long c = 0; c < m; ++c) {
        Character chi = Character::multiplicative(k, c);
        Character pulled = pullback_by_norm(chi, Kr);
        KahanComplex lhs, rhs;
        for (long long x = 1; x < k.q(); ++x)
            lhs.add(chi.eval(k.from_index(x)) * static_cast<double>(beta[static_cast<std::size_t>(x)]));
        for (long long yi = 1; yi < Kr.q(); ++yi)
            rhs.add(pulled.eval(Kr.from_index(yi)) *
                    static_cast<double>(t.values[static_cast<std::size_t>(yi)]));
        if (std::abs(lhs.sum - rhs.sum) > tol) return false;
    }
    return true;
}

}  // namespace frobsum
