#pragma once

#include "frobsum/matrix.hpp"
#include "frobsum/sums.hpp"

#include <cmath>
#include <random>
#include <string>
#include <vector>

namespace frobsum {

enum class CurveKind { artin_schreier, superelliptic };

inline const char* to_string(CurveKind k) {
    return k == CurveKind::artin_schreier ? "artin_schreier" : "superelliptic";
}

/// y^q - y = f(x) (Artin-Schreier) or y^{q-1} = f(x) (superelliptic) over the
/// degree-r extension of the base field. Hypothesis flags are computed at
/// construction and downgrade bound checks when they fail; the exact counting
/// identities hold regardless.
struct CurveSpec {
    CurveKind kind = CurveKind::artin_schreier;
    const FiniteField* base = nullptr;  // k, of size q
    int r = 1;
    Polynomial f;                        // over k_r
    int d = 0;
    bool deg_coprime = false;
    bool squarefree = true;      // only constrains superelliptic curves
    bool deriv_mult_ok = true;   // every root of f' has multiplicity < p

    bool hypotheses_ok() const {
        if (kind == CurveKind::artin_schreier) return deg_coprime;
        return deg_coprime && squarefree && deriv_mult_ok;
    }
};

inline CurveSpec make_curve_spec(CurveKind kind, const FiniteField& k, int r, Polynomial f) {
    if (r < 1) throw std::invalid_argument("extension degree must be positive");
    const FiniteField& Kr = f.base();
    if (Kr.p() != k.p() || Kr.n() != k.n() * r)
        throw std::invalid_argument("polynomial must live over the degree-r extension of the base");
    CurveSpec spec{kind, &k, r, std::move(f)};
    spec.d = spec.f.degree();
    if (spec.d < 1) throw HypothesisViolation("curve needs a nonconstant polynomial");
    spec.deg_coprime = spec.d % k.p() != 0;
    if (kind == CurveKind::superelliptic) {
        spec.squarefree = spec.f.is_squarefree();
        spec.deriv_mult_ok = detail::derivative_multiplicities_small(spec.f);
    }
    return spec;
}

struct CountReport {
    long long N = 0;
    long long main_term = 0;
    long long delta = 0;       // roots of f in k_r (superelliptic only; 0 otherwise)
    long long deviation = 0;   // |N - main_term|
    double bound = 0.0;
    long long sum = 0;         // the restricted sum appearing in the exact identity
    bool identity_checked = false;
    bool generic = false;
    bool hypotheses_ok = false;
    BoundStatus bound_status = BoundStatus::not_asserted;
};

/// Exact point count over k_r^2 by direct enumeration, cross-checked against
/// the fiber shortcut (q * #{Tr(f(x)) = 0} resp. delta + (q-1) * #{N(f(x)) = 1});
/// any disagreement is an internal error. Also evaluates the exact identity
/// linking N to the restricted sum of the kernel trace function, and the
/// corollary bound when it is asserted.
inline CountReport count_points(const CurveSpec& spec) {
    const FiniteField& k = *spec.base;
    const FiniteField& Kr = spec.f.base();
    const long long q = k.q(), qr = Kr.q();
    if (qr > scan_budget() / qr)
        throw BudgetExceeded("direct pair enumeration exceeds scan budget");

    CountReport rep;
    rep.hypotheses_ok = spec.hypotheses_ok();

    // direct enumeration over (x, y)
    long long direct = 0;
    std::vector<long long> fx(static_cast<std::size_t>(qr));
    for (long long xi = 0; xi < qr; ++xi) fx[static_cast<std::size_t>(xi)] = spec.f.eval(Kr.from_index(xi)).index();
    if (spec.kind == CurveKind::artin_schreier) {
        // y^q - y as a function of y
        std::vector<long long> lhs(static_cast<std::size_t>(qr));
        for (long long yi = 0; yi < qr; ++yi) {
            FieldElement y = Kr.from_index(yi);
            lhs[static_cast<std::size_t>(yi)] = (frobenius(y, k) - y).index();
        }
        for (long long xi = 0; xi < qr; ++xi)
            for (long long yi = 0; yi < qr; ++yi)
                if (lhs[static_cast<std::size_t>(yi)] == fx[static_cast<std::size_t>(xi)]) ++direct;
    } else {
        std::vector<long long> lhs(static_cast<std::size_t>(qr));
        for (long long yi = 0; yi < qr; ++yi)
            lhs[static_cast<std::size_t>(yi)] = Kr.from_index(yi).pow(q - 1).index();
        for (long long xi = 0; xi < qr; ++xi)
            for (long long yi = 0; yi < qr; ++yi)
                if (lhs[static_cast<std::size_t>(yi)] == fx[static_cast<std::size_t>(xi)]) ++direct;
    }

    // fiber shortcut
    long long shortcut = 0;
    if (spec.kind == CurveKind::artin_schreier) {
        long long zero_trace = 0;
        for (long long xi = 0; xi < qr; ++xi)
            if (rel_trace(Kr.from_index(fx[static_cast<std::size_t>(xi)]), k).is_zero()) ++zero_trace;
        shortcut = q * zero_trace;
    } else {
        for (long long xi = 0; xi < qr; ++xi) {
            const long long v = fx[static_cast<std::size_t>(xi)];
            if (v == 0) {
                ++rep.delta;
                continue;
            }
            if (rel_norm(Kr.from_index(v), k) == k.one()) shortcut += q - 1;
        }
        shortcut += rep.delta;
    }
    if (direct != shortcut) throw std::logic_error("direct count and fiber shortcut disagree");
    rep.N = direct;

    // exact identity via the kernel trace function
    const bool as = spec.kind == CurveKind::artin_schreier;
    TraceFunction t = kernel_trace_function(
        spec.f, as ? TraceFunction::Domain::affine : TraceFunction::Domain::multiplicative);
    const FieldElement target = as ? k.zero() : k.one();
    SumReport sr = restricted_sum(t, k, as ? SumMode::trace : SumMode::norm, target);
    rep.sum = sr.sum;

    long long qpow = 1;
    for (int i = 0; i < spec.r; ++i) qpow *= q;
    if (as) {
        rep.main_term = qpow;
        rep.identity_checked = (rep.N == qpow + q * sr.sum);
        rep.bound = std::pow(static_cast<double>(spec.d - 1), spec.r) *
                    std::pow(static_cast<double>(q), (spec.r + 1) / 2.0);
    } else {
        rep.main_term = qpow + rep.delta - 1;
        rep.identity_checked = (rep.N == rep.delta + qpow - 1 + (q - 1) * sr.sum);
        rep.bound = spec.r * std::pow(static_cast<double>(spec.d - 1), spec.r) *
                    static_cast<double>(q - 1) * std::pow(static_cast<double>(q), (spec.r - 1) / 2.0);
    }
    rep.deviation = std::llabs(rep.N - rep.main_term);
    rep.generic = sr.generic;
    if (rep.hypotheses_ok && rep.generic)
        rep.bound_status = rep.deviation <= rep.bound + 1e-9 ? BoundStatus::holds : BoundStatus::violated;
    return rep;
}

/// The unconditional exact identity: N = q^r + q S (Artin-Schreier) or
/// N = delta + q^r - 1 + (q-1) S (superelliptic).
inline bool identity_check(const CurveSpec& spec) { return count_points(spec).identity_checked; }

/// Exact binomial coefficient.
inline BigInt binomial(long long n, long long k) {
    if (k < 0 || n < 0 || k > n) return BigInt(0);
    k = std::min(k, n - k);
    BigInt num(1), den(1);
    for (long long i = 1; i <= k; ++i) {
        num *= BigInt(n - k + i);
        den *= BigInt(i);
    }
    return num / den;
}

/// C_{d,r} = sum_{i=0}^{r-1} binom(d+r-i-2, r) binom(r-1, i), the comparison
/// constant of the Adams-operation estimate.
inline BigInt c_constant(int d, int r) {
    if (d < 1 || r < 1) throw std::invalid_argument("c_constant needs d, r >= 1");
    BigInt acc(0);
    for (int i = 0; i < r; ++i) acc += binomial(d + r - i - 2, r) * binomial(r - 1, i);
    return acc;
}

struct TableRow {
    int r = 0;
    BigInt c_value;      // comparison constant
    BigInt power_value;  // (d-1)^r
};

struct ComparisonTables {
    std::vector<TableRow> adams;      // C_{d,r} vs (d-1)^r
    std::vector<TableRow> conjugate;  // ceil(C_{rd-r+1,r} / r) vs (d-1)^r
};

/// The two bound-comparison tables for degree d: the Adams-operation
/// constant C_{d,r} (sharper for objects already defined over the base) and
/// the conjugate-sum constant ceil(C_{rd-r+1,r}/r) (what descending through
/// the sum of Galois conjugates would cost), each against (d-1)^r.
inline ComparisonTables comparison_tables(int d, const std::vector<int>& rs) {
    ComparisonTables out;
    for (int r : rs) {
        BigInt pw = 1;
        for (int i = 0; i < r; ++i) pw *= BigInt(d - 1);
        out.adams.push_back({r, c_constant(d, r), pw});
        BigInt c = c_constant(r * d - r + 1, r);
        BigInt ceil_div = (c + r - 1) / r;
        out.conjugate.push_back({r, ceil_div, pw});
    }
    return out;
}

/// Sweep of curve specs over a family of polynomials: every monic degree-d
/// polynomial over k_r, or a seeded random sample. Deterministic under a
/// fixed seed.
struct SweepItem {
    std::vector<long long> f_indices;  // coefficient indices, lowest degree first
    CountReport report;
};

struct SweepSummary {
    long long total = 0;
    long long identity_failures = 0;
    long long bound_holds = 0;
    long long bound_violations = 0;
    long long not_asserted = 0;
};

struct SweepReport {
    std::vector<SweepItem> items;
    SweepSummary summary;
};

enum class SweepFamily { all_monic, random_sample };

inline SweepReport sweep(CurveKind kind, const FiniteField& k, int r, int d, SweepFamily family,
                         long long sample_size = 0, unsigned long long seed = 0) {
    if (d < 1) throw std::invalid_argument("sweep needs degree >= 1");
    const FiniteField& Kr = make_field(k.p(), k.n() * r);
    const long long qr = Kr.q();

    SweepReport out;
    auto run_one = [&](const std::vector<long long>& low) {
        std::vector<long long> idx = low;
        idx.push_back(1);  // monic
        Polynomial f = Polynomial::from_indices(Kr, idx);
        CurveSpec spec = make_curve_spec(kind, k, r, std::move(f));
        SweepItem item{idx, count_points(spec)};
        ++out.summary.total;
        if (!item.report.identity_checked) ++out.summary.identity_failures;
        switch (item.report.bound_status) {
            case BoundStatus::holds: ++out.summary.bound_holds; break;
            case BoundStatus::violated: ++out.summary.bound_violations; break;
            default: ++out.summary.not_asserted; break;
        }
        out.items.push_back(std::move(item));
    };

    if (family == SweepFamily::all_monic) {
        double count = 1;
        for (int i = 0; i < d; ++i) count *= static_cast<double>(qr);
        if (count > static_cast<double>(scan_budget()))
            throw BudgetExceeded("family of monic polynomials exceeds scan budget");
        std::vector<long long> low(static_cast<std::size_t>(d), 0);
        while (true) {
            run_one(low);
            int i = d - 1;
            while (i >= 0 && low[static_cast<std::size_t>(i)] == qr - 1) low[static_cast<std::size_t>(i--)] = 0;
            if (i < 0) break;
            ++low[static_cast<std::size_t>(i)];
        }
    } else {
        std::mt19937_64 rng(seed);
        std::uniform_int_distribution<long long> dist(0, qr - 1);
        for (long long s = 0; s < sample_size; ++s) {
            std::vector<long long> low(static_cast<std::size_t>(d));
            for (auto& v : low) v = dist(rng);
            run_one(low);
        }
    }
    return out;
}

}  // namespace frobsum
