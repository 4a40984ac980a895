#include "frobsum/curves.hpp"

#include <catch2/catch_amalgamated.hpp>

#include <random>

using namespace frobsum;

TEST_CASE("Artin-Schreier counts: base case and the exact identity") {
    const FiniteField& F3 = make_field(3, 1);
    // r = 1, f = x: N = q * #{x : x = 0} = 3
    auto spec1 = make_curve_spec(CurveKind::artin_schreier, F3, 1,
                                 Polynomial::from_indices(F3, {0, 1}));
    auto rep1 = count_points(spec1);
    CHECK(rep1.N == 3);
    CHECK(rep1.identity_checked);
    CHECK(rep1.sum == 0);

    // q = 3, r = 2, f = x^2
    const FiniteField& F9 = make_field(3, 2);
    auto spec2 = make_curve_spec(CurveKind::artin_schreier, F3, 2,
                                 Polynomial::from_indices(F9, {0, 0, 1}));
    auto rep2 = count_points(spec2);
    CHECK(rep2.identity_checked);
    CHECK(rep2.N % 3 == 0);  // every x contributes 0 or q points
    CHECK(rep2.N == 9 + 3 * rep2.sum);

    // q = 2, r = 3, f = x^3 + x over GF(8)
    const FiniteField& F2 = make_field(2, 1);
    const FiniteField& F8 = make_field(2, 3);
    auto spec3 = make_curve_spec(CurveKind::artin_schreier, F2, 3,
                                 Polynomial::from_indices(F8, {0, 1, 0, 1}));
    auto rep3 = count_points(spec3);
    CHECK(rep3.identity_checked);
    CHECK(rep3.N == 8 + 2 * rep3.sum);
    CHECK(rep3.N % 2 == 0);
}

TEST_CASE("superelliptic counts: delta bookkeeping and the exact identity") {
    const FiniteField& F3 = make_field(3, 1);
    const FiniteField& F9 = make_field(3, 2);
    // f = x^2 + 1: the modulus of GF(9), so delta = 2
    auto spec = make_curve_spec(CurveKind::superelliptic, F3, 2,
                                Polynomial::from_indices(F9, {1, 0, 1}));
    CHECK(spec.squarefree);
    CHECK(spec.deriv_mult_ok);
    auto rep = count_points(spec);
    CHECK(rep.delta == 2);
    CHECK(rep.identity_checked);
    CHECK(rep.N == rep.delta + 9 - 1 + 2 * rep.sum);

    // a non-squarefree polynomial still gets the exact identity, but no bound
    auto bad = make_curve_spec(CurveKind::superelliptic, F3, 2,
                               Polynomial::from_indices(F9, {0, 0, 1}));  // x^2
    CHECK_FALSE(bad.squarefree);
    CHECK_FALSE(bad.hypotheses_ok());
    auto brep = count_points(bad);
    CHECK(brep.identity_checked);
    CHECK(brep.bound_status == BoundStatus::not_asserted);
}

TEST_CASE("hypothesis flags") {
    const FiniteField& F3 = make_field(3, 1);
    const FiniteField& F9 = make_field(3, 2);
    // degree divisible by p
    auto spec = make_curve_spec(CurveKind::artin_schreier, F3, 2,
                                Polynomial::from_indices(F9, {0, 1, 0, 1}));
    CHECK_FALSE(spec.deg_coprime);
    CHECK_FALSE(spec.hypotheses_ok());
    auto rep = count_points(spec);      // identity still unconditional
    CHECK(rep.identity_checked);
    CHECK(rep.bound_status == BoundStatus::not_asserted);
    CHECK_THROWS_AS(make_curve_spec(CurveKind::artin_schreier, F3, 2,
                                    Polynomial::from_indices(F9, {7})),
                    HypothesisViolation);
    CHECK_THROWS_AS(make_curve_spec(CurveKind::artin_schreier, F3, 2,
                                    Polynomial::from_indices(make_field(3, 3), {0, 1})),
                    std::invalid_argument);
}

TEST_CASE("identity_check wrapper and bound assertion on a generic case") {
    const FiniteField& F3 = make_field(3, 1);
    const FiniteField& F9 = make_field(3, 2);
    // f = x^2 + x: critical value f(-1/2) = f(1) = 2, trace 2 + 2^3 = 1 in GF(3),
    // so a = 0 is generic and both the identity and the bound are asserted
    auto spec = make_curve_spec(CurveKind::artin_schreier, F3, 2,
                                Polynomial::from_indices(F9, {0, 1, 1}));
    CHECK(identity_check(spec));
    auto rep = count_points(spec);
    CHECK(rep.generic);
    CHECK(rep.bound_status == BoundStatus::holds);
    CHECK(static_cast<double>(rep.deviation) <= rep.bound + 1e-9);
}

TEST_CASE("comparison constants match the published table values exactly") {
    CHECK(c_constant(5, 2) == BigInt(16));
    CHECK(c_constant(5, 3) == BigInt(44));
    CHECK(c_constant(5, 4) == BigInt(96));
    CHECK(c_constant(5, 5) == BigInt(180));
    CHECK(c_constant(5, 10) == BigInt(1360));
    CHECK(c_constant(5, 20) == BigInt(10720));
    // degenerate case collapses to a single binomial
    for (int d : {2, 3, 5, 9}) CHECK(c_constant(d, 1) == BigInt(d - 1));

    auto tables = comparison_tables(5, {2, 3, 4, 5, 10, 20});
    const char* powers[] = {"16", "64", "256", "1024", "1048576", "1099511627776"};
    const char* conj[] = {"32",
                          "386",
                          "5504",
                          "86401",
                          "153547568007",
                          "1356608411506872363943501"};
    REQUIRE(tables.adams.size() == 6);
    for (std::size_t i = 0; i < 6; ++i) {
        CHECK(tables.adams[i].power_value.str() == powers[i]);
        CHECK(tables.conjugate[i].power_value.str() == powers[i]);
        CHECK(tables.conjugate[i].c_value.str() == conj[i]);
    }
    // the ceiling matters: C_{21,5} = 432004 is not divisible by 5
    CHECK(c_constant(21, 5) == BigInt(432004));
}

TEST_CASE("binomial edge cases") {
    CHECK(binomial(4, 5) == BigInt(0));
    CHECK(binomial(0, 0) == BigInt(1));
    CHECK(binomial(10, 0) == BigInt(1));
    CHECK(binomial(-1, 0) == BigInt(0));
    CHECK(binomial(52, 26).str() == "495918532948104");
}

TEST_CASE("sweep over all monic quadratics: identities always, bounds when asserted") {
    const FiniteField& F3 = make_field(3, 1);
    auto rep = sweep(CurveKind::artin_schreier, F3, 2, 2, SweepFamily::all_monic);
    CHECK(rep.summary.total == 81);
    CHECK(rep.summary.identity_failures == 0);
    CHECK(rep.summary.bound_violations == 0);
    CHECK(rep.summary.bound_holds + rep.summary.not_asserted == 81);
    for (const auto& item : rep.items) CHECK(item.report.N % 3 == 0);
}

TEST_CASE("random sweeps are deterministic under a seed") {
    const FiniteField& F3 = make_field(3, 1);
    auto a = sweep(CurveKind::superelliptic, F3, 2, 2, SweepFamily::random_sample, 12, 99);
    auto b = sweep(CurveKind::superelliptic, F3, 2, 2, SweepFamily::random_sample, 12, 99);
    REQUIRE(a.items.size() == b.items.size());
    for (std::size_t i = 0; i < a.items.size(); ++i) {
        CHECK(a.items[i].f_indices == b.items[i].f_indices);
        CHECK(a.items[i].report.N == b.items[i].report.N);
    }
    CHECK(a.summary.identity_failures == 0);

    // empty sweep
    auto e = sweep(CurveKind::artin_schreier, F3, 2, 2, SweepFamily::random_sample, 0, 0);
    CHECK(e.items.empty());
    CHECK(e.summary.total == 0);
}
