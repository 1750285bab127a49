#include "oracles.hpp"
#include "periodpoly/periodpoly.hpp"

#include <gtest/gtest.h>

#include <random>
#include <set>

using namespace periodpoly;

namespace {

GroupRingElement identity_element() {
    GroupRingElement t(1);
    t.add(mats::I, Rational(1));
    return t;
}

// (1 - T) Y with T acting on the left.
GroupRingElement one_minus_T(const GroupRingElement& y) { return y - y.left(mats::T); }

}  // namespace

TEST(TnInfinity, Examples) {
    EXPECT_EQ(tn_infinity(1), identity_element());
    auto t2 = tn_infinity(2);
    std::set<Mat2> want{{1, 0, 0, 2}, {1, 1, 0, 2}, {2, 0, 0, 1}}, got;
    for (auto& [m, c] : t2.terms()) {
        got.insert(m);
        EXPECT_EQ(c, Rational(1));
    }
    EXPECT_EQ(got, want);
    EXPECT_EQ(tn_infinity(4).size(), 7u);
    for (int n = 1; n <= 30; ++n) EXPECT_EQ(mpz_class(static_cast<long>(tn_infinity(n).size())), oracle::sigma(1, n));
}

TEST(Vee, InvolutionAndShapes) {
    EXPECT_EQ(mats::T.vee(), mats::Tinv);
    std::mt19937 rng(9);
    std::uniform_int_distribution<int> dist(-5, 5);
    for (int trial = 0; trial < 20; ++trial) {
        GroupRingElement x(6);
        for (int i = 0; i < 5; ++i) {
            i64 a = 1 + rng() % 6;
            if (6 % a) continue;
            x.add({a, dist(rng), 0, 6 / a}, Rational(dist(rng)));
        }
        EXPECT_EQ(x.vee().vee(), x);
    }
    // adjugates of upper-triangular matrices stay upper-triangular
    auto tv = tn_infinity(12).vee();
    for (auto& [m, c] : tv.terms()) {
        EXPECT_EQ(m.c, 0);
        EXPECT_LE(m.b, 0);
        EXPECT_EQ(tn_infinity(12).coeff(m.vee()), Rational(1));
    }
}

TEST(VerifyHecke, IdentityAndSolvedElements) {
    auto v1 = verify_hecke_property(identity_element(), 1);
    EXPECT_TRUE(v1.ok);
    EXPECT_TRUE(v1.witness.empty());
    for (int n = 2; n <= 12; ++n) {
        auto t = solve_universal_hecke(n, n);
        auto v = verify_hecke_property(t, n);
        ASSERT_TRUE(v.ok) << n;
        EXPECT_EQ(one_minus_T(v.witness), v.delta) << n;
        EXPECT_EQ(t.vee().vee(), t);
        EXPECT_TRUE(verify_hecke_property(merel_hecke(n), n).ok) << n;
    }
}

TEST(VerifyHecke, PerturbedCoefficientFails) {
    auto t = solve_universal_hecke(2, 2);
    auto bad = t;
    bad.add(t.terms().begin()->first, Rational(1));
    auto v = verify_hecke_property(bad, 2);
    EXPECT_FALSE(v.ok);
    EXPECT_TRUE(v.bad_orbit.has_value());
    EXPECT_FALSE(v.bad_sum.is_zero());
}

TEST(SolveHecke, BoundBelowNIsRejected) {
    EXPECT_THROW(solve_universal_hecke(7, 1), std::invalid_argument);
    EXPECT_THROW(solve_universal_hecke(0, 1), std::invalid_argument);
}

TEST(Resolve, Examples) {
    CosetSpace s5(GroupKind::gamma0, 5, 4);
    auto r = resolve_sigma_coset(s5, s5.identity_label(), {1, 0, 0, 2}, SigmaSpec::delta(s5, 2));
    ASSERT_TRUE(r.has_value());
    EXPECT_EQ(s5.label_string(r->label), "(0:1)");
    CosetSpace s2(GroupKind::gamma0, 2, 4);
    EXPECT_FALSE(resolve_sigma_coset(s2, s2.identity_label(), {2, 0, 0, 1}, SigmaSpec::delta(s2, 2)).has_value());
    auto spec = SigmaSpec::delta(s5, 2);
    for (int l = 0; l < s5.index(); ++l)
        for (auto& M : bounded_matrices(2, 3)) EXPECT_TRUE(resolve_sigma_coset(s5, l, M, spec).has_value());
}

TEST(HeckeAction, IdentityLeavesVectorsUnchanged) {
    CosetSpace sp(GroupKind::gamma0, 5, 4);
    auto W = build_W(sp);
    for (size_t i = 0; i < W.dim(); ++i)
        EXPECT_EQ(hecke_action(W.vector(i), identity_element(), SigmaSpec::delta(sp, 1)), W.vector(i));
}

TEST(HeckeAction, PreservesCoboundaries) {
    for (auto [N, k] : {std::pair{6, 2}, std::pair{5, 4}, std::pair{2, 8}}) {
        CosetSpace sp(GroupKind::gamma0, N, k);
        auto C = build_C(sp);
        for (int n : {2, 3, 5}) {
            auto t = solve_universal_hecke(n, n);
            for (size_t i = 0; i < C.dim(); ++i) EXPECT_TRUE(C.contains(hecke_action(C.vector(i), t, SigmaSpec::delta(sp, n))));
        }
    }
}

TEST(HeckeMatrix, Traces) {
    CosetSpace s1(GroupKind::gamma0, 1, 12);
    auto tau = oracle::eta_product({{1, 24}}, 2);
    EXPECT_EQ(hecke_matrix(build_W(s1), solve_universal_hecke(2, 2), SigmaSpec::delta(s1, 2)).trace,
              Rational(mpz_class(2 * tau[2] + oracle::sigma(11, 2))));
    CosetSpace s6(GroupKind::gamma0, 6, 2);
    EXPECT_EQ(hecke_matrix(build_W(s6), solve_universal_hecke(5, 5), SigmaSpec::delta(s6, 5)).trace,
              Rational(mpz_class(3 * oracle::sigma(1, 5))));
}

TEST(HeckeMatrix, AtkinLehnerSquareIsScalar) {
    CosetSpace sp(GroupKind::gamma0, 2, 8);
    auto th = hecke_matrix(build_W(sp), solve_universal_hecke(2, 2), SigmaSpec::theta(sp, 2)).matrix;
    auto sq = th * th;
    for (size_t i = 0; i < sq.rows; ++i)
        for (size_t j = 0; j < sq.cols; ++j) EXPECT_EQ(sq(i, j), Rational(i == j ? 64 : 0));
}

TEST(HeckeMatrix, DiamondCommutesWithT2OnGamma1) {
    CosetSpace sp(GroupKind::gamma1, 5, 3);
    auto W = build_W(sp);
    auto t2 = hecke_matrix(W, solve_universal_hecke(2, 2), SigmaSpec::delta(sp, 2)).matrix;
    auto d2 = hecke_matrix(W, identity_element(), SigmaSpec::diamond_op(sp, 2)).matrix;
    EXPECT_EQ(t2 * d2, d2 * t2);
    auto d4 = d2 * d2 * d2 * d2;
    EXPECT_EQ(d4, Matrix<Rational>::identity(W.dim()));
}

TEST(HeckeMatrix, AdjointnessWithDeltaVee) {
    for (auto [N, k, n] : {std::tuple{5, 4, 2}, std::tuple{5, 4, 3}, std::tuple{7, 4, 2}, std::tuple{1, 12, 2}}) {
        CosetSpace sp(GroupKind::gamma0, N, k);
        auto W = build_W(sp);
        auto t = solve_universal_hecke(n, n);
        for (size_t i = 0; i < W.dim(); ++i)
            for (size_t j = 0; j < W.dim(); ++j)
                EXPECT_EQ(pair_braces(hecke_action(W.vector(i), t, SigmaSpec::delta(sp, n)), W.vector(j)),
                          pair_braces(W.vector(i), hecke_action(W.vector(j), t, SigmaSpec::delta_vee(sp, n))));
    }
}

TEST(AdjointnessMembership, BoundedSearch) {
    EXPECT_EQ(adjointness_membership(solve_universal_hecke(2, 2), 2), MembershipResult::verified_within_bound);
    EXPECT_EQ(adjointness_membership(merel_hecke(3), 3), MembershipResult::verified_within_bound);
    EXPECT_EQ(adjointness_membership(solve_universal_hecke(5, 5), 2), MembershipResult::inconclusive);
}

TEST(EigenPolynomial, Gamma05Table) {
    CosetSpace sp(GroupKind::gamma0, 5, 4);
    auto [Wp, Wm] = eps_split(build_W(sp));
    auto Pm = common_eigen_polynomial(Wm, {}, Parity::minus);
    auto H2 = hecke_matrix(Wp, solve_universal_hecke(2, 2), SigmaSpec::delta(sp, 2)).matrix;
    auto Pp = common_eigen_polynomial(Wp, {{H2, Rational(-4)}}, Parity::plus);
    auto at = [&](const PolyVector<Rational>& P, int c, int d) { return P.at(sp.lookup(c, d).label); };
    auto poly = [](int a, int b, int c) { return PolyValue<Rational>{Rational(a), Rational(b), Rational(c)}; };
    EXPECT_EQ(at(Pp, 1, 3), poly(-8, 13, 8));
    EXPECT_EQ(at(Pp, 0, 1), poly(1, 0, -5));
    EXPECT_EQ(at(Pm, 1, 1), poly(1, 2, 1));
    EXPECT_EQ(at(Pm, 1, 2), poly(2, -3, -2));
    EXPECT_THROW(common_eigen_polynomial(Wp, {{H2, Rational(7)}}, Parity::plus), EigenError);
    EXPECT_THROW(common_eigen_polynomial(Wp, {}, Parity::plus), EigenError);
    const int want[] = {1, -4, 2, 8, -5};
    for (int n = 1; n <= 5; ++n)
        EXPECT_EQ(manin_coefficient(Pp, solve_universal_hecke(n, n), SigmaSpec::delta(sp, n)), Rational(want[n - 1]));
    EXPECT_EQ(manin_coefficient(Pm, merel_hecke(3), SigmaSpec::delta(sp, 3), Parity::minus), Rational(2));
}

TEST(EigenPolynomial, SecondElementGivesSameMatrices) {
    CosetSpace sp(GroupKind::gamma0, 11, 2);
    auto W = build_W(sp);
    for (int n = 2; n <= 10; ++n) {
        auto spec = SigmaSpec::delta(sp, n);
        EXPECT_EQ(hecke_matrix(W, solve_universal_hecke(n, n), spec).matrix, hecke_matrix(W, merel_hecke(n), spec).matrix);
    }
}
