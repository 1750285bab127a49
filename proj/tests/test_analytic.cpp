#include "acceptance_suite.hpp"

#include <gtest/gtest.h>

#include <cmath>

using namespace periodpoly;

namespace {

const NewformData& level5() {
    static NewformData f = acceptance::level5_form(400);
    return f;
}

}  // namespace

TEST(EtaProduct, Examples) {
    auto f = eta_product({{1, 4}, {5, 4}}, 5);
    const int want[] = {0, 1, -4, 2, 8, -5};
    for (int n = 0; n <= 5; ++n) EXPECT_EQ(f[n], Rational(want[n]));
    auto d = eta_product({{1, 24}}, 2);
    EXPECT_EQ(d[1], Rational(1));
    EXPECT_EQ(d[2], Rational(-24));
    auto g = eta_product({{1, 8}, {2, 8}}, 2);
    EXPECT_EQ(g[1], Rational(1));
    EXPECT_EQ(g[2], Rational(-8));
}

TEST(EtaProduct, AgreesWithPentagonalOracle) {
    for (auto factors : {std::vector<std::pair<int, int>>{{1, 24}}, {{1, 4}, {5, 4}}, {{1, 8}, {2, 8}}, {{1, 2}, {11, 2}},
                         {{2, 12}}}) {
        auto f = eta_product(factors, 150);
        auto o = oracle::eta_product(factors, 150);
        for (int n = 0; n <= 150; ++n) EXPECT_EQ(f[n], Rational(o[n])) << n;
    }
}

TEST(EtaProduct, NegativeExponentsCancel) {
    auto want = eta_product({{1, 24}}, 40);
    EXPECT_EQ(eta_product({{1, 24}, {2, 24}, {2, -24}}, 40), want);
    EXPECT_EQ(eta_product({{1, 48}, {1, -24}}, 40), want);
}

TEST(Eisenstein, Examples) {
    auto e26 = eisenstein_qexp(2, 6, 10);
    EXPECT_EQ(e26[0], Rational(5, 24));
    EXPECT_EQ(e26[1], Rational(1));
    EXPECT_EQ(eisenstein_qexp(4, 1, 5)[2], Rational(9));
    EXPECT_EQ(eisenstein_qexp(2, 2, 5)[2], Rational(1));
    EXPECT_EQ(eisenstein_qexp(4, 1, 5)[0], Rational(1, 240));
    auto e45 = eisenstein_qexp(4, 5, 10);
    EXPECT_EQ(e45[0], Rational(0));
    EXPECT_EQ(e45[5], Rational(mpz_class(oracle::sigma(3, 5) - 1)));
}

TEST(Eisenstein, FourthPowerOfE4IsE8UpToScale) {
    auto e4 = eisenstein_qexp(4, 1, 20), e8 = eisenstein_qexp(8, 1, 20);
    auto sq = e4 * e4;
    Rational s = sq[0] / e8[0];
    for (int n = 0; n <= 20; ++n) EXPECT_EQ(sq[n], s * e8[n]);
}

TEST(IncompleteGamma, Examples) {
    for (double x : {0.1, 1.0, 3.5}) EXPECT_NEAR(incomplete_gamma(1, x), std::exp(-x), 1e-15);
    EXPECT_NEAR(incomplete_gamma(3, 1.0), 5.0 / std::exp(1.0), 1e-12);
    EXPECT_NEAR(incomplete_gamma(3, 1.0), 1.8393972, 1e-7);
    EXPECT_NEAR(incomplete_gamma(2, 1e-8), 1.0, 1e-7);
    EXPECT_THROW(incomplete_gamma(0, 1.0), std::invalid_argument);
}

TEST(LValue, Level5Values) {
    EXPECT_NEAR(completed_lvalue(level5(), 3, 200).value.real(), 0.0051365773, 1e-8);
    EXPECT_NEAR(completed_lvalue(level5(), 2, 200).value.real(), 0.0104325693, 1e-8);
}

TEST(LValue, ErrorEstimateBoundsTermDoubling) {
    const NewformData k8 = acceptance::level2_k8_form(400);
    for (const NewformData* f : {&level5(), &k8})
        for (int s = 1; s < f->weight; ++s)
            for (int terms : {10, 25, 50}) {
                auto a = completed_lvalue(*f, s, terms), b = completed_lvalue(*f, s, 2 * terms);
                EXPECT_LE(std::abs(a.value - b.value), a.error + 1e-18) << s << " " << terms;
            }
}

TEST(LValue, FunctionalEquation) {
    const auto& f = level5();
    for (int s = 1; s < 4; ++s) {
        auto a = completed_lvalue(f, s, 200).value, b = completed_lvalue(f, 4 - s, 200).value;
        EXPECT_NEAR(std::abs(a - std::pow(5.0, 2.0 - s) * b), 0.0, 1e-15);
    }
}

TEST(LValue, MissingSignAndNonCuspidalInputs) {
    NewformData f = level5();
    f.fricke_sign.reset();
    EXPECT_THROW(completed_lvalue(f, 2, 50), MissingFrickeSign);
    NewformData e;
    e.level = 1;
    e.weight = 4;
    e.fricke_sign = 1;
    e.q = eisenstein_qexp(4, 1, 50);
    EXPECT_THROW(completed_lvalue(e, 2, 50), std::invalid_argument);
}

TEST(FrickeSign, DeterminedByConsistency) {
    EXPECT_EQ(acceptance::level5_form(200).fricke_sign, 1);
    EXPECT_EQ(acceptance::level2_k8_form(200).fricke_sign, 1);
    for (auto [name, sign] : {std::pair{"level2_k10.json", -1}, std::pair{"level2_k14_a.json", 1}, std::pair{"level2_k14_b.json", -1}}) {
        auto f = newform_from_json(read_json_file(acceptance::data_path(name)));
        EXPECT_EQ(determine_fricke_sign(f, 200), sign) << name;
        EXPECT_EQ(f.fricke_sign, sign) << name;
        int k = f.weight;
        // eps = -a_2 / 2^{k/2-1} for a newform of level 2
        EXPECT_EQ(Rational(-sign) * pow(Rational(2), k / 2 - 1), f.q[2]) << name;
    }
}

TEST(LValue, CentralValueVanishesExactlyWhenForced) {
    // root number i^k eps
    for (auto [name, forced] : {std::pair{"level2_k10.json", false}, std::pair{"level2_k14_a.json", true},
                                std::pair{"level2_k14_b.json", false}}) {
        auto f = newform_from_json(read_json_file(acceptance::data_path(name)));
        double c = std::abs(completed_lvalue(f, f.weight / 2, 200).value);
        if (forced)
            EXPECT_LT(c, 1e-14) << name;
        else
            EXPECT_GT(c, 1e-6) << name;
    }
    EXPECT_GT(std::abs(completed_lvalue(acceptance::level2_k8_form(200), 4, 200).value), 1e-6);
}

TEST(Periods, OmegasAndPhases) {
    acceptance::Level5 L;
    auto om = period_and_omega(level5(), L.Pp, L.Pm, 200);
    EXPECT_NEAR(std::abs(om.plus - cplx(0, -0.0051365773)), 0.0, 1e-9);
    EXPECT_NEAR(std::abs(om.minus - cplx(0.0208651386, 0)), 0.0, 1e-9);
    EXPECT_LT(std::abs(om.plus.real()), 1e-9 * std::abs(om.plus));
    EXPECT_LT(std::abs(om.minus.imag()), 1e-9 * std::abs(om.minus));
    EXPECT_LT(om.consistency, 1e-12);
}

TEST(Petersson, Level5Norm) {
    auto e = form_eigen_periods(level5(), 200);
    EXPECT_NEAR(petersson_product(e, e, Kappa::plus_minus).real(), 0.00014513335, 1e-9);
    EXPECT_NEAR(std::abs(petersson_product(e, e, Kappa::plus_minus) - petersson_product(e, e, Kappa::minus_plus)), 0.0,
                1e-10);
    EXPECT_NEAR(std::abs(petersson_full(e, e) - petersson_product(e, e, Kappa::plus_minus)), 0.0, 1e-12);
    EXPECT_LT(std::abs(unconjugated_pairing(e, e)), 1e-9);
    EXPECT_TRUE(pair_braces(e.plus, e.plus).is_zero());
    EXPECT_TRUE(pair_braces(e.minus, e.minus).is_zero());
    EXPECT_THROW(petersson_product(e, e, Kappa::plus_plus), std::invalid_argument);
}

TEST(Petersson, ExplicitEigenvaluesMatchTheQExpansionDefault) {
    auto a = form_eigen_periods(level5(), 200, {{2, Rational(-4)}});
    auto b = form_eigen_periods(level5(), 200);
    EXPECT_EQ(a.plus, b.plus);
    EXPECT_EQ(a.minus, b.minus);
    EXPECT_THROW(form_eigen_periods(level5(), 200, {{2, Rational(7)}}), EigenError);
}

TEST(Eigenvalues, ManinRecovery) {
    acceptance::Level5 L;
    const int want[] = {1, -4, 2, 8, -5};
    for (int n = 1; n <= 5; ++n)
        EXPECT_EQ(manin_coefficient(L.Pp, merel_hecke(n), SigmaSpec::delta(L.sp, n)), Rational(want[n - 1]));
    auto q = oracle::eta_product({{1, 4}, {5, 4}}, 101);
    EXPECT_EQ(manin_coefficient(L.Pp, merel_hecke(101), SigmaSpec::delta(L.sp, 101)), Rational(q[101]));
}

TEST(Zeta, KnownValues) {
    EXPECT_NEAR(zeta(2), kPi * kPi / 6, 1e-14);
    EXPECT_NEAR(zeta(3), 1.2020569031595942, 1e-14);
    EXPECT_NEAR(zeta(0), -0.5, 1e-15);
    EXPECT_NEAR(zeta(-1), -1.0 / 12, 1e-15);
    EXPECT_NEAR(zeta(-2), 0.0, 1e-15);
    EXPECT_NEAR(zeta(0.25), -0.8132784052, 1e-9);
    EXPECT_NEAR(zeta_prime_negative_even(1), -0.0304484570583932, 1e-13);
    EXPECT_THROW(zeta(1.0), std::domain_error);
}

TEST(Gamma06Demo, Examples) {
    auto g = gamma06_demo();
    EXPECT_TRUE(g.sigma_matches);
    EXPECT_TRUE(g.tau_matches);
    EXPECT_TRUE(g.basis_matches);
    EXPECT_NEAR(std::abs(g.C - cplx(0, -0.5 / (2 * kPi))), 0.0, 1e-15);
    EXPECT_LT(g.d1_error, 1e-10);
    EXPECT_LT(g.additivity_error, 1e-10);
    EXPECT_LT(g.d9_error, 1e-10);
    EXPECT_LT(g.decomposition_error, 1e-10);
}

TEST(FullLevelEisenstein, ExtendedPeriodsLieInWExtended) {
    for (int k : {4, 6, 8, 12}) {
        auto r = fulllevel_eisenstein_demo(k);
        EXPECT_LT(r.residual, 1e-8) << k;
    }
}
