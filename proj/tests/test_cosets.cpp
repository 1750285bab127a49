#include "oracles.hpp"
#include "periodpoly/periodpoly.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <random>
#include <set>

using namespace periodpoly;

namespace {

int gamma1_index(int N) {
    if (N <= 2) return oracle::gamma0_index(N);
    long m = static_cast<long>(N) * N;
    for (int p : oracle::prime_divisors(N)) m = m / (static_cast<long>(p) * p) * (static_cast<long>(p) * p - 1);
    return static_cast<int>(m / 2);
}

}  // namespace

TEST(CosetSpace, Gamma05Labels) {
    CosetSpace sp(GroupKind::gamma0, 5, 4);
    ASSERT_EQ(sp.index(), 6);
    std::set<std::pair<int, int>> want{{0, 1}, {1, 1}, {1, 3}, {1, 2}, {1, 4}, {1, 0}};
    std::set<std::pair<int, int>> got(sp.labels().begin(), sp.labels().end());
    EXPECT_EQ(got, want);
}

TEST(CosetSpace, IndexMatchesFormula) {
    EXPECT_EQ(CosetSpace(GroupKind::gamma0, 1, 12).index(), 1);
    EXPECT_EQ(CosetSpace(GroupKind::gamma0, 100, 6).index(), 180);
    for (int N = 1; N <= 40; ++N) {
        EXPECT_EQ(CosetSpace(GroupKind::gamma0, N, 2).index(), oracle::gamma0_index(N)) << N;
        EXPECT_EQ(CosetSpace(GroupKind::gamma1, N, 3).index(), gamma1_index(N)) << N;
    }
}

TEST(CosetSpace, LiftsHaveTheirBottomRows) {
    for (auto kind : {GroupKind::gamma0, GroupKind::gamma1}) {
        CosetSpace sp(kind, 12, 4);
        for (int l = 0; l < sp.index(); ++l) {
            const Mat2& m = sp.lift(l);
            EXPECT_EQ(m.det(), 1);
            EXPECT_EQ(sp.lookup(m.c, m.d).label, l);
        }
    }
}

TEST(CosetAction, Gamma02SAndU) {
    CosetSpace sp(GroupKind::gamma0, 2, 4);
    int I = sp.identity_label();
    int U = sp.lookup(mats::U.c, mats::U.d).label;
    EXPECT_EQ(sp.act(I, mats::S).label, U);
    EXPECT_EQ(sp.act(U, mats::S).label, I);
    for (int l = 0; l < sp.index(); ++l) EXPECT_EQ(sp.act(l, mats::I), (LabelSign{l, 1}));
}

TEST(CosetAction, RandomWordsComposeWithSigns) {
    std::mt19937 rng(5);
    const Mat2 gens[] = {mats::S, mats::T, mats::Tinv, mats::U, mats::U2};
    for (auto kind : {GroupKind::gamma0, GroupKind::gamma1}) {
        for (int N : {5, 7, 12}) {
            CosetSpace sp(kind, N, 3);
            for (int trial = 0; trial < 50; ++trial) {
                Mat2 g = mats::I;
                int l0 = static_cast<int>(rng() % sp.index());
                LabelSign cur{l0, 1};
                for (int step = 0; step < 12; ++step) {
                    const Mat2& h = gens[rng() % 5];
                    g = g * h;
                    LabelSign nx = sp.act(cur.label, h);
                    cur = {nx.label, cur.sign * nx.sign};
                }
                EXPECT_EQ(sp.act(l0, g), cur);
            }
        }
    }
}

TEST(CosetAction, GeneratorTablesAgreeWithMatrices) {
    CosetSpace sp(GroupKind::gamma1, 7, 3);
    const std::pair<Gen, Mat2> pairs[] = {{Gen::S, mats::S}, {Gen::T, mats::T}, {Gen::Tinv, mats::Tinv},
                                          {Gen::U, mats::U}, {Gen::U2, mats::U2}, {Gen::J, mats::J}};
    for (auto& [g, m] : pairs)
        for (int l = 0; l < sp.index(); ++l) EXPECT_EQ(sp.act(l, g), sp.act(l, m));
}

TEST(CosetAction, EpsIsAnInvolution) {
    for (auto kind : {GroupKind::gamma0, GroupKind::gamma1})
        for (int N : {1, 4, 9, 10}) {
            CosetSpace sp(kind, N, 4);
            for (int l = 0; l < sp.index(); ++l) {
                auto e = sp.eps(l);
                auto ee = sp.eps(e.label);
                EXPECT_EQ(ee.label, l);
                EXPECT_EQ(ee.sign * e.sign, 1);
            }
        }
}

TEST(Cusps, Gamma02HasCuspsIAndS) {
    CosetSpace sp(GroupKind::gamma0, 2, 8);
    auto cs = cusp_classes(sp);
    ASSERT_EQ(cs.count(), 2);
    int I = sp.identity_label();
    int S = sp.lookup(mats::S.c, mats::S.d).label;
    EXPECT_NE(cs.cusp_of_label[I], cs.cusp_of_label[S]);
}

TEST(Cusps, Gamma05HasTwoCusps) { EXPECT_EQ(cusp_classes(CosetSpace(GroupKind::gamma0, 5, 4)).count(), 2); }

TEST(Cusps, Gamma06ClassesOfTheDemoCosets) {
    CosetSpace sp(GroupKind::gamma0, 6, 2);
    auto cs = cusp_classes(sp);
    ASSERT_EQ(cs.count(), 4);
    auto rep = gamma06_demo();
    auto cusp = [&](int j) { return cs.cusp_of_label[rep.aj_to_label[j - 1]]; };
    EXPECT_EQ(cusp(9), cusp(12));
    EXPECT_EQ(cusp(6), cusp(7));
    EXPECT_EQ(cusp(6), cusp(11));
    std::set<int> distinct{cusp(1), cusp(9), cusp(6), cusp(2)};
    EXPECT_EQ(distinct.size(), 4u);
    for (int j : {2, 3, 4, 5, 8, 10}) EXPECT_EQ(cusp(j), cusp(2));
}

TEST(Cusps, CountsMatchClosedFormsUpTo30) {
    for (int N = 1; N <= 30; ++N) {
        auto c0 = cusp_classes(CosetSpace(GroupKind::gamma0, N, 2));
        EXPECT_EQ(c0.count(), oracle::gamma0_cusps(N)) << N;
        auto c1 = cusp_classes(CosetSpace(GroupKind::gamma1, N, 3));
        EXPECT_EQ(c1.count(), oracle::gamma1_cusps(N)) << N;
        if (N >= 3) {
            EXPECT_EQ(c1.regular_count(), oracle::gamma1_regular_cusps(N)) << N;
        }
        int width = 0;
        for (auto& c : c0.classes) width += c.width;
        EXPECT_EQ(width, oracle::gamma0_index(N));
    }
}

TEST(Characters, CountMultiplicativityAndOrthogonality) {
    for (int N : {3, 5, 7, 8, 12, 15}) {
        auto chars = dirichlet_characters(N);
        EXPECT_EQ(static_cast<int>(chars.size()), oracle::euler_phi(N)) << N;
        int trivial = 0;
        for (auto& chi : chars) {
            EXPECT_TRUE(chi.multiplicative());
            trivial += chi.is_trivial();
            Cyclotomic s(0);
            for (int a = 0; a < N; ++a)
                if (std::gcd(a, N) == 1) s = s + chi(a);
            if (chi.is_trivial())
                EXPECT_EQ(s, Cyclotomic(oracle::euler_phi(N)));
            else
                EXPECT_TRUE(s.is_zero());
        }
        EXPECT_EQ(trivial, 1);
    }
}
