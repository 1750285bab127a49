#include "oracles.hpp"
#include "periodpoly/periodpoly.hpp"

#include <gtest/gtest.h>

#include <random>

using namespace periodpoly;

TEST(Rational, ParseAndPrint) {
    EXPECT_EQ(Rational::parse("-8/51"), Rational(-8, 51));
    EXPECT_EQ(Rational::parse(" 6/4 ").str(), "3/2");
    EXPECT_EQ(Rational::parse("+7").str(), "7");
    EXPECT_EQ(Rational(0, 5).str(), "0");
    EXPECT_THROW(Rational::parse("1/0"), std::domain_error);
    EXPECT_THROW(Rational::parse("x"), std::exception);
}

TEST(Rational, FieldAxiomsOnRandomValues) {
    std::mt19937 rng(7);
    std::uniform_int_distribution<int> dist(-50, 50);
    auto draw = [&] {
        int q = 0;
        while (q == 0) q = dist(rng);
        return Rational(dist(rng), q);
    };
    for (int i = 0; i < 200; ++i) {
        Rational a = draw(), b = draw(), c = draw();
        EXPECT_EQ((a + b) * c, a * c + b * c);
        if (!b.is_zero()) {
            EXPECT_EQ(a / b * b, a);
        }
        EXPECT_EQ(a - a, Rational(0));
    }
}

TEST(Bernoulli, SpecExamples) {
    EXPECT_EQ(bernoulli(0), Rational(1));
    EXPECT_EQ(bernoulli(6), Rational(1, 42));
    EXPECT_EQ(bernoulli(8), Rational(-1, 30));
}

TEST(Bernoulli, MatchesAkiyamaTanigawaForEvenAndOddIndices) {
    for (int n = 2; n <= 40; ++n) EXPECT_EQ(bernoulli(n), Rational(oracle::bernoulli_at(n))) << n;
}

TEST(Binomial, PascalRule) {
    for (long n = 1; n < 30; ++n)
        for (long k = 1; k < n; ++k) EXPECT_EQ(binomial(n, k), binomial(n - 1, k - 1) + binomial(n - 1, k));
}

TEST(Kernel, IdentityHasEmptyKernel) {
    auto k = kernel_basis(Matrix<Rational>::identity(3));
    EXPECT_EQ(k.cols, 0u);
}

TEST(Kernel, OneByTwo) {
    Matrix<Rational> m(1, 2);
    m(0, 0) = Rational(1);
    m(0, 1) = Rational(-1);
    auto k = kernel_basis(m);
    ASSERT_EQ(k.cols, 1u);
    EXPECT_EQ(k(0, 0), k(1, 0));
    EXPECT_FALSE(k(0, 0).is_zero());
}

TEST(Kernel, RandomMatricesSatisfyRankNullity) {
    std::mt19937 rng(11);
    std::uniform_int_distribution<int> dist(-3, 3);
    for (int t = 0; t < 30; ++t) {
        size_t r = 1 + t % 5, c = 2 + t % 6;
        Matrix<Rational> m(r, c);
        for (auto& x : m.data) x = Rational(dist(rng));
        auto k = kernel_basis(m);
        EXPECT_EQ(rank(m) + k.cols, c);
        EXPECT_TRUE((m * k).is_zero_matrix());
    }
}

TEST(EigenKernel, Examples) {
    Matrix<Rational> d(2, 2);
    d(0, 0) = Rational(2);
    d(1, 1) = Rational(3);
    auto k = eigen_kernel(d, Rational(2));
    ASSERT_EQ(k.cols, 1u);
    EXPECT_FALSE(k(0, 0).is_zero());
    EXPECT_TRUE(k(1, 0).is_zero());
    EXPECT_EQ(eigen_kernel(Matrix<Rational>(2, 2), Rational(1)).cols, 0u);
}

TEST(DenseMatrix, RuntimeTaggedKernel) {
    Matrix<Rational> m(1, 2);
    m(0, 0) = Rational(1);
    m(0, 1) = Rational(-1);
    DenseMatrix dm(m);
    EXPECT_EQ(dm.field(), FieldKind::rational);
    EXPECT_EQ(kernel_basis(dm).cols(), 1u);
    Matrix<ComplexBall> f(1, 1);
    EXPECT_THROW(kernel_basis(DenseMatrix(f)), std::invalid_argument);
}

TEST(Solve, ConsistentAndInconsistentSystems) {
    Matrix<Rational> a(2, 2);
    a(0, 0) = Rational(1);
    a(0, 1) = Rational(2);
    a(1, 0) = Rational(3);
    a(1, 1) = Rational(4);
    std::vector<Rational> x;
    ASSERT_TRUE(solve(a, {Rational(5), Rational(6)}, x));
    EXPECT_EQ(x[0], Rational(-4));
    EXPECT_EQ(x[1], Rational(9, 2));
    Matrix<Rational> s(2, 1);
    s(0, 0) = Rational(1);
    s(1, 0) = Rational(1);
    EXPECT_FALSE(solve(s, {Rational(1), Rational(2)}, x));
}

TEST(Cyclotomic, RootsOfUnity) {
    for (int m : {3, 4, 5, 8, 12}) {
        Cyclotomic z = Cyclotomic::zeta(m), p(1), sum(0);
        for (int j = 0; j < m; ++j) {
            sum = sum + p;
            p = p * z;
        }
        EXPECT_EQ(p, Cyclotomic(1)) << m;
        EXPECT_TRUE(sum.is_zero()) << m;
    }
    Cyclotomic i = Cyclotomic::zeta(4);
    EXPECT_EQ(i * i, Cyclotomic(-1));
}

TEST(Cyclotomic, InverseConjugateAndEmbedding) {
    Cyclotomic z = Cyclotomic::zeta(5);
    Cyclotomic a = Cyclotomic(2) + z * z - Cyclotomic(Rational(1, 3)) * z;
    EXPECT_EQ(a * a.inverse(), Cyclotomic(1));
    EXPECT_EQ(z * z.conj(), Cyclotomic(1));
    auto c = a.to_complex(), e = a.embed(10).to_complex();
    EXPECT_NEAR(std::abs(c - e), 0.0, 1e-12);
    EXPECT_THROW(Cyclotomic(0).inverse(), std::exception);
}

TEST(Matrix, MultiplicationIsAssociative) {
    std::mt19937 rng(3);
    std::uniform_int_distribution<int> dist(-4, 4);
    Matrix<Rational> a(3, 3), b(3, 3), c(3, 3);
    for (auto* m : {&a, &b, &c})
        for (auto& x : m->data) x = Rational(dist(rng));
    EXPECT_EQ((a * b) * c, a * (b * c));
}
