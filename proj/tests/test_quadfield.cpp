#include <random>

#include <gtest/gtest.h>

#include "galcert/quadfield.hpp"
#include "oracles.hpp"

using namespace galcert;

namespace {

const CoefficientField sqrt2 = CoefficientField::quadratic(2);

std::vector<i64> roots_by_search(i64 d, i64 ell) {
    std::vector<i64> out;
    for (i64 r = 1; r < ell; ++r)
        if (r * r % ell == oracle::canon(d, ell)) out.push_back(r);
    return out;
}

} // namespace

TEST(Splits, KnownValues) {
    EXPECT_TRUE(splits(2, 7));
    EXPECT_EQ(oracle::squares(11), (std::set<i64>{1, 3, 4, 5, 9}));
    EXPECT_FALSE(splits(2, 11));
    EXPECT_EQ(36 % 17, 2);
    EXPECT_TRUE(splits(2, 17));
}

TEST(Splits, RamifiedIsAnError) {
    try {
        splits(3, 3);
        FAIL();
    } catch (const error& e) {
        EXPECT_EQ(e.code(), errc::ramified);
    }
    EXPECT_THROW(splits(15, 5), error);
}

TEST(Splits, AgreesWithRootSearch) {
    for (i64 ell = 3; ell < 400; ++ell) {
        if (!is_prime(ell)) continue;
        for (i64 d : {2, 3, 5, 6, 7, 10, 11, 13, 14, 15}) {
            if (d % ell == 0) continue;
            ASSERT_EQ(splits(d, ell), !roots_by_search(d, ell).empty()) << d << " " << ell;
        }
    }
}

TEST(EmbeddingChoices, KnownValues) {
    EXPECT_EQ(roots_by_search(2, 7), (std::vector<i64>{3, 4}));
    const auto [a, b] = embedding_choices(2, 7);
    EXPECT_EQ(a.root(), 3);
    EXPECT_EQ(b.root(), 4);

    EXPECT_EQ(roots_by_search(2, 17), (std::vector<i64>{6, 11}));
    const auto [c, e] = embedding_choices(2, 17);
    EXPECT_EQ(c.root(), 6);
    EXPECT_EQ(e.root(), 11);
}

TEST(EmbeddingChoices, InertIsAnError) {
    try {
        embedding_choices(2, 11);
        FAIL();
    } catch (const error& e) {
        EXPECT_EQ(e.code(), errc::inert);
        EXPECT_NE(std::string(e.what()).find("no rational embedding"), std::string::npos);
    }
}

TEST(EmbeddingChoice, RejectsWrongRoot) {
    EXPECT_THROW(EmbeddingChoice(PrimeModulus(7), 2, 2), error);
    EXPECT_NO_THROW(EmbeddingChoice(PrimeModulus(7), 2, 4));
}

TEST(Reduce, KnownValues) {
    const EmbeddingChoice e(PrimeModulus(7), 2, 3);
    EXPECT_EQ(reduce(QuadInt(0, 6, sqrt2), e).value(), 4);
    EXPECT_EQ(reduce(QuadInt(-4), e).value(), 3);
    EXPECT_EQ(reduce(QuadInt(-4), EmbeddingChoice(PrimeModulus(7), 2, 4)).value(), 3);
    EXPECT_EQ(reduce(QuadInt(0), e).value(), 0);
    EXPECT_EQ(reduce(QuadInt(0, 6, sqrt2), EmbeddingChoice(PrimeModulus(7), 2, 4)).value(), 3);
}

TEST(Reduce, MismatchedFieldIsAnError) {
    const EmbeddingChoice e(PrimeModulus(7), 2, 3);
    EXPECT_THROW(reduce(QuadInt(1, 1, CoefficientField::quadratic(3)), e), error);
    EXPECT_THROW(reduce(QuadInt(1, 1, sqrt2), PrimeModulus(7)), error);
    EXPECT_EQ(reduce(QuadInt(-31), PrimeModulus(11)).value(), 2);
}

TEST(Reduce, IsRingHomomorphism) {
    std::mt19937_64 rng(314159);
    std::uniform_int_distribution<i64> coef(-100000, 100000);
    const std::vector<std::pair<i64, i64>> fields{{2, 7}, {2, 17}, {3, 11}, {5, 11}, {7, 29}, {13, 17}};
    for (int trial = 0; trial < 4000; ++trial) {
        const auto [d, ell] = fields[trial % fields.size()];
        const auto field = CoefficientField::quadratic(d);
        for (i64 r : roots_by_search(d, ell)) {
            const EmbeddingChoice e(PrimeModulus(ell), d, r);
            const QuadInt u(coef(rng), coef(rng), field), v(coef(rng), coef(rng), field);
            ASSERT_EQ(reduce(u + v, e), reduce(u, e) + reduce(v, e));
            ASSERT_EQ(reduce(u - v, e), reduce(u, e) - reduce(v, e));
            ASSERT_EQ(reduce(u * v, e), reduce(u, e) * reduce(v, e));
            // direct evaluation at the root as the reference
            ASSERT_EQ(reduce(u, e).value(), oracle::canon(oracle::canon(u.x(), ell) + oracle::canon(u.y(), ell) * r, ell));
        }
    }
}

TEST(QuadInt, Arithmetic) {
    const QuadInt a(1, 1, sqrt2), b(1, -1, sqrt2);
    EXPECT_EQ(a * b, QuadInt(-1, 0, sqrt2));
    EXPECT_EQ(QuadInt(0, 6, sqrt2) * QuadInt(0, 6, sqrt2), QuadInt(72, 0, sqrt2));
    EXPECT_EQ(a + QuadInt(2), QuadInt(3, 1, sqrt2));
    EXPECT_THROW(a + QuadInt(0, 1, CoefficientField::quadratic(3)), error);
    EXPECT_THROW(QuadInt(1, 1, CoefficientField::rational()), error);
    EXPECT_THROW(CoefficientField::quadratic(8), error);
    EXPECT_THROW(CoefficientField::quadratic(1), error);
}

TEST(NormDiscriminant, KnownValues) {
    EXPECT_EQ(72 - 4 * 29, -44);
    EXPECT_EQ(norm_discriminant(QuadInt(0, 6, sqrt2), 29, 2), -44);
    EXPECT_EQ(norm_discriminant(QuadInt(1), 2, 4), -31);
    for (i64 p : {2, 3, 5, 7, 101}) EXPECT_EQ(norm_discriminant(QuadInt(0), p, 2), -4 * p);
}

TEST(NormDiscriminant, MixedValueIsAnError) {
    try {
        norm_discriminant(QuadInt(1, 1, sqrt2), 3, 2);
        FAIL();
    } catch (const error& e) {
        EXPECT_EQ(e.code(), errc::not_rational);
        EXPECT_NE(std::string(e.what()).find("discriminant not rational; supply embedding first"), std::string::npos);
    }
}

// The symbol of a rational discriminant cannot depend on which root is chosen.
TEST(NormDiscriminant, SymbolIsEmbeddingIndependent) {
    std::mt19937_64 rng(2718);
    std::uniform_int_distribution<i64> coef(-50, 50);
    const std::vector<i64> ps{3, 5, 11, 13, 29, 31};
    for (int trial = 0; trial < 2000; ++trial) {
        const i64 p = ps[trial % ps.size()];
        const bool pure = trial % 2;
        const QuadInt a = pure ? QuadInt(0, coef(rng), sqrt2) : QuadInt(coef(rng));
        const i64 delta = norm_discriminant(a, p, 2);
        for (i64 ell : {7, 17, 23, 41}) {
            if (p == ell) continue;
            const auto [e1, e2] = embedding_choices(2, ell);
            const Residue four_p(4 * p, PrimeModulus(ell));
            const Residue t1 = reduce(a, e1), t2 = reduce(a, e2);
            const i64 d1 = (t1 * t1 - four_p).value(), d2 = (t2 * t2 - four_p).value();
            ASSERT_EQ(d1, d2);
            ASSERT_EQ(d1, oracle::canon(delta, ell));
            ASSERT_EQ(legendre(d1, ell), legendre(delta, ell));
        }
    }
}
