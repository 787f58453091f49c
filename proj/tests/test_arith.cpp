#include <limits>
#include <random>

#include <gtest/gtest.h>

#include "galcert/arith.hpp"
#include "oracles.hpp"

using namespace galcert;

TEST(ModPow, KnownValues) {
    EXPECT_EQ(oracle::repeated_product(2, 4, 11), 5);
    EXPECT_EQ(mod_pow(2, 4, 11).value(), 5);
    EXPECT_EQ(mod_pow(7, 0, 13).value(), 1);
    EXPECT_EQ(256 - 23 * 11, 3);
    EXPECT_EQ(mod_pow(2, 8, 11).value(), 3);
}

TEST(ModPow, ZeroToTheZeroIsOne) {
    EXPECT_EQ(mod_pow(0, 0, 7).value(), 1);
    EXPECT_EQ(mod_pow(14, 0, 7).value(), 1);
    EXPECT_EQ(mod_pow(14, 3, 7).value(), 0);
}

TEST(ModPow, NegativeBaseIsCanonicalized) {
    EXPECT_EQ(mod_pow(-31, 1, 11).value(), 2);
    EXPECT_EQ(mod_pow(-1, 3, 13).value(), 12);
}

TEST(ModPow, RejectsNonPrimeModulus) {
    EXPECT_THROW(mod_pow(2, 3, 15), error);
    EXPECT_THROW(mod_pow(2, 3, 2), error);
    EXPECT_THROW(mod_pow(2, 3, 1), error);
    try {
        mod_pow(2, 3, 9);
        FAIL();
    } catch (const error& e) {
        EXPECT_EQ(e.code(), errc::not_prime);
    }
}

TEST(ModPow, AgreesWithRepeatedMultiplication) {
    for (i64 ell = 3; ell < 100; ++ell) {
        if (!oracle::prime_by_divisors(ell)) continue;
        for (i64 base = 0; base < 50; ++base)
            for (i64 exp = 0; exp < 50; ++exp)
                ASSERT_EQ(mod_pow(base, exp, ell).value(), oracle::repeated_product(base, exp, ell))
                    << base << "^" << exp << " mod " << ell;
    }
}

TEST(ModInv, KnownValues) {
    EXPECT_EQ(oracle::search_inverse(4, 11), 3);
    EXPECT_EQ(mod_inv(4, 11).value(), 3);
    EXPECT_EQ(mod_inv(1, 101).value(), 1);
    EXPECT_EQ(oracle::search_inverse(4, 7), 2);
    EXPECT_EQ(mod_inv(4, 7).value(), 2);
    EXPECT_EQ(mod_inv(-4, 7).value(), 5);
}

TEST(ModInv, ZeroIsNotInvertible) {
    try {
        mod_inv(22, 11);
        FAIL();
    } catch (const error& e) {
        EXPECT_EQ(e.code(), errc::not_invertible);
        EXPECT_NE(std::string(e.what()).find("not invertible"), std::string::npos);
    }
}

TEST(ModInv, InverseProperty) {
    for (i64 ell : {3, 5, 7, 11, 101, 997, 7919}) {
        const PrimeModulus m(ell);
        for (i64 a = 1; a < std::min<i64>(ell, 300); ++a) ASSERT_EQ(m.mul(a, mod_inv(a, m).value()), 1);
    }
}

TEST(Legendre, KnownValues) {
    EXPECT_EQ(oracle::legendre_by_squares(2, 11), -1);
    EXPECT_EQ(legendre(2, 11), -1);
    EXPECT_EQ(legendre(-31, 11), -1);
    EXPECT_EQ(legendre(0, 7), 0);
    EXPECT_EQ(oracle::squares(7), (std::set<i64>{1, 2, 4}));
    EXPECT_EQ(legendre(2, 7), 1);
}

TEST(Legendre, EulersCriterion) {
    for (i64 ell = 3; ell <= 1000; ++ell) {
        if (!is_prime(ell)) continue;
        for (i64 a = -20; a < 2 * ell; ++a) {
            const i64 euler = oracle::repeated_product(a, (ell - 1) / 2, ell);
            const int symbol = legendre(a, ell);
            ASSERT_EQ(oracle::canon(symbol, ell), euler) << "a=" << a << " ell=" << ell;
        }
    }
}

TEST(Legendre, Multiplicative) {
    std::mt19937_64 rng(20240601);
    std::uniform_int_distribution<i64> value(-1000000, 1000000);
    const std::vector<i64> moduli{3, 5, 7, 11, 13, 101, 7919, 104729};
    for (int trial = 0; trial < 5000; ++trial) {
        const i64 ell = moduli[trial % moduli.size()];
        const i64 a = value(rng), b = value(rng);
        ASSERT_EQ(legendre(a * b, ell), legendre(a, ell) * legendre(b, ell));
    }
}

TEST(Isqrt, KnownValues) {
    EXPECT_EQ(isqrt(8), 2);
    EXPECT_EQ(isqrt(0), 0);
    EXPECT_EQ(isqrt(16), 4);
    EXPECT_EQ(isqrt(1), 1);
    EXPECT_THROW(isqrt(-1), error);
}

TEST(Isqrt, FloorProperty) {
    for (i64 n = 0; n < 20000; ++n) ASSERT_EQ(isqrt(n), oracle::counting_isqrt(n));
    std::mt19937_64 rng(7);
    std::uniform_int_distribution<i64> big(0, std::numeric_limits<i64>::max());
    for (int i = 0; i < 2000; ++i) {
        const i64 n = big(rng);
        const i128 r = isqrt(n);
        ASSERT_LE(r * r, n);
        ASSERT_GT((r + 1) * (r + 1), n);
    }
}

TEST(TrialFactor, KnownValues) {
    const std::vector<std::pair<i64, int>> want{{5, 3}, {11, 1}};
    EXPECT_EQ(oracle::strip_factor(1375), want);
    EXPECT_EQ(trial_factor(1375).factors, (std::vector<PrimePower>{{5, 3}, {11, 1}}));
    EXPECT_EQ(trial_factor(512).factors, (std::vector<PrimePower>{{2, 9}}));
    EXPECT_EQ(trial_factor(2).factors, (std::vector<PrimePower>{{2, 1}}));
    EXPECT_EQ(trial_factor(1289).factors, (std::vector<PrimePower>{{1289, 1}}));
}

TEST(TrialFactor, RejectsSmallInputs) {
    EXPECT_THROW(trial_factor(1), error);
    EXPECT_THROW(trial_factor(0), error);
    EXPECT_THROW(trial_factor(-6), error);
}

TEST(TrialFactor, ReconstructsAndPrimesIncrease) {
    std::mt19937_64 rng(99);
    std::uniform_int_distribution<i64> value(2, 5'000'000);
    for (int i = 0; i < 3000; ++i) {
        const i64 n = i < 2000 ? i + 2 : value(rng);
        const auto f = trial_factor(n);
        i64 prod = 1, last = 1;
        for (const auto& [q, e] : f.factors) {
            ASSERT_GT(q, last);
            ASSERT_TRUE(q > 100000 ? is_prime(q) : oracle::prime_by_divisors(q));
            for (int k = 0; k < e; ++k) prod *= q;
            last = q;
        }
        ASSERT_EQ(prod, n);
        ASSERT_EQ(f.input, n);
    }
}

TEST(HasseInterval, KnownValues) {
    EXPECT_EQ(hasse_interval(2), (std::set<i64>{-2, -1, 0, 1, 2}));
    EXPECT_EQ(oracle::counting_isqrt(12), 3);
    EXPECT_EQ(hasse_interval(3), (std::set<i64>{-3, -2, -1, 0, 1, 2, 3}));
    EXPECT_EQ(oracle::counting_isqrt(20), 4);
    EXPECT_EQ(hasse_interval(5), (std::set<i64>{-4, -3, -2, -1, 0, 1, 2, 3, 4}));
    EXPECT_THROW(hasse_interval(4), error);
}

TEST(HasseInterval, SymmetricAndContainsZero) {
    for (i64 p = 2; p < 2000; ++p) {
        if (!is_prime(p)) continue;
        const auto h = hasse_interval(p);
        ASSERT_TRUE(h.contains(0));
        for (i64 t : h) {
            ASSERT_TRUE(h.contains(-t));
            ASSERT_LE(t * t, 4 * p);
        }
        const i64 b = *h.rbegin() + 1;
        ASSERT_GT(b * b, 4 * p);
    }
}

TEST(Checked, OverflowIsReported) {
    EXPECT_EQ(checked_pow(11, 3), 1331);
    EXPECT_THROW(checked_pow(10, 19), error);
    EXPECT_THROW(checked_mul(std::numeric_limits<i64>::max(), 2), error);
    try {
        checked_pow(3, 40);
        FAIL();
    } catch (const error& e) {
        EXPECT_EQ(e.code(), errc::overflow);
    }
}

TEST(Primality, MatchesDivisorSearch) {
    for (i64 n = -5; n < 3000; ++n) ASSERT_EQ(is_prime(n), oracle::prime_by_divisors(n)) << n;
}
