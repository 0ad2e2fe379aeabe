#include <gtest/gtest.h>

#include <random>

#include "descm/laurent_potential.hpp"
#include "test_support.hpp"

namespace descm {
namespace {

TEST(LaurentPotential, ExactFamilyHalfIsValid) {
    auto pot = LaurentPotential::validate({{2, 1.0}, {-6, 9.0 / 64.0}});
    EXPECT_EQ(pot.p(), 6);
    EXPECT_EQ(pot.q(), 2);
    EXPECT_EQ(pot.terms().front().exponent, -6);  // canonical order
    EXPECT_DOUBLE_EQ(pot.leading_singular(), 9.0 / 64.0);
}

TEST(LaurentPotential, RejectsWeakSingularity) {
    EXPECT_THROW(LaurentPotential::validate({{-2, 1.0}, {2, 1.0}}), RejectedPotential);
}

TEST(LaurentPotential, RejectsBadBoundaryCoefficients) {
    EXPECT_THROW(LaurentPotential::validate({{-3, -1.0}, {2, 1.0}}), RejectedPotential);
    EXPECT_THROW(LaurentPotential::validate({{-3, 1.0}, {2, 0.0}}), RejectedPotential);
    EXPECT_THROW(LaurentPotential::validate({{-3, 0.0}, {2, 1.0}}), RejectedPotential);
    EXPECT_THROW(LaurentPotential::validate({{-3, 1.0}, {-1, 1.0}}), RejectedPotential);
    EXPECT_THROW(LaurentPotential::validate({{-3, 1.0}, {1, -1.0}, {1, 1.0}}), RejectedPotential);
}

TEST(LaurentPotential, RejectsDuplicatesAndEmpty) {
    EXPECT_THROW(LaurentPotential::validate({{-3, 1.0}, {0, 1.0}, {0, 2.0}, {2, 1.0}}),
                 RejectedPotential);
    EXPECT_THROW(LaurentPotential::validate({}), RejectedPotential);
}

TEST(LaurentPotential, ZeroInteriorAllowed) {
    auto pot = LaurentPotential::validate({{-3, 10.0}, {0, 0.0}, {8, 5.0}, {1, -2.5}});
    EXPECT_EQ(pot.p(), 3);
    EXPECT_EQ(pot.q(), 8);
    EXPECT_EQ(pot.coefficient(1), -2.5);
    EXPECT_EQ(pot.coefficient(5), 0.0);
}

TEST(LaurentPotential, Evaluate) {
    auto pot = LaurentPotential::validate({{-6, 9.0 / 64.0}, {2, 1.0}});
    EXPECT_DOUBLE_EQ(pot(1.0), 73.0 / 64.0);
    EXPECT_THROW(pot(0.0), DomainError);
    EXPECT_THROW(pot(-1.0), DomainError);
}

TEST(LaurentPotential, HornerMatchesNaiveSum) {
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> coef(-5.0, 5.0);
    std::vector<Term> terms;
    for (int e = -3; e <= 8; ++e) terms.push_back({e, coef(rng)});
    terms.front().coefficient = 10.0;
    terms.back().coefficient = 5.0;
    auto pot = LaurentPotential::validate(terms);
    const double ref = testing::naive_sum(pot, 2.0);
    EXPECT_NEAR(pot(2.0), ref, 1e-14 * std::abs(ref));

    std::uniform_real_distribution<double> logx(std::log(1e-2), std::log(1e2));
    for (int trial = 0; trial < 200; ++trial) {
        auto random_pot = testing::random_valid_potential(rng);
        const double x = std::exp(logx(rng));
        const double naive = testing::naive_sum(random_pot, x);
        // Cancellation among the terms bounds the attainable relative accuracy.
        double scale = 0.0;
        for (const auto& t : random_pot.terms()) scale += std::abs(t.coefficient * std::pow(x, t.exponent));
        EXPECT_NEAR(random_pot(x), naive, 1e-14 * scale) << "x = " << x;
    }
}

TEST(LaurentPotential, BlowsUpAtBothEnds) {
    std::mt19937_64 rng(11);
    for (int trial = 0; trial < 50; ++trial) {
        auto pot = testing::random_valid_potential(rng);
        EXPECT_GT(pot(1e-4), 1e6);
        EXPECT_GT(pot(1e4), 1e3);
    }
}

TEST(LaurentPotential, Shift) {
    auto pot = LaurentPotential::validate({{-6, 1.0}, {2, 1.0}});
    EXPECT_EQ(pot.shift(0.0), pot);
    EXPECT_DOUBLE_EQ(pot.shift(3.0)(1.0), 5.0);
    EXPECT_EQ(pot.shift(3.0).shift(-3.0), pot);

    auto with_const = LaurentPotential::validate({{-3, 2.0}, {0, 0.75}, {1, 1.0}});
    const auto shifted = with_const.shift(-1.25);
    for (const auto& t : shifted.terms())
        if (t.exponent != 0) {
            EXPECT_EQ(t.coefficient, with_const.coefficient(t.exponent));
        }
    EXPECT_EQ(shifted.coefficient(0), -0.5);
    EXPECT_EQ(shifted.shift(1.25), with_const);
}

TEST(LaurentPotential, ShiftAddsConstantEverywhere) {
    std::mt19937_64 rng(3);
    for (int trial = 0; trial < 20; ++trial) {
        auto pot = testing::random_valid_potential(rng);
        for (double c : {-5.0, 1.0, 100.0}) {
            auto s = pot.shift(c);
            for (double x : {0.3, 1.0, 1.7}) EXPECT_NEAR(s(x), pot(x) + c, 1e-12 * (std::abs(pot(x)) + std::abs(c)));
        }
    }
}

}  // namespace
}  // namespace descm
