#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>
#include <vector>

#include "descm/sinc_basis.hpp"

namespace descm {
namespace {

using std::numbers::pi;

TEST(Sinc, Values) {
    EXPECT_EQ(sinc(0.0), 1.0);
    for (int k = -50; k <= 50; ++k)
        if (k != 0) {
            EXPECT_EQ(sinc(k), 0.0) << "k = " << k;
        }
    EXPECT_NEAR(sinc(0.5), 2.0 / pi, 1e-15);
    EXPECT_NEAR(sinc(2.5), 2.0 / (5.0 * pi), 1e-16);
    EXPECT_NEAR(sinc(-1.5), -2.0 / (3.0 * pi), 1e-16);
}

TEST(Sinc, TaylorBranchMatchesDirectFormula) {
    for (double z : {9.9e-5, 5e-5, 1e-5, 1e-8}) {
        const double direct = std::sin(pi * z) / (pi * z);
        EXPECT_NEAR(sinc(z), direct, 2e-16);
        EXPECT_NEAR(sinc(-z), direct, 2e-16);
    }
}

TEST(Sinc, ParityAndBound) {
    std::mt19937_64 rng(5);
    std::uniform_real_distribution<double> u(-40.0, 40.0);
    for (int i = 0; i < 10000; ++i) {
        const double z = u(rng);
        EXPECT_EQ(sinc(-z), sinc(z));
        EXPECT_LT(std::abs(sinc(z)), 1.0);
    }
}

TEST(SincBasis, Values) {
    EXPECT_EQ(sinc_basis(3, 0.5, 1.5), 1.0);
    EXPECT_EQ(sinc_basis(2, 0.5, 1.5), 0.0);
    EXPECT_NEAR(sinc_basis(0, 1.0, 0.5), 2.0 / pi, 1e-15);
}

TEST(SincBasis, DiscreteOrthogonality) {
    for (double h : {0.1, 0.3, 0.5, 1.0, 0.0734}) {
        const SincGrid grid{h, 100, 100};
        for (int j = -100; j <= 100; ++j)
            for (int k = -100; k <= 100; ++k)
                ASSERT_EQ(sinc_basis(j, h, grid.point(k)), j == k ? 1.0 : 0.0)
                    << "h=" << h << " j=" << j << " k=" << k;
    }
}

TEST(Delta2, Values) {
    EXPECT_DOUBLE_EQ(delta2(0, 0), -pi * pi / 3.0);
    EXPECT_EQ(delta2(0, 1), 2.0);
    EXPECT_EQ(delta2(0, 2), -0.5);
    EXPECT_EQ(delta2(5, 2), 2.0 / 9.0);
}

TEST(Delta2, ToeplitzAndSymmetric) {
    for (int j = -30; j <= 30; ++j)
        for (int k = -30; k <= 30; ++k) {
            EXPECT_EQ(delta2(j, k), delta2(k, j));
            EXPECT_EQ(delta2(j, k), delta2(0, k - j));
        }
}

TEST(Delta2, MatchesSecondDerivativeOfSinc) {
    // h^2 S''(j,h)(kh) by central differences of sinc itself with h = 1.
    const double step = 1e-4;
    for (int d = -4; d <= 4; ++d) {
        const double fd = (sinc(d + step) - 2.0 * sinc(d) + sinc(d - step)) / (step * step);
        EXPECT_NEAR(fd, delta2(0, d), 1e-6) << "d = " << d;
    }
}

TEST(Expansion, InterpolatesCoefficients) {
    std::mt19937_64 rng(17);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    for (double h : {0.1, 0.5, 1.0}) {
        const SincGrid grid{h, 50, 50};
        std::vector<double> c(grid.size());
        for (double& x : c) x = u(rng);
        for (int k = -50; k <= 50; ++k)
            ASSERT_EQ(evaluate_expansion(grid, c, grid.point(k)), c[static_cast<std::size_t>(k + 50)]);
    }
}

TEST(Expansion, ZeroCoefficients) {
    const SincGrid grid{0.3, 4, 7};
    std::vector<double> c(grid.size(), 0.0);
    EXPECT_EQ(evaluate_expansion(grid, c, 0.123), 0.0);
    EXPECT_THROW(evaluate_expansion(grid, std::vector<double>(3), 0.0), std::invalid_argument);
}

double interpolation_error(double (*g)(double), double h, double x) {
    const SincGrid grid{h, 40, 40};
    std::vector<double> c(grid.size());
    for (std::size_t s = 0; s < c.size(); ++s) c[s] = g(grid.point(grid.index_of(s)));
    return std::abs(evaluate_expansion(grid, c, x) - g(x));
}

TEST(Expansion, ApproximatesDoubleExponentialDecay) {
    auto g = [](double x) { return std::exp(-2.0 * std::cosh(x)); };
    EXPECT_LT(interpolation_error(g, 0.3, 0.15), 1e-8);
    EXPECT_LT(interpolation_error(g, 0.2, 0.1), 1e-12);
}

TEST(Expansion, KinkLimitsAccuracyToFirstOrder) {
    // exp(-e^|x|) decays just as fast but is not analytic at 0.
    auto g = [](double x) { return std::exp(-std::exp(std::abs(x))); };
    const double coarse = interpolation_error(g, 0.3, 0.15);
    const double fine = interpolation_error(g, 0.1, 0.05);
    EXPECT_GT(coarse, 1e-3);
    EXPECT_LT(fine, coarse);
    EXPECT_GT(fine, 1e-4);
}

}  // namespace
}  // namespace descm
