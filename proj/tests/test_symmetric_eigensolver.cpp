#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "descm/symmetric_eigensolver.hpp"
#include "test_support.hpp"

namespace descm {
namespace {

Matrix reconstruct(const EigenDecomposition& e) {
    const std::size_t n = e.values.size();
    Matrix out(n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            double s = 0.0;
            for (std::size_t k = 0; k < n; ++k) s += e.vectors(i, k) * e.values[k] * e.vectors(j, k);
            out(i, j) = s;
        }
    return out;
}

double orthonormality_error(const Matrix& u) {
    const Matrix g = u.transposed() * u;
    double worst = 0.0;
    for (std::size_t i = 0; i < g.size(); ++i)
        for (std::size_t j = 0; j < g.size(); ++j)
            worst = std::max(worst, std::abs(g(i, j) - (i == j ? 1.0 : 0.0)));
    return worst;
}

TEST(EigSym, Diagonal) {
    Matrix a(3);
    a(0, 0) = 3;
    a(1, 1) = 1;
    a(2, 2) = 2;
    auto e = eig_sym(a);
    EXPECT_EQ(e.values, (std::vector<double>{1, 2, 3}));
    EXPECT_EQ(e.vectors(1, 0), 1.0);
    EXPECT_EQ(e.vectors(2, 1), 1.0);
    EXPECT_EQ(e.vectors(0, 2), 1.0);
}

TEST(EigSym, TwoByTwo) {
    Matrix a(2);
    a(0, 0) = a(1, 1) = 2;
    a(0, 1) = a(1, 0) = 1;
    auto e = eig_sym(a);
    EXPECT_NEAR(e.values[0], 1.0, 1e-15);
    EXPECT_NEAR(e.values[1], 3.0, 1e-15);
    const double r = 1.0 / std::sqrt(2.0);
    EXPECT_NEAR(std::abs(e.vectors(0, 0)), r, 1e-15);
    EXPECT_NEAR(e.vectors(0, 0), -e.vectors(1, 0), 1e-15);
    EXPECT_NEAR(e.vectors(0, 1), r, 1e-15);
    EXPECT_NEAR(e.vectors(1, 1), r, 1e-15);
}

TEST(EigSym, OneByOne) {
    Matrix a(1, -4.5);
    auto e = eig_sym(a);
    EXPECT_EQ(e.values[0], -4.5);
    EXPECT_EQ(e.vectors(0, 0), 1.0);
}

TEST(EigSym, RandomReconstructionAndOrthonormality) {
    std::mt19937_64 rng(123);
    for (std::size_t n : {2u, 5u, 17u, 50u, 121u}) {
        const Matrix a = testing::random_symmetric(n, rng);
        const auto e = eig_sym(a);
        EXPECT_LE((reconstruct(e) - a).frobenius_norm(), 1e-12 * a.frobenius_norm()) << "n = " << n;
        EXPECT_LE(orthonormality_error(e.vectors), 1e-12) << "n = " << n;
        EXPECT_TRUE(std::is_sorted(e.values.begin(), e.values.end()));

        double trace = 0.0, sum = 0.0;
        for (std::size_t i = 0; i < n; ++i) trace += a(i, i);
        for (double v : e.values) sum += v;
        EXPECT_NEAR(sum, trace, 1e-11 * std::max(1.0, a.frobenius_norm()));

        for (std::size_t k = 0; k < n; ++k) {
            double r2 = 0.0;
            for (std::size_t i = 0; i < n; ++i) {
                double s = -e.values[k] * e.vectors(i, k);
                for (std::size_t j = 0; j < n; ++j) s += a(i, j) * e.vectors(j, k);
                r2 += s * s;
            }
            EXPECT_LE(std::sqrt(r2), 1e-12 * a.frobenius_norm());
        }
    }
}

TEST(EigSym, SignConvention) {
    std::mt19937_64 rng(8);
    const auto e = eig_sym(testing::random_symmetric(30, rng));
    for (std::size_t k = 0; k < 30; ++k) {
        std::size_t big = 0;
        for (std::size_t i = 1; i < 30; ++i)
            if (std::abs(e.vectors(i, k)) > std::abs(e.vectors(big, k))) big = i;
        EXPECT_GT(e.vectors(big, k), 0.0);
    }
}

TEST(EigSym, Deterministic) {
    std::mt19937_64 rng(4);
    const Matrix a = testing::random_symmetric(40, rng);
    const auto e1 = eig_sym(a), e2 = eig_sym(a);
    EXPECT_EQ(e1.values, e2.values);
    EXPECT_EQ(e1.vectors, e2.vectors);
}

TEST(EigSym, ValuesOnlyAgreesWithFull) {
    std::mt19937_64 rng(21);
    const Matrix a = testing::random_symmetric(60, rng);
    const auto full = eig_sym(a);
    const auto values = eigvals_sym(a);
    for (std::size_t k = 0; k < 60; ++k) EXPECT_NEAR(values[k], full.values[k], 1e-13);
}

TEST(EigSym, DegenerateSpectrum) {
    Matrix a = Matrix::identity(6);
    a(5, 5) = 2.0;
    const auto e = eig_sym(a);
    for (int k = 0; k < 5; ++k) EXPECT_EQ(e.values[static_cast<std::size_t>(k)], 1.0);
    EXPECT_EQ(e.values[5], 2.0);
    EXPECT_LE(orthonormality_error(e.vectors), 1e-15);
}

TEST(EigSym, GradedMatrixSmallEigenvalueAccuracy) {
    // Diagonally graded tridiagonal-plus-dense matrix whose smallest eigenvalue
    // is O(1) while the norm is ~1e8; compare against long double.
    const std::size_t n = 60;
    Matrix a(n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            const double g = std::exp(-0.15 * (static_cast<double>(i) + static_cast<double>(j)));
            const double base = i == j ? 3.0 : 1.0 / (1.0 + std::abs(double(i) - double(j)));
            a(i, j) = base * g * 1e8;
        }
    const auto ref = eigvals_sym<long double>(a);
    const auto got = eigvals_sym<double>(a);
    for (std::size_t k = 0; k < 5; ++k)
        EXPECT_NEAR(got[k], static_cast<double>(ref[k]), 1e-10 * std::abs(static_cast<double>(ref[k])) + 1e-12);
}

TEST(EigSym, Errors) {
    Matrix a(2);
    a(0, 1) = 1.0;
    a(1, 0) = 1.1;
    EXPECT_THROW(eig_sym(a), NotSymmetric);
    EXPECT_THROW(eig_sym(Matrix()), DomainError);
    Matrix b(2);
    b(0, 0) = std::nan("");
    EXPECT_THROW(eig_sym(b), NotSymmetric);
}

}  // namespace
}  // namespace descm
