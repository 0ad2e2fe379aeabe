#pragma once

#include <cassert>
#include <cmath>
#include <cstddef>
#include <span>
#include <vector>

namespace descm {

/// Dense row-major square matrix of doubles.
class Matrix {
  public:
    Matrix() = default;
    explicit Matrix(std::size_t n, double fill = 0.0) : n_(n), data_(n * n, fill) {}

    static Matrix identity(std::size_t n) {
        Matrix m(n);
        for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
        return m;
    }

    std::size_t size() const noexcept { return n_; }

    double& operator()(std::size_t i, std::size_t j) noexcept {
        assert(i < n_ && j < n_);
        return data_[i * n_ + j];
    }
    double operator()(std::size_t i, std::size_t j) const noexcept {
        assert(i < n_ && j < n_);
        return data_[i * n_ + j];
    }

    std::span<double> row(std::size_t i) noexcept { return {data_.data() + i * n_, n_}; }
    std::span<const double> row(std::size_t i) const noexcept { return {data_.data() + i * n_, n_}; }

    std::span<const double> data() const noexcept { return data_; }

    Matrix transposed() const {
        Matrix t(n_);
        for (std::size_t i = 0; i < n_; ++i)
            for (std::size_t j = 0; j < n_; ++j) t(j, i) = (*this)(i, j);
        return t;
    }

    double frobenius_norm() const noexcept {
        double s = 0.0;
        for (double v : data_) s += v * v;
        return std::sqrt(s);
    }

    friend bool operator==(const Matrix&, const Matrix&) = default;

  private:
    std::size_t n_ = 0;
    std::vector<double> data_;
};

inline Matrix operator*(const Matrix& a, const Matrix& b) {
    const std::size_t n = a.size();
    Matrix c(n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t k = 0; k < n; ++k) {
            const double aik = a(i, k);
            if (aik == 0.0) continue;
            for (std::size_t j = 0; j < n; ++j) c(i, j) += aik * b(k, j);
        }
    return c;
}

inline Matrix operator-(Matrix a, const Matrix& b) {
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < a.size(); ++j) a(i, j) -= b(i, j);
    return a;
}

}  // namespace descm
