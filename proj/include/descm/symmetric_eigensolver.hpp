#pragma once

#include <algorithm>
#include <cmath>
#include <concepts>
#include <limits>
#include <cstddef>
#include <numeric>
#include <string>
#include <vector>

#include "descm/errors.hpp"
#include "descm/matrix.hpp"

namespace descm {

/// Ascending eigenvalues; column k of `vectors` pairs with values[k].
struct EigenDecomposition {
    std::vector<double> values;
    Matrix vectors;
};

namespace detail {

template <std::floating_point T>
struct Tridiagonal {
    std::vector<T> diag;
    std::vector<T> off;  // off[i] couples i and i+1; off[n-1] unused
    std::vector<T> q;    // row-major n x n orthogonal factor (empty if not requested)
};

// Householder reduction A = Q T Q^T, proceeding from the top-left corner.
template <std::floating_point T>
Tridiagonal<T> tridiagonalize(const Matrix& a, bool want_q) {
    const std::size_t n = a.size();
    std::vector<T> w(n * n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j <= i; ++j) w[i * n + j] = w[j * n + i] = static_cast<T>(a(i, j));
    auto at = [&](std::size_t i, std::size_t j) -> T& { return w[i * n + j]; };

    std::vector<T> betas(n, T(0));
    std::vector<T> v(n), p(n);
    // The Householder vector for step k lives in column k below the subdiagonal,
    // with its leading entry kept in `lead`.
    std::vector<T> lead(n, T(0));

    for (std::size_t k = 0; k + 2 < n; ++k) {
        T scale = 0;
        for (std::size_t i = k + 1; i < n; ++i) scale = std::max(scale, std::abs(at(i, k)));
        if (scale == T(0)) continue;
        T sigma = 0;
        for (std::size_t i = k + 1; i < n; ++i) {
            v[i] = at(i, k) / scale;
            sigma += v[i] * v[i];
        }
        const T norm = std::sqrt(sigma);
        const T alpha = v[k + 1] >= T(0) ? -norm : norm;
        v[k + 1] -= alpha;
        T vnorm2 = 0;
        for (std::size_t i = k + 1; i < n; ++i) vnorm2 += v[i] * v[i];
        if (vnorm2 == T(0)) continue;
        const T beta = 2 / vnorm2;

        // p = beta * A22 v, w = p - (beta p.v / 2) v
        T pv = 0;
        for (std::size_t i = k + 1; i < n; ++i) {
            T s = 0;
            for (std::size_t j = k + 1; j < n; ++j) s += at(i, j) * v[j];
            p[i] = beta * s;
            pv += p[i] * v[i];
        }
        const T c = beta * pv / 2;
        for (std::size_t i = k + 1; i < n; ++i) p[i] -= c * v[i];
        for (std::size_t i = k + 1; i < n; ++i)
            for (std::size_t j = k + 1; j <= i; ++j) {
                at(i, j) -= v[i] * p[j] + p[i] * v[j];
                at(j, i) = at(i, j);
            }

        at(k + 1, k) = at(k, k + 1) = alpha * scale;
        for (std::size_t i = k + 2; i < n; ++i) {
            at(i, k) = v[i];
            at(k, i) = T(0);
        }
        lead[k] = v[k + 1];
        betas[k] = beta;
    }

    Tridiagonal<T> out;
    out.diag.resize(n);
    out.off.assign(n, T(0));
    for (std::size_t i = 0; i < n; ++i) out.diag[i] = at(i, i);
    for (std::size_t i = 0; i + 1 < n; ++i) out.off[i] = at(i + 1, i);

    if (want_q) {
        out.q.assign(n * n, T(0));
        for (std::size_t i = 0; i < n; ++i) out.q[i * n + i] = T(1);
        auto q = [&](std::size_t i, std::size_t j) -> T& { return out.q[i * n + j]; };
        for (std::size_t kk = n >= 2 ? n - 2 : 0; kk-- > 0;) {
            if (betas[kk] == T(0)) continue;
            v[kk + 1] = lead[kk];
            for (std::size_t i = kk + 2; i < n; ++i) v[i] = at(i, kk);
            // Q[k+1:, k+1:] = (I - beta v v^T) Q[k+1:, k+1:]
            for (std::size_t j = kk + 1; j < n; ++j) {
                T s = 0;
                for (std::size_t i = kk + 1; i < n; ++i) s += v[i] * q(i, j);
                s *= betas[kk];
                for (std::size_t i = kk + 1; i < n; ++i) q(i, j) -= s * v[i];
            }
        }
    }
    return out;
}

// QL deflates at the top of the matrix; it is accurate on graded matrices only
// when the large entries sit at the bottom. Flip T (and the columns of Q) when
// they sit at the top, so QL on the flipped matrix acts as QR on the original.
template <std::floating_point T>
void orient_for_ql(Tridiagonal<T>& tri) {
    const std::size_t n = tri.diag.size();
    if (n < 2 || std::abs(tri.diag.front()) <= std::abs(tri.diag.back())) return;
    std::reverse(tri.diag.begin(), tri.diag.end());
    std::reverse(tri.off.begin(), tri.off.begin() + static_cast<std::ptrdiff_t>(n - 1));
    if (!tri.q.empty())
        for (std::size_t i = 0; i < n; ++i)
            std::reverse(tri.q.begin() + static_cast<std::ptrdiff_t>(i * n),
                         tri.q.begin() + static_cast<std::ptrdiff_t>((i + 1) * n));
}

// Implicit QL with Wilkinson shifts on (diag, off); rotations are applied to
// the columns of z when it is non-empty. Deflation uses the local test
// |e_m| <= eps (|d_m| + |d_{m+1}|).
template <std::floating_point T>
void implicit_ql(std::vector<T>& d, std::vector<T>& e, std::vector<T>& z) {
    const std::size_t n = d.size();
    const bool vectors = !z.empty();
    const T eps = std::numeric_limits<T>::epsilon();
    const std::size_t max_iter = 30 * std::max<std::size_t>(n, 1);
    std::size_t total_iter = 0;

    for (std::size_t l = 0; l < n; ++l) {
        for (;;) {
            std::size_t m = l;
            for (; m + 1 < n; ++m) {
                const T dd = std::abs(d[m]) + std::abs(d[m + 1]);
                if (std::abs(e[m]) <= eps * dd) break;
            }
            if (m == l) break;
            if (++total_iter > max_iter)
                throw NoConvergence("symmetric eigensolver exceeded " + std::to_string(max_iter) +
                                    " QL iterations");

            T g = (d[l + 1] - d[l]) / (2 * e[l]);
            T r = std::hypot(g, T(1));
            g = d[m] - d[l] + e[l] / (g + std::copysign(r, g));
            T s = 1, c = 1, p = 0;
            bool underflow = false;
            for (std::size_t i = m; i-- > l;) {
                T f = s * e[i];
                const T b = c * e[i];
                r = std::hypot(f, g);
                e[i + 1] = r;
                if (r == T(0)) {
                    d[i + 1] -= p;
                    e[m] = 0;
                    underflow = true;
                    break;
                }
                s = f / r;
                c = g / r;
                g = d[i + 1] - p;
                r = (d[i] - g) * s + 2 * c * b;
                p = s * r;
                d[i + 1] = g + p;
                g = c * r - b;
                if (vectors) {
                    for (std::size_t k = 0; k < n; ++k) {
                        f = z[k * n + i + 1];
                        z[k * n + i + 1] = s * z[k * n + i] + c * f;
                        z[k * n + i] = c * z[k * n + i] - s * f;
                    }
                }
            }
            if (underflow) continue;
            d[l] -= p;
            e[l] = g;
            e[m] = 0;
        }
    }
}

inline void check_symmetric(const Matrix& a) {
    const std::size_t n = a.size();
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < i; ++j) {
            const double x = a(i, j), y = a(j, i);
            if (!std::isfinite(x) || !std::isfinite(y))
                throw NotSymmetric("matrix has non-finite entries");
            if (std::abs(x - y) > 1e-12 * std::max(std::abs(x), std::abs(y)))
                throw NotSymmetric("matrix is not symmetric at (" + std::to_string(i) + ", " +
                                   std::to_string(j) + ")");
        }
        if (!std::isfinite(a(i, i))) throw NotSymmetric("matrix has non-finite entries");
    }
}

template <std::floating_point T>
std::vector<std::size_t> ascending_order(const std::vector<T>& d) {
    std::vector<std::size_t> order(d.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return d[a] < d[b]; });
    return order;
}

}  // namespace detail

/// Eigenvalues only, ascending, computed in working precision T.
template <std::floating_point T = double>
std::vector<T> eigvals_sym(const Matrix& a) {
    if (a.size() == 0) throw DomainError("eigensolver: empty matrix");
    detail::check_symmetric(a);
    auto tri = detail::tridiagonalize<T>(a, false);
    detail::orient_for_ql(tri);
    std::vector<T> none;
    detail::implicit_ql(tri.diag, tri.off, none);
    std::vector<T> values = tri.diag;
    std::stable_sort(values.begin(), values.end());
    return values;
}

/**
 * Full symmetric eigendecomposition A = U diag(values) U^T.
 *
 * Eigenvalues ascend with ties kept in the order QL delivered them. Each
 * eigenvector has its largest-magnitude entry made positive.
 */
inline EigenDecomposition eig_sym(const Matrix& a) {
    const std::size_t n = a.size();
    if (n == 0) throw DomainError("eigensolver: empty matrix");
    detail::check_symmetric(a);
    auto tri = detail::tridiagonalize<double>(a, true);
    detail::orient_for_ql(tri);
    detail::implicit_ql(tri.diag, tri.off, tri.q);

    const auto order = detail::ascending_order(tri.diag);
    EigenDecomposition out{std::vector<double>(n), Matrix(n)};
    for (std::size_t k = 0; k < n; ++k) {
        const std::size_t src = order[k];
        out.values[k] = tri.diag[src];
        std::size_t big = 0;
        for (std::size_t i = 1; i < n; ++i)
            if (std::abs(tri.q[i * n + src]) > std::abs(tri.q[big * n + src])) big = i;
        const double sign = tri.q[big * n + src] < 0.0 ? -1.0 : 1.0;
        for (std::size_t i = 0; i < n; ++i) out.vectors(i, k) = sign * tri.q[i * n + src];
    }
    return out;
}

}  // namespace descm
