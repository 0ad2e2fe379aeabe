#pragma once

#include <cmath>
#include <cstddef>
#include <limits>
#include <numbers>
#include <span>
#include <stdexcept>

namespace descm {

/// sin(pi z)/(pi z), equal to 1 at z = 0.
///
/// The sine is evaluated on the reduced argument z - round(z), so the zeros
/// at nonzero integers are exact.
inline double sinc(double z) noexcept {
    using std::numbers::pi;
    if (std::abs(z) < 1e-4) {
        const double t = pi * z;
        const double t2 = t * t;
        return 1.0 - t2 / 6.0 + t2 * t2 / 120.0;
    }
    const double n = std::nearbyint(z);
    const double r = z - n;
    if (r == 0.0) return 0.0;
    const double s = std::sin(pi * r);
    const bool odd = std::fmod(std::abs(n), 2.0) == 1.0;
    return (odd ? -s : s) / (pi * z);
}

/// S(j,h)(x) = sinc(x/h - j), the cardinal function centred at x = j h.
///
/// x/h within 4 ulp of an integer is snapped to it: fl(fl(k h)/h) misses k
/// for roughly one (k, h) pair in ten.
inline double sinc_basis(int j, double h, double x) noexcept {
    double t = x / h;
    const double n = std::nearbyint(t);
    if (std::abs(t - n) <= 4.0 * std::numeric_limits<double>::epsilon() * std::abs(n)) t = n;
    return sinc(t - j);
}

/// h^2 times the second derivative of S(j,h) at x = k h. Toeplitz and symmetric.
constexpr double delta2(int j, int k) noexcept {
    const long d = static_cast<long>(k) - j;
    if (d == 0) return -std::numbers::pi * std::numbers::pi / 3.0;
    const double sign = (d % 2 == 0) ? 1.0 : -1.0;
    return -2.0 * sign / static_cast<double>(d * d);
}

constexpr double delta0(int j, int k) noexcept { return j == k ? 1.0 : 0.0; }

/// Collocation abscissae x_j = j h for j = -M..N.
struct SincGrid {
    double h;
    int M;
    int N;

    std::size_t size() const noexcept { return static_cast<std::size_t>(M + N + 1); }
    int index_of(std::size_t slot) const noexcept { return static_cast<int>(slot) - M; }
    double point(int j) const noexcept { return j * h; }
};

/// sum_{j=-M}^{N} coeffs[j+M] S(j,h)(x).
inline double evaluate_expansion(const SincGrid& grid, std::span<const double> coeffs, double x) {
    if (coeffs.size() != grid.size())
        throw std::invalid_argument("expansion coefficient count does not match grid");
    double sum = 0.0;
    for (std::size_t s = 0; s < coeffs.size(); ++s)
        sum += coeffs[s] * sinc_basis(grid.index_of(s), grid.h, x);
    return sum;
}

}  // namespace descm
