#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <optional>
#include <string>

#include "descm/errors.hpp"
#include "descm/laurent_potential.hpp"

namespace descm {

/// phi(u) = e^u, mapping the real line onto (0, inf).
struct ConformalMap {
    static double phi(double u) noexcept { return std::exp(u); }
    static double derivative(double u) noexcept { return std::exp(u); }
    static double inverse(double x) noexcept { return std::log(x); }
};

/// Double-exponential decay of the transformed eigenfunction:
/// |v(u)| <~ exp(-beta_left e^{gamma_left |u|}) as u -> -inf, and the
/// analogous bound with the right-hand parameters as u -> +inf.
struct DecayParameters {
    double beta_left;
    double beta_right;
    double gamma_left;
    double gamma_right;
};

/// WKB decay rates of psi at 0+ and at infinity, carried through phi = e^u.
inline DecayParameters decay_parameters(const LaurentPotential& pot) {
    const double p = pot.p();
    const double q = pot.q();
    return DecayParameters{
        .beta_left = 2.0 * std::sqrt(pot.leading_singular()) / (p - 2.0),
        .beta_right = 2.0 * std::sqrt(pot.leading_confining()) / (q + 2.0),
        .gamma_left = (p - 2.0) / 2.0,
        .gamma_right = (q + 2.0) / 2.0,
    };
}

/// Principal branch of the Lambert W function: w e^w = z, w >= -1.
inline double lambert_w(double z) {
    constexpr double branch_point = -1.0 / std::numbers::e;
    if (std::isnan(z) || z < branch_point) throw DomainError("lambert_w: argument below -1/e");
    if (z == 0.0) return 0.0;
    if (z == branch_point) return -1.0;
    if (std::isinf(z)) return z;

    double w;
    if (z < -0.25) {
        // series about the branch point in p = sqrt(2(ez + 1))
        const double p = std::sqrt(2.0 * (std::numbers::e * z + 1.0));
        w = -1.0 + p * (1.0 + p * (-1.0 / 3.0 + p * 11.0 / 72.0));
    } else {
        w = std::log1p(z);
    }
    for (int iter = 0; iter < 50; ++iter) {
        const double ew = std::exp(w);
        const double f = w * ew - z;
        if (f == 0.0) break;
        const double wp1 = w + 1.0;
        const double step = f / (ew * wp1 - (w + 2.0) * f / (2.0 * wp1));
        const double next = std::max(w - step, -1.0);
        const bool done = std::abs(next - w) <= 1e-15 * std::abs(next);
        w = next;
        if (done) break;
    }
    return w;
}

enum class Side { Left, Right };

/**
 * Truncation and step size of the Sinc grid on u in [-M h, N h].
 *
 * The dominant side carries n_dominant points and fixes h through the
 * Lambert-W rule h = W(pi d gamma n / beta) / (gamma n). The other count
 * balances the two boundary truncation errors,
 * beta_L exp(gamma_L M h) = beta_R exp(gamma_R N h).
 */
struct MeshPlan {
    DecayParameters decay;
    Side dominant_side;
    int n_dominant;
    double beta;   // beta of the dominant side
    double gamma;  // max(gamma_left, gamma_right)
    double d;      // strip half-width
    double h;
    int M;
    int N;

    std::size_t dimension() const noexcept { return static_cast<std::size_t>(M + N + 1); }
};

/// Which side drives h. gamma_L > gamma_R is p - q > 4; at equal gammas
/// beta_L >= beta_R is a_{-p} >= a_q (the tie goes left).
inline Side dominant_side(const DecayParameters& dp) noexcept {
    if (dp.gamma_left > dp.gamma_right) return Side::Left;
    if (dp.gamma_right > dp.gamma_left) return Side::Right;
    return dp.beta_left >= dp.beta_right ? Side::Left : Side::Right;
}

inline double optimal_step(double d, double gamma, double beta, int n) {
    return lambert_w(std::numbers::pi * d * gamma * n / beta) / (gamma * n);
}

namespace detail {

// Smallest count k with gamma_other * k * h >= target, where target is the
// dominant side's exponent. Values within 1e-9 of an integer are rounded so
// that symmetric inputs give symmetric grids.
inline int balanced_count(double target, double log_beta_ratio, double gamma_other, double h) {
    const double exact = (target + log_beta_ratio) / (gamma_other * h);
    const double nearest = std::nearbyint(exact);
    const double k = std::abs(exact - nearest) <= 1e-9 * std::max(1.0, std::abs(exact))
                         ? nearest
                         : std::ceil(exact);
    if (!(k < static_cast<double>(std::numeric_limits<int>::max() / 4)))
        throw OverflowError("balanced truncation count is out of range");
    return std::max(1, static_cast<int>(k));
}

}  // namespace detail

inline MeshPlan mesh_plan(const DecayParameters& dp, int n_dominant,
                          std::optional<double> d_override = std::nullopt) {
    if (n_dominant < 1) throw DomainError("mesh_plan: n_dominant must be >= 1");
    const double gamma = std::max(dp.gamma_left, dp.gamma_right);
    const double d_max = std::numbers::pi / (2.0 * gamma);
    double d = d_max;
    if (d_override) {
        if (!(*d_override > 0.0) || *d_override > d_max)
            throw InvalidStripWidth("strip half-width must lie in (0, pi/(2 gamma)] = (0, " +
                                    std::to_string(d_max) + "]");
        d = *d_override;
    }

    MeshPlan plan{};
    plan.decay = dp;
    plan.dominant_side = dominant_side(dp);
    plan.n_dominant = n_dominant;
    plan.gamma = gamma;
    plan.d = d;
    if (plan.dominant_side == Side::Left) {
        plan.beta = dp.beta_left;
        plan.h = optimal_step(d, gamma, plan.beta, n_dominant);
        plan.M = n_dominant;
        plan.N = detail::balanced_count(dp.gamma_left * plan.M * plan.h,
                                        std::log(dp.beta_left / dp.beta_right), dp.gamma_right,
                                        plan.h);
    } else {
        plan.beta = dp.beta_right;
        plan.h = optimal_step(d, gamma, plan.beta, n_dominant);
        plan.N = n_dominant;
        plan.M = detail::balanced_count(dp.gamma_right * plan.N * plan.h,
                                        std::log(dp.beta_right / dp.beta_left), dp.gamma_left,
                                        plan.h);
    }
    return plan;
}

/**
 * Potential of the transformed equation -v'' + Vt(u) v = E e^{2u} v.
 *
 * For phi = e^u the Eggert correction -sqrt(phi') (1/phi' (sqrt(phi'))')' is
 * the constant 1/4, so Vt(u) = 1/4 + sum_i a_i e^{(i+2)u}. The sum is formed
 * term by term so that e^{2u} V(e^u) never overflows before its terms do.
 */
class TransformedPotential {
  public:
    explicit TransformedPotential(LaurentPotential base) : base_(std::move(base)) {}

    const LaurentPotential& base() const noexcept { return base_; }

    static constexpr double eggert_correction() noexcept { return 0.25; }

    double operator()(double u) const {
        constexpr double max_exponent = 709.0;
        double sum = eggert_correction();
        for (const auto& t : base_.terms()) {
            const double a = (t.exponent + 2) * u;
            if (a > max_exponent)
                throw OverflowError("transformed potential overflows at u = " + std::to_string(u));
            sum += t.coefficient * std::exp(a);
        }
        if (!std::isfinite(sum))
            throw OverflowError("transformed potential is not finite at u = " + std::to_string(u));
        return sum;
    }

    /// (phi'(u))^2, the weight multiplying E.
    static double weight(double u) noexcept { return std::exp(2.0 * u); }

  private:
    LaurentPotential base_;
};

}  // namespace descm
