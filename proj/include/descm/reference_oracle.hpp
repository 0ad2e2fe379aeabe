#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "descm/de_transform.hpp"
#include "descm/errors.hpp"
#include "descm/laurent_potential.hpp"

namespace descm {

/// V = x^2 + c (2k-1) x^-4 + c^2 x^-6 with c = k(k+1)/2 has the eigenvalue 2k + 3.
struct ExactFamilyInstance {
    double k;
    LaurentPotential potential;
    double exact_energy;
};

inline ExactFamilyInstance exact_family(double k) {
    if (!(k > 0.0)) throw DomainError("exact_family: k must be positive");
    const double c = k * (k + 1.0) / 2.0;
    std::vector<Term> terms{{-6, c * c}, {2, 1.0}};
    const double quartic = c * (2.0 * k - 1.0);
    if (quartic != 0.0) terms.push_back({-4, quartic});
    return {k, LaurentPotential::validate(std::move(terms)), 2.0 * k + 3.0};
}

struct ShootOptions {
    /// Symmetric box [-L, L] in u; chosen from the WKB action when absent.
    std::optional<double> box;
    int steps = 40000;
    double energy_tol = 1e-8;
    /// Tunnelling action required beyond each turning point of the automatic box.
    double tail_action = 45.0;
};

namespace detail {

class ShootingProblem {
  public:
    ShootingProblem(const LaurentPotential& pot, const ShootOptions& opts)
        : tp_(pot), opts_(opts) {
        // u-range on which no term of Vt can overflow
        u_min_ = -std::min(40.0, 600.0 / std::max(1, pot.p() - 2));
        u_max_ = std::min(40.0, 600.0 / (pot.q() + 2));
        const int scan = 20000;
        scan_u_.resize(scan + 1);
        scan_v_.resize(scan + 1);
        v_floor_ = std::numeric_limits<double>::infinity();
        for (int i = 0; i <= scan; ++i) {
            const double u = u_min_ + (u_max_ - u_min_) * i / scan;
            scan_u_[i] = u;
            scan_v_[i] = tp_(u);
            // original potential V(e^u) = (Vt - 1/4) e^{-2u}
            v_floor_ = std::min(v_floor_, (scan_v_[i] - 0.25) * std::exp(-2.0 * u));
        }
    }

    double potential_floor() const noexcept { return v_floor_; }

    // Fix the integration box: either the symmetric user box or the region
    // where the wavefunction at energy e_max has decayed by exp(-tail_action).
    void set_box(double e_max) {
        if (opts_.box) {
            lo_ = -*opts_.box;
            hi_ = *opts_.box;
        } else {
            auto q = [&](double u) { return tp_(u) - e_max * std::exp(2.0 * u); };
            std::size_t first = scan_u_.size(), last = 0;
            for (std::size_t i = 0; i < scan_u_.size(); ++i) {
                if (scan_v_[i] - e_max * std::exp(2.0 * scan_u_[i]) < 0.0) {
                    first = std::min(first, i);
                    last = i;
                }
            }
            if (first == scan_u_.size())
                throw BracketFailure("no classically allowed region at E = " + std::to_string(e_max));
            const double width = scan_u_[last] - scan_u_[first] + 1e-3;
            const double du = width / 20000.0;
            auto march = [&](double u, double dir, double limit) {
                double action = 0.0;
                while (action < opts_.tail_action) {
                    if ((dir > 0 && u >= limit) || (dir < 0 && u <= limit))
                        throw BracketFailure("wavefunction tail leaves the representable range");
                    u += dir * du;
                    action += std::sqrt(std::max(0.0, q(u))) * du;
                }
                return u;
            };
            lo_ = march(scan_u_[first], -1.0, u_min_);
            hi_ = march(scan_u_[last], 1.0, u_max_);
        }
        const int n = opts_.steps;
        step_ = (hi_ - lo_) / n;
        vt_.resize(n + 1);
        w_.resize(n + 1);
        for (int i = 0; i <= n; ++i) {
            const double u = lo_ + step_ * i;
            vt_[i] = tp_(u);
            w_[i] = std::exp(2.0 * u);
        }
    }

    // Sign changes of the Numerov solution of v'' = (Vt - E e^{2u}) v with
    // v(lo) = 0, counted over (lo, hi]. Equals the number of box eigenvalues below E.
    int nodes(double e) const {
        const double c = step_ * step_ / 12.0;
        const std::size_t n = vt_.size() - 1;
        double prev = 0.0, cur = 1e-200;
        double f_prev = 1.0 - c * (vt_[0] - e * w_[0]);
        double f_cur = 1.0 - c * (vt_[1] - e * w_[1]);
        int count = 0;
        for (std::size_t i = 1; i < n; ++i) {
            const double f_next = 1.0 - c * (vt_[i + 1] - e * w_[i + 1]);
            double next = ((12.0 - 10.0 * f_cur) * cur - f_prev * prev) / f_next;
            if (std::abs(next) > 1e200) {
                next *= 1e-200;
                cur *= 1e-200;
            }
            if ((next < 0.0) != (cur < 0.0)) ++count;
            prev = cur;
            cur = next;
            f_prev = f_cur;
            f_cur = f_next;
        }
        return count;
    }

  private:
    TransformedPotential tp_;
    ShootOptions opts_;
    double u_min_, u_max_;
    std::vector<double> scan_u_, scan_v_;
    double v_floor_;
    double lo_ = 0, hi_ = 0, step_ = 0;
    std::vector<double> vt_, w_;
};

}  // namespace detail

/**
 * Energy of the level-th bound state by Numerov shooting on the transformed
 * equation -v'' + Vt v = E e^{2u} v with v = 0 at both ends of a finite box.
 * The level is identified by node counting and refined by bisection.
 */
inline double shoot(const LaurentPotential& pot, int level, const ShootOptions& opts = {}) {
    if (level < 0) throw LevelOutOfRange("shoot: level must be non-negative");
    if (opts.steps < 10000) throw DomainError("shoot: steps must be >= 10000");
    detail::ShootingProblem prob(pot, opts);

    const double e_lo0 = prob.potential_floor() - 1.0;
    double span = 10.0 + 0.1 * std::abs(e_lo0);
    double e_hi = e_lo0 + span;
    for (int attempt = 0;; ++attempt) {
        prob.set_box(e_hi);
        if (prob.nodes(e_hi) > level) break;
        if (attempt == 60)
            throw BracketFailure("could not bracket level " + std::to_string(level));
        span *= 2.0;
        e_hi = e_lo0 + span;
    }
    double e_lo = e_lo0;
    if (prob.nodes(e_lo) > level)
        throw BracketFailure("lower energy bound already exceeds level " + std::to_string(level));

    while (e_hi - e_lo > opts.energy_tol) {
        const double mid = 0.5 * (e_lo + e_hi);
        if (mid <= e_lo || mid >= e_hi) break;
        (prob.nodes(mid) > level ? e_hi : e_lo) = mid;
    }
    return 0.5 * (e_lo + e_hi);
}

}  // namespace descm
