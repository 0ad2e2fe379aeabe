#pragma once

#include <cmath>
#include <string>
#include <vector>

#include "descm/de_transform.hpp"
#include "descm/errors.hpp"
#include "descm/matrix.hpp"
#include "descm/sinc_basis.hpp"

namespace descm {

/// Generalized problem (H - E D^2) v = 0 on the grid u_k = k h, k = -M..N.
struct DiscreteSystem {
    Matrix H;
    std::vector<double> weights;  // diagonal of D^2, e^{2kh}
    MeshPlan plan;

    SincGrid grid() const noexcept { return {plan.h, plan.M, plan.N}; }
    std::size_t dimension() const noexcept { return weights.size(); }
};

/// Second-derivative stencil generator (j, k) -> delta2(j, k).
struct Delta2Stencil {
    double operator()(int j, int k) const noexcept { return delta2(j, k); }
};

/**
 * H_jk = -delta2(j,k)/h^2 + Vt(kh) delta0(j,k), D^2_kk = e^{2kh}.
 *
 * `stencil` replaces delta2; it exists so that validation can be exercised
 * against a deliberately wrong kinetic operator.
 */
template <typename Stencil = Delta2Stencil>
DiscreteSystem assemble(const TransformedPotential& tp, const MeshPlan& plan,
                        Stencil stencil = {}) {
    const SincGrid grid{plan.h, plan.M, plan.N};
    const std::size_t n = grid.size();
    const double inv_h2 = 1.0 / (plan.h * plan.h);

    DiscreteSystem sys{Matrix(n), std::vector<double>(n), plan};
    for (std::size_t s = 0; s < n; ++s) {
        const int j = grid.index_of(s);
        for (std::size_t t = 0; t < s; ++t) {
            const double kinetic = -stencil(grid.index_of(t), j) * inv_h2;
            sys.H(s, t) = kinetic;
            sys.H(t, s) = kinetic;
        }
        const double u = grid.point(j);
        sys.H(s, s) = -stencil(j, j) * inv_h2 + tp(u);
        sys.weights[s] = TransformedPotential::weight(u);
    }
    return sys;
}

/// Row/column scaling 1/sqrt(D^2_kk) of the congruence below.
inline std::vector<double> congruence_scaling(const DiscreteSystem& sys) {
    std::vector<double> scale(sys.dimension());
    for (std::size_t k = 0; k < scale.size(); ++k) {
        const double w = sys.weights[k];
        const double s = 1.0 / std::sqrt(w);
        if (w == 0.0 || !std::isfinite(s))
            throw SingularWeight("weight e^{2kh} underflowed at grid index " +
                                 std::to_string(sys.grid().index_of(k)) +
                                 "; reduce the truncation counts M or N");
        scale[k] = s;
    }
    return scale;
}

/// A = D^{-1} H D^{-1}; A and (H, D^2) share eigenvalues, v = D^{-1} w.
inline Matrix reduce_to_standard(const DiscreteSystem& sys) {
    const auto scale = congruence_scaling(sys);
    const std::size_t n = sys.dimension();
    Matrix a(n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j <= i; ++j) {
            const double x = sys.H(i, j) * scale[i] * scale[j];
            a(i, j) = x;
            a(j, i) = x;
        }
    return a;
}

}  // namespace descm
