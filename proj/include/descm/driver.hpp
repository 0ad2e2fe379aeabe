#pragma once

#include <cmath>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "descm/de_transform.hpp"
#include "descm/discretization.hpp"
#include "descm/errors.hpp"
#include "descm/laurent_potential.hpp"
#include "descm/sinc_basis.hpp"
#include "descm/symmetric_eigensolver.hpp"

namespace descm {

/// One approximate bound state. `coefficients[s]` is v at u = (s - M) h,
/// normalized so that h v^T D^2 v = 1, the Sinc quadrature of int psi^2 dx.
struct Eigenpair {
    int level;
    double energy;
    std::vector<double> coefficients;
    MeshPlan plan;

    SincGrid grid() const noexcept { return {plan.h, plan.M, plan.N}; }
};

struct ConvergenceRow {
    int m;
    std::size_t matrix_dim;
    double energy;
    std::optional<double> eps;  // |E(m) - E(previous m)|; absent on the first row
};

struct ConvergenceRecord {
    int level;
    std::vector<ConvergenceRow> rows;

    double final_energy() const { return rows.back().energy; }
};

class NoConvergenceWithinBudget : public Error {
  public:
    NoConvergenceWithinBudget(const std::string& what, ConvergenceRecord record)
        : Error(what), record_(std::move(record)) {}
    const ConvergenceRecord& record() const noexcept { return record_; }

  private:
    ConvergenceRecord record_;
};

/// Only the lower half of a collocation spectrum is treated as physical.
inline std::size_t valid_levels(std::size_t dimension) noexcept { return dimension / 2; }

struct SolveOptions {
    std::optional<double> d_override;
    /// Added to the diagonal of the second-derivative stencil. Testing hook
    /// for negative controls; leave at zero.
    double stencil_diagonal_offset = 0.0;
};

namespace detail {

inline void check_level(int level, const MeshPlan& plan) {
    if (level < 0 || static_cast<std::size_t>(level) >= valid_levels(plan.dimension()))
        throw LevelOutOfRange("level " + std::to_string(level) + " needs more than the " +
                              std::to_string(valid_levels(plan.dimension())) +
                              " valid levels of a dimension-" +
                              std::to_string(plan.dimension()) + " system");
}

// The x^0 term contributes exactly a_0 I to the reduced matrix, so it is
// added to the eigenvalues afterwards instead of being rounded into A. This
// makes energies(V + c) - energies(V) equal c up to the final additions.
inline double constant_term(const LaurentPotential& pot) { return pot.coefficient(0); }

inline DiscreteSystem assemble_for(const LaurentPotential& pot, const MeshPlan& plan,
                                   const SolveOptions& opts) {
    const TransformedPotential tp(pot);
    if (opts.stencil_diagonal_offset == 0.0) return assemble(tp, plan);
    const double offset = opts.stencil_diagonal_offset;
    return assemble(tp, plan, [offset](int j, int k) { return delta2(j, k) + (j == k ? offset : 0.0); });
}

}  // namespace detail

inline MeshPlan plan_for(const LaurentPotential& pot, int m, const SolveOptions& opts = {}) {
    return mesh_plan(decay_parameters(pot), m, opts.d_override);
}

/// Lower half of the generalized spectrum at dominant count m, ascending.
inline std::vector<double> energies(const LaurentPotential& pot, int m,
                                    const SolveOptions& opts = {}) {
    const MeshPlan plan = plan_for(pot, m, opts);
    const double a0 = detail::constant_term(pot);
    const auto sys = detail::assemble_for(pot.shift(-a0), plan, opts);
    auto values = eigvals_sym<double>(reduce_to_standard(sys));
    values.resize(valid_levels(plan.dimension()));
    for (double& e : values) e += a0;
    return values;
}

/// The level-th eigenpair of (H - E D^2) v = 0 at dominant count m.
inline Eigenpair solve(const LaurentPotential& pot, int level, int m, const SolveOptions& opts = {}) {
    if (m < 1) throw DomainError("solve: m must be >= 1");
    const MeshPlan plan = plan_for(pot, m, opts);
    detail::check_level(level, plan);

    const double a0 = detail::constant_term(pot);
    const auto sys = detail::assemble_for(pot.shift(-a0), plan, opts);
    const auto scale = congruence_scaling(sys);
    const auto eig = eig_sym(reduce_to_standard(sys));

    const std::size_t n = sys.dimension();
    const auto col = static_cast<std::size_t>(level);
    std::vector<double> v(n);
    double norm2 = 0.0;
    for (std::size_t k = 0; k < n; ++k) {
        v[k] = scale[k] * eig.vectors(k, col);
        norm2 += v[k] * v[k] * sys.weights[k];
    }
    const double inv = 1.0 / std::sqrt(plan.h * norm2);
    for (double& x : v) x *= inv;
    return Eigenpair{level, eig.values[col] + a0, std::move(v), plan};
}

/**
 * Energies of one level for m = m0, m0 + 1, ... until the successive
 * difference drops below tol. m0 = max(level + 2, 4); values of m at which the
 * level lies in the discarded upper half of the spectrum are skipped.
 * Throws NoConvergenceWithinBudget (carrying the record) when m_max is hit,
 * which is the expected outcome for tol below the rounding plateau (~1e-13).
 */
inline ConvergenceRecord converge(const LaurentPotential& pot, int level, double tol, int m_max,
                                  const SolveOptions& opts = {}) {
    if (!(tol > 0.0)) throw DomainError("converge: tol must be positive");
    if (m_max < 2) throw DomainError("converge: m_max must be >= 2");
    if (level < 0) throw LevelOutOfRange("converge: level must be non-negative");

    ConvergenceRecord record{level, {}};
    for (int m = std::max(level + 2, 4); m <= m_max; ++m) {
        const MeshPlan plan = plan_for(pot, m, opts);
        if (static_cast<std::size_t>(level) >= valid_levels(plan.dimension())) continue;
        const double e = energies(pot, m, opts)[static_cast<std::size_t>(level)];
        ConvergenceRow row{m, plan.dimension(), e, std::nullopt};
        if (!record.rows.empty()) row.eps = std::abs(e - record.rows.back().energy);
        record.rows.push_back(row);
        if (row.eps && *row.eps < tol) return record;
    }
    throw NoConvergenceWithinBudget("level " + std::to_string(level) +
                                        " did not reach tolerance within m_max = " +
                                        std::to_string(m_max),
                                    std::move(record));
}

/// psi(x) = sqrt(x) sum_j v_j S(j,h)(ln x).
inline double wavefunction_at(const Eigenpair& pair, double x) {
    if (!(x > 0.0)) throw DomainError("wavefunction evaluated at non-positive x");
    return std::sqrt(x) * evaluate_expansion(pair.grid(), pair.coefficients, ConformalMap::inverse(x));
}

inline std::vector<double> wavefunction(const Eigenpair& pair, std::span<const double> xs) {
    std::vector<double> out;
    out.reserve(xs.size());
    for (double x : xs) out.push_back(wavefunction_at(pair, x));
    return out;
}

}  // namespace descm
