#pragma once

#include <algorithm>
#include <cmath>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "descm/errors.hpp"

namespace descm {

struct Term {
    int exponent;
    double coefficient;

    friend bool operator==(const Term&, const Term&) = default;
};

/**
 * Laurent-polynomial potential V(x) = sum_{i=-p}^{q} a_i x^i on (0, inf).
 *
 * Admissible potentials have p >= 3, a_{-p} > 0, q >= 1 and a_q > 0, so V
 * blows up to +inf at both ends of the half line. Terms are kept sorted by
 * exponent; zero coefficients are only allowed strictly inside [-p, q].
 */
class LaurentPotential {
  public:
    /// Canonicalize and check a raw term list. Throws RejectedPotential.
    static LaurentPotential validate(std::vector<Term> raw) {
        if (raw.empty()) throw RejectedPotential("empty term list");
        std::sort(raw.begin(), raw.end(),
                  [](const Term& a, const Term& b) { return a.exponent < b.exponent; });
        for (std::size_t i = 1; i < raw.size(); ++i) {
            if (raw[i].exponent == raw[i - 1].exponent)
                throw RejectedPotential("duplicate exponent " + std::to_string(raw[i].exponent));
        }
        for (const auto& t : raw) {
            if (!std::isfinite(t.coefficient))
                throw RejectedPotential("non-finite coefficient for exponent " +
                                        std::to_string(t.exponent));
        }
        const Term& lowest = raw.front();
        const Term& highest = raw.back();
        if (lowest.exponent > -3)
            throw RejectedPotential("most negative exponent must be <= -3 (p >= 3), got " +
                                    std::to_string(lowest.exponent));
        if (!(lowest.coefficient > 0.0))
            throw RejectedPotential("leading singular coefficient a_{-p} must be positive");
        if (highest.exponent < 1)
            throw RejectedPotential("highest exponent must be >= 1, got " +
                                    std::to_string(highest.exponent));
        if (!(highest.coefficient > 0.0))
            throw RejectedPotential("confining coefficient a_q must be positive");
        return LaurentPotential(std::move(raw));
    }

    const std::vector<Term>& terms() const noexcept { return terms_; }
    int p() const noexcept { return -terms_.front().exponent; }
    int q() const noexcept { return terms_.back().exponent; }
    double leading_singular() const noexcept { return terms_.front().coefficient; }
    double leading_confining() const noexcept { return terms_.back().coefficient; }

    /// Coefficient of x^exponent (0 when the term is absent).
    double coefficient(int exponent) const noexcept {
        auto it = find(exponent);
        return it != terms_.end() && it->exponent == exponent ? it->coefficient : 0.0;
    }

    /// V(x) by Horner in x for exponents >= 0 and Horner in 1/x for the
    /// principal part.
    double operator()(double x) const {
        if (!(x > 0.0)) throw DomainError("potential evaluated at non-positive x");
        double poly = 0.0;
        for (int e = q(); e >= 0; --e) poly = poly * x + coefficient_fast(e);
        const double y = 1.0 / x;
        double principal = 0.0;
        for (int e = p(); e >= 1; --e) principal = principal * y + coefficient_fast(-e);
        return poly + principal * y;
    }

    double evaluate(double x) const { return (*this)(x); }

    /// V + c. Only the x^0 coefficient changes; a constant term that becomes
    /// exactly zero is dropped again.
    LaurentPotential shift(double c) const {
        std::vector<Term> out = terms_;
        auto it = std::lower_bound(out.begin(), out.end(), 0,
                                   [](const Term& t, int e) { return t.exponent < e; });
        if (it != out.end() && it->exponent == 0) {
            it->coefficient += c;
            if (it->coefficient == 0.0) out.erase(it);
        } else if (c != 0.0) {
            out.insert(it, Term{0, c});
        }
        return LaurentPotential(std::move(out));
    }

    friend bool operator==(const LaurentPotential&, const LaurentPotential&) = default;

  private:
    explicit LaurentPotential(std::vector<Term> terms) : terms_(std::move(terms)) {
        dense_.assign(static_cast<std::size_t>(p() + q() + 1), 0.0);
        for (const auto& t : terms_) dense_[static_cast<std::size_t>(t.exponent + p())] = t.coefficient;
    }

    std::vector<Term>::const_iterator find(int exponent) const {
        return std::lower_bound(terms_.begin(), terms_.end(), exponent,
                                [](const Term& t, int e) { return t.exponent < e; });
    }

    double coefficient_fast(int exponent) const noexcept {
        return dense_[static_cast<std::size_t>(exponent + p())];
    }

    std::vector<Term> terms_;
    std::vector<double> dense_;  // a_{-p} .. a_q, zeros included
};

}  // namespace descm
