#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "descm/errors.hpp"
#include "descm/laurent_potential.hpp"

namespace descm {

/// SplitMix64 (Steele, Lea and Flood); one 64-bit output per call.
class SplitMix64 {
  public:
    using result_type = std::uint64_t;

    explicit constexpr SplitMix64(std::uint64_t seed) noexcept : state_(seed) {}

    constexpr std::uint64_t operator()() noexcept {
        std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ull);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
        return z ^ (z >> 31);
    }

    static constexpr std::uint64_t min() noexcept { return 0; }
    static constexpr std::uint64_t max() noexcept { return ~std::uint64_t{0}; }

  private:
    std::uint64_t state_;
};

/// Top 53 bits of a draw as a double in [0, 1).
constexpr double unit_interval(std::uint64_t z) noexcept {
    return static_cast<double>(z >> 11) * 0x1.0p-53;
}

struct RandomPotentialSpec {
    int lowest_exponent;   // -p, at most -3
    int highest_exponent;  // q, at least 1
    double lo;
    double hi;
    std::map<int, double> fixed;  // must pin both boundary exponents
    std::uint64_t seed;
};

/**
 * Coefficients of every exponent strictly between the boundaries are drawn
 * in ascending exponent order, one draw each, as lo + u (hi - lo). Fixed
 * values override draws without shifting the stream, so adding a pin leaves
 * the other coefficients unchanged.
 */
inline LaurentPotential random_potential(const RandomPotentialSpec& spec) {
    if (spec.lowest_exponent > -3) throw DomainError("lowest exponent must be <= -3");
    if (spec.highest_exponent < 1) throw DomainError("highest exponent must be >= 1");
    if (!(spec.lo < spec.hi)) throw DomainError("coefficient range requires lo < hi");
    for (int boundary : {spec.lowest_exponent, spec.highest_exponent})
        if (!spec.fixed.contains(boundary))
            throw DomainError("boundary exponent " + std::to_string(boundary) + " must be fixed");
    for (const auto& [e, c] : spec.fixed)
        if (e < spec.lowest_exponent || e > spec.highest_exponent)
            throw DomainError("fixed exponent " + std::to_string(e) + " lies outside the range");

    SplitMix64 rng(spec.seed);
    std::vector<Term> terms;
    terms.reserve(static_cast<std::size_t>(spec.highest_exponent - spec.lowest_exponent + 1));
    for (int e = spec.lowest_exponent; e <= spec.highest_exponent; ++e) {
        double c = 0.0;
        if (e != spec.lowest_exponent && e != spec.highest_exponent)
            c = spec.lo + unit_interval(rng()) * (spec.hi - spec.lo);
        if (auto it = spec.fixed.find(e); it != spec.fixed.end()) c = it->second;
        terms.push_back({e, c});
    }
    return LaurentPotential::validate(std::move(terms));
}

}  // namespace descm
