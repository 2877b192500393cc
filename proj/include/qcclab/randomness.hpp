#pragma once

#include "errors.hpp"
#include "rational.hpp"

#include <cstddef>
#include <cstdint>
#include <numeric>
#include <vector>

namespace qcclab {

/// Finite randomness space. Weights are integer numerators over a common
/// denominator, so every probability computed from it is exact.
template <class L>
class RandomnessSpace {
public:
    RandomnessSpace(std::vector<L> points, std::vector<std::uint64_t> numerators, std::uint64_t denominator)
        : points_(std::move(points)), num_(std::move(numerators)), den_(denominator) {
        if (points_.empty()) throw InvariantViolation("randomness space must have at least one point");
        if (points_.size() != num_.size()) throw InvariantViolation("randomness space: one weight per point required");
        if (den_ == 0) throw InvariantViolation("randomness space: zero denominator");
        const auto total = std::accumulate(num_.begin(), num_.end(), BigInt(0),
                                           [](BigInt acc, std::uint64_t w) { return acc + w; });
        if (total != den_) throw InvariantViolation("randomness space weights do not sum to 1");
    }

    static RandomnessSpace uniform(std::vector<L> points) {
        const std::size_t n = points.size();
        return RandomnessSpace(std::move(points), std::vector<std::uint64_t>(n, 1), n);
    }

    std::size_t size() const noexcept { return points_.size(); }
    const L& point(std::size_t i) const { return points_.at(i); }
    const std::vector<L>& points() const noexcept { return points_; }
    std::uint64_t numerator(std::size_t i) const { return num_.at(i); }
    std::uint64_t denominator() const noexcept { return den_; }
    Rational weight(std::size_t i) const { return Rational(BigInt(num_.at(i)), BigInt(den_)); }

private:
    std::vector<L> points_;
    std::vector<std::uint64_t> num_;
    std::uint64_t den_;
};

/// Protocols that carry their own finite randomness space.
template <class P>
concept FiniteRandomness = requires(const P& p) {
    { p.space() } -> std::convertible_to<RandomnessSpace<typename P::randomness_type>>;
};

}  // namespace qcclab
