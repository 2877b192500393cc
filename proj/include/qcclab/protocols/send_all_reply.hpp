#pragma once

// Exact restricted-BLQMS protocol for the Deutsch-Jozsa input family.
//
// Alice sends her n coordinates ((1+a_i)/2 each). Bob, who now knows a and b,
// samples (y_A, y_B) from the quantum law on the maximally entangled state
//   p_pp = (a.b)^2/n^3,  p_pm = p_mp = 1/n - p_pp,  p_mm = residual
// using the uniform grid point lambda = r/Q, and replies with y_A. Every run
// costs exactly n + 1 bits.
//
// The acceptance window is rotated by (code(a) mod n) * Q/n, a bijection of
// the grid, so the law is unchanged but different inputs accept on different
// lambda. This keeps the partition construction non-degenerate.
//
// This protocol exists only for promise inputs; it is not a general BLQMS
// protocol.

#include "../errors.hpp"
#include "../protocol.hpp"
#include "../randomness.hpp"
#include "../sign_vector.hpp"

#include <cstdint>
#include <cstdlib>
#include <numeric>
#include <span>
#include <vector>

namespace qcclab {

class SendAllReplyProtocol {
public:
    using input_type = SignVector;
    using randomness_type = std::uint64_t;  // grid index r, lambda = r/Q

    /// Q = multiplier * n^3.
    explicit SendAllReplyProtocol(std::size_t n, std::uint64_t multiplier = 1) : n_(n), mult_(multiplier) {
        if (n == 0 || n % 2 != 0) throw InvariantViolation("send_all_reply: n must be even and positive");
        if (n > 64) throw InvariantViolation("send_all_reply: n must be at most 64");
        if (multiplier == 0) throw InvariantViolation("send_all_reply: grid multiplier must be positive");
        q_ = mult_ * n_ * n_ * n_;
    }

    std::size_t n() const noexcept { return n_; }
    std::uint64_t grid_size() const noexcept { return q_; }

    RandomnessSpace<std::uint64_t> space() const {
        std::vector<std::uint64_t> pts(q_);
        std::iota(pts.begin(), pts.end(), std::uint64_t{0});
        return RandomnessSpace<std::uint64_t>::uniform(std::move(pts));
    }

    Action step(Party role, const SignVector& own, std::uint64_t r, std::span<const Entry> seen) const {
        if (own.size() != n_) throw DimensionMismatch("send_all_reply: input length differs from n");
        const std::size_t t = seen.size();
        if (role == Party::alice) {
            if (t < n_) return Send{own[t] > 0};
            if (t == n_) return Listen{};
            return Halt{outcome_of(seen[n_].bit)};
        }
        if (t < n_) return Listen{};
        std::vector<int> a(n_);
        for (std::size_t i = 0; i < n_; ++i) a[i] = seen[i].bit ? 1 : -1;
        const auto [y_a, y_b] = sample(SignVector(std::move(a)), own, r);
        if (t == n_) return Send{y_a == Outcome::plus};
        return Halt{y_b};
    }

    /// The (y_A, y_B) Bob assigns to grid point r.
    std::pair<Outcome, Outcome> sample(const SignVector& a, const SignVector& b, std::uint64_t r) const {
        require_promise(a, b);
        if (r >= q_) throw InvariantViolation("send_all_reply: grid index out of range");
        const auto d = static_cast<std::uint64_t>(std::abs(dot(a, b)));
        const std::uint64_t c_pp = mult_ * d * d;
        const std::uint64_t c_single = mult_ * n_ * n_ - c_pp;  // p_pm = p_mp
        const std::uint64_t offset = (a.code() % n_) * mult_ * n_ * n_;
        const std::uint64_t shifted = (r + q_ - offset) % q_;
        if (shifted < c_pp) return {Outcome::plus, Outcome::plus};
        if (shifted < c_pp + c_single) return {Outcome::plus, Outcome::minus};
        if (shifted < c_pp + 2 * c_single) return {Outcome::minus, Outcome::plus};
        return {Outcome::minus, Outcome::minus};
    }

private:
    std::size_t n_;
    std::uint64_t mult_;
    std::uint64_t q_;
};

}  // namespace qcclab
