#pragma once

// One-bit simulation of singlet correlations with two shared unit vectors.
//
//   Alice: y_A = -sgn(a.l1), sends c = sgn(a.l1) sgn(a.l2)
//   Bob:   y_B = sgn(b.(l1 + c l2))
//
// Over uniform l1, l2 this gives E[y_A] = E[y_B] = 0 and E[y_A y_B] = -a.b.
// sgn(0) = +1.

#include "../errors.hpp"
#include "../protocol.hpp"
#include "../randomness.hpp"

#include <array>
#include <cmath>
#include <numbers>
#include <random>
#include <span>
#include <string>
#include <vector>

namespace qcclab {

using Vec3 = std::array<double, 3>;

inline double dot3(const Vec3& u, const Vec3& v) { return u[0] * v[0] + u[1] * v[1] + u[2] * v[2]; }
inline int sgn(double x) { return x >= 0.0 ? 1 : -1; }

inline void require_unit(const Vec3& u, const char* who) {
    if (std::abs(std::sqrt(dot3(u, u)) - 1.0) > 1e-9)
        throw InvariantViolation(std::string(who) + ": measurement direction is not a unit vector");
}

/// Uniform point on the 2-sphere.
inline Vec3 random_unit_vector(std::mt19937_64& rng) {
    std::normal_distribution<double> g(0.0, 1.0);
    for (;;) {
        Vec3 v{g(rng), g(rng), g(rng)};
        const double r = std::sqrt(dot3(v, v));
        if (r > 1e-12) return {v[0] / r, v[1] / r, v[2] / r};
    }
}

struct SpherePair {
    Vec3 l1;
    Vec3 l2;
};

class TonerBaconProtocol {
public:
    using input_type = Vec3;
    using randomness_type = SpherePair;

    SpherePair sample(std::mt19937_64& rng) const {
        SpherePair p;
        p.l1 = random_unit_vector(rng);
        p.l2 = random_unit_vector(rng);
        return p;
    }

    /// All ordered pairs of a k-point Fibonacci lattice on the sphere, uniform
    /// weights. A finite quadrature: laws computed on it are approximations.
    static RandomnessSpace<SpherePair> quadrature_space(std::size_t k) {
        if (k == 0) throw InvariantViolation("toner_bacon: quadrature size must be positive");
        std::vector<Vec3> lattice;
        lattice.reserve(k);
        const double golden = std::numbers::pi * (3.0 - std::sqrt(5.0));
        for (std::size_t i = 0; i < k; ++i) {
            const double z = 1.0 - (2.0 * static_cast<double>(i) + 1.0) / static_cast<double>(k);
            const double rho = std::sqrt(std::max(0.0, 1.0 - z * z));
            const double phi = golden * static_cast<double>(i);
            lattice.push_back({rho * std::cos(phi), rho * std::sin(phi), z});
        }
        std::vector<SpherePair> pts;
        pts.reserve(k * k);
        for (const auto& u : lattice)
            for (const auto& v : lattice) pts.push_back({u, v});
        return RandomnessSpace<SpherePair>::uniform(std::move(pts));
    }

    Action step(Party role, const Vec3& own, const SpherePair& lam, std::span<const Entry> seen) const {
        if (role == Party::alice) {
            require_unit(own, "alice");
            const int s1 = sgn(dot3(own, lam.l1));
            if (seen.empty()) return Send{s1 * sgn(dot3(own, lam.l2)) > 0};
            return Halt{outcome_of(-s1 > 0)};
        }
        require_unit(own, "bob");
        if (seen.empty()) return Listen{};
        const double c = seen[0].bit ? 1.0 : -1.0;
        const Vec3 w{lam.l1[0] + c * lam.l2[0], lam.l1[1] + c * lam.l2[1], lam.l1[2] + c * lam.l2[2]};
        return Halt{outcome_of(sgn(dot3(own, w)) > 0)};
    }
};

}  // namespace qcclab
