#pragma once

// Closed-form quantities from the lower-bound argument: the tail threshold
// M(n), the moment lower bound T^(k)(n), and the inequality whose failure for
// large n gives the contradiction.

#include "deutsch_jozsa.hpp"
#include "errors.hpp"

#include <cmath>
#include <cstdint>
#include <string>

namespace qcclab::bounds {

/// M(n) = 0.003 n / log2 n.
inline double m_of_n(double n) { return 0.003 * n / std::log2(n); }

/// (1/2n) M(n)^k.
inline double moment_bound_from_threshold(double n, unsigned k) { return std::pow(m_of_n(n), k) / (2.0 * n); }

/// 0.5 (0.003 n)^(k-1) / log2^k n.
inline double moment_bound(double n, unsigned k) {
    if (k == 0) throw Error("moment_bound: k must be at least 1");
    return 0.5 * std::pow(0.003 * n, static_cast<double>(k) - 1.0) / std::pow(std::log2(n), k);
}

/// moment_bound / moment_bound_from_threshold. Algebraically this is 1/0.003
/// for every n and k, so the two forms never agree.
inline double moment_form_ratio(double n, unsigned k) { return moment_bound(n, k) / moment_bound_from_threshold(n, k); }

/// Whether the two moment forms agree to a relative `tol`.
inline bool moment_forms_agree(double n, unsigned k, double tol = 1e-12) {
    const double a = moment_bound(n, k);
    const double b = moment_bound_from_threshold(n, k);
    return std::abs(a - b) <= tol * std::max(std::abs(a), std::abs(b));
}

/// Lower bound on M(n) implied by a too-cheap protocol:
/// 0.0035 n / (log2 n + 3) - log2 n - 0.5.
inline double implied_threshold(double n) { return 0.0035 * n / (std::log2(n) + 3.0) - std::log2(n) - 0.5; }

/// True when the implied bound exceeds M(n), i.e. the assumed protocol cannot exist.
inline bool contradiction_holds(double n) { return implied_threshold(n) > m_of_n(n); }

/// Certificate budget 2 log2 n + 2M for the oracle string.
inline double certificate_budget(double n, double m) { return 2.0 * std::log2(n) + 2.0 * m; }

/// Smallest even n from which the contradiction holds for every even n up to
/// 10^7 + 2 (exhaustive scan) and on a geometric grid up to 1e18. Throws if
/// the inequality ever fails past the returned value.
inline std::uint64_t contradiction_threshold() {
    static const std::uint64_t cached = [] {
        constexpr std::uint64_t limit = 10'000'002;
        std::uint64_t last_fail = 0;
        for (std::uint64_t n = 2; n <= limit; n += 2)
            if (!contradiction_holds(static_cast<double>(n))) last_fail = n;
        if (last_fail == limit) throw Error("contradiction inequality fails at n = 10^7 + 2");
        for (double n = static_cast<double>(limit); n < 1e18; n *= 1.01)
            if (!contradiction_holds(n)) throw Error("contradiction inequality fails at n = " + std::to_string(n));
        return last_fail + 2;
    }();
    return cached;
}

}  // namespace qcclab::bounds
