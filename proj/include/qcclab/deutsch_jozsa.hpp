#pragma once

// Deutsch-Jozsa in vector form: f(a,b) = [a.b = n] under the promise
// a.b in {0, n}, its rejecting certificates, and the related bound formulas.

#include "errors.hpp"
#include "protocol.hpp"
#include "sign_vector.hpp"

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

namespace qcclab::dj {

inline bool eval_f(const SignVector& a, const SignVector& b) {
    require_promise(a, b);
    return dot(a, b) == static_cast<long>(a.size());
}

/// ceil(log2 x) for x >= 1.
inline unsigned ceil_log2(std::uint64_t x) {
    unsigned bits = 0;
    while ((std::uint64_t{1} << bits) < x) ++bits;
    return bits;
}

/// Witness (i, alpha) with a_i = alpha and b_i = -alpha; i is 1-based.
struct RejectCertificate {
    std::size_t index = 1;
    int alpha = 1;

    friend bool operator==(const RejectCertificate&, const RejectCertificate&) = default;
};

/// ceil(log2 n) + 1.
inline std::size_t reject_certificate_bits(std::size_t n) { return ceil_log2(n) + 1; }

/// Smallest differing coordinate. Requires a.b = 0.
inline RejectCertificate n0_certificate(const SignVector& a, const SignVector& b) {
    require_promise(a, b);
    if (dot(a, b) != 0) throw PromiseViolation("n0_certificate: input is accepting (a = b), no rejecting witness");
    for (std::size_t i = 0; i < a.size(); ++i)
        if (a[i] != b[i]) return {i + 1, a[i]};
    throw PromiseViolation("n0_certificate: vectors are equal");
}

/// Index as ceil(log2 n) big-endian bits of (i - 1), then one sign bit (0 = +1).
inline std::vector<bool> encode(const RejectCertificate& c, std::size_t n) {
    const unsigned w = ceil_log2(n);
    std::vector<bool> bits;
    bits.reserve(w + 1);
    const std::uint64_t idx = c.index - 1;
    for (unsigned k = 0; k < w; ++k) bits.push_back(((idx >> (w - 1 - k)) & 1U) != 0);
    bits.push_back(c.alpha < 0);
    return bits;
}

/// Inverse of encode. The index is not range-checked here; n0_verify does that.
inline RejectCertificate decode(const std::vector<bool>& bits, std::size_t n) {
    const unsigned w = ceil_log2(n);
    if (bits.size() != w + 1)
        throw Error("reject certificate must be " + std::to_string(w + 1) + " bits, got " +
                    std::to_string(bits.size()));
    std::uint64_t idx = 0;
    for (unsigned k = 0; k < w; ++k) idx = (idx << 1) | (bits[k] ? 1U : 0U);
    return {static_cast<std::size_t>(idx + 1), bits[w] ? -1 : 1};
}

inline std::string bits_to_string(const std::vector<bool>& bits) {
    std::string s;
    for (bool b : bits) s.push_back(b ? '1' : '0');
    return s;
}

inline std::vector<bool> bits_from_string(const std::string& s) {
    std::vector<bool> out;
    for (char ch : s) {
        if (ch == '0') out.push_back(false);
        else if (ch == '1') out.push_back(true);
        else throw Error(std::string("bit string contains '") + ch + "'");
    }
    return out;
}

struct Verdict {
    bool accept = false;
    std::string diagnostic;
};

/// Alice accepts iff a_i = alpha; Bob accepts iff b_i = -alpha.
inline Verdict n0_verify(Party party, const SignVector& own, const RejectCertificate& cert) {
    if (cert.index < 1 || cert.index > own.size())
        return {false, "certificate index " + std::to_string(cert.index) + " out of range 1.." +
                           std::to_string(own.size())};
    if (cert.alpha != 1 && cert.alpha != -1) return {false, "certificate sign must be +1 or -1"};
    const int want = party == Party::alice ? cert.alpha : -cert.alpha;
    if (own[cert.index - 1] == want) return {true, ""};
    return {false, std::string(name(party)) + " coordinate " + std::to_string(cert.index) + " is " +
                       std::to_string(own[cert.index - 1]) + ", expected " + std::to_string(want)};
}

/// Lower bound on N^1(f): 0.007 n / (log2 n + 3) - 1. Negative (vacuous) for small n.
inline double n1_lower_bound(double n) { return 0.007 * n / (std::log2(n) + 3.0) - 1.0; }

/// D <= (N0 + 1)(N1 + 1).
inline bool auy_check(std::uint64_t d, std::uint64_t n0, std::uint64_t n1) { return d <= (n0 + 1) * (n1 + 1); }

}  // namespace qcclab::dj
