#pragma once

#include "errors.hpp"

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace qcclab {

/// A vector in {-1,+1}^n with n even.
class SignVector {
public:
    SignVector() = default;

    explicit SignVector(std::vector<int> coords) {
        if (coords.empty() || coords.size() % 2 != 0)
            throw InvariantViolation("sign vector length must be even and positive, got " +
                                     std::to_string(coords.size()));
        coords_.reserve(coords.size());
        for (std::size_t i = 0; i < coords.size(); ++i) {
            if (coords[i] != 1 && coords[i] != -1)
                throw InvariantViolation("sign vector coordinate " + std::to_string(i + 1) + " is " +
                                         std::to_string(coords[i]) + ", expected +1 or -1");
            coords_.push_back(static_cast<std::int8_t>(coords[i]));
        }
    }

    /// Coordinate i is +1 iff bit (n-1-i) of `code` is set, so coordinate 0
    /// is the most significant bit.
    static SignVector from_code(std::uint64_t code, std::size_t n) {
        if (n > 64) throw InvariantViolation("sign vector code only supports n <= 64");
        std::vector<int> c(n);
        for (std::size_t i = 0; i < n; ++i) c[i] = ((code >> (n - 1 - i)) & 1U) ? 1 : -1;
        return SignVector(std::move(c));
    }

    /// Accepts "++-+" or "1,1,-1,1".
    static SignVector parse(std::string_view text) {
        std::vector<int> c;
        if (text.find_first_of("0123456789") == std::string_view::npos) {
            for (char ch : text) {
                if (ch == '+') c.push_back(1);
                else if (ch == '-') c.push_back(-1);
                else if (ch != ' ') throw InvariantViolation(std::string("bad sign character '") + ch + "'");
            }
        } else {
            std::string token;
            auto flush = [&] {
                if (token.empty()) return;
                if (token == "1" || token == "+1") c.push_back(1);
                else if (token == "-1") c.push_back(-1);
                else throw InvariantViolation("bad sign token '" + token + "'");
                token.clear();
            };
            for (char ch : text) {
                if (ch == ',' || ch == ' ') flush();
                else token.push_back(ch);
            }
            flush();
        }
        return SignVector(std::move(c));
    }

    std::size_t size() const noexcept { return coords_.size(); }
    int operator[](std::size_t i) const { return coords_[i]; }
    std::span<const std::int8_t> coords() const noexcept { return coords_; }

    std::uint64_t code() const {
        if (size() > 64) throw InvariantViolation("sign vector code only supports n <= 64");
        std::uint64_t v = 0;
        for (auto x : coords_) v = (v << 1) | (x > 0 ? 1U : 0U);
        return v;
    }

    /// ceil(n/4) lowercase hex digits of code().
    std::string hex() const {
        static constexpr char digits[] = "0123456789abcdef";
        const std::size_t width = (size() + 3) / 4;
        std::string out(width, '0');
        std::uint64_t v = code();
        for (std::size_t k = 0; k < width; ++k, v >>= 4) out[width - 1 - k] = digits[v & 0xF];
        return out;
    }

    std::string str() const {
        std::string s;
        for (auto x : coords_) s.push_back(x > 0 ? '+' : '-');
        return s;
    }

    friend bool operator==(const SignVector&, const SignVector&) = default;

private:
    std::vector<std::int8_t> coords_;
};

inline long dot(const SignVector& a, const SignVector& b) {
    if (a.size() != b.size()) throw DimensionMismatch("sign vectors differ in length");
    long s = 0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

/// True iff a.b is 0 or n.
inline bool satisfies_promise(const SignVector& a, const SignVector& b) {
    const long d = dot(a, b);
    return d == 0 || d == static_cast<long>(a.size());
}

inline void require_promise(const SignVector& a, const SignVector& b) {
    if (!satisfies_promise(a, b))
        throw PromiseViolation("promise a.b in {0, n} violated: a.b = " + std::to_string(dot(a, b)) +
                               ", n = " + std::to_string(a.size()));
}

/// All 2^n sign vectors in code order.
inline std::vector<SignVector> all_sign_vectors(std::size_t n) {
    std::vector<SignVector> out;
    out.reserve(std::size_t{1} << n);
    for (std::uint64_t c = 0; c < (std::uint64_t{1} << n); ++c) out.push_back(SignVector::from_code(c, n));
    return out;
}

struct PromisePair {
    SignVector a;
    SignVector b;
};

/// Every ordered pair (a, b) with a.b in {0, n}, ordered by (code(a), code(b)).
inline std::vector<PromisePair> all_promise_pairs(std::size_t n) {
    const auto vs = all_sign_vectors(n);
    std::vector<PromisePair> out;
    for (const auto& a : vs)
        for (const auto& b : vs)
            if (satisfies_promise(a, b)) out.push_back({a, b});
    return out;
}

}  // namespace qcclab
