#pragma once

// Two-party deterministic protocols driven by shared randomness.
//
// A party is a next-message function of (its own input, lambda, transcript so
// far). Each round both unhalted parties are asked for an action; at most one
// may send, and a single bit is appended per send. Private coins are assumed
// to be folded into lambda.

#include "errors.hpp"

#include <concepts>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace qcclab {

enum class Party : std::uint8_t { alice = 0, bob = 1 };

inline constexpr Party other(Party p) noexcept { return p == Party::alice ? Party::bob : Party::alice; }
inline constexpr const char* name(Party p) noexcept { return p == Party::alice ? "alice" : "bob"; }

/// Measurement outcome +1 / -1.
enum class Outcome : std::int8_t { minus = -1, plus = 1 };

inline constexpr int value(Outcome y) noexcept { return static_cast<int>(y); }
inline constexpr Outcome outcome_of(bool plus) noexcept { return plus ? Outcome::plus : Outcome::minus; }

struct Entry {
    Party sender = Party::alice;
    bool bit = false;

    friend bool operator==(const Entry&, const Entry&) = default;
};

/// Sender-tagged bits in communication order. size() is the cost T.
class Transcript {
public:
    Transcript() = default;
    explicit Transcript(std::vector<Entry> entries) : entries_(std::move(entries)) {}

    void push(Party sender, bool bit) { entries_.push_back({sender, bit}); }
    void clear() noexcept { entries_.clear(); }

    std::size_t size() const noexcept { return entries_.size(); }
    bool empty() const noexcept { return entries_.empty(); }
    const Entry& operator[](std::size_t i) const { return entries_[i]; }
    std::span<const Entry> entries() const noexcept { return entries_; }
    std::span<const Entry> prefix(std::size_t len) const { return std::span<const Entry>(entries_).first(len); }

    /// Concatenated "A0"/"A1"/"B0"/"B1" tokens.
    std::string dump() const {
        std::string out;
        out.reserve(2 * entries_.size());
        for (const auto& e : entries_) {
            out.push_back(e.sender == Party::alice ? 'A' : 'B');
            out.push_back(e.bit ? '1' : '0');
        }
        return out;
    }

    static Transcript parse(std::string_view text) {
        std::vector<Entry> es;
        std::size_t i = 0;
        while (i < text.size()) {
            if (text[i] == ' ' || text[i] == ',') {
                ++i;
                continue;
            }
            if (i + 1 >= text.size()) throw Error("transcript dump: dangling token");
            const char s = text[i], b = text[i + 1];
            if ((s != 'A' && s != 'B') || (b != '0' && b != '1'))
                throw Error(std::string("transcript dump: bad token '") + s + b + "'");
            es.push_back({s == 'A' ? Party::alice : Party::bob, b == '1'});
            i += 2;
        }
        return Transcript(std::move(es));
    }

    friend bool operator==(const Transcript&, const Transcript&) = default;

private:
    std::vector<Entry> entries_;
};

struct Send {
    bool bit;
};
struct Listen {};
struct Halt {
    Outcome output;
};

using Action = std::variant<Send, Listen, Halt>;

/// The deterministic next-message contract.
template <class P>
concept TwoPartyProtocol = requires(const P& p, Party role, const typename P::input_type& x,
                                    const typename P::randomness_type& lambda, std::span<const Entry> seen) {
    typename P::input_type;
    typename P::randomness_type;
    { p.step(role, x, lambda, seen) } -> std::same_as<Action>;
};

struct RunRecord {
    Outcome y_a = Outcome::minus;
    Outcome y_b = Outcome::minus;
    Transcript transcript;
    std::size_t cost = 0;  // T; always transcript.size()
    std::size_t lambda_index = 0;

    /// g = [y_A = 1 and y_B = 1].
    bool g() const noexcept { return y_a == Outcome::plus && y_b == Outcome::plus; }

    friend bool operator==(const RunRecord&, const RunRecord&) = default;
};

/// The protocol exceeded its bit budget; carries the partial transcript.
class NonHaltingProtocol : public Error {
public:
    NonHaltingProtocol(std::size_t cap, Transcript partial)
        : Error("non-halting protocol: exceeded cap of " + std::to_string(cap) + " bits (partial transcript " +
                partial.dump() + ")"),
          partial_(std::move(partial)) {}

    const Transcript& partial() const noexcept { return partial_; }

private:
    Transcript partial_;
};

/// Both parties sent in the same round, or nobody can make progress.
class ProtocolFault : public Error {
public:
    using Error::Error;
};

/// Default bit budget 10n + 64.
inline constexpr std::size_t default_cap(std::size_t n) noexcept { return 10 * n + 64; }

/// Executes the protocol on ((input_a, lambda), (input_b, lambda)).
template <TwoPartyProtocol P>
RunRecord run(const P& protocol, const typename P::input_type& input_a, const typename P::input_type& input_b,
              const typename P::randomness_type& lambda, std::size_t cap, std::size_t lambda_index = 0) {
    RunRecord rec;
    rec.lambda_index = lambda_index;
    std::optional<Outcome> out_a, out_b;
    Transcript& t = rec.transcript;

    while (!out_a || !out_b) {
        const auto seen = t.entries();
        std::optional<Action> act_a, act_b;
        if (!out_a) act_a = protocol.step(Party::alice, input_a, lambda, seen);
        if (!out_b) act_b = protocol.step(Party::bob, input_b, lambda, seen);

        bool progressed = false;
        if (act_a) {
            if (const auto* h = std::get_if<Halt>(&*act_a)) {
                out_a = h->output;
                progressed = true;
            }
        }
        if (act_b) {
            if (const auto* h = std::get_if<Halt>(&*act_b)) {
                out_b = h->output;
                progressed = true;
            }
        }

        const Send* send_a = act_a ? std::get_if<Send>(&*act_a) : nullptr;
        const Send* send_b = act_b ? std::get_if<Send>(&*act_b) : nullptr;
        if (send_a && send_b)
            throw ProtocolFault("both parties sent in the same round after " + std::to_string(t.size()) + " bits");
        if (send_a || send_b) {
            if (t.size() >= cap) throw NonHaltingProtocol(cap, t);
            t.push(send_a ? Party::alice : Party::bob, send_a ? send_a->bit : send_b->bit);
            progressed = true;
        }
        if (!progressed)
            throw ProtocolFault("deadlock: no party sends or halts after " + std::to_string(t.size()) + " bits");
    }

    rec.y_a = *out_a;
    rec.y_b = *out_b;
    rec.cost = t.size();
    return rec;
}

/// Outcome of simulating one side against a claimed transcript.
struct ReplayResult {
    bool consistent = false;     // every own bit matched and every incoming bit was consumed in turn
    std::optional<Outcome> output;
    std::string diagnostic;
};

/// Simulates `role` alone, taking the other party's bits from `claimed` and
/// checking each of its own sends against it. Protocol errors on forged
/// inputs count as inconsistencies.
template <TwoPartyProtocol P>
ReplayResult replay_party(const P& protocol, Party role, const typename P::input_type& own,
                          const typename P::randomness_type& lambda, const Transcript& claimed) {
    ReplayResult r;
    std::size_t pos = 0;
    const std::size_t len = claimed.size();
    try {
        for (std::size_t guard = 0; guard <= len + 1; ++guard) {
            const Action act = protocol.step(role, own, lambda, claimed.prefix(pos));
            if (const auto* s = std::get_if<Send>(&act)) {
                if (pos >= len) {
                    r.diagnostic = "transcript truncated at own send";
                    return r;
                }
                if (claimed[pos].sender != role || claimed[pos].bit != s->bit) {
                    r.diagnostic = "own message mismatch at entry " + std::to_string(pos);
                    return r;
                }
                ++pos;
            } else if (std::holds_alternative<Listen>(act)) {
                if (pos >= len) {
                    r.diagnostic = "transcript truncated while listening";
                    return r;
                }
                if (claimed[pos].sender == role) {
                    r.diagnostic = "transcript attributes entry " + std::to_string(pos) + " to a listening party";
                    return r;
                }
                ++pos;
            } else {
                for (std::size_t k = pos; k < len; ++k) {
                    if (claimed[k].sender == role) {
                        r.diagnostic = "transcript has own entries after halting";
                        return r;
                    }
                }
                r.consistent = true;
                r.output = std::get<Halt>(act).output;
                return r;
            }
        }
        r.diagnostic = "party did not halt within the transcript";
    } catch (const Error& e) {
        r.diagnostic = std::string("protocol rejected input: ") + e.what();
    }
    return r;
}

}  // namespace qcclab
