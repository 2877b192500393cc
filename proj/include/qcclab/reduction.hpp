#pragma once

// The reduction from a cheap restricted-BLQMS protocol to a short accepting
// certificate for Deutsch-Jozsa:
//
//  1. check_tail_hypothesis: every promise pair has mu{T >= M} < 1/(2n).
//  2. partition_inputs: greedy cover of {-1,1}^n by cells S_j, each with one
//     lambda_j that accepts (g = 1, T < M) on (a, a) for every a in S_j.
//  3. The oracle sends (j, transcript of the run on (a, lambda_j), (a, lambda_j));
//     each party replays its own side against the transcript.

#include "deutsch_jozsa.hpp"
#include "errors.hpp"
#include "harness.hpp"
#include "protocol.hpp"
#include "rational.hpp"
#include "sign_vector.hpp"

#include <concepts>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <vector>

namespace qcclab::reduction {

/// A restricted-BLQMS protocol on sign-vector inputs with a finite space.
template <class P>
concept DjProtocol = TwoPartyProtocol<P> && FiniteRandomness<P> && std::same_as<typename P::input_type, SignVector>;

/// Result of the tail hypothesis check over a set of input pairs.
struct TailVerdict {
    bool holds = true;
    Rational bound;       // 1/(2n)
    Rational worst_mass;  // max over pairs of mu{T >= M}
    SignVector worst_a;
    SignVector worst_b;
    std::size_t pairs_checked = 0;
};

/// mu{lambda : T(a,b,lambda) >= M} < 1/(2n) for every pair. Defaults to every
/// promise pair of length n.
template <DjProtocol P>
TailVerdict check_tail_hypothesis(const P& protocol, std::size_t n, std::size_t threshold,
                                  std::size_t cap, std::optional<std::vector<PromisePair>> pairs = std::nullopt) {
    const auto space = protocol.space();
    const auto all = pairs ? std::move(*pairs) : all_promise_pairs(n);
    if (all.empty()) throw Error("check_tail_hypothesis: no input pairs");
    TailVerdict v;
    v.bound = Rational(1, 2 * static_cast<long>(n));
    const auto masses = parallel_map<Rational>(
        all.size(), [&](std::size_t i) { return tail_mass(protocol, all[i].a, all[i].b, space, threshold, cap); });
    std::size_t worst = 0;
    for (std::size_t i = 0; i < masses.size(); ++i)
        if (masses[i] > masses[worst]) worst = i;
    v.worst_mass = masses[worst];
    v.worst_a = all[worst].a;
    v.worst_b = all[worst].b;
    v.holds = v.worst_mass < v.bound;
    v.pairs_checked = all.size();
    return v;
}

struct Cell {
    std::vector<SignVector> members;
    std::size_t lambda_index = 0;
    std::size_t remaining_before = 0;  // |A_{i-1}|
};

struct Partition {
    std::size_t n = 0;
    std::size_t threshold = 0;  // M
    std::vector<Cell> cells;
    bool guarantee_applies = false;  // tail hypothesis held, so cells.size() <= 2n^2 is claimed

    std::size_t max_cells() const noexcept { return 2 * n * n; }

    /// Index of the cell containing a, if any.
    std::optional<std::size_t> cell_of(const SignVector& a) const {
        for (std::size_t j = 0; j < cells.size(); ++j)
            for (const auto& m : cells[j].members)
                if (m == a) return j;
        return std::nullopt;
    }
};

/// Some input has no accepting lambda, or a partition cell no longer replays.
class PartitionError : public Error {
public:
    PartitionError(const std::string& what, SignVector witness) : Error(what), witness_(std::move(witness)) {}
    const SignVector& witness() const noexcept { return witness_; }

private:
    SignVector witness_;
};

/// Greedy construction: at each round pick the lambda accepting the most
/// remaining inputs (ties to the lowest index), remove them, repeat.
///
/// Before the greedy loop every input is checked to have acceptance mass
/// mu{g(a,a,.) = 1} = 1/n and a non-empty set of cheap accepting lambda;
/// otherwise PartitionError carries the offending input.
template <DjProtocol P>
Partition partition_inputs(const P& protocol, std::size_t n, std::size_t threshold, std::size_t cap,
                           bool hypothesis_held) {
    const auto space = protocol.space();
    const auto inputs = all_sign_vectors(n);
    const std::size_t count = inputs.size();

    struct Row {
        std::vector<bool> g;
        std::vector<bool> accepts;  // g = 1 and T < M
    };
    const auto rows = parallel_map<Row>(space.size(), [&](std::size_t l) {
        Row row{std::vector<bool>(count), std::vector<bool>(count)};
        for (std::size_t i = 0; i < count; ++i) {
            const auto rec = run(protocol, inputs[i], inputs[i], space.point(l), cap, l);
            row.g[i] = rec.g();
            row.accepts[i] = rec.g() && rec.cost < threshold;
        }
        return row;
    });

    const Rational target(1, static_cast<long>(n));
    for (std::size_t i = 0; i < count; ++i) {
        BigInt mass = 0;
        bool any = false;
        for (std::size_t l = 0; l < space.size(); ++l) {
            if (rows[l].g[i]) mass += space.numerator(l);
            any = any || rows[l].accepts[i];
        }
        const Rational m(mass, BigInt(space.denominator()));
        if (m != target)
            throw PartitionError("input " + inputs[i].str() + " has acceptance mass " + to_string(m) +
                                     " instead of 1/" + std::to_string(n) + ": protocol misses the target probability",
                                 inputs[i]);
        if (!any)
            throw PartitionError("input " + inputs[i].str() +
                                     " has no lambda with g = 1 and T < M: tail hypothesis fails for (a, a)",
                                 inputs[i]);
    }

    Partition part;
    part.n = n;
    part.threshold = threshold;
    part.guarantee_applies = hypothesis_held;
    std::vector<bool> alive(count, true);
    std::size_t remaining = count;
    while (remaining > 0) {
        std::size_t best = 0, best_count = 0;
        for (std::size_t l = 0; l < space.size(); ++l) {
            std::size_t c = 0;
            for (std::size_t i = 0; i < count; ++i) c += alive[i] && rows[l].accepts[i];
            if (c > best_count) {
                best = l;
                best_count = c;
            }
        }
        Cell cell;
        cell.lambda_index = best;
        cell.remaining_before = remaining;
        for (std::size_t i = 0; i < count; ++i) {
            if (alive[i] && rows[best].accepts[i]) {
                cell.members.push_back(inputs[i]);
                alive[i] = false;
            }
        }
        remaining -= cell.members.size();
        part.cells.push_back(std::move(cell));
    }
    return part;
}

/// Re-runs every member of every cell and checks disjointness and coverage.
/// Returns an empty string on success, else the first problem found.
template <DjProtocol P>
std::string verify_partition(const P& protocol, const Partition& part, std::size_t cap) {
    const auto space = protocol.space();
    std::vector<int> seen(std::size_t{1} << part.n, 0);
    for (std::size_t j = 0; j < part.cells.size(); ++j) {
        const auto& cell = part.cells[j];
        if (cell.members.empty()) return "cell " + std::to_string(j) + " is empty";
        for (const auto& a : cell.members) {
            if (a.size() != part.n) return "cell member has wrong length";
            if (++seen[a.code()] > 1) return "input " + a.str() + " appears in more than one cell";
            const auto rec = run(protocol, a, a, space.point(cell.lambda_index), cap, cell.lambda_index);
            if (!rec.g()) return "input " + a.str() + " does not accept on its cell's lambda";
            if (rec.cost >= part.threshold) return "input " + a.str() + " costs " + std::to_string(rec.cost) + " >= M";
        }
    }
    for (std::size_t c = 0; c < seen.size(); ++c)
        if (seen[c] == 0) return "input " + SignVector::from_code(c, part.n).str() + " is in no cell";
    return {};
}

/// The shared j -> lambda_j table both verifiers use, with a content digest.
struct DerandomizationTable {
    std::size_t n = 0;
    std::vector<std::size_t> lambda_indices;
    std::uint64_t digest = 0;

    static std::uint64_t compute_digest(std::size_t n, const std::vector<std::size_t>& idx) {
        // FNV-1a over little-endian 64-bit words (n, then each index)
        std::uint64_t h = 0xcbf29ce484222325ULL;
        auto mix = [&h](std::uint64_t w) {
            for (int b = 0; b < 8; ++b) {
                h ^= (w >> (8 * b)) & 0xFFU;
                h *= 0x100000001b3ULL;
            }
        };
        mix(n);
        for (auto i : idx) mix(i);
        return h;
    }

    static DerandomizationTable from(const Partition& part) {
        DerandomizationTable t;
        t.n = part.n;
        for (const auto& c : part.cells) t.lambda_indices.push_back(c.lambda_index);
        t.digest = compute_digest(t.n, t.lambda_indices);
        return t;
    }

    bool intact() const { return digest == compute_digest(n, lambda_indices); }
};

/// Width of the j field: ceil(log2(2 n^2)).
inline unsigned j_field_bits(std::size_t n) { return dj::ceil_log2(2 * static_cast<std::uint64_t>(n) * n); }

struct DjCertificate {
    std::size_t j = 0;  // 0-based cell index
    Transcript transcript;

    /// j field plus two bits (sender, payload) per entry; excludes the wire
    /// format's 16-bit count prefix.
    std::size_t bit_length(std::size_t n) const { return j_field_bits(n) + 2 * transcript.size(); }

    friend bool operator==(const DjCertificate&, const DjCertificate&) = default;
};

/// The oracle: a's cell index and the transcript on ((a, lambda_j), (a, lambda_j)).
template <DjProtocol P>
DjCertificate build_certificate(const SignVector& a, const Partition& part, const P& protocol, std::size_t cap) {
    const auto j = part.cell_of(a);
    if (!j) throw PartitionError("partition corrupt: input " + a.str() + " is in no cell", a);
    const auto space = protocol.space();
    const auto lambda_index = part.cells[*j].lambda_index;
    auto rec = run(protocol, a, a, space.point(lambda_index), cap, lambda_index);
    if (!rec.g() || rec.cost >= part.threshold)
        throw PartitionError("partition corrupt: input " + a.str() + " no longer accepts within M", a);
    return {*j, std::move(rec.transcript)};
}

/// One party's check: replay its side with (own, lambda_j), consuming the
/// transcript for incoming bits and matching every outgoing bit; accept iff
/// consistent and the party's output is +1.
template <DjProtocol P>
dj::Verdict verify_certificate(Party party, const SignVector& own, const DjCertificate& cert,
                               const DerandomizationTable& table, const P& protocol) {
    if (!table.intact()) return {false, "derandomization table digest mismatch"};
    if (own.size() != table.n) return {false, "input length differs from the table's n"};
    if (cert.j >= table.lambda_indices.size())
        return {false, "cell index " + std::to_string(cert.j) + " out of range (" +
                           std::to_string(table.lambda_indices.size()) + " cells)"};
    const auto space = protocol.space();
    const auto idx = table.lambda_indices[cert.j];
    if (idx >= space.size()) return {false, "table points outside the randomness space"};
    const auto r = replay_party(protocol, party, own, space.point(idx), cert.transcript);
    if (!r.consistent) return {false, r.diagnostic};
    if (r.output != Outcome::plus) return {false, std::string(name(party)) + " output is -1"};
    return {true, ""};
}

/// Wire format: 16-bit big-endian entry count, then MSB-first bits
/// [j: j_field_bits(n)][(sender, payload) per entry], zero-padded to a byte.
/// Sender bit: 0 = Alice, 1 = Bob.
inline std::vector<std::uint8_t> encode_certificate(const DjCertificate& cert, std::size_t n) {
    const unsigned jw = j_field_bits(n);
    if (cert.transcript.size() > 0xFFFF) throw Error("certificate transcript longer than 65535 entries");
    if (jw < 64 && cert.j >= (std::uint64_t{1} << jw)) throw Error("cell index does not fit the j field");
    std::vector<bool> bits;
    for (unsigned k = 0; k < jw; ++k) bits.push_back(((cert.j >> (jw - 1 - k)) & 1U) != 0);
    for (const auto& e : cert.transcript.entries()) {
        bits.push_back(e.sender == Party::bob);
        bits.push_back(e.bit);
    }
    std::vector<std::uint8_t> out;
    const auto count = static_cast<std::uint16_t>(cert.transcript.size());
    out.push_back(static_cast<std::uint8_t>(count >> 8));
    out.push_back(static_cast<std::uint8_t>(count & 0xFF));
    out.resize(2 + (bits.size() + 7) / 8, 0);
    for (std::size_t i = 0; i < bits.size(); ++i)
        if (bits[i]) out[2 + i / 8] |= static_cast<std::uint8_t>(0x80U >> (i % 8));
    return out;
}

/// Inverse of encode_certificate; rejects wrong lengths and non-zero padding.
inline DjCertificate decode_certificate(const std::vector<std::uint8_t>& bytes, std::size_t n) {
    if (bytes.size() < 2) throw Error("malformed certificate: missing count prefix");
    const std::size_t count = (static_cast<std::size_t>(bytes[0]) << 8) | bytes[1];
    const unsigned jw = j_field_bits(n);
    const std::size_t nbits = jw + 2 * count;
    if (bytes.size() != 2 + (nbits + 7) / 8)
        throw Error("malformed certificate: expected " + std::to_string(2 + (nbits + 7) / 8) + " bytes, got " +
                    std::to_string(bytes.size()));
    auto bit = [&](std::size_t i) { return ((bytes[2 + i / 8] >> (7 - i % 8)) & 1U) != 0; };
    for (std::size_t i = nbits; i < 8 * (bytes.size() - 2); ++i)
        if (bit(i)) throw Error("malformed certificate: non-zero padding");
    DjCertificate cert;
    for (unsigned k = 0; k < jw; ++k) cert.j = (cert.j << 1) | (bit(k) ? 1U : 0U);
    for (std::size_t e = 0; e < count; ++e)
        cert.transcript.push(bit(jw + 2 * e) ? Party::bob : Party::alice, bit(jw + 2 * e + 1));
    return cert;
}

struct CompletenessReport {
    std::size_t accepted = 0;
    std::size_t total = 0;
    std::size_t max_bits = 0;
    std::size_t max_transcript = 0;
};

/// Builds and verifies the honest certificate for every a in {-1,1}^n.
template <DjProtocol P>
CompletenessReport check_completeness(const P& protocol, const Partition& part, std::size_t cap) {
    const auto table = DerandomizationTable::from(part);
    CompletenessReport rep;
    for (const auto& a : all_sign_vectors(part.n)) {
        const auto cert = build_certificate(a, part, protocol, cap);
        ++rep.total;
        rep.max_bits = std::max(rep.max_bits, cert.bit_length(part.n));
        rep.max_transcript = std::max(rep.max_transcript, cert.transcript.size());
        if (verify_certificate(Party::alice, a, cert, table, protocol).accept &&
            verify_certificate(Party::bob, a, cert, table, protocol).accept)
            ++rep.accepted;
    }
    return rep;
}

struct SoundnessReport {
    std::size_t certificates_tried = 0;
    std::size_t joint_acceptances = 0;
    std::size_t rejecting_pairs = 0;
    std::optional<DjCertificate> counterexample;
    bool exhaustive = false;
    std::uint64_t seed = 0;
};

namespace detail {

template <DjProtocol P>
bool both_accept(const P& protocol, const DerandomizationTable& table, const SignVector& a, const SignVector& b,
                 const DjCertificate& cert) {
    return verify_certificate(Party::alice, a, cert, table, protocol).accept &&
           verify_certificate(Party::bob, b, cert, table, protocol).accept;
}

}  // namespace detail

/// Every certificate with j < 2^{j_field_bits} and at most max_entries
/// transcript entries, against every pair with a.b = 0.
template <DjProtocol P>
SoundnessReport check_soundness_exhaustive(const P& protocol, const DerandomizationTable& table,
                                           std::size_t max_entries) {
    SoundnessReport rep;
    rep.exhaustive = true;
    const std::size_t n = table.n;
    const std::size_t j_count = std::size_t{1} << j_field_bits(n);
    for (const auto& pair : all_promise_pairs(n)) {
        if (dot(pair.a, pair.b) != 0) continue;
        ++rep.rejecting_pairs;
        for (std::size_t len = 0; len <= max_entries; ++len) {
            const std::uint64_t combos = std::uint64_t{1} << (2 * len);
            for (std::uint64_t code = 0; code < combos; ++code) {
                Transcript t;
                for (std::size_t e = 0; e < len; ++e) {
                    const auto two = (code >> (2 * (len - 1 - e))) & 3U;
                    t.push((two & 2U) ? Party::bob : Party::alice, (two & 1U) != 0);
                }
                for (std::size_t j = 0; j < j_count; ++j) {
                    DjCertificate cert{j, t};
                    ++rep.certificates_tried;
                    if (detail::both_accept(protocol, table, pair.a, pair.b, cert)) {
                        ++rep.joint_acceptances;
                        if (!rep.counterexample) rep.counterexample = cert;
                    }
                }
            }
        }
    }
    return rep;
}

/// Seeded forgeries against random pairs with a.b = 0. Strategies, chosen
/// uniformly per trial: uniformly random certificates; the honest certificate
/// of a or of b; the genuine joint transcript on (a, b, lambda_j) with one
/// bit flipped.
template <DjProtocol P>
SoundnessReport check_soundness_adversarial(const P& protocol, const Partition& part, std::size_t trials,
                                            std::uint64_t seed, std::size_t max_entries, std::size_t cap) {
    SoundnessReport rep;
    rep.seed = seed;
    const std::size_t n = part.n;
    const auto table = DerandomizationTable::from(part);
    const auto space = protocol.space();
    std::vector<PromisePair> rejecting;
    for (auto& p : all_promise_pairs(n))
        if (dot(p.a, p.b) == 0) rejecting.push_back(std::move(p));
    rep.rejecting_pairs = rejecting.size();
    if (rejecting.empty()) return rep;

    std::mt19937_64 rng(seed);
    const std::size_t j_count = std::size_t{1} << j_field_bits(n);
    auto pick = [&rng](std::size_t bound) { return std::uniform_int_distribution<std::size_t>(0, bound - 1)(rng); };

    for (std::size_t t = 0; t < trials; ++t) {
        const auto& pair = rejecting[pick(rejecting.size())];
        DjCertificate cert;
        switch (pick(4)) {
            case 0: {
                cert.j = pick(j_count);
                const std::size_t len = pick(max_entries + 1);
                for (std::size_t e = 0; e < len; ++e) cert.transcript.push(pick(2) ? Party::bob : Party::alice, pick(2));
                break;
            }
            case 1: cert = build_certificate(pair.a, part, protocol, cap); break;
            case 2: cert = build_certificate(pair.b, part, protocol, cap); break;
            default: {
                cert.j = pick(part.cells.size());
                auto rec = run(protocol, pair.a, pair.b, space.point(table.lambda_indices[cert.j]), cap);
                std::vector<Entry> es(rec.transcript.entries().begin(), rec.transcript.entries().end());
                if (!es.empty()) {
                    auto& e = es[pick(es.size())];
                    e.bit = !e.bit;
                }
                cert.transcript = Transcript(std::move(es));
                break;
            }
        }
        ++rep.certificates_tried;
        if (detail::both_accept(protocol, table, pair.a, pair.b, cert)) {
            ++rep.joint_acceptances;
            if (!rep.counterexample) rep.counterexample = cert;
        }
    }
    return rep;
}

}  // namespace qcclab::reduction
