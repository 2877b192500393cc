#include "test_support.hpp"

#include <gtest/gtest.h>

using namespace qcclab;
using namespace qcclab::reduction;
using qcclab::oracle::OneLambdaProtocol;
using qcclab::oracle::TwoBranchProtocol;

namespace {

Rational R(long p, long q = 1) { return make_rational(p, q); }
SignVector v(const char* s) { return SignVector::parse(s); }

struct Pipeline {
    SendAllReplyProtocol protocol;
    std::size_t cap;
    Partition part;
    DerandomizationTable table;

    explicit Pipeline(std::size_t n, std::size_t m)
        : protocol(n), cap(default_cap(n)), part(partition_inputs(protocol, n, m, cap, true)),
          table(DerandomizationTable::from(part)) {}
};

}  // namespace

TEST(TailHypothesis, SendAllReplyBelowCost) {
    const SendAllReplyProtocol p(4);
    const auto v6 = check_tail_hypothesis(p, 4, 6, default_cap(4));
    EXPECT_TRUE(v6.holds);
    EXPECT_EQ(v6.worst_mass, R(0));
    EXPECT_EQ(v6.bound, R(1, 8));
    EXPECT_EQ(v6.pairs_checked, 16u * 7u);
}

TEST(TailHypothesis, SendAllReplyAtCost) {
    const SendAllReplyProtocol p(4);
    const auto v5 = check_tail_hypothesis(p, 4, 5, default_cap(4));
    EXPECT_FALSE(v5.holds);
    EXPECT_EQ(v5.worst_mass, R(1));
}

TEST(TailHypothesis, TwoBranchFails) {
    const auto verdict = check_tail_hypothesis(TwoBranchProtocol{}, 4, 3, 10);
    EXPECT_FALSE(verdict.holds);
    EXPECT_EQ(verdict.worst_mass, R(1, 2));
}

TEST(PartitionInputs, SendAllReplyNTwo) {
    const SendAllReplyProtocol p(2);
    const auto space = p.space();
    for (const auto& a : all_sign_vectors(2)) {
        BigInt mass = 0;
        for (std::size_t l = 0; l < space.size(); ++l)
            if (run(p, a, a, space.point(l), 100).g()) mass += space.numerator(l);
        EXPECT_EQ(Rational(mass, BigInt(space.denominator())), R(1, 2));
    }
    const auto part = partition_inputs(p, 2, 4, default_cap(2), true);
    EXPECT_LE(part.cells.size(), 8u);
    EXPECT_EQ(verify_partition(p, part, default_cap(2)), "");
}

TEST(PartitionInputs, SingleAcceptingLambdaGivesOneCell) {
    const OneLambdaProtocol p(4);
    const auto part = partition_inputs(p, 4, 1, 10, true);
    ASSERT_EQ(part.cells.size(), 1u);
    EXPECT_EQ(part.cells[0].members.size(), 16u);
    EXPECT_EQ(part.cells[0].lambda_index, 0u);
    EXPECT_EQ(verify_partition(p, part, 10), "");
}

TEST(PartitionInputs, NFourWithinBoundAndReplays) {
    const Pipeline pl(4, 6);
    EXPECT_LE(pl.part.cells.size(), pl.part.max_cells());
    EXPECT_EQ(pl.part.max_cells(), 32u);
    EXPECT_EQ(verify_partition(pl.protocol, pl.part, pl.cap), "");
    std::size_t covered = 0;
    for (const auto& c : pl.part.cells) covered += c.members.size();
    EXPECT_EQ(covered, 16u);
}

// Each greedy round removes at least a 1/(2n^2) fraction of what remains when
// every input has cheap acceptance mass above 1/(2n).
TEST(PartitionInputs, GreedyRoundsShrinkGeometrically) {
    const Pipeline pl(4, 6);
    for (const auto& c : pl.part.cells)
        EXPECT_GE(c.members.size() * pl.part.max_cells(), c.remaining_before);
}

TEST(PartitionInputs, ConstantProtocolYieldsWitness) {
    const ConstantProtocol<SignVector> p(Outcome::plus, Outcome::plus);
    try {
        partition_inputs(p, 4, 6, 10, true);
        FAIL() << "expected PartitionError";
    } catch (const PartitionError& e) {
        EXPECT_EQ(e.witness().size(), 4u);
        EXPECT_NE(std::string(e.what()).find("acceptance mass"), std::string::npos);
    }
}

TEST(PartitionInputs, NoCheapAcceptanceYieldsWitness) {
    // Every accepting run costs 5 bits, so M = 5 leaves nothing cheap.
    const SendAllReplyProtocol p(4);
    try {
        partition_inputs(p, 4, 5, default_cap(4), false);
        FAIL() << "expected PartitionError";
    } catch (const PartitionError& e) {
        EXPECT_NE(std::string(e.what()).find("tail hypothesis"), std::string::npos);
    }
}

TEST(VerifyPartition, DetectsCorruption) {
    Pipeline pl(4, 6);
    auto broken = pl.part;
    broken.cells[0].members.push_back(broken.cells[1].members.front());
    EXPECT_NE(verify_partition(pl.protocol, broken, pl.cap), "");
    auto missing = pl.part;
    missing.cells.back().members.pop_back();
    if (missing.cells.back().members.empty()) missing.cells.pop_back();
    EXPECT_NE(verify_partition(pl.protocol, missing, pl.cap), "");
    auto moved = pl.part;
    std::swap(moved.cells[0].lambda_index, moved.cells[1].lambda_index);
    EXPECT_NE(verify_partition(pl.protocol, moved, pl.cap), "");
}

TEST(BuildCertificate, LengthNTwo) {
    const Pipeline pl(2, 4);
    EXPECT_EQ(j_field_bits(2), 3u);
    for (const auto& a : all_sign_vectors(2)) EXPECT_EQ(build_certificate(a, pl.part, pl.protocol, pl.cap).bit_length(2), 9u);
}

TEST(BuildCertificate, LengthNFour) {
    const Pipeline pl(4, 6);
    EXPECT_EQ(j_field_bits(4), 5u);
    for (const auto& a : all_sign_vectors(4)) EXPECT_EQ(build_certificate(a, pl.part, pl.protocol, pl.cap).bit_length(4), 15u);
}

TEST(BuildCertificate, InputOutsidePartitionRejected) {
    Pipeline pl(4, 6);
    auto part = pl.part;
    const auto a = part.cells[0].members.front();
    part.cells[0].members.erase(part.cells[0].members.begin());
    EXPECT_THROW(build_certificate(a, part, pl.protocol, pl.cap), PartitionError);
}

TEST(VerifyCertificate, CompletenessExhaustive) {
    for (std::size_t n : {2, 4}) {
        const Pipeline pl(n, n + 2);
        const auto rep = check_completeness(pl.protocol, pl.part, pl.cap);
        EXPECT_EQ(rep.accepted, rep.total);
        EXPECT_EQ(rep.total, std::size_t{1} << n);
        EXPECT_EQ(rep.max_transcript, n + 1);
    }
}

TEST(VerifyCertificate, FlippedAliceBitRejectedByAlice) {
    const Pipeline pl(4, 6);
    const auto a = v("+-+-");
    const auto cert = build_certificate(a, pl.part, pl.protocol, pl.cap);
    for (std::size_t i = 0; i < 4; ++i) {
        std::vector<Entry> es(cert.transcript.entries().begin(), cert.transcript.entries().end());
        ASSERT_EQ(es[i].sender, Party::alice);
        es[i].bit = !es[i].bit;
        const DjCertificate forged{cert.j, Transcript(es)};
        EXPECT_FALSE(verify_certificate(Party::alice, a, forged, pl.table, pl.protocol).accept) << i;
    }
}

TEST(VerifyCertificate, MalformedRejected) {
    const Pipeline pl(4, 6);
    const auto a = v("++--");
    auto cert = build_certificate(a, pl.part, pl.protocol, pl.cap);
    DjCertificate bad_j{pl.part.cells.size(), cert.transcript};
    EXPECT_FALSE(verify_certificate(Party::alice, a, bad_j, pl.table, pl.protocol).accept);
    std::vector<Entry> es(cert.transcript.entries().begin(), cert.transcript.entries().end() - 2);
    const DjCertificate truncated{cert.j, Transcript(es)};
    EXPECT_FALSE(verify_certificate(Party::alice, a, truncated, pl.table, pl.protocol).accept);
    EXPECT_FALSE(verify_certificate(Party::bob, a, truncated, pl.table, pl.protocol).accept);
}

TEST(VerifyCertificate, TamperedTableRejected) {
    const Pipeline pl(4, 6);
    const auto a = v("++--");
    const auto cert = build_certificate(a, pl.part, pl.protocol, pl.cap);
    auto table = pl.table;
    table.lambda_indices[0] ^= 1;
    const auto r = verify_certificate(Party::alice, a, cert, table, pl.protocol);
    EXPECT_FALSE(r.accept);
    EXPECT_NE(r.diagnostic.find("digest"), std::string::npos);
}

TEST(Soundness, ExhaustiveNTwo) {
    const Pipeline pl(2, 4);
    const auto rep = check_soundness_exhaustive(pl.protocol, pl.table, 3);
    EXPECT_EQ(rep.joint_acceptances, 0u);
    EXPECT_EQ(rep.rejecting_pairs, 8u);  // each of 4 vectors has 2 orthogonal partners
    // (1 + 4 + 16 + 64) transcripts x 8 values of j x 8 pairs
    EXPECT_EQ(rep.certificates_tried, 85u * 8u * 8u);
}

TEST(Soundness, AdversarialNFour) {
    const Pipeline pl(4, 6);
    const auto rep = check_soundness_adversarial(pl.protocol, pl.part, 20000, 17, 5, pl.cap);
    EXPECT_EQ(rep.joint_acceptances, 0u);
    EXPECT_EQ(rep.certificates_tried, 20000u);
    EXPECT_EQ(rep.seed, 17u);
}

// A protocol that accepts orthogonal pairs gives the verifier something to
// wrongly accept; the search must find it.
TEST(Soundness, SearchFindsForgeryForBrokenProtocol) {
    const OneLambdaProtocol p(2);
    const auto part = partition_inputs(p, 2, 1, 10, true);
    const auto table = DerandomizationTable::from(part);
    const auto rep = check_soundness_exhaustive(p, table, 0);
    EXPECT_GT(rep.joint_acceptances, 0u);
    ASSERT_TRUE(rep.counterexample.has_value());
    EXPECT_EQ(rep.counterexample->j, 0u);
}

TEST(WireFormat, RoundTripEveryHonestCertificate) {
    const Pipeline pl(4, 6);
    for (const auto& a : all_sign_vectors(4)) {
        const auto cert = build_certificate(a, pl.part, pl.protocol, pl.cap);
        const auto bytes = encode_certificate(cert, 4);
        EXPECT_EQ(bytes.size(), 2u + (cert.bit_length(4) + 7) / 8);
        EXPECT_EQ(decode_certificate(bytes, 4), cert);
    }
}

TEST(WireFormat, KnownLayout) {
    // n = 4: j = 3 in 5 bits, then A1 B0
    DjCertificate cert{3, Transcript::parse("A1B0")};
    const auto bytes = encode_certificate(cert, 4);
    // 00011 01 10 -> 0001 1011 0(000 0000)
    ASSERT_EQ(bytes.size(), 4u);
    EXPECT_EQ(bytes[0], 0x00);
    EXPECT_EQ(bytes[1], 0x02);
    EXPECT_EQ(bytes[2], 0x1B);
    EXPECT_EQ(bytes[3], 0x00);
}

TEST(WireFormat, MalformedBytesRejected) {
    DjCertificate cert{3, Transcript::parse("A1B0")};
    auto bytes = encode_certificate(cert, 4);
    auto longer = bytes;
    longer.push_back(0);
    EXPECT_THROW(decode_certificate(longer, 4), Error);
    auto padded = bytes;
    padded.back() |= 0x01;
    EXPECT_THROW(decode_certificate(padded, 4), Error);
    EXPECT_THROW(decode_certificate({0x00}, 4), Error);
    EXPECT_THROW(encode_certificate(DjCertificate{32, Transcript{}}, 4), Error);
}

TEST(DerandomizationTable, DigestTracksContent) {
    const Pipeline pl(4, 6);
    EXPECT_TRUE(pl.table.intact());
    auto t = pl.table;
    t.lambda_indices.push_back(0);
    EXPECT_FALSE(t.intact());
    EXPECT_EQ(DerandomizationTable::compute_digest(4, pl.table.lambda_indices), pl.table.digest);
}
