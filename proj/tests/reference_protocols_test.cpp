#include "test_support.hpp"

#include <gtest/gtest.h>

using namespace qcclab;

namespace {
Rational R(long p, long q = 1) { return make_rational(p, q); }
SignVector v(const char* s) { return SignVector::parse(s); }
}  // namespace

TEST(SendAllReply, EqualInputsNTwo) {
    const SendAllReplyProtocol p(2);
    EXPECT_EQ(output_distribution(p, v("++"), v("++"), p.space(), default_cap(2)).pp, R(1, 2));
}

TEST(SendAllReply, OrthogonalInputsNTwo) {
    const SendAllReplyProtocol p(2);
    EXPECT_EQ(output_distribution(p, v("++"), v("+-"), p.space(), default_cap(2)).pp, R(0));
}

TEST(SendAllReply, EveryRunCostsNPlusOne) {
    for (std::size_t n : {2, 4, 6}) {
        const SendAllReplyProtocol p(n);
        for (const auto& pr : all_promise_pairs(n))
            for (std::uint64_t lam = 0; lam < p.grid_size(); lam += 5)
                ASSERT_EQ(run(p, pr.a, pr.b, lam, default_cap(n)).cost, n + 1);
    }
}

// The full outcome law, not just p_pp, equals the trace prediction.
TEST(SendAllReply, FullLawMatchesQuantumAtNFour) {
    const SendAllReplyProtocol p(4);
    const auto rho = maximally_entangled(4);
    const auto space = p.space();
    for (const auto& pr : all_promise_pairs(4)) {
        const auto got = output_distribution(p, pr.a, pr.b, space, default_cap(4));
        const auto want = predict_joint_probs(sign_vector_projector(pr.a), sign_vector_projector(pr.b), rho);
        ASSERT_EQ(got, want) << pr.a.str() << " " << pr.b.str();
    }
}

TEST(SendAllReply, FinerGridGivesSameLaw) {
    const SendAllReplyProtocol coarse(4), fine(4, 3);
    const auto a = v("+--+");
    EXPECT_EQ(output_distribution(coarse, a, a, coarse.space(), default_cap(4)),
              output_distribution(fine, a, a, fine.space(), default_cap(4)));
}

TEST(SendAllReply, PromiseViolationRejected) {
    const SendAllReplyProtocol p(4);
    EXPECT_THROW(run(p, v("++++"), v("+++-"), 0, default_cap(4)), PromiseViolation);
}

TEST(SendAllReply, BadParametersRejected) {
    EXPECT_THROW(SendAllReplyProtocol(3), InvariantViolation);
    EXPECT_THROW(SendAllReplyProtocol(0), InvariantViolation);
    EXPECT_THROW(SendAllReplyProtocol(4, 0), InvariantViolation);
    const SendAllReplyProtocol p(4);
    EXPECT_THROW(run(p, v("++"), v("++"), 0, default_cap(4)), DimensionMismatch);
}

TEST(SendAllReply, AcceptingSetsDependOnInput) {
    // Different inputs accept on different grid points, which is what lets the
    // partition need more than one cell.
    const SendAllReplyProtocol p(4);
    const auto a = v("----");  // code 0
    const auto b = v("---+");  // code 1
    bool differ = false;
    for (std::uint64_t lam = 0; lam < p.grid_size(); ++lam)
        differ = differ || (run(p, a, a, lam, 100).g() != run(p, b, b, lam, 100).g());
    EXPECT_TRUE(differ);
}

TEST(TonerBacon, SameDirectionAnticorrelated) {
    const TonerBaconProtocol p;
    const Vec3 u{0, 0, 1};
    const auto law = sample_distribution(p, u, u, 200000, 3, default_cap(2));
    const auto want = predict_expectations(pauli_observable(u), pauli_observable(u), singlet());
    EXPECT_NEAR(law.expectations.ab, want.ab, 5e-3);
    EXPECT_NEAR(law.expectations.ab, -1.0, 5e-3);
}

TEST(TonerBacon, PerpendicularUncorrelated) {
    const TonerBaconProtocol p;
    const auto law = sample_distribution(p, Vec3{1, 0, 0}, Vec3{0, 1, 0}, 1000000, 8, default_cap(2));
    EXPECT_NEAR(law.expectations.ab, 0.0, 5e-3);
    EXPECT_NEAR(law.expectations.a, 0.0, 5e-3);
    EXPECT_NEAR(law.expectations.b, 0.0, 5e-3);
}

TEST(TonerBacon, NonUnitDirectionRejected) {
    const TonerBaconProtocol p;
    std::mt19937_64 rng(1);
    EXPECT_THROW(run(p, Vec3{0, 0, 1.1}, Vec3{0, 0, 1}, p.sample(rng), 10), InvariantViolation);
    EXPECT_THROW(run(p, Vec3{0, 0, 1}, Vec3{0, 0.5, 0}, p.sample(rng), 10), InvariantViolation);
    EXPECT_NO_THROW(run(p, Vec3{0, 0, 1 + 1e-12}, Vec3{0, 0, 1}, p.sample(rng), 10));
}

TEST(TonerBacon, SignOfZeroIsPlus) {
    EXPECT_EQ(sgn(0.0), 1);
    EXPECT_EQ(sgn(-0.0), 1);
    EXPECT_EQ(sgn(-1e-300), -1);
    // a orthogonal to both lambda: s1 = s2 = +1, y_A = -1, c = +1
    const TonerBaconProtocol p;
    const SpherePair lam{{1, 0, 0}, {0, 1, 0}};
    const auto rec = run(p, Vec3{0, 0, 1}, Vec3{0, 0, 1}, lam, 10);
    EXPECT_EQ(rec.y_a, Outcome::minus);
    EXPECT_TRUE(rec.transcript[0].bit);
    EXPECT_EQ(rec.y_b, Outcome::plus);  // b.(l1 + l2) = 0
}

TEST(TonerBacon, QuadratureApproximatesSinglet) {
    const TonerBaconProtocol p;
    const auto space = TonerBaconProtocol::quadrature_space(60);
    const Vec3 a{0, 0, 1}, b{0.6, 0, 0.8};
    const auto law = output_distribution(p, a, b, space, 10);
    const auto e = probs_to_expectations(law);
    EXPECT_NEAR(to_double(e.ab), -0.8, 0.05);
}

TEST(Constant, PlusPlusAlwaysAccepts) {
    const ConstantProtocol<SignVector> p(Outcome::plus, Outcome::plus);
    EXPECT_TRUE(run(p, v("++"), v("+-"), 0, 10).g());
}

TEST(Constant, MinusMinusNeverAccepts) {
    const ConstantProtocol<SignVector> p(Outcome::minus, Outcome::minus);
    const auto law = output_distribution(p, v("++"), v("++"), p.space(), 10);
    EXPECT_EQ(law.pp, R(0));
    EXPECT_EQ(law.mm, R(1));
    EXPECT_EQ(run(p, v("++"), v("++"), 0, 10).cost, 0u);
}
