#pragma once

// Runs protocols over randomness spaces and aggregates outcome laws, cost
// moments and tail masses. Finite spaces are enumerated exactly; sampled
// protocols are estimated by seeded Monte Carlo.

#include "parallel.hpp"
#include "protocol.hpp"
#include "quantum.hpp"
#include "randomness.hpp"
#include "rational.hpp"

#include <array>
#include <cmath>
#include <cstdint>
#include <random>
#include <string>
#include <vector>

namespace qcclab {

/// Protocols that can draw lambda from their own (possibly continuous) law.
template <class P>
concept SampledRandomness = requires(const P& p, std::mt19937_64& rng) {
    { p.sample(rng) } -> std::convertible_to<typename P::randomness_type>;
};

template <class Input>
struct InputPair {
    Input a;
    Input b;
    std::string label;
};

template <TwoPartyProtocol P>
RunRecord run_at(const P& protocol, const typename P::input_type& a, const typename P::input_type& b,
                 const RandomnessSpace<typename P::randomness_type>& space, std::size_t index, std::size_t cap) {
    return run(protocol, a, b, space.point(index), cap, index);
}

/// Outcome and cost of one run, without the transcript.
struct RunSummary {
    Outcome y_a;
    Outcome y_b;
    std::size_t cost;
};

template <TwoPartyProtocol P>
std::vector<RunSummary> enumerate_runs(const P& protocol, const typename P::input_type& a,
                                       const typename P::input_type& b,
                                       const RandomnessSpace<typename P::randomness_type>& space, std::size_t cap) {
    std::vector<RunSummary> out;
    out.reserve(space.size());
    for (std::size_t i = 0; i < space.size(); ++i) {
        const auto rec = run(protocol, a, b, space.point(i), cap, i);
        out.push_back({rec.y_a, rec.y_b, rec.cost});
    }
    return out;
}

namespace detail {

template <class L>
JointProbs<Rational> law_from_runs(const std::vector<RunSummary>& runs, const RandomnessSpace<L>& space) {
    std::array<BigInt, 4> mass{};  // pp, mp, pm, mm numerators
    for (std::size_t i = 0; i < runs.size(); ++i) {
        const bool pa = runs[i].y_a == Outcome::plus;
        const bool pb = runs[i].y_b == Outcome::plus;
        const std::size_t slot = pa ? (pb ? 0 : 2) : (pb ? 1 : 3);
        mass[slot] += space.numerator(i);
    }
    const BigInt den(space.denominator());
    return JointProbs<Rational>::from_three(Rational(mass[0], den), Rational(mass[1], den), Rational(mass[2], den));
}

template <class L>
Rational moment_from_runs(const std::vector<RunSummary>& runs, const RandomnessSpace<L>& space, unsigned k) {
    BigInt acc = 0;
    for (std::size_t i = 0; i < runs.size(); ++i) acc += BigInt(space.numerator(i)) * boost::multiprecision::pow(BigInt(runs[i].cost), k);
    return Rational(acc, BigInt(space.denominator()));
}

template <class L>
Rational tail_from_runs(const std::vector<RunSummary>& runs, const RandomnessSpace<L>& space, std::size_t threshold) {
    BigInt acc = 0;
    for (std::size_t i = 0; i < runs.size(); ++i)
        if (runs[i].cost >= threshold) acc += space.numerator(i);
    return Rational(acc, BigInt(space.denominator()));
}

inline std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream) {
    // splitmix64 of (seed, stream)
    std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (stream + 1);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

}  // namespace detail

/// Exact outcome law by weighted enumeration of every lambda.
template <TwoPartyProtocol P>
JointProbs<Rational> output_distribution(const P& protocol, const typename P::input_type& a,
                                         const typename P::input_type& b,
                                         const RandomnessSpace<typename P::randomness_type>& space, std::size_t cap) {
    return detail::law_from_runs(enumerate_runs(protocol, a, b, space, cap), space);
}

/// Exact mu{lambda : T(a,b,lambda) >= threshold}.
template <TwoPartyProtocol P>
Rational tail_mass(const P& protocol, const typename P::input_type& a, const typename P::input_type& b,
                   const RandomnessSpace<typename P::randomness_type>& space, std::size_t threshold, std::size_t cap) {
    return detail::tail_from_runs(enumerate_runs(protocol, a, b, space, cap), space, threshold);
}

/// Monte Carlo estimate of the outcome law and cost statistics.
struct SampledLaw {
    JointProbs<double> probs;
    ExpectationTriple<double> expectations;
    ExpectationTriple<double> standard_errors;
    std::size_t samples = 0;
    std::uint64_t seed = 0;
    std::size_t min_cost = 0;
    std::size_t max_cost = 0;
};

template <TwoPartyProtocol P>
    requires SampledRandomness<P>
SampledLaw sample_distribution(const P& protocol, const typename P::input_type& a, const typename P::input_type& b,
                               std::size_t samples, std::uint64_t seed, std::size_t cap) {
    if (samples == 0) throw Error("sample budget must be positive");
    std::mt19937_64 rng(seed);
    std::array<std::uint64_t, 4> counts{};
    double sum_ab = 0, sum_a = 0, sum_b = 0;
    SampledLaw law;
    law.samples = samples;
    law.seed = seed;
    law.min_cost = static_cast<std::size_t>(-1);
    for (std::size_t s = 0; s < samples; ++s) {
        const auto lambda = protocol.sample(rng);
        const auto rec = run(protocol, a, b, lambda, cap, s);
        const int ya = value(rec.y_a), yb = value(rec.y_b);
        counts[ya > 0 ? (yb > 0 ? 0 : 2) : (yb > 0 ? 1 : 3)]++;
        sum_ab += ya * yb;
        sum_a += ya;
        sum_b += yb;
        law.min_cost = std::min(law.min_cost, rec.cost);
        law.max_cost = std::max(law.max_cost, rec.cost);
    }
    const double N = static_cast<double>(samples);
    law.probs = {counts[0] / N, counts[1] / N, counts[2] / N, counts[3] / N};
    law.expectations = {sum_ab / N, sum_a / N, sum_b / N};
    // +-1 variables: Var = 1 - mean^2
    auto se = [N](double mean) { return std::sqrt(std::max(0.0, 1.0 - mean * mean) / N); };
    law.standard_errors = {se(law.expectations.ab), se(law.expectations.a), se(law.expectations.b)};
    return law;
}

/// A BLQMS instance: inputs plus the quantum target law.
template <class Input, class R>
struct Scenario {
    Input a;
    Input b;
    JointProbs<R> target;
    std::string label;
};

template <class R>
struct BlqmsEntry {
    std::string label;
    JointProbs<R> observed;
    JointProbs<R> target;
    bool restricted_ok = false;  // p_pp only
    bool full_ok = false;        // all four probabilities
    double max_abs_deviation = 0;
};

template <class R>
struct BlqmsReport {
    std::vector<BlqmsEntry<R>> entries;
    bool restricted_pass = true;
    bool full_pass = true;
    bool exact = true;
    std::size_t samples = 0;
    std::uint64_t seed = 0;
    double tolerance = 0;
    std::size_t cap = 0;
};

namespace detail {

template <class R>
double max_deviation(const JointProbs<R>& x, const JointProbs<R>& y) {
    const std::array<double, 4> d{std::abs(to_double(R(x.pp - y.pp))), std::abs(to_double(R(x.mp - y.mp))),
                                  std::abs(to_double(R(x.pm - y.pm))), std::abs(to_double(R(x.mm - y.mm)))};
    return *std::max_element(d.begin(), d.end());
}

}  // namespace detail

/// Exact comparison of enumerated laws against quantum targets. The
/// restricted check (p_pp only) and the full check are reported separately.
template <TwoPartyProtocol P>
BlqmsReport<Rational> check_exact_blqms(const P& protocol,
                                        const std::vector<Scenario<typename P::input_type, Rational>>& scenarios,
                                        const RandomnessSpace<typename P::randomness_type>& space, std::size_t cap) {
    BlqmsReport<Rational> report;
    report.cap = cap;
    report.entries = parallel_map<BlqmsEntry<Rational>>(scenarios.size(), [&](std::size_t i) {
        const auto& sc = scenarios[i];
        BlqmsEntry<Rational> e;
        e.label = sc.label;
        e.target = sc.target;
        e.observed = output_distribution(protocol, sc.a, sc.b, space, cap);
        e.restricted_ok = e.observed.pp == e.target.pp;
        e.full_ok = e.observed == e.target;
        e.max_abs_deviation = detail::max_deviation(e.observed, e.target);
        return e;
    });
    for (const auto& e : report.entries) {
        report.restricted_pass = report.restricted_pass && e.restricted_ok;
        report.full_pass = report.full_pass && e.full_ok;
    }
    return report;
}

/// Monte Carlo comparison: each scenario uses its own stream derived from
/// (seed, scenario index), so results do not depend on thread count.
template <TwoPartyProtocol P>
    requires SampledRandomness<P>
BlqmsReport<double> check_sampled_blqms(const P& protocol,
                                        const std::vector<Scenario<typename P::input_type, double>>& scenarios,
                                        std::size_t samples, std::uint64_t seed, double tolerance, std::size_t cap) {
    BlqmsReport<double> report;
    report.exact = false;
    report.samples = samples;
    report.seed = seed;
    report.tolerance = tolerance;
    report.cap = cap;
    report.entries = parallel_map<BlqmsEntry<double>>(scenarios.size(), [&](std::size_t i) {
        const auto& sc = scenarios[i];
        const auto law = sample_distribution(protocol, sc.a, sc.b, samples, detail::derive_seed(seed, i), cap);
        BlqmsEntry<double> e;
        e.label = sc.label;
        e.target = sc.target;
        e.observed = law.probs;
        e.restricted_ok = std::abs(e.observed.pp - e.target.pp) <= tolerance;
        e.max_abs_deviation = detail::max_deviation(e.observed, e.target);
        e.full_ok = e.max_abs_deviation <= tolerance;
        return e;
    });
    for (const auto& e : report.entries) {
        report.restricted_pass = report.restricted_pass && e.restricted_ok;
        report.full_pass = report.full_pass && e.full_ok;
    }
    return report;
}

/// Per-pair cost moments E[T^k] (k = 1..k_max) and tail masses.
template <class R>
struct PairMoments {
    std::string label;
    std::vector<R> moments;         // index k-1
    std::vector<R> standard_errors; // sampled mode only
    std::vector<R> tails;           // one per threshold
};

template <class R>
struct MomentReport {
    unsigned k_max = 0;
    std::vector<std::size_t> thresholds;
    std::vector<PairMoments<R>> pairs;
    std::vector<R> worst;  // T^(k) = max over pairs, index k-1
    bool exact = true;
    std::size_t samples = 0;
    std::uint64_t seed = 0;
    std::size_t cap = 0;
};

namespace detail {

template <class R>
void fill_worst(MomentReport<R>& rep) {
    rep.worst.assign(rep.k_max, R(0));
    for (const auto& p : rep.pairs)
        for (unsigned k = 0; k < rep.k_max; ++k)
            if (p.moments[k] > rep.worst[k]) rep.worst[k] = p.moments[k];
}

}  // namespace detail

/// Exact moments by enumeration: E[T^k] = sum_lambda mu(lambda) T^k.
template <TwoPartyProtocol P>
MomentReport<Rational> empirical_moments(const P& protocol,
                                         const std::vector<InputPair<typename P::input_type>>& pairs,
                                         const RandomnessSpace<typename P::randomness_type>& space, unsigned k_max,
                                         const std::vector<std::size_t>& thresholds, std::size_t cap) {
    if (k_max == 0) throw Error("moment order k_max must be at least 1");
    MomentReport<Rational> rep;
    rep.k_max = k_max;
    rep.thresholds = thresholds;
    rep.cap = cap;
    rep.pairs = parallel_map<PairMoments<Rational>>(pairs.size(), [&](std::size_t i) {
        const auto runs = enumerate_runs(protocol, pairs[i].a, pairs[i].b, space, cap);
        PairMoments<Rational> pm;
        pm.label = pairs[i].label;
        for (unsigned k = 1; k <= k_max; ++k) pm.moments.push_back(detail::moment_from_runs(runs, space, k));
        for (auto m : thresholds) pm.tails.push_back(detail::tail_from_runs(runs, space, m));
        return pm;
    });
    detail::fill_worst(rep);
    return rep;
}

/// Sampled moments with standard errors sd(T^k)/sqrt(N).
template <TwoPartyProtocol P>
    requires SampledRandomness<P>
MomentReport<double> sampled_moments(const P& protocol, const std::vector<InputPair<typename P::input_type>>& pairs,
                                     std::size_t samples, std::uint64_t seed, unsigned k_max,
                                     const std::vector<std::size_t>& thresholds, std::size_t cap) {
    if (k_max == 0) throw Error("moment order k_max must be at least 1");
    if (samples == 0) throw Error("sample budget must be positive");
    MomentReport<double> rep;
    rep.k_max = k_max;
    rep.thresholds = thresholds;
    rep.exact = false;
    rep.samples = samples;
    rep.seed = seed;
    rep.cap = cap;
    rep.pairs = parallel_map<PairMoments<double>>(pairs.size(), [&](std::size_t i) {
        std::mt19937_64 rng(detail::derive_seed(seed, i));
        std::vector<double> sum(k_max, 0.0), sum_sq(k_max, 0.0);
        std::vector<std::size_t> hits(thresholds.size(), 0);
        for (std::size_t s = 0; s < samples; ++s) {
            const auto rec = run(protocol, pairs[i].a, pairs[i].b, protocol.sample(rng), cap, s);
            double tk = 1.0;
            for (unsigned k = 0; k < k_max; ++k) {
                tk *= static_cast<double>(rec.cost);
                sum[k] += tk;
                sum_sq[k] += tk * tk;
            }
            for (std::size_t t = 0; t < thresholds.size(); ++t)
                if (rec.cost >= thresholds[t]) ++hits[t];
        }
        const double N = static_cast<double>(samples);
        PairMoments<double> pm;
        pm.label = pairs[i].label;
        for (unsigned k = 0; k < k_max; ++k) {
            const double mean = sum[k] / N;
            pm.moments.push_back(mean);
            pm.standard_errors.push_back(std::sqrt(std::max(0.0, sum_sq[k] / N - mean * mean) / N));
        }
        for (auto h : hits) pm.tails.push_back(static_cast<double>(h) / N);
        return pm;
    });
    detail::fill_worst(rep);
    return rep;
}

}  // namespace qcclab
