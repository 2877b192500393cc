#pragma once

// Command implementations for the qcclab executable. Kept in a header so the
// test suites can drive commands in-process and compare outputs byte for byte.

#include "qcclab/io/json.hpp"
#include "qcclab/qcclab.hpp"

#include <CLI11.hpp>

#include <cmath>
#include <cstdint>
#include <fstream>
#include <iomanip>
#include <numbers>
#include <random>
#include <sstream>
#include <string>
#include <vector>

namespace qcclab::cli {

using io::json;

enum ExitCode : int { kOk = 0, kInputError = 2, kPropertyViolation = 3 };

struct Result {
    int code = kOk;
    std::string out;  // report written to --out or stdout
    std::string err;  // diagnostics
};

struct RunConfig {
    std::string command;
    std::string subcommand;  // dj only
    std::string protocol;
    std::string scenario;
    std::string out;
    std::string format = "json";
    std::vector<std::uint64_t> n_values;
    std::vector<unsigned> k_values;
    std::vector<std::size_t> m_values;
    std::uint64_t seed = 1;
    std::size_t samples = 0;
    double tolerance = 5e-3;
    std::string party;
    std::string vector;
    std::string vector_a;
    std::string vector_b;
    std::string cert;

    std::uint64_t n() const { return n_values.empty() ? 0 : n_values.front(); }
};

inline constexpr std::uint64_t kExhaustiveLimit = 16;

namespace detail {

inline std::string fmt15(double x) {
    std::ostringstream os;
    os << std::setprecision(15) << io::round15(x);
    return os.str();
}

inline json load_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw io::InputError("cannot open " + path);
    try {
        return json::parse(in);
    } catch (const json::exception& e) {
        throw io::InputError("malformed JSON in " + path + ": " + e.what());
    }
}

inline std::uint64_t require_even_n(const RunConfig& c) {
    const auto n = c.n();
    if (n == 0) throw io::InputError("--n is required");
    if (n % 2 != 0) throw io::InputError("n must be even, got " + std::to_string(n));
    return n;
}

inline Outcome parse_outcome(const json& v) {
    if (!v.is_number_integer() || (v.get<int>() != 1 && v.get<int>() != -1))
        throw io::InputError("constant outputs must be +1 or -1");
    return v.get<int>() > 0 ? Outcome::plus : Outcome::minus;
}

/// {"outputs": [y_A, y_B]} from the optional config; default (+1,+1).
inline ConstantProtocol<SignVector> constant_from(const RunConfig& c) {
    if (c.scenario.empty()) return {Outcome::plus, Outcome::plus};
    const auto doc = load_json_file(c.scenario);
    if (!doc.contains("outputs") || !doc["outputs"].is_array() || doc["outputs"].size() != 2)
        throw io::InputError("constant protocol config needs \"outputs\": [y_A, y_B]");
    return {parse_outcome(doc["outputs"][0]), parse_outcome(doc["outputs"][1])};
}

inline std::vector<InputPair<SignVector>> promise_input_pairs(const RunConfig& c, std::uint64_t n) {
    std::vector<InputPair<SignVector>> out;
    if (!c.scenario.empty()) {
        const auto doc = load_json_file(c.scenario);
        if (doc.contains("pairs")) {
            for (const auto& p : doc["pairs"]) {
                SignVector a = SignVector::parse(p.at("a").get<std::string>());
                SignVector b = SignVector::parse(p.at("b").get<std::string>());
                if (a.size() != n || b.size() != n) throw io::InputError("pair length differs from --n");
                require_promise(a, b);
                out.push_back({a, b, a.str() + "|" + b.str()});
            }
            return out;
        }
    }
    if (n > kExhaustiveLimit) throw io::InputError("exhaustive mode is limited to n <= 16; list pairs in --scenario");
    for (auto& p : all_promise_pairs(n)) out.push_back({p.a, p.b, p.a.str() + "|" + p.b.str()});
    return out;
}

inline Vec3 random_direction(std::mt19937_64& rng) { return random_unit_vector(rng); }

inline Vec3 parse_vec3(const json& v) {
    if (!v.is_array() || v.size() != 3) throw io::InputError("direction must be [x, y, z]");
    Vec3 u{v[0].get<double>(), v[1].get<double>(), v[2].get<double>()};
    require_unit(u, "direction");
    return u;
}

/// Direction pairs from --scenario {"pairs":[{"alice":[..],"bob":[..]}]} or
/// `count` random pairs drawn from the seed.
inline std::vector<InputPair<Vec3>> direction_pairs(const RunConfig& c, std::size_t count) {
    std::vector<InputPair<Vec3>> out;
    if (!c.scenario.empty()) {
        const auto doc = load_json_file(c.scenario);
        if (doc.contains("pairs")) {
            for (const auto& p : doc["pairs"])
                out.push_back({parse_vec3(p.at("alice")), parse_vec3(p.at("bob")), "pair" + std::to_string(out.size())});
            return out;
        }
    }
    std::mt19937_64 rng(c.seed);
    for (std::size_t i = 0; i < count; ++i) {
        const Vec3 a = random_direction(rng);
        const Vec3 b = random_direction(rng);
        out.push_back({a, b, "pair" + std::to_string(i)});
    }
    return out;
}

inline json vec_json(const Vec3& v) { return json::array({io::round15(v[0]), io::round15(v[1]), io::round15(v[2])}); }

template <class R>
json moments_json(const MomentReport<R>& rep) {
    json pairs = json::array();
    for (const auto& p : rep.pairs) {
        json j{{"label", p.label}};
        json m = json::array();
        for (const auto& x : p.moments) m.push_back(io::number(x));
        j["moments"] = m;
        if constexpr (std::is_same_v<R, Rational>) {
            json ex = json::array();
            for (const auto& x : p.moments) ex.push_back(to_string(x));
            j["moments_exact"] = ex;
        } else {
            json se = json::array();
            for (const auto& x : p.standard_errors) se.push_back(io::number(x));
            j["standard_errors"] = se;
        }
        json t = json::object();
        for (std::size_t i = 0; i < rep.thresholds.size(); ++i) {
            if constexpr (std::is_same_v<R, Rational>) t[std::to_string(rep.thresholds[i])] = to_string(p.tails[i]);
            else t[std::to_string(rep.thresholds[i])] = io::number(p.tails[i]);
        }
        j["tail_mass"] = t;
        pairs.push_back(j);
    }
    json worst = json::array();
    for (const auto& x : rep.worst) worst.push_back(io::number(x));
    return {{"k_max", rep.k_max}, {"pairs", pairs}, {"worst_case_moments", worst}};
}

template <class R>
json blqms_json(const BlqmsReport<R>& rep) {
    json entries = json::array();
    for (const auto& e : rep.entries)
        entries.push_back({{"label", e.label},
                           {"observed", io::to_json(e.observed)},
                           {"target", io::to_json(e.target)},
                           {"restricted_ok", e.restricted_ok},
                           {"full_ok", e.full_ok},
                           {"max_abs_deviation", io::number(e.max_abs_deviation)}});
    json j{{"mode", rep.exact ? "exact" : "monte_carlo"},
           {"restricted_pass", rep.restricted_pass},
           {"full_pass", rep.full_pass},
           {"cap", rep.cap},
           {"scenarios", entries}};
    if (!rep.exact) {
        j["samples"] = rep.samples;
        j["tolerance"] = io::number(rep.tolerance);
    }
    return j;
}

inline std::vector<Scenario<SignVector, Rational>> dj_scenarios(const std::vector<InputPair<SignVector>>& pairs) {
    std::vector<Scenario<SignVector, Rational>> out;
    const auto n = pairs.empty() ? 0 : pairs.front().a.size();
    const auto rho = maximally_entangled<Rational>(n == 0 ? 1 : n);
    for (const auto& p : pairs)
        out.push_back({p.a, p.b,
                       predict_joint_probs(sign_vector_projector(p.a), sign_vector_projector(p.b), rho), p.label});
    return out;
}

inline std::vector<Scenario<Vec3, double>> singlet_scenarios(const std::vector<InputPair<Vec3>>& pairs) {
    std::vector<Scenario<Vec3, double>> out;
    const auto rho = singlet();
    for (const auto& p : pairs)
        out.push_back({p.a, p.b,
                       predict_joint_probs(observable_to_projector(pauli_observable(p.a)),
                                           observable_to_projector(pauli_observable(p.b)), rho),
                       p.label});
    return out;
}

inline std::vector<std::size_t> thresholds_or(const RunConfig& c, std::vector<std::size_t> fallback) {
    return c.m_values.empty() ? fallback : c.m_values;
}

inline unsigned k_max_of(const RunConfig& c) { return c.k_values.empty() ? 2 : c.k_values.front(); }

}  // namespace detail

inline Result cmd_predict(const RunConfig& c) {
    if (c.scenario.empty()) throw io::InputError("--scenario is required");
    auto report = io::predict(io::parse_scenario(detail::load_json_file(c.scenario)));
    report["seed"] = c.seed;
    return {kOk, report.dump(2) + "\n", ""};
}

inline Result cmd_simulate(const RunConfig& c) {
    json report{{"command", "simulate"}, {"protocol", c.protocol}, {"seed", c.seed}};
    const unsigned k_max = detail::k_max_of(c);
    std::ostringstream csv;
    auto csv_rows = [&](const auto& rep, const std::vector<std::string>& laws) {
        csv << "label,p_pp,p_mp,p_pm,p_mm";
        for (unsigned k = 1; k <= rep.k_max; ++k) csv << ",moment_" << k;
        for (auto m : rep.thresholds) csv << ",tail_" << m;
        csv << ",seed\n";
        for (std::size_t i = 0; i < rep.pairs.size(); ++i) {
            csv << rep.pairs[i].label << "," << laws[i];
            for (const auto& x : rep.pairs[i].moments) csv << "," << detail::fmt15(to_double(x));
            for (const auto& x : rep.pairs[i].tails) csv << "," << detail::fmt15(to_double(x));
            csv << "," << c.seed << "\n";
        }
    };
    auto law_csv = [](const auto& p) {
        return detail::fmt15(to_double(p.pp)) + "," + detail::fmt15(to_double(p.mp)) + "," +
               detail::fmt15(to_double(p.pm)) + "," + detail::fmt15(to_double(p.mm));
    };

    if (c.protocol == "send_all_reply" || c.protocol == "constant") {
        const auto n = detail::require_even_n(c);
        const auto pairs = detail::promise_input_pairs(c, n);
        const std::size_t cap = default_cap(n);
        auto body = [&](const auto& protocol) {
            const auto space = protocol.space();
            const auto rep = empirical_moments(protocol, pairs, space, k_max, detail::thresholds_or(c, {}), cap);
            std::vector<std::string> laws;
            json dists = json::array();
            for (const auto& p : pairs) {
                const auto law = output_distribution(protocol, p.a, p.b, space, cap);
                laws.push_back(law_csv(law));
                dists.push_back({{"label", p.label}, {"distribution", io::to_json(law)}});
            }
            report["n"] = n;
            report["cap"] = cap;
            report["mode"] = "exact";
            report["lambda_points"] = space.size();
            report["distributions"] = dists;
            report["moments"] = detail::moments_json(rep);
            if (c.format == "csv") csv_rows(rep, laws);
        };
        if (c.protocol == "send_all_reply") body(SendAllReplyProtocol(n));
        else body(detail::constant_from(c));
    } else if (c.protocol == "toner_bacon") {
        const std::size_t samples = c.samples == 0 ? 100000 : c.samples;
        const auto pairs = detail::direction_pairs(c, 4);
        const std::size_t cap = default_cap(2);
        TonerBaconProtocol tb;
        const auto rep = sampled_moments(tb, pairs, samples, c.seed, k_max, detail::thresholds_or(c, {}), cap);
        std::vector<std::string> laws;
        json dists = json::array();
        for (std::size_t i = 0; i < pairs.size(); ++i) {
            const auto law = sample_distribution(tb, pairs[i].a, pairs[i].b, samples, qcclab::detail::derive_seed(c.seed, i), cap);
            laws.push_back(law_csv(law.probs));
            dists.push_back({{"label", pairs[i].label},
                             {"alice", detail::vec_json(pairs[i].a)},
                             {"bob", detail::vec_json(pairs[i].b)},
                             {"distribution", io::to_json(law.probs)},
                             {"expectations", io::to_json(law.expectations)},
                             {"standard_errors", io::to_json(law.standard_errors)},
                             {"cost_range", {law.min_cost, law.max_cost}}});
        }
        report["cap"] = cap;
        report["mode"] = "monte_carlo";
        report["samples"] = samples;
        report["distributions"] = dists;
        report["moments"] = detail::moments_json(rep);
        if (c.format == "csv") csv_rows(rep, laws);
    } else {
        throw io::InputError("unknown protocol '" + c.protocol + "' (send_all_reply, toner_bacon, constant)");
    }
    if (c.format == "csv") return {kOk, csv.str(), ""};
    return {kOk, report.dump(2) + "\n", ""};
}

inline Result cmd_verify(const RunConfig& c) {
    json report{{"command", "verify"}, {"protocol", c.protocol}, {"seed", c.seed}};
    bool pass = true;
    if (c.protocol == "send_all_reply" || c.protocol == "constant") {
        const auto n = detail::require_even_n(c);
        const auto scenarios = detail::dj_scenarios(detail::promise_input_pairs(c, n));
        auto body = [&](const auto& protocol) {
            const auto rep = check_exact_blqms(protocol, scenarios, protocol.space(), default_cap(n));
            report["n"] = n;
            report["report"] = detail::blqms_json(rep);
            pass = rep.restricted_pass && rep.full_pass;
        };
        if (c.protocol == "send_all_reply") body(SendAllReplyProtocol(n));
        else body(detail::constant_from(c));
    } else if (c.protocol == "toner_bacon") {
        const std::size_t samples = c.samples == 0 ? 1000000 : c.samples;
        const auto scenarios = detail::singlet_scenarios(detail::direction_pairs(c, 20));
        const auto rep = check_sampled_blqms(TonerBaconProtocol{}, scenarios, samples, c.seed, c.tolerance, default_cap(2));
        report["state"] = "singlet";
        report["report"] = detail::blqms_json(rep);
        pass = rep.full_pass;
    } else {
        throw io::InputError("unknown protocol '" + c.protocol + "' (send_all_reply, toner_bacon, constant)");
    }
    report["pass"] = pass;
    return {pass ? kOk : kPropertyViolation, report.dump(2) + "\n", ""};
}

inline Result cmd_dj(const RunConfig& c) {
    json report{{"command", "dj " + c.subcommand}, {"seed", c.seed}};
    if (c.subcommand == "cert") {
        const auto a = SignVector::parse(c.vector_a);
        const auto b = SignVector::parse(c.vector_b);
        require_promise(a, b);
        if (dj::eval_f(a, b)) throw io::InputError("a = b: the input is accepting and has no rejecting certificate");
        const auto cert = dj::n0_certificate(a, b);
        const auto bits = dj::encode(cert, a.size());
        report["n"] = a.size();
        report["index"] = cert.index;
        report["alpha"] = cert.alpha;
        report["bits"] = dj::bits_to_string(bits);
        report["length"] = bits.size();
        report["alice_accepts"] = dj::n0_verify(Party::alice, a, cert).accept;
        report["bob_accepts"] = dj::n0_verify(Party::bob, b, cert).accept;
    } else if (c.subcommand == "verify") {
        const auto v = SignVector::parse(c.vector);
        Party party;
        if (c.party == "alice") party = Party::alice;
        else if (c.party == "bob") party = Party::bob;
        else throw io::InputError("--party must be alice or bob");
        const auto cert = dj::decode(dj::bits_from_string(c.cert), v.size());
        const auto verdict = dj::n0_verify(party, v, cert);
        report["party"] = c.party;
        report["index"] = cert.index;
        report["alpha"] = cert.alpha;
        report["accept"] = verdict.accept;
        if (!verdict.accept) report["diagnostic"] = verdict.diagnostic;
    } else if (c.subcommand == "bounds") {
        const auto n = c.n();
        if (n < 2) throw io::InputError("--n must be at least 2");
        const std::uint64_t n0 = dj::reject_certificate_bits(n);
        const std::uint64_t d = n + 1;  // Alice sends a, Bob answers f
        std::uint64_t n1_min = 0;
        while (!dj::auy_check(d, n0, n1_min)) ++n1_min;
        report["n"] = n;
        report["n1_lower_bound"] = io::number(dj::n1_lower_bound(static_cast<double>(n)));
        report["n0_upper_bound"] = n0;
        report["deterministic_upper_bound"] = d;
        report["auy_min_n1_consistent"] = n1_min;
    } else {
        throw io::InputError("dj needs a subcommand: cert, verify, bounds");
    }
    return {kOk, report.dump(2) + "\n", ""};
}

inline Result cmd_reduce(const RunConfig& c) {
    const auto n = detail::require_even_n(c);
    if (n > kExhaustiveLimit) throw io::InputError("reduce enumerates {-1,1}^n and is limited to n <= 16");
    if (c.m_values.empty()) throw io::InputError("--M is required");
    const std::size_t threshold = c.m_values.front();
    const std::size_t cap = default_cap(n);
    json report{{"command", "reduce"}, {"protocol", c.protocol}, {"n", n}, {"M", threshold}, {"seed", c.seed}};

    auto body = [&](const auto& protocol) -> int {
        const auto tail = reduction::check_tail_hypothesis(protocol, n, threshold, cap);
        report["tail_hypothesis"] = {{"holds", tail.holds},
                                     {"bound", to_string(tail.bound)},
                                     {"worst_mass", to_string(tail.worst_mass)},
                                     {"worst_pair", tail.worst_a.str() + "|" + tail.worst_b.str()},
                                     {"pairs_checked", tail.pairs_checked}};
        reduction::Partition part;
        try {
            part = reduction::partition_inputs(protocol, n, threshold, cap, tail.holds);
        } catch (const reduction::PartitionError& e) {
            report["partition"] = {{"error", e.what()}, {"witness", e.witness().str()}};
            return kPropertyViolation;
        }
        const auto replay = reduction::verify_partition(protocol, part, cap);
        json cells = json::array();
        for (const auto& cell : part.cells) {
            json members = json::array();
            for (const auto& m : cell.members) members.push_back(m.hex());
            cells.push_back({{"lambda_index", cell.lambda_index}, {"members", members}});
        }
        const bool count_ok = !part.guarantee_applies || part.cells.size() <= part.max_cells();
        report["partition"] = {{"cells", part.cells.size()},
                               {"max_cells", part.max_cells()},
                               {"guarantee_applies", part.guarantee_applies},
                               {"cell_count_ok", count_ok},
                               {"replay_ok", replay.empty()},
                               {"export", cells}};
        if (!replay.empty()) report["partition"]["replay_error"] = replay;

        const auto comp = reduction::check_completeness(protocol, part, cap);
        const auto table = reduction::DerandomizationTable::from(part);
        const std::size_t max_entries = comp.max_transcript;
        const auto sound = n <= 4 ? reduction::check_soundness_exhaustive(protocol, table, max_entries)
                                  : reduction::check_soundness_adversarial(
                                        protocol, part, c.samples == 0 ? 100000 : c.samples, c.seed, max_entries, cap);
        const double budget = bounds::certificate_budget(static_cast<double>(n), static_cast<double>(threshold));
        const double accounting = 2.0 * std::log2(static_cast<double>(n)) + 1.0 + 2.0 * comp.max_transcript;
        report["completeness"] = {{"accepted", comp.accepted}, {"total", comp.total}};
        report["soundness"] = {{"mode", sound.exhaustive ? "exhaustive" : "adversarial"},
                               {"certificates_tried", sound.certificates_tried},
                               {"rejecting_pairs", sound.rejecting_pairs},
                               {"joint_acceptances", sound.joint_acceptances},
                               {"pass", sound.joint_acceptances == 0}};
        report["certificate"] = {{"j_field_bits", reduction::j_field_bits(n)},
                                 {"max_length_bits", comp.max_bits},
                                 {"max_transcript_entries", comp.max_transcript},
                                 {"accounting_bound", io::number(accounting)},
                                 {"within_accounting", static_cast<double>(comp.max_bits) <= accounting},
                                 {"budget_2log2n_plus_2M", io::number(budget)},
                                 {"within_budget", static_cast<double>(comp.max_bits) <= budget},
                                 {"table_digest", table.digest}};
        const bool ok = count_ok && replay.empty() && comp.accepted == comp.total && sound.joint_acceptances == 0;
        return ok ? kOk : kPropertyViolation;
    };

    int code;
    if (c.protocol == "send_all_reply") code = body(SendAllReplyProtocol(n));
    else if (c.protocol == "constant") code = body(detail::constant_from(c));
    else throw io::InputError("reduce supports send_all_reply and constant protocols");
    return {code, report.dump(2) + "\n", ""};
}

inline Result cmd_bounds(const RunConfig& c) {
    const std::vector<std::uint64_t> ns = c.n_values.empty() ? std::vector<std::uint64_t>{1024, 1048576, 10000002}
                                                             : c.n_values;
    const std::vector<unsigned> ks = c.k_values.empty() ? std::vector<unsigned>{1, 2, 3} : c.k_values;
    for (auto n : ns)
        if (n < 2) throw io::InputError("bounds need n >= 2");
    for (auto k : ks)
        if (k < 1) throw io::InputError("bounds need k >= 1");
    json rows = json::array();
    std::ostringstream csv;
    csv << "n,k,n1_lower_bound,m_of_n,moment_bound,moment_bound_via_m,contradiction,seed\n";
    for (auto n : ns) {
        const double x = static_cast<double>(n);
        for (auto k : ks) {
            const double n1 = dj::n1_lower_bound(x);
            const double m = bounds::m_of_n(x);
            const double mb = bounds::moment_bound(x, k);
            const double via_m = bounds::moment_bound_from_threshold(x, k);
            const bool contra = bounds::contradiction_holds(x);
            rows.push_back({{"n", n},
                            {"k", k},
                            {"n1_lower_bound", io::number(n1)},
                            {"m_of_n", io::number(m)},
                            {"moment_bound", io::number(mb)},
                            {"moment_bound_via_m", io::number(via_m)},
                            {"contradiction", contra}});
            csv << n << "," << k << "," << detail::fmt15(n1) << "," << detail::fmt15(m) << "," << detail::fmt15(mb)
                << "," << detail::fmt15(via_m) << "," << (contra ? "true" : "false") << "," << c.seed << "\n";
        }
    }
    if (c.format == "csv") return {kOk, csv.str(), ""};
    json report{{"command", "bounds"},
                {"seed", c.seed},
                {"contradiction_threshold", bounds::contradiction_threshold()},
                {"rows", rows}};
    return {kOk, report.dump(2) + "\n", ""};
}

inline Result dispatch(const RunConfig& c) {
    if (c.format != "json" && c.format != "csv") throw io::InputError("--format must be json or csv");
    if (c.command == "predict") return cmd_predict(c);
    if (c.command == "simulate") return cmd_simulate(c);
    if (c.command == "verify") return cmd_verify(c);
    if (c.command == "dj") return cmd_dj(c);
    if (c.command == "reduce") return cmd_reduce(c);
    if (c.command == "bounds") return cmd_bounds(c);
    throw io::InputError("a command is required: predict, simulate, verify, dj, reduce, bounds");
}

/// Parses argv-style arguments (without the program name) and runs the
/// command. Never throws; errors map to exit codes.
inline Result run(const std::vector<std::string>& args) {
    CLI::App app{"qcclab: communication cost of simulating binary quantum measurements"};
    app.require_subcommand(1);
    RunConfig c;

    auto common = [&c](CLI::App* sub) {
        sub->add_option("--n", c.n_values, "input length (repeatable for bounds)");
        sub->add_option("--M", c.m_values, "bit threshold M (repeatable for tail masses)");
        sub->add_option("--k", c.k_values, "moment order (repeatable for bounds)");
        sub->add_option("--seed", c.seed, "seed for every random choice")->capture_default_str();
        sub->add_option("--samples", c.samples, "Monte Carlo / forgery budget");
        sub->add_option("--protocol", c.protocol, "send_all_reply | toner_bacon | constant");
        sub->add_option("--scenario", c.scenario, "scenario or protocol config JSON");
        sub->add_option("--out", c.out, "write the report here instead of stdout");
        sub->add_option("--format", c.format, "json | csv")->capture_default_str();
    };

    auto* predict = app.add_subcommand("predict", "quantum joint probabilities and expectations for a scenario");
    common(predict);
    auto* simulate = app.add_subcommand("simulate", "run a protocol: outcome laws, cost moments, tail masses");
    common(simulate);
    auto* verify = app.add_subcommand("verify", "compare a protocol's outcome law with quantum targets");
    common(verify);
    verify->add_option("--tolerance", c.tolerance, "Monte Carlo tolerance")->capture_default_str();
    auto* reduce = app.add_subcommand("reduce", "partition + certificate pipeline over a protocol");
    common(reduce);
    auto* bounds_cmd = app.add_subcommand("bounds", "bound formula table");
    common(bounds_cmd);

    auto* dj_cmd = app.add_subcommand("dj", "Deutsch-Jozsa certificates and bounds");
    dj_cmd->require_subcommand(1);
    auto* dj_cert = dj_cmd->add_subcommand("cert", "rejecting certificate for a.b = 0");
    dj_cert->add_option("--a", c.vector_a, "Alice's vector, e.g. ++-- or 1,1,-1,-1")->required();
    dj_cert->add_option("--b", c.vector_b, "Bob's vector")->required();
    auto* dj_verify = dj_cmd->add_subcommand("verify", "one party's check of a rejecting certificate");
    dj_verify->add_option("--party", c.party, "alice | bob")->required();
    dj_verify->add_option("--vector", c.vector, "the party's own vector")->required();
    dj_verify->add_option("--cert", c.cert, "certificate bit string")->required();
    auto* dj_bounds = dj_cmd->add_subcommand("bounds", "N^1 lower bound and certificate sizes");
    dj_bounds->add_option("--n", c.n_values, "input length")->required();
    for (auto* s : {dj_cert, dj_verify, dj_bounds}) {
        s->add_option("--seed", c.seed, "recorded in the report");
        s->add_option("--out", c.out, "write the report here instead of stdout");
    }

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        return {kOk, app.help(), ""};
    } catch (const CLI::ParseError& e) {
        return {kInputError, "", std::string(e.what()) + "\n"};
    }

    for (auto* s : app.get_subcommands()) c.command = s->get_name();
    for (auto* s : dj_cmd->get_subcommands()) c.subcommand = s->get_name();

    Result r;
    try {
        r = dispatch(c);
    } catch (const io::InputError& e) {
        return {kInputError, "", std::string("error: ") + e.what() + "\n"};
    } catch (const InvariantViolation& e) {
        return {kInputError, "", std::string("error: ") + e.what() + "\n"};
    } catch (const DimensionMismatch& e) {
        return {kInputError, "", std::string("error: ") + e.what() + "\n"};
    } catch (const PromiseViolation& e) {
        return {kInputError, "", std::string("error: ") + e.what() + "\n"};
    } catch (const std::exception& e) {
        return {kPropertyViolation, "", std::string("error: ") + e.what() + "\n"};
    }
    if (!c.out.empty()) {
        std::ofstream f(c.out, std::ios::binary);
        if (!f) return {kInputError, "", "error: cannot write " + c.out + "\n"};
        f << r.out;
        r.out.clear();
    }
    return r;
}

}  // namespace qcclab::cli
