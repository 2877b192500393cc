#pragma once

// JSON scenario input and report output. Floating values are written with at
// most 15 significant digits; exact values are additionally written as "p/q"
// strings.

#include "../errors.hpp"
#include "../matrix.hpp"
#include "../quantum.hpp"
#include "../rational.hpp"
#include "../sign_vector.hpp"

#include <json.hpp>

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <string>
#include <variant>

namespace qcclab::io {

using nlohmann::json;

/// A malformed or invalid input document.
class InputError : public Error {
public:
    using Error::Error;
};

/// x rounded to 15 significant digits, with -0 normalised to 0.
inline double round15(double x) {
    if (!std::isfinite(x)) return x;
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.15g", x);
    const double r = std::strtod(buf, nullptr);
    return r == 0.0 ? 0.0 : r;
}

inline json number(double x) { return round15(x); }
inline json number(const Rational& x) { return round15(to_double(x)); }

template <class R>
json to_json(const JointProbs<R>& p) {
    json j{{"p_pp", number(p.pp)}, {"p_mp", number(p.mp)}, {"p_pm", number(p.pm)}, {"p_mm", number(p.mm)}};
    if constexpr (std::is_same_v<R, Rational>)
        j["exact"] = {{"p_pp", to_string(p.pp)}, {"p_mp", to_string(p.mp)}, {"p_pm", to_string(p.pm)},
                      {"p_mm", to_string(p.mm)}};
    return j;
}

template <class R>
json to_json(const ExpectationTriple<R>& e) {
    json j{{"e_ab", number(e.ab)}, {"e_a", number(e.a)}, {"e_b", number(e.b)}};
    if constexpr (std::is_same_v<R, Rational>)
        j["exact"] = {{"e_ab", to_string(e.ab)}, {"e_a", to_string(e.a)}, {"e_b", to_string(e.b)}};
    return j;
}

namespace detail {

inline Complex parse_complex(const json& v) {
    if (v.is_number()) return {v.get<double>(), 0.0};
    if (v.is_array() && v.size() == 2 && v[0].is_number() && v[1].is_number())
        return {v[0].get<double>(), v[1].get<double>()};
    throw InputError("matrix entry must be [re, im] or a number");
}

inline Matrix<Complex> parse_matrix(const json& m, std::size_t dim, const std::string& what) {
    if (!m.is_array() || m.size() != dim) throw InputError(what + " must have " + std::to_string(dim) + " rows");
    Matrix<Complex> out(dim, dim);
    for (std::size_t i = 0; i < dim; ++i) {
        if (!m[i].is_array() || m[i].size() != dim)
            throw InputError(what + " row " + std::to_string(i) + " must have " + std::to_string(dim) + " entries");
        for (std::size_t j = 0; j < dim; ++j) out(i, j) = parse_complex(m[i][j]);
    }
    return out;
}

inline SignVector parse_sign_vector(const json& v, std::size_t n, const std::string& who) {
    if (!v.is_array()) throw InputError(who + ".vector must be an array of +-1");
    std::vector<int> c;
    for (const auto& x : v) {
        if (!x.is_number_integer()) throw InputError(who + ".vector entries must be +1 or -1");
        c.push_back(x.get<int>());
    }
    if (c.size() != n) throw InputError(who + ".vector length " + std::to_string(c.size()) + " != n");
    return SignVector(std::move(c));
}

}  // namespace detail

/// One side's measurement: a sign vector (projector (1/n)|a><a|) or an
/// explicit +-1 observable.
using PartySpec = std::variant<SignVector, Matrix<Complex>>;

struct PredictScenario {
    std::size_t n = 0;
    std::variant<std::string, Matrix<Complex>> state;  // "maximally_entangled" | "singlet" | explicit matrix
    PartySpec alice;
    PartySpec bob;

    bool exact() const {
        return std::holds_alternative<std::string>(state) && std::get<std::string>(state) == "maximally_entangled" &&
               std::holds_alternative<SignVector>(alice) && std::holds_alternative<SignVector>(bob);
    }
};

/// Parses {"n", "state", "alice", "bob"}. Throws InputError.
inline PredictScenario parse_scenario(const json& doc) {
    if (!doc.is_object()) throw InputError("scenario must be a JSON object");
    PredictScenario sc;
    if (!doc.contains("n") || !doc["n"].is_number_integer() || doc["n"].get<long>() < 1)
        throw InputError("scenario.n must be a positive integer");
    sc.n = doc["n"].get<std::size_t>();
    if (!doc.contains("state")) throw InputError("scenario.state is required");
    const auto& st = doc["state"];
    if (st.is_string()) {
        const auto s = st.get<std::string>();
        if (s != "maximally_entangled" && s != "singlet")
            throw InputError("scenario.state must be \"maximally_entangled\", \"singlet\" or {\"matrix\": ...}");
        if (s == "singlet" && sc.n != 2) throw InputError("singlet state requires n = 2");
        sc.state = s;
    } else if (st.is_object() && st.contains("matrix")) {
        sc.state = detail::parse_matrix(st["matrix"], sc.n * sc.n, "state.matrix");
    } else {
        throw InputError("scenario.state must be a string or {\"matrix\": ...}");
    }
    auto party = [&](const char* who) -> PartySpec {
        if (!doc.contains(who) || !doc[who].is_object()) throw InputError(std::string("scenario.") + who + " is required");
        const auto& p = doc[who];
        if (p.contains("vector")) return detail::parse_sign_vector(p["vector"], sc.n, who);
        if (p.contains("matrix")) return detail::parse_matrix(p["matrix"], sc.n, std::string(who) + ".matrix");
        throw InputError(std::string(who) + " must have \"vector\" or \"matrix\"");
    };
    sc.alice = party("alice");
    sc.bob = party("bob");
    return sc;
}

namespace detail {

inline BinaryObservable<Complex> observable_of(const PartySpec& p) {
    if (const auto* v = std::get_if<SignVector>(&p))
        return projector_to_observable(Projector<Complex>(to_complex(sign_vector_projector<Rational>(*v).matrix())));
    return BinaryObservable<Complex>(std::get<Matrix<Complex>>(p));
}

}  // namespace detail

/// Joint probabilities and expectations for a scenario; exact (rational)
/// when the state is maximally entangled and both sides are sign vectors.
inline json predict(const PredictScenario& sc) {
    json out;
    out["n"] = sc.n;
    if (sc.exact()) {
        const auto rho = maximally_entangled<Rational>(sc.n);
        const auto pa = sign_vector_projector<Rational>(std::get<SignVector>(sc.alice));
        const auto pb = sign_vector_projector<Rational>(std::get<SignVector>(sc.bob));
        const auto probs = predict_joint_probs(pa, pb, rho);
        out["mode"] = "exact";
        out["joint_probs"] = to_json(probs);
        out["expectations"] = to_json(probs_to_expectations(probs));
        return out;
    }
    DensityMatrix<Complex> rho = [&] {
        if (const auto* s = std::get_if<std::string>(&sc.state))
            return *s == "singlet" ? singlet() : maximally_entangled<Complex>(sc.n);
        return DensityMatrix<Complex>(sc.n, std::get<Matrix<Complex>>(sc.state));
    }();
    const auto a = detail::observable_of(sc.alice);
    const auto b = detail::observable_of(sc.bob);
    out["mode"] = "floating";
    out["joint_probs"] = to_json(predict_joint_probs(observable_to_projector(a), observable_to_projector(b), rho));
    out["expectations"] = to_json(predict_expectations(a, b, rho));
    return out;
}

}  // namespace qcclab::io
