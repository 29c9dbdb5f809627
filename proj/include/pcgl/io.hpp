#pragma once

// Presentation files (JSON) and JSON forms of the reports.

#include "cauchon.hpp"
#include "cgl.hpp"
#include "ideals.hpp"
#include "strata.hpp"

#include <json.hpp>

#include <fstream>
#include <sstream>
#include <string>
#include <vector>

namespace pcgl {

using Json = nlohmann::ordered_json;

namespace detail {

inline std::pair<std::size_t, std::size_t> bracket_key(const std::string& key, std::size_t n) {
    auto comma = key.find(',');
    auto index = [&](const std::string& t) -> std::size_t {
        if (t.empty() || !std::all_of(t.begin(), t.end(), [](unsigned char c) { return std::isdigit(c); }))
            throw InputError("bracket key '" + key + "' must be \"i,j\"");
        std::size_t v = std::stoul(t);
        if (v < 1 || v > n) throw InputError("bracket key '" + key + "' is out of range");
        return v - 1;
    };
    if (comma == std::string::npos) throw InputError("bracket key '" + key + "' must be \"i,j\"");
    std::size_t i = index(key.substr(0, comma)), j = index(key.substr(comma + 1));
    if (i <= j) throw InputError("bracket key '" + key + "' needs i > j");
    return {i, j};
}

template <class T>
T get_field(const Json& j, const char* name, const char* what) {
    try {
        return j.at(name).get<T>();
    } catch (const nlohmann::json::exception&) {
        throw InputError(std::string("field '") + name + "' must be " + what);
    }
}

}  // namespace detail

inline PoissonPresentation presentation_from_json(const Json& j) {
    if (!j.is_object()) throw InputError("presentation must be a JSON object");
    if (!j.contains("field") || j["field"] != "QQ") throw InputError("field must be \"QQ\"");
    auto vars = detail::get_field<std::vector<std::string>>(j, "vars", "an array of names");
    std::vector<bool> laurent;
    if (j.contains("laurent")) laurent = detail::get_field<std::vector<bool>>(j, "laurent", "an array of booleans");
    if (!laurent.empty() && laurent.size() != vars.size()) throw InputError("laurent flags must match vars");
    RingPtr ring;
    try {
        ring = Ring::make(vars, laurent);
    } catch (const Error& e) {
        throw InputError(e.what());
    }
    const std::size_t n = vars.size();

    BracketTable table(ring);
    if (j.contains("brackets")) {
        if (!j["brackets"].is_object()) throw InputError("brackets must be an object");
        for (const auto& [key, val] : j["brackets"].items()) {
            auto [i, k] = detail::bracket_key(key, n);
            if (!val.is_string()) throw InputError("bracket " + key + " must be a polynomial string");
            table.set(i, k, parse(val.get<std::string>(), ring));
        }
    }

    auto rows = detail::get_field<std::vector<std::vector<long long>>>(j, "grading", "an integer matrix");
    GradingData grading = GradingData::from_rows(rows, n);

    std::optional<std::vector<LieVector>> h;
    if (j.contains("h") && !j["h"].is_null()) {
        auto raw = detail::get_field<std::vector<std::vector<Json>>>(j, "h", "an array of rational arrays");
        std::vector<LieVector> hv;
        for (const auto& row : raw) {
            LieVector v;
            for (const auto& x : row) {
                if (x.is_number_integer()) v.emplace_back(static_cast<long>(x.get<long long>()));
                else if (x.is_string()) v.push_back(parse_rational(x.get<std::string>()));
                else throw InputError("h entries must be integers or rational strings");
            }
            hv.push_back(std::move(v));
        }
        h = std::move(hv);
    }

    Bounds bounds;
    if (j.contains("bounds")) {
        const Json& b = j["bounds"];
        if (!b.is_object()) throw InputError("bounds must be an object");
        if (b.contains("nilpotency")) bounds.nilpotency = detail::get_field<int>(b, "nilpotency", "an integer");
        if (b.contains("degree")) bounds.degree = detail::get_field<int>(b, "degree", "an integer");
        if (b.contains("groebner_steps"))
            bounds.groebner_steps = detail::get_field<std::size_t>(b, "groebner_steps", "a positive integer");
    }
    return PoissonPresentation(ring, std::move(table), std::move(grading), std::move(h), bounds);
}

inline PoissonPresentation parse_presentation(const std::string& text) {
    Json j;
    try {
        j = Json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw InputError(std::string("malformed JSON: ") + e.what());
    }
    return presentation_from_json(j);
}

inline PoissonPresentation load_presentation(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InputError("cannot open " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_presentation(ss.str());
}

inline Json to_json(const PoissonPresentation& p) {
    Json j;
    j["field"] = "QQ";
    j["vars"] = p.ring()->names();
    Json b = Json::object();
    for (const auto& [key, val] : p.table().entries())
        b[std::to_string(key.first + 1) + "," + std::to_string(key.second + 1)] = val.str();
    j["brackets"] = b;
    j["grading"] = p.grading().rows();
    if (p.h()) {
        Json h = Json::array();
        for (const auto& v : *p.h()) {
            Json row = Json::array();
            for (const auto& x : v) row.push_back(to_string(x));
            h.push_back(row);
        }
        j["h"] = h;
    }
    return j;
}

inline Json rationals_json(const std::vector<Rational>& v) {
    Json a = Json::array();
    for (const auto& x : v) a.push_back(to_string(x));
    return a;
}

inline Json to_json(const Ideal& I) { return I.strings(); }

inline Json to_json(const CGLReport& r, const RingPtr& ring) {
    Json j;
    j["pass"] = r.pass();
    Json jac = {{"pass", r.jacobi.pass}, {"failures", Json::array()}};
    for (const auto& f : r.jacobi.failures)
        jac["failures"].push_back({{"triple", {ring->name(f.i), ring->name(f.j), ring->name(f.k)}}, {"residual", f.residual.str()}});
    j["jacobi"] = jac;
    Json gr = {{"pass", r.graded.pass}, {"failures", Json::array()}};
    for (const auto& [a, b] : r.graded.failures) gr["failures"].push_back({ring->name(a), ring->name(b)});
    j["graded"] = gr;
    Json levels = Json::array();
    for (const auto& l : r.levels) {
        Json e;
        e["level"] = l.k;
        e["pass"] = l.pass();
        e["triangular"] = l.triangular;
        if (!l.triangularity.empty()) {
            Json issues = Json::array();
            for (const auto& t : l.triangularity)
                issues.push_back({{"pair", {ring->name(t.i), ring->name(t.j)}}, {"reason", t.reason}});
            e["triangularity"] = issues;
        }
        e["delta_locally_nilpotent"] = l.nilpotent;
        Json nil = Json::object();
        for (const auto& w : l.nilpotency) {
            if (w.index) nil[ring->name(w.generator)] = *w.index;
            else nil[ring->name(w.generator)] = w.likely_not_nilpotent ? "not nilpotent within bound (degree grows)" : "not nilpotent within bound";
        }
        e["nilpotency_index"] = nil;
        e["sigma_diagonal"] = l.sigma_diagonal;
        e["sigma_eigenvalues"] = rationals_json(l.sigma_eigenvalues);
        if (l.h) e["h"] = rationals_json(*l.h);
        else e["h"] = nullptr;
        e["h_supplied"] = l.h_supplied;
        e["h_valid"] = l.h_valid;
        e["lambda"] = to_string(l.lambda);
        e["delta_condition"] = l.delta_condition;
        e["sigma_poisson_derivation"] = l.sigma_poisson_derivation;
        e["delta_shifts_weight"] = l.delta_shifts_weight;
        levels.push_back(e);
    }
    j["levels"] = levels;
    j["failing_levels"] = r.failing_levels();
    return j;
}

inline Json to_json(const HPrimeTree& t) {
    Json j;
    j["count"] = t.top().size();
    j["complete"] = t.complete();
    j["all_checks_pass"] = t.all_checks_pass();
    Json levels = Json::array();
    for (std::size_t k = 0; k < t.levels.size(); ++k) {
        Json nodes = Json::array();
        for (const auto& n : t.levels[k]) {
            Json e;
            e["ideal"] = to_json(n.ideal);
            e["branch"] = to_string(n.branch);
            if (n.parent) e["parent"] = *n.parent;
            if (n.d) e["d"] = n.d->str();
            if (k > 0) {
                e["poisson"] = n.checks.poisson;
                e["h_stable"] = n.checks.h_stable;
                e["contracts"] = n.checks.contracts;
            }
            e["primality"] = to_string(n.primality);
            if (n.possibly_missing_branch) e["note"] = "no d-element found within the degree bound; a second lift may be missing";
            nodes.push_back(e);
        }
        levels.push_back({{"level", k}, {"ideals", nodes}});
    }
    j["levels"] = levels;
    Json edges = Json::array();
    for (auto [a, b] : hasse_edges(t.top())) edges.push_back({a, b});
    j["hasse"] = edges;
    return j;
}

inline std::string to_dot(const HPrimeTree& t) {
    std::string s = "digraph hprimes {\n";
    const auto& top = t.top();
    for (std::size_t i = 0; i < top.size(); ++i) {
        s += "  n" + std::to_string(i) + " [label=\"" + top[i].ideal.str() + "\"];\n";
    }
    for (auto [a, b] : hasse_edges(top)) s += "  n" + std::to_string(a) + " -> n" + std::to_string(b) + ";\n";
    return s + "}\n";
}

inline Json to_json(const ClosureResult& c) {
    Json adj = Json::array();
    for (const auto& p : c.adjoined) adj.push_back(p.str());
    return {{"generators", to_json(c.ideal)}, {"adjoined", adj}, {"rounds", c.rounds}};
}

inline Json to_json(const ChainReport& r) {
    Json entries = Json::array();
    for (const auto& e : r.entries)
        entries.push_back({{"ideal", to_json(e.ideal)},
                           {"poisson", e.poisson},
                           {"h_stable", e.h_stable},
                           {"dimension", e.dimension},
                           {"primality", to_string(e.primality)}});
    return {{"entries", entries},
            {"length", r.length()},
            {"dimension_drops", r.drops},
            {"all_poisson", r.all_poisson()},
            {"all_prime_verified", r.all_prime_verified()},
            {"saturated_in_spec", r.saturated_in_spec()}};
}

inline Json to_json(const LogBracketMatrix& m) {
    Json a = Json::array();
    for (const auto& row : m.entries) a.push_back(rationals_json(row));
    return a;
}

inline Json to_json(const StratumSummary& s, const RingPtr& ring) {
    Json surv = Json::array();
    for (auto i : s.surviving) surv.push_back(ring->name(i));
    return {{"surviving", surv},
            {"log_matrix", to_json(s.matrix)},
            {"kernel_rank", s.center.rank()},
            {"stratum_dimension", s.dimension()},
            {"center", s.center_generators()}};
}

}  // namespace pcgl
