#pragma once

#include <cutforge/pipeline.hpp>

#include <json.hpp>

#include <fstream>
#include <sstream>
#include <string>
#include <vector>

namespace cutforge::io {

using json = nlohmann::ordered_json;

namespace detail {

[[noreturn]] inline void fail(const std::string& where, const std::string& msg) {
    throw InputError((where.empty() ? std::string("/") : where) + ": " + msg);
}

inline const json& field(const json& j, const std::string& key, const std::string& where) {
    if (!j.is_object()) fail(where, "expected an object");
    auto it = j.find(key);
    if (it == j.end()) fail(where, "missing field '" + key + "'");
    return *it;
}

inline const json& array_field(const json& j, const std::string& key, const std::string& where) {
    const json& a = field(j, key, where);
    if (!a.is_array()) fail(where + "/" + key, "expected an array");
    return a;
}

inline std::string string_at(const json& j, const std::string& where) {
    if (!j.is_string()) fail(where, "expected a string");
    return j.get<std::string>();
}

template <class F>
auto located(const std::string& where, F&& f) -> decltype(f()) {
    try {
        return f();
    } catch (const InputError& e) {
        fail(where, e.what());
    }
}

inline VarSet var_set(const json& j, const std::string& key, const std::string& where) {
    VarSet out;
    if (!j.is_object() || !j.contains(key)) return out;
    const json& a = array_field(j, key, where);
    for (std::size_t i = 0; i < a.size(); ++i) out.insert(string_at(a[i], where + "/" + key + "/" + std::to_string(i)));
    return out;
}

} // namespace detail

// ---------------------------------------------------------------------------
// Terms, formulas, sequents
// ---------------------------------------------------------------------------

inline json to_json(const std::vector<Term>& ts) {
    json a = json::array();
    for (const auto& t : ts) a.push_back(render(t));
    return a;
}

inline json to_json(const std::vector<Formula>& fs) {
    json a = json::array();
    for (const auto& f : fs) a.push_back(render(f));
    return a;
}

inline std::vector<Term> terms_from_json(const json& a, const VarSet& vars, const std::string& where) {
    if (!a.is_array()) detail::fail(where, "expected an array of terms");
    std::vector<Term> out;
    for (std::size_t i = 0; i < a.size(); ++i) {
        std::string w = where + "/" + std::to_string(i);
        std::string s = detail::string_at(a[i], w);
        out.push_back(detail::located(w, [&] { return parse_term(s, vars); }));
    }
    return out;
}

inline std::vector<Formula> formulas_from_json(const json& a, const VarSet& vars, const std::string& where) {
    if (!a.is_array()) detail::fail(where, "expected an array of formulas");
    std::vector<Formula> out;
    for (std::size_t i = 0; i < a.size(); ++i) {
        std::string w = where + "/" + std::to_string(i);
        std::string s = detail::string_at(a[i], w);
        out.push_back(detail::located(w, [&] { return parse_formula(s, vars); }));
    }
    return out;
}

inline json to_json(const Sequent& s) { return json{{"antecedent", to_json(s.antecedent)}, {"succedent", to_json(s.succedent)}}; }

inline Sequent sequent_from_json(const json& j, const VarSet& vars = {}, const std::string& where = "") {
    Sequent s;
    s.antecedent = formulas_from_json(detail::array_field(j, "antecedent", where), vars, where + "/antecedent");
    s.succedent = formulas_from_json(detail::array_field(j, "succedent", where), vars, where + "/succedent");
    return s;
}

// ---------------------------------------------------------------------------
// Instance files
// ---------------------------------------------------------------------------

struct InstanceFile {
    SigmaOneSequent sequent;
    InstanceLists instances;
};

/// "formula" indices are 1-based, matching the tags f1, f2, ...
inline json to_json(const SigmaOneSequent& s, const InstanceLists& inst) {
    json out;
    out["sequent"] = to_json(s.sequent());
    json a = json::array();
    for (std::size_t i = 0; i < inst.size(); ++i) {
        if (inst[i].empty()) continue;
        json tuples = json::array();
        for (const auto& t : inst[i]) tuples.push_back(to_json(t));
        a.push_back(json{{"formula", i + 1}, {"tuples", tuples}});
    }
    out["instances"] = a;
    return out;
}

inline InstanceFile instance_file_from_json(const json& j) {
    InstanceFile f;
    Sequent es = sequent_from_json(detail::field(j, "sequent", ""), {}, "/sequent");
    f.sequent = detail::located("/sequent", [&] { return SigmaOneSequent::from_sequent(es); });
    f.instances.resize(f.sequent.entries.size());
    const json& a = detail::array_field(j, "instances", "");
    for (std::size_t k = 0; k < a.size(); ++k) {
        std::string w = "/instances/" + std::to_string(k);
        const json& idx = detail::field(a[k], "formula", w);
        if (!idx.is_number_integer()) detail::fail(w + "/formula", "expected an integer");
        long long i = idx.get<long long>();
        if (i < 1 || static_cast<std::size_t>(i) > f.sequent.entries.size())
            detail::fail(w + "/formula", "no formula " + std::to_string(i) + " in the end-sequent");
        const json& tuples = detail::array_field(a[k], "tuples", w);
        for (std::size_t t = 0; t < tuples.size(); ++t) {
            std::string wt = w + "/tuples/" + std::to_string(t);
            auto tuple = terms_from_json(tuples[t], {}, wt);
            if (tuple.size() != f.sequent.entries[static_cast<std::size_t>(i - 1)].vars.size())
                detail::fail(wt, "expected " + std::to_string(f.sequent.entries[static_cast<std::size_t>(i - 1)].vars.size()) +
                                     " terms, got " + std::to_string(tuple.size()));
            f.instances[static_cast<std::size_t>(i - 1)].push_back(std::move(tuple));
        }
    }
    return f;
}

// ---------------------------------------------------------------------------
// Grammars
// ---------------------------------------------------------------------------

inline json to_json(const TreeGrammar& g) {
    json levels = json::array();
    for (const auto& l : g.levels) levels.push_back(json{{"var", l.var}, {"productions", to_json(l.productions)}});
    return json{{"size", g.size()}, {"base", to_json(g.base)}, {"levels", levels}};
}

inline TreeGrammar grammar_from_json(const json& j, const std::string& where = "") {
    TreeGrammar g;
    VarSet vars;
    if (j.is_object() && j.contains("levels")) {
        const json& ls = detail::array_field(j, "levels", where);
        for (std::size_t i = 0; i < ls.size(); ++i)
            vars.insert(detail::string_at(detail::field(ls[i], "var", where + "/levels/" + std::to_string(i)),
                                          where + "/levels/" + std::to_string(i) + "/var"));
        for (std::size_t i = 0; i < ls.size(); ++i) {
            std::string w = where + "/levels/" + std::to_string(i);
            TreeGrammar::Level l;
            l.var = ls[i]["var"].get<std::string>();
            l.productions = terms_from_json(detail::array_field(ls[i], "productions", w), vars, w + "/productions");
            g.levels.push_back(std::move(l));
        }
    }
    g.base = terms_from_json(detail::array_field(j, "base", where), vars, where + "/base");
    if (auto why = grammar_violation(g); !why.empty()) detail::fail(where, "grammar rejected: " + why);
    return g;
}

inline json to_json(const std::vector<TreeGrammar>& gs) {
    json a = json::array();
    for (const auto& g : gs) a.push_back(to_json(g));
    return a;
}

// ---------------------------------------------------------------------------
// Extended Herbrand sequents
// ---------------------------------------------------------------------------

inline json to_json(const SchematicEHS& h) {
    json out;
    out["sequent"] = to_json(h.sequent.sequent());
    out["grammar"] = to_json(h.grammar);
    return out;
}

inline json to_json(const ExtendedHerbrandSequent& H) {
    json out = to_json(H.shs);
    out["solution"] = to_json(H.solution);
    return out;
}

inline ExtendedHerbrandSequent ehs_from_json(const json& j) {
    Sequent es = sequent_from_json(detail::field(j, "sequent", ""), {}, "/sequent");
    SigmaOneSequent s = detail::located("/sequent", [&] { return SigmaOneSequent::from_sequent(es); });
    TreeGrammar g = grammar_from_json(detail::field(j, "grammar", ""), "/grammar");
    SchematicEHS h = detail::located("/grammar", [&] { return build_shs(s, g); });
    VarSet vars;
    for (const auto& l : g.levels) vars.insert(l.var);
    std::vector<Formula> sol;
    if (j.contains("solution")) sol = formulas_from_json(detail::array_field(j, "solution", ""), vars, "/solution");
    if (sol.size() != h.levels())
        detail::fail("/solution", "expected " + std::to_string(h.levels()) + " cut formulas, got " + std::to_string(sol.size()));
    return ExtendedHerbrandSequent{h, sol};
}

// ---------------------------------------------------------------------------
// Proofs
// ---------------------------------------------------------------------------

namespace detail {

inline void collect_proof_vars(const Proof& p, VarSet& out) {
    for (const auto* side : {&p->conclusion.antecedent, &p->conclusion.succedent})
        for (const auto& f : *side) collect_free_variables(f, out);
    if (p->principal.valid()) collect_free_variables(p->principal, out);
    for (const auto& t : p->terms) collect_variables(t, out);
    if (!p->eigenvariable.empty()) out.insert(p->eigenvariable);
    for (const auto& q : p->premises) collect_proof_vars(q, out);
}

inline json node_to_json(const Proof& p) {
    json payload = json::object();
    if (p->principal.valid()) payload["principal"] = render(p->principal);
    if (!p->terms.empty()) payload["terms"] = to_json(p->terms);
    if (!p->eigenvariable.empty()) payload["eigenvariable"] = p->eigenvariable;
    json prem = json::array();
    for (const auto& q : p->premises) prem.push_back(node_to_json(q));
    return json{{"rule", rule_name(p->rule)}, {"sequent", to_json(p->conclusion)}, {"payload", payload}, {"premises", prem}};
}

inline Proof node_from_json(const json& j, const VarSet& vars, const std::string& where) {
    std::string name = string_at(field(j, "rule", where), where + "/rule");
    auto rule = rule_from_name(name);
    if (!rule) fail(where + "/rule", "unknown rule '" + name + "'");
    Sequent s = sequent_from_json(field(j, "sequent", where), vars, where + "/sequent");
    Formula principal;
    std::vector<Term> terms;
    std::string eigen;
    if (j.contains("payload")) {
        const json& pl = j["payload"];
        std::string w = where + "/payload";
        if (!pl.is_object()) fail(w, "expected an object");
        if (pl.contains("principal")) {
            std::string src = string_at(pl["principal"], w + "/principal");
            principal = located(w + "/principal", [&] { return parse_formula(src, vars); });
        }
        if (pl.contains("terms")) terms = terms_from_json(pl["terms"], vars, w + "/terms");
        if (pl.contains("eigenvariable")) eigen = string_at(pl["eigenvariable"], w + "/eigenvariable");
    }
    std::vector<Proof> prem;
    if (j.contains("premises")) {
        const json& a = array_field(j, "premises", where);
        for (std::size_t i = 0; i < a.size(); ++i)
            prem.push_back(node_from_json(a[i], vars, where + "/premises/" + std::to_string(i)));
    }
    return make_node(*rule, std::move(s), std::move(principal), std::move(prem), std::move(terms), std::move(eigen));
}

} // namespace detail

/// {"variables": [...], "root": node}; "variables" lists the free variable names used inside the tree.
inline json to_json(const Proof& p) {
    VarSet vars;
    detail::collect_proof_vars(p, vars);
    json v = json::array();
    for (const auto& x : vars) v.push_back(x);
    return json{{"variables", v}, {"root", detail::node_to_json(p)}};
}

inline Proof proof_from_json(const json& j) {
    VarSet vars = detail::var_set(j, "variables", "");
    return detail::node_from_json(detail::field(j, "root", ""), vars, "/root");
}

// ---------------------------------------------------------------------------
// Reports
// ---------------------------------------------------------------------------

inline json to_json(const ProofStats& s) {
    return json{{"cuts", s.cuts},
                {"quantifier_rules", s.quantifier_rules},
                {"total_rules", s.total_rules},
                {"quantifier_complexity", s.quantifier_complexity},
                {"depth", s.depth}};
}

inline json to_json(const CIReport& r) {
    json out;
    out["input"] = to_json(r.input);
    out["raw_terms"] = r.raw_terms;
    out["terms"] = r.terms;
    out["compressed"] = r.compressed;
    out["minimal_grammars"] = r.minimal_grammars;
    out["minimal_size"] = r.minimal_size;
    out["grammar"] = to_json(r.grammar);
    out["canonical"] = to_json(r.canonical);
    out["minimized"] = to_json(r.minimized);
    out["cut_formulas"] = to_json(r.cut_formulas);
    json rep = json::array();
    for (bool b : r.repaired) rep.push_back(b);
    out["repaired"] = rep;
    out["output"] = to_json(r.output);
    out["compression_ratio"] = r.compression_ratio;
    return out;
}

// ---------------------------------------------------------------------------
// Files
// ---------------------------------------------------------------------------

inline json read_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InputError(path + ": cannot open");
    std::stringstream buf;
    buf << in.rdbuf();
    try {
        return json::parse(buf.str());
    } catch (const json::parse_error& e) {
        throw InputError(path + ": byte " + std::to_string(e.byte) + ": " + e.what());
    }
}

inline void write_text_file(const std::string& path, const std::string& text) {
    std::ofstream out(path);
    if (!out) throw InputError(path + ": cannot write");
    out << text;
}

} // namespace cutforge::io
