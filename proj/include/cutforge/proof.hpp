#pragma once

#include <cutforge/prop.hpp>

#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace cutforge {

struct Sequent {
    std::vector<Formula> antecedent, succedent;

    bool in_antecedent(const Formula& f) const {
        return std::find(antecedent.begin(), antecedent.end(), f) != antecedent.end();
    }
    bool in_succedent(const Formula& f) const {
        return std::find(succedent.begin(), succedent.end(), f) != succedent.end();
    }
    /// Same formula sets on both sides.
    bool same_sets(const Sequent& o) const {
        auto covered = [](const std::vector<Formula>& a, const std::vector<Formula>& b) {
            for (const auto& f : a)
                if (std::find(b.begin(), b.end(), f) == b.end()) return false;
            return true;
        };
        return covered(antecedent, o.antecedent) && covered(o.antecedent, antecedent) &&
               covered(succedent, o.succedent) && covered(o.succedent, succedent);
    }
};

inline void add_unique(std::vector<Formula>& side, const Formula& f) {
    if (std::find(side.begin(), side.end(), f) == side.end()) side.push_back(f);
}

inline void remove_formula(std::vector<Formula>& side, const Formula& f) {
    side.erase(std::remove(side.begin(), side.end(), f), side.end());
}

inline std::string render(const Sequent& s) {
    std::string out;
    for (std::size_t i = 0; i < s.antecedent.size(); ++i) out += (i ? ", " : "") + render(s.antecedent[i]);
    out += out.empty() ? "⊢" : " ⊢";
    for (std::size_t i = 0; i < s.succedent.size(); ++i) out += (i ? ", " : " ") + render(s.succedent[i]);
    return out;
}

enum class Rule {
    Axiom,
    AndL,
    AndR,
    OrL,
    OrR,
    ImpL,
    ImpR,
    NotL,
    NotR,
    ForallL, // block rule ∀*_l
    ExistsR, // block rule ∃*_r
    ForallR,
    ExistsL,
    Cut
};

inline const char* rule_name(Rule r) {
    switch (r) {
    case Rule::Axiom: return "axiom";
    case Rule::AndL: return "and_l";
    case Rule::AndR: return "and_r";
    case Rule::OrL: return "or_l";
    case Rule::OrR: return "or_r";
    case Rule::ImpL: return "imp_l";
    case Rule::ImpR: return "imp_r";
    case Rule::NotL: return "not_l";
    case Rule::NotR: return "not_r";
    case Rule::ForallL: return "forall_l";
    case Rule::ExistsR: return "exists_r";
    case Rule::ForallR: return "forall_r";
    case Rule::ExistsL: return "exists_l";
    case Rule::Cut: return "cut";
    }
    return "?";
}

inline std::optional<Rule> rule_from_name(const std::string& s) {
    for (int i = 0; i <= static_cast<int>(Rule::Cut); ++i)
        if (s == rule_name(static_cast<Rule>(i))) return static_cast<Rule>(i);
    return std::nullopt;
}

struct ProofNode;
using Proof = std::shared_ptr<const ProofNode>;

struct ProofNode {
    Rule rule = Rule::Axiom;
    Sequent conclusion;
    Formula principal;       // main formula (cut formula for Cut)
    std::vector<Term> terms; // instantiation block for ∀*_l / ∃*_r
    std::string eigenvariable; // ∀_r / ∃_l
    std::vector<Proof> premises;
};

inline Proof make_node(Rule rule, Sequent conclusion, Formula principal, std::vector<Proof> premises = {},
                       std::vector<Term> terms = {}, std::string eigen = {}) {
    auto n = std::make_shared<ProofNode>();
    n->rule = rule;
    n->conclusion = std::move(conclusion);
    n->principal = std::move(principal);
    n->premises = std::move(premises);
    n->terms = std::move(terms);
    n->eigenvariable = std::move(eigen);
    return n;
}

// ---------------------------------------------------------------------------
// Statistics
// ---------------------------------------------------------------------------

struct ProofStats {
    std::size_t cuts = 0;
    std::size_t quantifier_rules = 0;
    std::size_t total_rules = 0;
    std::size_t quantifier_complexity = 0;
    std::size_t depth = 0;

    friend bool operator==(const ProofStats&, const ProofStats&) = default;
};

inline ProofStats stats(const Proof& p) {
    ProofStats s;
    s.total_rules = 1;
    switch (p->rule) {
    case Rule::Cut: s.cuts = 1; break;
    case Rule::ForallL:
    case Rule::ExistsR:
        s.quantifier_rules = 1;
        s.quantifier_complexity = 1;
        break;
    case Rule::ForallR:
    case Rule::ExistsL: s.quantifier_rules = 1; break;
    default: break;
    }
    std::size_t d = 0;
    for (const auto& q : p->premises) {
        ProofStats t = stats(q);
        s.cuts += t.cuts;
        s.quantifier_rules += t.quantifier_rules;
        s.total_rules += t.total_rules;
        s.quantifier_complexity += t.quantifier_complexity;
        d = std::max(d, t.depth + 1);
    }
    s.depth = d;
    return s;
}

inline std::string render_stats(const ProofStats& s) {
    std::string out;
    out += "------------- Statistics ---------------\n";
    out += "Cuts: " + std::to_string(s.cuts) + "\n";
    out += "Number of quantifier rules: " + std::to_string(s.quantifier_rules) + "\n";
    out += "Number of rules: " + std::to_string(s.total_rules) + "\n";
    out += "Quantifier complexity: " + std::to_string(s.quantifier_complexity) + "\n";
    out += "----------------------------------------\n";
    return out;
}

// ---------------------------------------------------------------------------
// Checker
// ---------------------------------------------------------------------------

struct Violation {
    std::string node; // path from the root, e.g. "0.1"
    std::string message;
};

namespace detail {

class Checker {
  public:
    std::vector<Violation> out;

    void check(const Proof& p, const std::string& path) {
        const Sequent& c = p->conclusion;
        auto fail = [&](const std::string& m) { out.push_back({path, std::string(rule_name(p->rule)) + ": " + m}); };
        auto need_premises = [&](std::size_t n) {
            if (p->premises.size() != n) {
                fail("expected " + std::to_string(n) + " premises, found " + std::to_string(p->premises.size()));
                return false;
            }
            return true;
        };
        // premise sides must come from the conclusion or the newly introduced formulas
        auto within = [&](std::size_t k, const std::vector<Formula>& new_ant, const std::vector<Formula>& new_suc) {
            const Sequent& q = p->premises[k]->conclusion;
            for (const auto& f : q.antecedent)
                if (!c.in_antecedent(f) && std::find(new_ant.begin(), new_ant.end(), f) == new_ant.end())
                    fail("premise " + std::to_string(k) + " antecedent has foreign formula " + render(f));
            for (const auto& f : q.succedent)
                if (!c.in_succedent(f) && std::find(new_suc.begin(), new_suc.end(), f) == new_suc.end())
                    fail("premise " + std::to_string(k) + " succedent has foreign formula " + render(f));
        };
        auto has_ant = [&](std::size_t k, const Formula& f) {
            if (!p->premises[k]->conclusion.in_antecedent(f))
                fail("premise " + std::to_string(k) + " lacks " + render(f) + " in antecedent");
        };
        auto has_suc = [&](std::size_t k, const Formula& f) {
            if (!p->premises[k]->conclusion.in_succedent(f))
                fail("premise " + std::to_string(k) + " lacks " + render(f) + " in succedent");
        };
        const Formula& f = p->principal;
        if (!f.valid()) {
            fail("missing principal formula");
            return;
        }
        auto principal_left = [&](Op op) {
            if (!f.is(op)) fail("principal formula has wrong connective: " + render(f));
            else if (!c.in_antecedent(f)) fail("principal formula not in antecedent: " + render(f));
            return f.is(op);
        };
        auto principal_right = [&](Op op) {
            if (!f.is(op)) fail("principal formula has wrong connective: " + render(f));
            else if (!c.in_succedent(f)) fail("principal formula not in succedent: " + render(f));
            return f.is(op);
        };

        switch (p->rule) {
        case Rule::Axiom:
            need_premises(0);
            if (f.is(Op::Bottom)) {
                if (!c.in_antecedent(f)) fail("⊥ not in antecedent");
            } else if (f.is(Op::Top)) {
                if (!c.in_succedent(f)) fail("⊤ not in succedent");
            } else if (!f.is_atom()) {
                fail("axiom formula is not atomic");
            } else if (!c.in_antecedent(f) || !c.in_succedent(f)) {
                fail("atom " + render(f) + " does not occur on both sides");
            }
            break;
        case Rule::AndL:
            if (need_premises(1) && principal_left(Op::And)) {
                within(0, {f.left(), f.right()}, {});
                has_ant(0, f.left());
                has_ant(0, f.right());
            }
            break;
        case Rule::AndR:
            if (need_premises(2) && principal_right(Op::And)) {
                within(0, {}, {f.left()});
                within(1, {}, {f.right()});
                has_suc(0, f.left());
                has_suc(1, f.right());
            }
            break;
        case Rule::OrL:
            if (need_premises(2) && principal_left(Op::Or)) {
                within(0, {f.left()}, {});
                within(1, {f.right()}, {});
                has_ant(0, f.left());
                has_ant(1, f.right());
            }
            break;
        case Rule::OrR:
            if (need_premises(1) && principal_right(Op::Or)) {
                within(0, {}, {f.left(), f.right()});
                has_suc(0, f.left());
                has_suc(0, f.right());
            }
            break;
        case Rule::ImpL:
            if (need_premises(2) && principal_left(Op::Imp)) {
                within(0, {}, {f.left()});
                within(1, {f.right()}, {});
                has_suc(0, f.left());
                has_ant(1, f.right());
            }
            break;
        case Rule::ImpR:
            if (need_premises(1) && principal_right(Op::Imp)) {
                within(0, {f.left()}, {f.right()});
                has_ant(0, f.left());
                has_suc(0, f.right());
            }
            break;
        case Rule::NotL:
            if (need_premises(1) && principal_left(Op::Not)) {
                within(0, {}, {f.kid()});
                has_suc(0, f.kid());
            }
            break;
        case Rule::NotR:
            if (need_premises(1) && principal_right(Op::Not)) {
                within(0, {f.kid()}, {});
                has_ant(0, f.kid());
            }
            break;
        case Rule::ForallL:
        case Rule::ExistsR: {
            bool left = p->rule == Rule::ForallL;
            if (!need_premises(1) || !(left ? principal_left(Op::Forall) : principal_right(Op::Exists))) break;
            if (f.vars().size() != p->terms.size()) {
                fail("instantiation block has " + std::to_string(p->terms.size()) + " terms for " +
                     std::to_string(f.vars().size()) + " bound variables");
                break;
            }
            Formula inst = instantiate_block(f, p->terms);
            if (left) {
                within(0, {inst}, {});
                has_ant(0, inst);
            } else {
                within(0, {}, {inst});
                has_suc(0, inst);
            }
            break;
        }
        case Rule::ForallR:
        case Rule::ExistsL: {
            bool right = p->rule == Rule::ForallR;
            if (!need_premises(1) || !(right ? principal_right(Op::Forall) : principal_left(Op::Exists))) break;
            if (f.vars().size() != 1) {
                fail("strong quantifier rule expects a single bound variable");
                break;
            }
            if (p->eigenvariable.empty()) {
                fail("missing eigenvariable");
                break;
            }
            Formula inst = instantiate(f.body(), f.vars()[0], Term::var(p->eigenvariable));
            for (const auto& g : c.antecedent)
                if (free_variables(g).count(p->eigenvariable))
                    fail("eigenvariable condition: " + p->eigenvariable + " occurs in " + render(g));
            for (const auto& g : c.succedent)
                if (free_variables(g).count(p->eigenvariable))
                    fail("eigenvariable condition: " + p->eigenvariable + " occurs in " + render(g));
            if (right) {
                within(0, {}, {inst});
                has_suc(0, inst);
            } else {
                within(0, {inst}, {});
                has_ant(0, inst);
            }
            break;
        }
        case Rule::Cut:
            if (need_premises(2)) {
                within(0, {}, {f});
                within(1, {f}, {});
                has_suc(0, f);
                has_ant(1, f);
            }
            break;
        }
        for (std::size_t k = 0; k < p->premises.size(); ++k)
            check(p->premises[k], path.empty() ? std::to_string(k) : path + "." + std::to_string(k));
    }
};

} // namespace detail

/// Empty result means the proof is correct.
inline std::vector<Violation> check_proof(const Proof& p) {
    detail::Checker c;
    c.check(p, "");
    return c.out;
}

// ---------------------------------------------------------------------------
// Propositional prover
// ---------------------------------------------------------------------------

namespace detail {

class PropProver {
  public:
    Proof prove(const Sequent& concl, std::vector<Formula> ant, std::vector<Formula> suc) {
        shrink(ant, suc);
        for (const auto& a : ant) {
            if (a.is(Op::Bottom)) return make_node(Rule::Axiom, concl, a);
            if (a.is_atom() && std::find(suc.begin(), suc.end(), a) != suc.end())
                return make_node(Rule::Axiom, concl, a);
        }
        for (const auto& s : suc)
            if (s.is(Op::Top)) return make_node(Rule::Axiom, concl, s);

        // non-branching rules first
        for (const auto& a : ant) {
            if (a.is(Op::And)) return unary(concl, ant, suc, a, Rule::AndL, {a.left(), a.right()}, {});
            if (a.is(Op::Not)) return unary(concl, ant, suc, a, Rule::NotL, {}, {a.kid()});
        }
        for (const auto& s : suc) {
            if (s.is(Op::Or)) return unary(concl, ant, suc, s, Rule::OrR, {}, {s.left(), s.right()});
            if (s.is(Op::Imp)) return unary(concl, ant, suc, s, Rule::ImpR, {s.left()}, {s.right()});
            if (s.is(Op::Not)) return unary(concl, ant, suc, s, Rule::NotR, {s.kid()}, {});
        }
        // branching: prefer a formula with one side closing at once
        // x added to the antecedent (resp. succedent) gives an axiom after at most one negation step
        auto closes_left = [&](const Formula& x) {
            return (x.is_atom() && contains(suc, x)) || (x.is(Op::Not) && x.kid().is_atom() && contains(ant, x.kid()));
        };
        auto closes_right = [&](const Formula& x) {
            return (x.is_atom() && contains(ant, x)) || (x.is(Op::Not) && x.kid().is_atom() && contains(suc, x.kid()));
        };
        const Formula* pick = nullptr;
        for (const auto& a : ant) {
            if ((a.is(Op::Imp) && (closes_right(a.left()) || closes_left(a.right()))) ||
                (a.is(Op::Or) && (closes_left(a.left()) || closes_left(a.right())))) {
                pick = &a;
                break;
            }
        }
        if (!pick)
            for (const auto& s : suc)
                if (s.is(Op::And) && (closes_right(s.left()) || closes_right(s.right()))) {
                    pick = &s;
                    break;
                }
        if (!pick)
            for (const auto& s : suc)
                if (s.is(Op::And)) {
                    pick = &s;
                    break;
                }
        if (!pick)
            for (const auto& a : ant)
                if (a.is(Op::Imp) || a.is(Op::Or)) {
                    pick = &a;
                    break;
                }
        if (!pick) throw InternalError("propositional prover stuck on " + render(concl));
        Formula f = *pick;
        if (f.is(Op::And))
            return binary(concl, ant, suc, f, Rule::AndR, {{}, {f.left()}}, {{}, {f.right()}});
        if (f.is(Op::Or))
            return binary(concl, ant, suc, f, Rule::OrL, {{f.left()}, {}}, {{f.right()}, {}});
        return binary(concl, ant, suc, f, Rule::ImpL, {{}, {f.left()}}, {{f.right()}, {}});
    }

  private:
    using Side = std::pair<std::vector<Formula>, std::vector<Formula>>;

    static bool contains(const std::vector<Formula>& v, const Formula& f) {
        return std::find(v.begin(), v.end(), f) != v.end();
    }

    // Greedy reduction to a minimal still-valid set of active formulas.
    static void shrink(std::vector<Formula>& ant, std::vector<Formula>& suc) {
        for (std::size_t i = 0; i < ant.size();) {
            std::vector<Formula> trial = ant;
            trial.erase(trial.begin() + static_cast<std::ptrdiff_t>(i));
            if (is_tautology(trial, suc)) ant = std::move(trial);
            else ++i;
        }
        for (std::size_t i = 0; i < suc.size();) {
            std::vector<Formula> trial = suc;
            trial.erase(trial.begin() + static_cast<std::ptrdiff_t>(i));
            if (is_tautology(ant, trial)) suc = std::move(trial);
            else ++i;
        }
    }

    static Sequent step(const Sequent& concl, const Formula& principal, bool left, const std::vector<Formula>& add_ant,
                        const std::vector<Formula>& add_suc) {
        Sequent s = concl;
        remove_formula(left ? s.antecedent : s.succedent, principal);
        for (const auto& f : add_ant) add_unique(s.antecedent, f);
        for (const auto& f : add_suc) add_unique(s.succedent, f);
        return s;
    }

    Proof unary(const Sequent& concl, std::vector<Formula> ant, std::vector<Formula> suc, const Formula& f, Rule r,
                const std::vector<Formula>& add_ant, const std::vector<Formula>& add_suc) {
        bool left = r == Rule::AndL || r == Rule::NotL;
        Sequent prem = step(concl, f, left, add_ant, add_suc);
        remove_formula(left ? ant : suc, f);
        for (const auto& g : add_ant) add_unique(ant, g);
        for (const auto& g : add_suc) add_unique(suc, g);
        return make_node(r, concl, f, {prove(prem, ant, suc)});
    }

    Proof binary(const Sequent& concl, const std::vector<Formula>& ant, const std::vector<Formula>& suc,
                 const Formula& f, Rule r, const Side& first, const Side& second) {
        bool left = r != Rule::AndR;
        std::vector<Proof> prems;
        for (const Side* side : {&first, &second}) {
            Sequent prem = step(concl, f, left, side->first, side->second);
            std::vector<Formula> a = ant, s = suc;
            remove_formula(left ? a : s, f);
            for (const auto& g : side->first) add_unique(a, g);
            for (const auto& g : side->second) add_unique(s, g);
            prems.push_back(prove(prem, a, s));
        }
        return make_node(r, concl, f, std::move(prems));
    }
};

} // namespace detail

/// Cut-free proof of the quantifier-free part of s, or nullopt when it is not a tautology.
/// Quantified formulas of s are carried as context and never decomposed.
inline std::optional<Proof> prove_propositional(const Sequent& s) {
    std::vector<Formula> ant, suc;
    for (const auto& f : s.antecedent)
        if (f.quantifier_free()) add_unique(ant, f);
    for (const auto& f : s.succedent)
        if (f.quantifier_free()) add_unique(suc, f);
    if (!is_tautology(ant, suc)) return std::nullopt;
    detail::PropProver p;
    return p.prove(s, ant, suc);
}

// ---------------------------------------------------------------------------
// Text rendering
// ---------------------------------------------------------------------------

inline void render_proof_into(const Proof& p, std::string& out, int indent) {
    out.append(static_cast<std::size_t>(indent) * 2, ' ');
    out += "[";
    out += rule_name(p->rule);
    if (p->rule != Rule::Axiom || p->principal.valid()) {
        out += " ";
        out += render(p->principal);
    }
    if (!p->terms.empty()) {
        out += " / ";
        for (std::size_t i = 0; i < p->terms.size(); ++i) out += (i ? "," : "") + render(p->terms[i]);
    }
    if (!p->eigenvariable.empty()) out += " / eigenvariable " + p->eigenvariable;
    out += "] ";
    out += render(p->conclusion);
    out += "\n";
    for (const auto& q : p->premises) render_proof_into(q, out, indent + 1);
}

inline std::string render(const Proof& p) {
    std::string out;
    render_proof_into(p, out, 0);
    return out;
}

} // namespace cutforge
