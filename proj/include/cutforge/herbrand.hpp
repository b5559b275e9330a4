#pragma once

#include <cutforge/grammar.hpp>
#include <cutforge/proof.hpp>

#include <optional>
#include <string>
#include <vector>

namespace cutforge {

/// One prenex entry ∀x̄ F (antecedent) or ∃x̄ F (succedent) with quantifier-free F.
struct SigmaEntry {
    Formula matrix;
    std::vector<std::string> vars;
    bool succedent = false;

    Formula formula() const {
        if (vars.empty()) return matrix;
        return succedent ? Formula::exists(vars, matrix) : Formula::forall(vars, matrix);
    }
    Formula instance(const std::vector<Term>& tuple) const {
        if (tuple.size() != vars.size())
            throw InputError("instance of " + render(formula()) + " has " + std::to_string(tuple.size()) +
                             " terms, expected " + std::to_string(vars.size()));
        if (vars.empty()) return matrix;
        return instantiate_block(formula(), tuple);
    }
};

/// Per entry, the list of instance tuples.
using InstanceLists = std::vector<std::vector<std::vector<Term>>>;

struct SigmaOneSequent {
    std::vector<SigmaEntry> entries; // antecedent entries first

    static std::string tag(std::size_t i) { return "f" + std::to_string(i + 1); }

    std::optional<std::size_t> entry_of(const std::string& head) const {
        for (std::size_t i = 0; i < entries.size(); ++i)
            if (tag(i) == head) return i;
        return std::nullopt;
    }

    Sequent sequent() const {
        Sequent s;
        for (const auto& e : entries) (e.succedent ? s.succedent : s.antecedent).push_back(e.formula());
        return s;
    }

    /// Quantifier-free entries, split by side.
    std::pair<std::vector<Formula>, std::vector<Formula>> quantifier_free_part() const {
        std::pair<std::vector<Formula>, std::vector<Formula>> out;
        for (const auto& e : entries)
            if (e.vars.empty()) add_unique(e.succedent ? out.second : out.first, e.matrix);
        return out;
    }

    static SigmaOneSequent from_sequent(const Sequent& s) {
        SigmaOneSequent out;
        auto take = [&](const Formula& f, bool succ) {
            SigmaEntry e;
            e.succedent = succ;
            Op q = succ ? Op::Exists : Op::Forall;
            if (f.is(q)) {
                e.vars = f.vars();
                e.matrix = f.body();
            } else {
                e.matrix = f;
            }
            if (!e.matrix.quantifier_free())
                throw InputError("not a Σ1 entry: " + render(f));
            if (!free_variables(f).empty())
                throw InputError("end-sequent formula has free variables: " + render(f));
            out.entries.push_back(std::move(e));
        };
        for (const auto& f : s.antecedent) take(f, false);
        for (const auto& f : s.succedent) take(f, true);
        out.check_tags();
        return out;
    }

    void check_tags() const {
        Signature sig;
        for (const auto& e : entries) {
            std::vector<Formula> atoms;
            collect_atoms(e.matrix, atoms);
            for (const auto& a : atoms)
                for (const auto& t : a.args()) sig.add(t);
        }
        for (std::size_t i = 0; i < entries.size(); ++i)
            if (sig.contains(tag(i)))
                throw InputError("function symbol '" + tag(i) + "' clashes with an instance tag");
    }
};

inline std::string render(const SigmaOneSequent& s) { return render(s.sequent()); }

/// Tagged, deduplicated term set f_i(t̄). Quantifier-free entries contribute nothing.
inline std::vector<Term> extract_terms(const SigmaOneSequent& s, const InstanceLists& inst) {
    if (inst.size() > s.entries.size()) throw InputError("instances given for nonexistent formula");
    std::vector<Term> out;
    for (std::size_t i = 0; i < inst.size(); ++i) {
        for (const auto& tuple : inst[i]) {
            if (tuple.size() != s.entries[i].vars.size())
                throw InputError("formula " + std::to_string(i + 1) + " expects " +
                                 std::to_string(s.entries[i].vars.size()) + " terms per instance, got " +
                                 std::to_string(tuple.size()));
            if (s.entries[i].vars.empty()) continue;
            out.push_back(Term::app(SigmaOneSequent::tag(i), tuple));
        }
    }
    return sorted_unique(std::move(out));
}

/// Number of instance tuples before deduplication.
inline std::size_t raw_instance_count(const SigmaOneSequent& s, const InstanceLists& inst) {
    std::size_t n = 0;
    for (std::size_t i = 0; i < inst.size() && i < s.entries.size(); ++i)
        if (!s.entries[i].vars.empty()) n += inst[i].size();
    return n;
}

inline std::pair<std::size_t, std::vector<Term>> decode(const SigmaOneSequent& s, const Term& t) {
    if (t.is_var()) throw InputError("instance term is a variable: " + render(t));
    auto i = s.entry_of(t.name());
    if (!i) throw InputError("unknown instance tag in " + render(t));
    if (t.arity() != s.entries[*i].vars.size()) throw InputError("tag arity mismatch in " + render(t));
    return {*i, t.args()};
}

struct InstanceFormulas {
    std::vector<Formula> antecedent, succedent;
};

inline InstanceFormulas instance_formulas(const SigmaOneSequent& s, const std::vector<Term>& terms) {
    InstanceFormulas out;
    for (const auto& t : terms) {
        auto [i, tuple] = decode(s, t);
        add_unique(s.entries[i].succedent ? out.succedent : out.antecedent, s.entries[i].instance(tuple));
    }
    return out;
}

struct HerbrandSequent {
    Sequent sequent;
    bool valid = false;
};

inline HerbrandSequent herbrand_sequent(const SigmaOneSequent& s, const std::vector<Term>& T) {
    HerbrandSequent h;
    auto [qa, qs] = s.quantifier_free_part();
    auto inst = instance_formulas(s, T);
    h.sequent.antecedent = qa;
    h.sequent.succedent = qs;
    for (const auto& f : inst.antecedent) add_unique(h.sequent.antecedent, f);
    for (const auto& f : inst.succedent) add_unique(h.sequent.succedent, f);
    h.valid = is_tautology(h.sequent.antecedent, h.sequent.succedent);
    return h;
}

inline InstanceLists instance_lists(const SigmaOneSequent& s, const std::vector<Term>& T) {
    InstanceLists out(s.entries.size());
    for (const auto& t : T) {
        auto [i, tuple] = decode(s, t);
        out[i].push_back(tuple);
    }
    return out;
}

/// Instances of the end-sequent formulas introduced by ∀*_l / ∃*_r nodes of a proof. Meant for cut-free
/// proofs; block instances of cut formulas are skipped.
inline InstanceLists proof_instances(const SigmaOneSequent& s, const Proof& p) {
    InstanceLists out(s.entries.size());
    std::vector<const ProofNode*> stack{p.get()};
    while (!stack.empty()) {
        const ProofNode* n = stack.back();
        stack.pop_back();
        if (n->rule == Rule::ForallL || n->rule == Rule::ExistsR) {
            for (std::size_t i = 0; i < s.entries.size(); ++i) {
                const SigmaEntry& e = s.entries[i];
                if (e.vars.empty() || e.succedent != (n->rule == Rule::ExistsR) || !(e.formula() == n->principal)) continue;
                if (std::find(out[i].begin(), out[i].end(), n->terms) == out[i].end()) out[i].push_back(n->terms);
            }
        }
        for (const auto& q : n->premises) stack.push_back(q.get());
    }
    return out;
}

// ---------------------------------------------------------------------------
// Extended Herbrand sequents
// ---------------------------------------------------------------------------

/// Instances given by the base of a grammar, cut skeletons X_i(α_i) ⊃ ⋀_j X_i(s_ij) by its levels.
struct SchematicEHS {
    SigmaOneSequent sequent;
    TreeGrammar grammar;

    std::size_t levels() const { return grammar.levels.size(); }
    std::size_t size() const { return grammar.size(); }
    const std::string& alpha(std::size_t i) const { return grammar.levels[i].var; }
    const std::vector<Term>& productions(std::size_t i) const { return grammar.levels[i].productions; }
};

inline SchematicEHS build_shs(const SigmaOneSequent& s, const TreeGrammar& g) {
    if (auto why = grammar_violation(g); !why.empty()) throw InputError("grammar rejected: " + why);
    for (const auto& u : g.base) decode(s, u);
    if (!herbrand_sequent(s, language(g)).valid)
        throw InputError("grammar rejected: its language does not give a tautological Herbrand sequent");
    return SchematicEHS{s, g};
}

inline std::string render(const SchematicEHS& h) {
    Sequent q;
    auto [qa, qs] = h.sequent.quantifier_free_part();
    auto inst = instance_formulas(h.sequent, h.grammar.base);
    q.antecedent = qa;
    q.succedent = qs;
    for (const auto& f : inst.antecedent) add_unique(q.antecedent, f);
    for (const auto& f : inst.succedent) add_unique(q.succedent, f);
    std::string out = render(q);
    for (std::size_t i = 0; i < h.levels(); ++i) {
        std::string X = "X" + std::to_string(i + 1);
        out += "\n  " + X + "(" + h.alpha(i) + ") ⊃ ";
        for (std::size_t j = 0; j < h.productions(i).size(); ++j)
            out += (j ? " ∧ " : "") + X + "(" + render(h.productions(i)[j]) + ")";
    }
    return out;
}

/// Cut implication A_i ⊃ ⋀_j A_i[α_i\s_ij].
inline Formula cut_implication(const Formula& a, const std::string& alpha, const std::vector<Term>& s) {
    std::vector<Formula> parts;
    for (const auto& t : s) parts.push_back(instantiate(a, alpha, t));
    return Formula::imp(a, conjunction(parts));
}

/// The sequent Hσ for cut formulas A_1..A_n.
inline Sequent solved_sequent(const SchematicEHS& h, const std::vector<Formula>& A) {
    if (A.size() != h.levels()) throw InternalError("solution has wrong number of formulas");
    HerbrandSequent base = herbrand_sequent(h.sequent, h.grammar.base);
    Sequent q = base.sequent;
    for (std::size_t i = 0; i < A.size(); ++i) add_unique(q.antecedent, cut_implication(A[i], h.alpha(i), h.productions(i)));
    return q;
}

/// Conjuncts of C_1: antecedent instances and negated succedent instances, quantifier-free entries included.
inline std::vector<Formula> canonical_base(const SigmaOneSequent& s, const std::vector<Term>& U) {
    auto [qa, qs] = s.quantifier_free_part();
    auto inst = instance_formulas(s, U);
    std::vector<Formula> parts;
    for (const auto& f : inst.antecedent) add_unique(parts, f);
    for (const auto& f : qa) add_unique(parts, f);
    for (const auto& f : inst.succedent) add_unique(parts, Formula::neg(f));
    for (const auto& f : qs) add_unique(parts, Formula::neg(f));
    return parts;
}

/// C_1 = ⋀F[U], C_{i+1} = ⋀_j C_i[α_i\s_ij].
inline std::vector<Formula> canonical_solution(const SchematicEHS& h) {
    std::vector<Formula> out;
    std::vector<Formula> parts = canonical_base(h.sequent, h.grammar.base);
    for (std::size_t i = 0; i < h.levels(); ++i) {
        out.push_back(conjunction(parts));
        std::vector<Formula> next;
        for (const auto& t : h.productions(i))
            for (const auto& p : parts) add_unique(next, instantiate(p, h.alpha(i), t));
        parts = std::move(next);
    }
    return out;
}

/// Empty when A solves h, otherwise the reason.
inline std::string solution_violation(const SchematicEHS& h, const std::vector<Formula>& A) {
    if (A.size() != h.levels()) return "expected " + std::to_string(h.levels()) + " formulas";
    for (std::size_t i = 0; i < A.size(); ++i) {
        if (!A[i].quantifier_free()) return "cut formula " + std::to_string(i + 1) + " is not quantifier-free";
        VarSet allowed;
        for (std::size_t j = i; j < h.levels(); ++j) allowed.insert(h.alpha(j));
        for (const auto& v : free_variables(A[i]))
            if (!allowed.count(v)) return "cut formula " + std::to_string(i + 1) + " mentions " + v;
    }
    Sequent q = solved_sequent(h, A);
    if (!is_tautology(q.antecedent, q.succedent)) return "substituted sequent is not a tautology";
    return {};
}

inline bool check_solution(const SchematicEHS& h, const std::vector<Formula>& A) {
    return solution_violation(h, A).empty();
}

struct ExtendedHerbrandSequent {
    SchematicEHS shs;
    std::vector<Formula> solution;

    Sequent sequent() const { return solved_sequent(shs, solution); }
    std::size_t size() const { return shs.size(); }
};

} // namespace cutforge
