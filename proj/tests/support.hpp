#pragma once
// Test-side oracles: truth tables, random terms and formulas. Nothing here calls the library's
// validity machinery, so the suites can check it against independent ground truth.

#include <cutforge/cutforge.hpp>

#include <map>
#include <random>
#include <set>
#include <string>
#include <vector>

namespace oracle {

using namespace cutforge;

inline void atoms_into(const Formula& f, std::set<std::string>& out) {
    if (f.is_atom()) {
        out.insert(f.atom_text());
        return;
    }
    if (f.is(Op::Top) || f.is(Op::Bottom)) return;
    if (f.is(Op::Not)) {
        atoms_into(f.kid(), out);
        return;
    }
    atoms_into(f.left(), out);
    atoms_into(f.right(), out);
}

inline std::vector<std::string> atoms(const std::vector<Formula>& fs) {
    std::set<std::string> s;
    for (const auto& f : fs) atoms_into(f, s);
    return {s.begin(), s.end()};
}

inline bool eval(const Formula& f, const std::map<std::string, bool>& v) {
    if (f.is_atom()) return v.at(f.atom_text());
    if (f.is(Op::Top)) return true;
    if (f.is(Op::Bottom)) return false;
    if (f.is(Op::Not)) return !eval(f.kid(), v);
    bool a = eval(f.left(), v);
    if (f.is(Op::And)) return a && eval(f.right(), v);
    if (f.is(Op::Or)) return a || eval(f.right(), v);
    return !a || eval(f.right(), v);
}

template <class Fn>
void for_each_assignment(const std::vector<std::string>& as, Fn&& fn) {
    std::map<std::string, bool> v;
    for (unsigned long m = 0; m < (1UL << as.size()); ++m) {
        for (std::size_t i = 0; i < as.size(); ++i) v[as[i]] = (m >> i) & 1UL;
        if (!fn(v)) return;
    }
}

/// ⋀ant ⊃ ⋁suc by truth table.
inline bool valid(const std::vector<Formula>& ant, const std::vector<Formula>& suc) {
    std::vector<Formula> all = ant;
    all.insert(all.end(), suc.begin(), suc.end());
    auto as = atoms(all);
    bool ok = true;
    for_each_assignment(as, [&](const auto& v) {
        bool a = true, s = false;
        for (const auto& f : ant) a = a && eval(f, v);
        for (const auto& f : suc) s = s || eval(f, v);
        if (a && !s) ok = false;
        return ok;
    });
    return ok;
}

inline bool entails(const Formula& a, const Formula& b) { return valid({a}, {b}); }
inline bool equivalent(const Formula& a, const Formula& b) { return entails(a, b) && entails(b, a); }

inline Formula clauses_formula(const ClauseSet& cs) {
    std::vector<Formula> conj;
    for (const auto& c : cs) {
        std::vector<Formula> lits;
        for (const auto& l : c) lits.push_back(l.negative ? Formula::neg(l.atom) : l.atom);
        conj.push_back(lits.empty() ? Formula::bottom() : disjunction(lits));
    }
    return conj.empty() ? Formula::top() : conjunction(conj);
}

// ---------------------------------------------------------------------------
// Random generation
// ---------------------------------------------------------------------------

struct Rng {
    std::mt19937 gen;
    explicit Rng(unsigned seed) : gen(seed) {}
    std::size_t below(std::size_t n) { return std::uniform_int_distribution<std::size_t>(0, n - 1)(gen); }
    bool coin(double p = 0.5) { return std::bernoulli_distribution(p)(gen); }
};

/// Terms over a/0, f/1, g/2 and the given variables.
inline Term random_term(Rng& r, int depth, const std::vector<std::string>& vars = {}) {
    if (depth <= 0 || r.coin(0.3)) {
        if (!vars.empty() && r.coin(0.5)) return Term::var(vars[r.below(vars.size())]);
        return Term::app("a");
    }
    if (r.coin(0.6)) return Term::app("f", {random_term(r, depth - 1, vars)});
    return Term::app("g", {random_term(r, depth - 1, vars), random_term(r, depth - 1, vars)});
}

inline std::vector<Formula> atom_pool(std::size_t n) {
    std::vector<Formula> out;
    for (std::size_t i = 0; i < n; ++i) out.push_back(Formula::atom("p" + std::to_string(i)));
    return out;
}

inline Formula random_formula(Rng& r, const std::vector<Formula>& pool, int depth) {
    if (depth <= 0 || r.coin(0.25)) {
        if (r.coin(0.04)) return r.coin() ? Formula::top() : Formula::bottom();
        return pool[r.below(pool.size())];
    }
    switch (r.below(4)) {
    case 0: return Formula::neg(random_formula(r, pool, depth - 1));
    case 1: return Formula::conj(random_formula(r, pool, depth - 1), random_formula(r, pool, depth - 1));
    case 2: return Formula::disj(random_formula(r, pool, depth - 1), random_formula(r, pool, depth - 1));
    default: return Formula::imp(random_formula(r, pool, depth - 1), random_formula(r, pool, depth - 1));
    }
}

inline ClauseSet random_clause_set(Rng& r, const std::vector<Formula>& pool, std::size_t max_clauses,
                                   std::size_t max_width) {
    std::vector<Clause> cs;
    std::size_t n = 1 + r.below(max_clauses);
    for (std::size_t i = 0; i < n; ++i) {
        std::vector<Literal> lits;
        std::size_t w = 1 + r.below(max_width);
        for (std::size_t j = 0; j < w; ++j) lits.push_back(Literal{pool[r.below(pool.size())], r.coin()});
        Clause c(lits);
        if (!c.tautological()) cs.push_back(c);
    }
    return ClauseSet(cs);
}

/// Term sets over a/0, f/1, g/2: a few contexts applied to shared arguments plus some noise,
/// so that a good share of them compresses.
inline std::vector<Term> random_term_set(Rng& r, std::size_t max_size) {
    std::set<Term> ts;
    std::size_t contexts = 1 + r.below(2), args = 2 + r.below(3);
    std::vector<Term> us, ss;
    for (std::size_t i = 0; i < contexts; ++i) {
        Term u = random_term(r, 2, {"x"});
        if (!occurs("x", u)) u = Term::app("g", {u, Term::var("x")});
        us.push_back(u);
    }
    for (std::size_t i = 0; i < args; ++i) ss.push_back(random_term(r, 2));
    for (const auto& u : us)
        for (const auto& s : ss)
            if (ts.size() < max_size) ts.insert(substitute(u, "x", s));
    for (std::size_t k = r.below(3); k-- > 0 && ts.size() < max_size;) ts.insert(random_term(r, 3));
    return {ts.begin(), ts.end()};
}

// ---------------------------------------------------------------------------
// Grammars
// ---------------------------------------------------------------------------

/// P(a), ∀x (P(x) ⊃ P(f(x))) ⊢ P(fᵐ(a)); the ∀ entry carries tag f2.
inline SigmaOneSequent chain_sequent(std::size_t m) {
    Term a = Term::app("a"), x = Term::var("x");
    Sequent es;
    es.antecedent = {Formula::atom("P", {a}),
                     Formula::forall({"x"}, Formula::imp(Formula::atom("P", {x}), Formula::atom("P", {Term::app("f", {x})})))};
    Term t = a;
    for (std::size_t i = 0; i < m; ++i) t = Term::app("f", {t});
    es.succedent = {Formula::atom("P", {t})};
    return SigmaOneSequent::from_sequent(es);
}

/// Language by plain iterated substitution, innermost level first.
inline std::set<Term> language(const TreeGrammar& g) {
    std::set<Term> cur(g.base.begin(), g.base.end());
    for (const auto& l : g.levels) {
        std::set<Term> next;
        for (const auto& u : cur)
            for (const auto& s : l.productions) next.insert(substitute(u, l.var, s));
        cur = std::move(next);
    }
    return cur;
}

inline std::set<Term> as_set(const std::vector<Term>& ts) { return {ts.begin(), ts.end()}; }

} // namespace oracle
