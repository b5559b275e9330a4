#pragma once

#include <cutforge/formula.hpp>

#include <algorithm>
#include <map>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

namespace cutforge {

// ---------------------------------------------------------------------------
// Literals, clauses, clause sets
// ---------------------------------------------------------------------------

struct Literal {
    Formula atom;
    bool negative = false;

    Literal complement() const { return {atom, !negative}; }
    std::size_t symbols() const { return atom.symbols() + (negative ? 1 : 0); }

    friend bool operator==(const Literal& a, const Literal& b) {
        return a.negative == b.negative && a.atom == b.atom;
    }
    friend bool operator!=(const Literal& a, const Literal& b) { return !(a == b); }
    // rendered atom first, then sign
    friend bool operator<(const Literal& a, const Literal& b) {
        if (a.atom.node() != b.atom.node()) {
            if (int c = a.atom.atom_text().compare(b.atom.atom_text())) return c < 0;
        }
        return a.negative < b.negative;
    }
};

inline std::string render(const Literal& l) { return (l.negative ? "¬" : "") + l.atom.atom_text(); }

/// A set of literals; kept sorted and duplicate-free.
class Clause {
  public:
    Clause() = default;
    explicit Clause(std::vector<Literal> lits) : lits_(std::move(lits)) {
        std::sort(lits_.begin(), lits_.end());
        lits_.erase(std::unique(lits_.begin(), lits_.end()), lits_.end());
    }
    const std::vector<Literal>& literals() const { return lits_; }
    std::size_t size() const { return lits_.size(); }
    bool empty() const { return lits_.empty(); }
    auto begin() const { return lits_.begin(); }
    auto end() const { return lits_.end(); }

    bool contains(const Literal& l) const { return std::binary_search(lits_.begin(), lits_.end(), l); }
    bool tautological() const {
        for (std::size_t i = 0; i + 1 < lits_.size(); ++i)
            if (lits_[i].atom == lits_[i + 1].atom && lits_[i].negative != lits_[i + 1].negative) return true;
        return false;
    }
    /// this ⊆ other
    bool subsumes(const Clause& other) const {
        return std::includes(other.lits_.begin(), other.lits_.end(), lits_.begin(), lits_.end());
    }
    std::size_t symbols() const {
        std::size_t n = 0;
        for (const auto& l : lits_) n += l.symbols();
        return n;
    }

    friend bool operator==(const Clause& a, const Clause& b) { return a.lits_ == b.lits_; }
    friend bool operator!=(const Clause& a, const Clause& b) { return !(a == b); }
    friend bool operator<(const Clause& a, const Clause& b) {
        return std::lexicographical_compare(a.lits_.begin(), a.lits_.end(), b.lits_.begin(), b.lits_.end());
    }

  private:
    std::vector<Literal> lits_;
};

inline std::string render(const Clause& c) {
    if (c.empty()) return "⊥";
    std::string s;
    for (std::size_t i = 0; i < c.size(); ++i) {
        if (i) s += " ∨ ";
        s += render(c.literals()[i]);
    }
    return s;
}

/// A set of clauses (a conjunction); kept sorted and duplicate-free.
class ClauseSet {
  public:
    ClauseSet() = default;
    explicit ClauseSet(std::vector<Clause> cs) : cs_(std::move(cs)) {
        std::sort(cs_.begin(), cs_.end());
        cs_.erase(std::unique(cs_.begin(), cs_.end()), cs_.end());
    }
    const std::vector<Clause>& clauses() const { return cs_; }
    std::size_t size() const { return cs_.size(); }
    bool empty() const { return cs_.empty(); }
    auto begin() const { return cs_.begin(); }
    auto end() const { return cs_.end(); }
    bool contains(const Clause& c) const { return std::binary_search(cs_.begin(), cs_.end(), c); }
    std::size_t symbols() const {
        std::size_t n = 0;
        for (const auto& c : cs_) n += c.symbols();
        return n;
    }

    friend bool operator==(const ClauseSet& a, const ClauseSet& b) { return a.cs_ == b.cs_; }
    friend bool operator!=(const ClauseSet& a, const ClauseSet& b) { return !(a == b); }
    friend bool operator<(const ClauseSet& a, const ClauseSet& b) { return a.cs_ < b.cs_; }

  private:
    std::vector<Clause> cs_;
};

inline std::string render(const ClauseSet& cs) {
    if (cs.empty()) return "⊤";
    std::string s;
    for (std::size_t i = 0; i < cs.size(); ++i) {
        if (i) s += " ∧ ";
        const Clause& c = cs.clauses()[i];
        bool paren = cs.size() > 1 && c.size() > 1;
        s += paren ? "(" + render(c) + ")" : render(c);
    }
    return s;
}

/// Minimality order: symbols, then clause count, then rendering.
inline bool smaller_solution(const ClauseSet& a, const ClauseSet& b) {
    if (a.symbols() != b.symbols()) return a.symbols() < b.symbols();
    if (a.size() != b.size()) return a.size() < b.size();
    return render(a) < render(b);
}

inline Literal instantiate(const Literal& l, const Substitution& sigma) {
    return {instantiate(l.atom, sigma), l.negative};
}

inline Clause instantiate(const Clause& c, const Substitution& sigma) {
    std::vector<Literal> out;
    for (const auto& l : c) out.push_back(instantiate(l, sigma));
    return Clause(std::move(out));
}

inline ClauseSet instantiate(const ClauseSet& cs, const Substitution& sigma) {
    std::vector<Clause> out;
    for (const auto& c : cs) out.push_back(instantiate(c, sigma));
    return ClauseSet(std::move(out));
}

inline bool mentions(const Clause& c, const std::string& var) {
    for (const auto& l : c)
        for (const auto& a : l.atom.args())
            if (occurs(var, a)) return true;
    return false;
}

/// Drops tautologies and clauses subsumed by another clause.
inline ClauseSet reduce(std::vector<Clause> cs) {
    std::vector<Clause> kept;
    cs.erase(std::remove_if(cs.begin(), cs.end(), [](const Clause& c) { return c.tautological(); }), cs.end());
    std::sort(cs.begin(), cs.end(), [](const Clause& a, const Clause& b) {
        return a.size() != b.size() ? a.size() < b.size() : a < b;
    });
    cs.erase(std::unique(cs.begin(), cs.end()), cs.end());
    for (const auto& c : cs) {
        bool sub = false;
        for (const auto& k : kept)
            if (k.subsumes(c)) {
                sub = true;
                break;
            }
        if (!sub) kept.push_back(c);
    }
    return ClauseSet(std::move(kept));
}

// ---------------------------------------------------------------------------
// CNF by distribution
// ---------------------------------------------------------------------------

namespace detail {

inline std::vector<Clause> cnf(const Formula& f, bool positive) {
    switch (f.op()) {
    case Op::Atom: return {Clause({Literal{f, !positive}})};
    case Op::Top: return positive ? std::vector<Clause>{} : std::vector<Clause>{Clause()};
    case Op::Bottom: return positive ? std::vector<Clause>{Clause()} : std::vector<Clause>{};
    case Op::Not: return cnf(f.kid(), !positive);
    case Op::Forall:
    case Op::Exists: throw InputError("to_cnf on quantified formula: " + render(f));
    default: break;
    }
    // And under positive polarity (or Or/Imp under negative) is a conjunction.
    bool lpos = f.is(Op::Imp) ? !positive : positive;
    bool conjunctive = f.is(Op::And) ? positive : !positive;
    auto a = cnf(f.left(), lpos);
    auto b = cnf(f.right(), positive);
    if (conjunctive) {
        a.insert(a.end(), b.begin(), b.end());
        return reduce(std::move(a)).clauses();
    }
    std::vector<Clause> out;
    for (const auto& x : a)
        for (const auto& y : b) {
            std::vector<Literal> lits = x.literals();
            lits.insert(lits.end(), y.begin(), y.end());
            Clause c(std::move(lits));
            if (!c.tautological()) out.push_back(std::move(c));
        }
    return reduce(std::move(out)).clauses();
}

} // namespace detail

/// Logically equivalent CNF; tautological and subsumed clauses removed.
inline ClauseSet to_cnf(const Formula& f) { return reduce(detail::cnf(f, true)); }

inline Formula to_formula(const Literal& l) { return l.negative ? Formula::neg(l.atom) : l.atom; }

/// Clause as a formula: (⋀negatives) ⊃ (⋁positives) when both sides are present.
inline Formula to_formula(const Clause& c) {
    std::vector<Formula> neg, pos;
    for (const auto& l : c) (l.negative ? neg : pos).push_back(l.atom);
    if (neg.empty()) return disjunction(pos);
    if (pos.empty()) {
        std::vector<Formula> lits;
        for (const auto& a : neg) lits.push_back(Formula::neg(a));
        return disjunction(lits);
    }
    return Formula::imp(conjunction(neg), disjunction(pos));
}

inline Formula to_formula(const ClauseSet& cs) {
    std::vector<Formula> parts;
    for (const auto& c : cs) parts.push_back(to_formula(c));
    return conjunction(parts);
}

// ---------------------------------------------------------------------------
// Satisfiability (Tseitin + DPLL) and validity
// ---------------------------------------------------------------------------

/// Small CDCL solver over integer literals (+v / -v, v >= 1): watched literals,
/// first-UIP learning, activity-ordered decisions.
class Dpll {
  public:
    int new_var() { return ++nvars_; }
    int num_vars() const { return nvars_; }
    void add_clause(std::vector<int> c) {
        std::sort(c.begin(), c.end());
        c.erase(std::unique(c.begin(), c.end()), c.end());
        for (std::size_t i = 0; i + 1 < c.size(); ++i)
            for (std::size_t j = i + 1; j < c.size(); ++j)
                if (c[i] == -c[j]) return; // tautology
        if (c.empty()) trivially_unsat_ = true;
        clauses_.push_back(std::move(c));
    }

    bool solve() {
        if (trivially_unsat_) return false;
        std::size_t n = static_cast<std::size_t>(nvars_) + 1;
        value_.assign(n, 0);
        level_.assign(n, 0);
        reason_.assign(n, -1);
        activity_.assign(n, 0.0);
        seen_.assign(n, 0);
        watches_.assign(2 * n, {});
        trail_.clear();
        limits_.clear();
        head_ = 0;
        std::size_t original = clauses_.size();
        for (std::size_t i = 0; i < original; ++i) {
            auto& c = clauses_[i];
            if (c.size() == 1) {
                if (lit_value(c[0]) < 0) return false;
                if (lit_value(c[0]) == 0) enqueue(c[0], -1);
                continue;
            }
            watches_[index(c[0])].push_back(static_cast<int>(i));
            watches_[index(c[1])].push_back(static_cast<int>(i));
        }
        for (;;) {
            int conflict = propagate();
            if (conflict >= 0) {
                if (limits_.empty()) return false;
                std::vector<int> learnt;
                std::size_t back = analyze(conflict, learnt);
                backtrack(back);
                if (learnt.size() == 1) {
                    enqueue(learnt[0], -1);
                } else {
                    clauses_.push_back(learnt);
                    int ci = static_cast<int>(clauses_.size() - 1);
                    watches_[index(learnt[0])].push_back(ci);
                    watches_[index(learnt[1])].push_back(ci);
                    enqueue(learnt[0], ci);
                }
                inc_ *= 1.05;
                continue;
            }
            int pick = 0;
            double best = -1;
            for (int v = 1; v <= nvars_; ++v)
                if (value_[v] == 0 && activity_[v] > best) {
                    best = activity_[v];
                    pick = v;
                }
            if (pick == 0) return true;
            limits_.push_back(trail_.size());
            enqueue(-pick, -1);
        }
    }
    /// Model after a successful solve(); value > 0 means true.
    int value(int v) const { return value_[v]; }

  private:
    static std::size_t index(int l) { return l > 0 ? 2 * static_cast<std::size_t>(l) : 2 * static_cast<std::size_t>(-l) + 1; }
    int lit_value(int l) const {
        int v = value_[static_cast<std::size_t>(std::abs(l))];
        return l > 0 ? v : -v;
    }
    void enqueue(int l, int reason) {
        std::size_t v = static_cast<std::size_t>(std::abs(l));
        value_[v] = l > 0 ? 1 : -1;
        level_[v] = limits_.size();
        reason_[v] = reason;
        trail_.push_back(l);
    }
    // index of a conflicting clause, or -1
    int propagate() {
        while (head_ < trail_.size()) {
            int falsified = -trail_[head_++];
            auto& ws = watches_[index(falsified)];
            std::size_t keep = 0;
            for (std::size_t w = 0; w < ws.size(); ++w) {
                int ci = ws[w];
                auto& c = clauses_[static_cast<std::size_t>(ci)];
                if (c[0] == falsified) std::swap(c[0], c[1]);
                if (lit_value(c[0]) > 0) {
                    ws[keep++] = ci;
                    continue;
                }
                bool moved = false;
                for (std::size_t k = 2; k < c.size(); ++k)
                    if (lit_value(c[k]) >= 0) {
                        std::swap(c[1], c[k]);
                        watches_[index(c[1])].push_back(ci);
                        moved = true;
                        break;
                    }
                if (moved) continue;
                ws[keep++] = ci;
                if (lit_value(c[0]) < 0) {
                    for (std::size_t r = w + 1; r < ws.size(); ++r) ws[keep++] = ws[r];
                    ws.resize(keep);
                    return ci;
                }
                enqueue(c[0], ci);
            }
            ws.resize(keep);
        }
        return -1;
    }
    std::size_t analyze(int conflict, std::vector<int>& learnt) {
        learnt.assign(1, 0);
        std::size_t here = limits_.size();
        int pending = 0, p = 0;
        std::size_t idx = trail_.size();
        int ci = conflict;
        do {
            const auto& c = clauses_[static_cast<std::size_t>(ci)];
            for (std::size_t j = p == 0 ? 0 : 1; j < c.size(); ++j) {
                std::size_t v = static_cast<std::size_t>(std::abs(c[j]));
                if (seen_[v] || level_[v] == 0) continue;
                seen_[v] = 1;
                activity_[v] += inc_;
                if (level_[v] >= here) ++pending;
                else learnt.push_back(c[j]);
            }
            while (!seen_[static_cast<std::size_t>(std::abs(trail_[--idx]))]) {
            }
            p = trail_[idx];
            ci = reason_[static_cast<std::size_t>(std::abs(p))];
            seen_[static_cast<std::size_t>(std::abs(p))] = 0;
            --pending;
        } while (pending > 0);
        learnt[0] = -p;
        std::size_t back = 0, at = 1;
        for (std::size_t i = 1; i < learnt.size(); ++i) {
            std::size_t lv = level_[static_cast<std::size_t>(std::abs(learnt[i]))];
            if (lv > back) {
                back = lv;
                at = i;
            }
        }
        if (learnt.size() > 1) std::swap(learnt[1], learnt[at]);
        for (int l : learnt) seen_[static_cast<std::size_t>(std::abs(l))] = 0;
        return back;
    }
    void backtrack(std::size_t lvl) {
        if (limits_.size() <= lvl) return;
        while (trail_.size() > limits_[lvl]) {
            value_[static_cast<std::size_t>(std::abs(trail_.back()))] = 0;
            trail_.pop_back();
        }
        limits_.resize(lvl);
        head_ = trail_.size();
    }

    int nvars_ = 0;
    bool trivially_unsat_ = false;
    std::vector<std::vector<int>> clauses_;
    std::vector<std::vector<int>> watches_;
    std::vector<int> value_;
    std::vector<std::size_t> level_;
    std::vector<int> reason_;
    std::vector<double> activity_;
    std::vector<char> seen_;
    std::vector<int> trail_;
    std::vector<std::size_t> limits_;
    std::size_t head_ = 0;
    double inc_ = 1.0;
};

/// Tseitin encoder mapping atoms (by rendering) to solver variables.
/// Quantified subformulas are opaque propositional atoms.
class Encoder {
  public:
    explicit Encoder(Dpll& s) : s_(s) {}

    int atom_var(const std::string& key) {
        auto [it, fresh] = atoms_.emplace(key, 0);
        if (fresh) it->second = s_.new_var();
        return it->second;
    }
    int atom_var(const Formula& a) { return atom_var(a.atom_text()); }

    int encode(const Formula& f) {
        switch (f.op()) {
        case Op::Atom: return atom_var(f);
        case Op::Forall:
        case Op::Exists: return atom_var("#" + render(f));
        case Op::Top: return constant(true);
        case Op::Bottom: return constant(false);
        case Op::Not: return -encode(f.kid());
        default: break;
        }
        int a = encode(f.left());
        int b = encode(f.right());
        if (f.is(Op::Imp)) a = -a;
        int v = s_.new_var();
        if (f.is(Op::And)) {
            s_.add_clause({-v, a});
            s_.add_clause({-v, b});
            s_.add_clause({v, -a, -b});
        } else {
            s_.add_clause({-v, a, b});
            s_.add_clause({v, -a});
            s_.add_clause({v, -b});
        }
        return v;
    }

    /// Asserts f (or ¬f), splitting top-level conjunctions.
    void assert_formula(const Formula& f, bool positive = true) {
        if (positive && f.is(Op::And)) {
            assert_formula(f.left());
            assert_formula(f.right());
            return;
        }
        if (!positive && (f.is(Op::Or) || f.is(Op::Imp))) {
            assert_formula(f.left(), f.is(Op::Imp));
            assert_formula(f.right(), false);
            return;
        }
        if (f.is(Op::Not)) {
            assert_formula(f.kid(), !positive);
            return;
        }
        int l = encode(f);
        s_.add_clause({positive ? l : -l});
    }

    void assert_clause(const Clause& c) {
        std::vector<int> lits;
        for (const auto& l : c) lits.push_back(l.negative ? -atom_var(l.atom) : atom_var(l.atom));
        s_.add_clause(std::move(lits));
    }
    void assert_clauses(const ClauseSet& cs) {
        for (const auto& c : cs) assert_clause(c);
    }
    const std::unordered_map<std::string, int>& atoms() const { return atoms_; }

  private:
    int constant(bool value) {
        if (!const_var_) {
            const_var_ = s_.new_var();
            s_.add_clause({const_var_});
        }
        return value ? const_var_ : -const_var_;
    }
    Dpll& s_;
    std::unordered_map<std::string, int> atoms_;
    int const_var_ = 0;
};

namespace detail {
inline void check_eigen(const std::vector<Formula>& fs, const VarSet* eigen) {
    if (!eigen) return;
    for (const auto& f : fs)
        for (const auto& v : free_variables(f))
            if (!eigen->count(v)) throw InputError("free variable '" + v + "' is not a declared eigenvariable");
}
} // namespace detail

/// ⋀antecedent ⊃ ⋁succedent is propositionally valid. Variables are read as constants;
/// when `eigen` is given, any other free variable is an input error.
inline bool is_tautology(const std::vector<Formula>& antecedent, const std::vector<Formula>& succedent,
                         const VarSet* eigen = nullptr) {
    detail::check_eigen(antecedent, eigen);
    detail::check_eigen(succedent, eigen);
    Dpll s;
    Encoder e(s);
    for (const auto& f : antecedent) e.assert_formula(f, true);
    for (const auto& f : succedent) e.assert_formula(f, false);
    return !s.solve();
}

inline bool is_valid(const Formula& f) { return is_tautology({}, {f}); }

inline bool entails(const std::vector<Formula>& premises, const Formula& conclusion) {
    return is_tautology(premises, {conclusion});
}

inline bool equivalent(const Formula& a, const Formula& b) {
    return entails({a}, b) && entails({b}, a);
}

inline bool satisfiable(const ClauseSet& cs) {
    Dpll s;
    Encoder e(s);
    e.assert_clauses(cs);
    return s.solve();
}

/// Truth value of f under an assignment keyed by atom rendering (absent atoms are false).
inline bool evaluate(const Formula& f, const std::map<std::string, bool>& v) {
    switch (f.op()) {
    case Op::Atom: {
        auto it = v.find(f.atom_text());
        return it != v.end() && it->second;
    }
    case Op::Top: return true;
    case Op::Bottom: return false;
    case Op::Not: return !evaluate(f.kid(), v);
    case Op::And: return evaluate(f.left(), v) && evaluate(f.right(), v);
    case Op::Or: return evaluate(f.left(), v) || evaluate(f.right(), v);
    case Op::Imp: return !evaluate(f.left(), v) || evaluate(f.right(), v);
    default: throw InputError("cannot evaluate quantified formula");
    }
}

inline bool evaluate(const Clause& c, const std::map<std::string, bool>& v) {
    for (const auto& l : c) {
        auto it = v.find(l.atom.atom_text());
        bool val = it != v.end() && it->second;
        if (val != l.negative) return true;
    }
    return false;
}

inline bool evaluate(const ClauseSet& cs, const std::map<std::string, bool>& v) {
    for (const auto& c : cs)
        if (!evaluate(c, v)) return false;
    return true;
}

// ---------------------------------------------------------------------------
// Resolution
// ---------------------------------------------------------------------------

/// Resolvent when exactly one complementary pair exists.
inline std::optional<Clause> resolvent(const Clause& c, const Clause& d) {
    const Literal* pivot = nullptr;
    int pairs = 0;
    for (const auto& l : c)
        if (d.contains(l.complement())) {
            ++pairs;
            pivot = &l;
        }
    if (pairs != 1) return std::nullopt;
    std::vector<Literal> lits;
    for (const auto& l : c)
        if (l != *pivot) lits.push_back(l);
    Literal comp = pivot->complement();
    for (const auto& l : d)
        if (l != comp) lits.push_back(l);
    return Clause(std::move(lits));
}

/// Least superset of A closed under resolution up to subsumption.
inline ClauseSet deductive_closure(const ClauseSet& a) {
    std::vector<Clause> cs = a.clauses();
    std::size_t original = cs.size();
    auto subsumed = [&](const Clause& r) {
        for (const auto& c : cs)
            if (c.subsumes(r)) return true;
        return false;
    };
    for (bool changed = true; changed;) {
        changed = false;
        std::size_t n = cs.size();
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = i + 1; j < n; ++j) {
                auto r = resolvent(cs[i], cs[j]);
                if (!r || subsumed(*r)) continue;
                // derived clauses that the new one subsumes are redundant
                std::vector<Clause> next(cs.begin(), cs.begin() + original);
                for (std::size_t k = original; k < cs.size(); ++k)
                    if (!r->subsumes(cs[k])) next.push_back(cs[k]);
                next.push_back(*r);
                cs = std::move(next);
                changed = true;
                goto restart;
            }
    restart:;
    }
    return ClauseSet(std::move(cs));
}

// ---------------------------------------------------------------------------
// Interpolation
// ---------------------------------------------------------------------------

struct PartitionedSequent {
    std::vector<Formula> left1, left2, right1, right2;
};

/// Replaces an atom by ⊤ or ⊥ and simplifies.
inline Formula assign_atom(const Formula& f, const Formula& atom, bool value) {
    switch (f.op()) {
    case Op::Atom: return f == atom ? (value ? Formula::top() : Formula::bottom()) : f;
    case Op::Top:
    case Op::Bottom: return f;
    case Op::Not: return simplify(Formula::neg(assign_atom(f.kid(), atom, value)));
    case Op::And: return simplify(Formula::conj(assign_atom(f.left(), atom, value), assign_atom(f.right(), atom, value)));
    case Op::Or: return simplify(Formula::disj(assign_atom(f.left(), atom, value), assign_atom(f.right(), atom, value)));
    case Op::Imp: return simplify(Formula::imp(assign_atom(f.left(), atom, value), assign_atom(f.right(), atom, value)));
    default: throw InputError("interpolation over quantified formula");
    }
}

/// Strongest interpolant: ∃(left-only atoms).(⋀Γ₁ ∧ ¬⋁Δ₁) by Shannon expansion.
inline Formula interpolate(const PartitionedSequent& s) {
    std::vector<Formula> ant = s.left1, suc = s.right1;
    ant.insert(ant.end(), s.left2.begin(), s.left2.end());
    suc.insert(suc.end(), s.right2.begin(), s.right2.end());
    if (!is_tautology(ant, suc)) throw InternalError("interpolate: sequent is not a tautology");

    std::vector<Formula> leftside = s.left1, rightside = s.left2;
    leftside.insert(leftside.end(), s.right1.begin(), s.right1.end());
    rightside.insert(rightside.end(), s.right2.begin(), s.right2.end());
    std::vector<Formula> latoms = atoms_of(leftside), ratoms = atoms_of(rightside);

    std::vector<Formula> negs;
    for (const auto& d : s.right1) negs.push_back(Formula::neg(d));
    std::vector<Formula> parts = s.left1;
    parts.insert(parts.end(), negs.begin(), negs.end());
    Formula phi = simplify(conjunction(parts));
    for (const auto& p : latoms) {
        if (std::binary_search(ratoms.begin(), ratoms.end(), p)) continue;
        phi = simplify(Formula::disj(assign_atom(phi, p, true), assign_atom(phi, p, false)));
    }
    return phi;
}

} // namespace cutforge
