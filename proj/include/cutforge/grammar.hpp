#pragma once

#include <cutforge/term.hpp>

#include <algorithm>
#include <cstdint>
#include <limits>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <unordered_map>
#include <vector>

namespace cutforge {

// ---------------------------------------------------------------------------
// Tree grammars
// ---------------------------------------------------------------------------

/// U ∘_{α1} S1 ⋯ ∘_{αn} Sn. Terms of Si may only mention α_{i+1}..αn.
struct TreeGrammar {
    struct Level {
        std::string var;
        std::vector<Term> productions;
        friend bool operator==(const Level&, const Level&) = default;
    };
    std::vector<Term> base;
    std::vector<Level> levels;

    std::size_t size() const {
        std::size_t n = base.size();
        for (const auto& l : levels) n += l.productions.size();
        return n;
    }
    bool trivial() const { return levels.empty(); }
    /// Sorts and deduplicates every production set.
    TreeGrammar& normalize() {
        base = sorted_unique(std::move(base));
        for (auto& l : levels) l.productions = sorted_unique(std::move(l.productions));
        return *this;
    }
    friend bool operator==(const TreeGrammar&, const TreeGrammar&) = default;
};

inline std::string render_set(const std::vector<Term>& ts) {
    std::string s = "{";
    for (std::size_t i = 0; i < ts.size(); ++i) s += (i ? ", " : "") + render(ts[i]);
    return s + "}";
}

inline std::string render(const TreeGrammar& g) {
    std::string s = render_set(g.base);
    for (const auto& l : g.levels) s += " ∘_" + l.var + " " + render_set(l.productions);
    return s;
}

/// Empty string when the grammar is well-formed, otherwise the reason.
inline std::string grammar_violation(const TreeGrammar& g) {
    VarSet all;
    for (const auto& l : g.levels) {
        if (all.count(l.var)) return "non-terminal " + l.var + " declared twice";
        all.insert(l.var);
    }
    for (const auto& u : g.base)
        for (const auto& v : variables(u))
            if (!all.count(v)) return "base term " + render(u) + " mentions undeclared variable " + v;
    for (std::size_t i = 0; i < g.levels.size(); ++i) {
        VarSet later;
        for (std::size_t j = i + 1; j < g.levels.size(); ++j) later.insert(g.levels[j].var);
        for (const auto& s : g.levels[i].productions)
            for (const auto& v : variables(s))
                if (!later.count(v))
                    return "production " + render(s) + " of " + g.levels[i].var + " violates the variable condition";
    }
    return {};
}

/// L(G) by iterated substitution.
inline std::vector<Term> language(const TreeGrammar& g) {
    std::vector<Term> cur = sorted_unique(g.base);
    for (const auto& l : g.levels) {
        std::vector<Term> next;
        for (const auto& t : cur) {
            if (!occurs(l.var, t)) {
                next.push_back(t);
                continue;
            }
            for (const auto& s : l.productions) next.push_back(substitute(t, l.var, s));
        }
        cur = sorted_unique(std::move(next));
    }
    return cur;
}

/// General rigid tree grammar; non-terminals appear as variables in productions.
struct RigidGrammar {
    std::string start;
    VarSet nonterminals;
    VarSet rigid;
    std::map<std::string, std::vector<Term>> productions;
};

inline RigidGrammar to_rigid(const TreeGrammar& g, const std::string& start = "τ") {
    RigidGrammar r;
    r.start = start;
    r.nonterminals.insert(start);
    r.rigid.insert(start);
    r.productions[start] = g.base;
    for (const auto& l : g.levels) {
        r.nonterminals.insert(l.var);
        r.rigid.insert(l.var);
        r.productions[l.var] = l.productions;
    }
    return r;
}

namespace detail {

inline std::optional<Position> first_nonterminal(const Term& t, const VarSet& nts, Position& cur) {
    if (t.is_var()) {
        if (nts.count(t.name())) return cur;
        return std::nullopt;
    }
    for (std::size_t i = 0; i < t.arity(); ++i) {
        cur.push_back(i + 1);
        if (auto p = first_nonterminal(t.args()[i], nts, cur)) return p;
        cur.pop_back();
    }
    return std::nullopt;
}

inline void derive(const RigidGrammar& g, const Term& form, std::vector<std::pair<std::string, Position>>& history,
                   std::size_t max_depth, std::set<Term>& out) {
    if (form.depth() > max_depth) return;
    Position cur;
    auto p = first_nonterminal(form, g.nonterminals, cur);
    if (!p) {
        for (std::size_t i = 0; i < history.size(); ++i) {
            if (!g.rigid.count(history[i].first)) continue;
            for (std::size_t j = i + 1; j < history.size(); ++j)
                if (history[j].first == history[i].first &&
                    subterm_at(form, history[i].second) != subterm_at(form, history[j].second))
                    return;
        }
        out.insert(form);
        return;
    }
    const std::string& nt = subterm_at(form, *p).name();
    auto it = g.productions.find(nt);
    if (it == g.productions.end()) return;
    history.emplace_back(nt, *p);
    for (const auto& r : it->second) derive(g, replace_at(form, *p, r), history, max_depth, out);
    history.pop_back();
}

} // namespace detail

/// Language straight from leftmost derivations plus the rigidity condition, truncated at max_depth.
inline std::vector<Term> language_by_derivation(const RigidGrammar& g,
                                                std::size_t max_depth = std::numeric_limits<std::size_t>::max()) {
    std::set<Term> out;
    std::vector<std::pair<std::string, Position>> history;
    detail::derive(g, Term::var(g.start), history, max_depth, out);
    return {out.begin(), out.end()};
}

inline std::vector<Term> language_by_derivation(const TreeGrammar& g) { return language_by_derivation(to_rigid(g)); }

// ---------------------------------------------------------------------------
// Δ-vector
// ---------------------------------------------------------------------------

struct DeltaVector {
    Term u;
    std::optional<std::vector<Term>> s; // nullopt: wildcard (all terms identical)

    bool trivial(const std::string& alpha) const { return u.is_var() && u.name() == alpha; }
};

namespace detail {

inline DeltaVector delta(const std::vector<const Term*>& ts, const std::string& alpha) {
    const Term& first = *ts[0];
    bool same = true;
    for (const Term* t : ts)
        if (*t != first) {
            same = false;
            break;
        }
    if (same) return {first, std::nullopt};
    auto trivial = [&] {
        std::vector<Term> s;
        for (const Term* t : ts) s.push_back(*t);
        return DeltaVector{Term::var(alpha), std::move(s)};
    };
    if (first.is_var()) return trivial();
    for (const Term* t : ts)
        if (t->is_var() || t->name() != first.name() || t->arity() != first.arity()) return trivial();
    std::vector<Term> args;
    std::optional<std::vector<Term>> merged;
    for (std::size_t k = 0; k < first.arity(); ++k) {
        std::vector<const Term*> column;
        for (const Term* t : ts) column.push_back(&t->args()[k]);
        DeltaVector d = delta(column, alpha);
        if (d.s) {
            if (merged && *merged != *d.s) return trivial();
            merged = d.s;
        }
        args.push_back(d.u);
    }
    return {Term::app(first.name(), std::move(args)), merged};
}

} // namespace detail

/// Maximal common structure with one abstraction variable at every difference position.
inline DeltaVector delta_vector(const std::vector<Term>& ts, const std::string& alpha = "α") {
    if (ts.empty()) throw InternalError("delta_vector of empty sequence");
    std::vector<const Term*> ptrs;
    for (const auto& t : ts) ptrs.push_back(&t);
    return detail::delta(ptrs, alpha);
}

// ---------------------------------------------------------------------------
// Δ-table (Alg. 1)
// ---------------------------------------------------------------------------

struct DeltaTable {
    struct Entry {
        Term u;
        std::vector<std::size_t> covered; // indices into terms, ascending
    };
    std::string alpha;
    std::vector<Term> terms;
    std::map<std::vector<Term>, std::vector<Entry>> rows; // key: s-vector as a sorted set
    bool truncated = false;
    std::size_t entries = 0;
};

struct DeltaTableOptions {
    std::string alpha = "α";
    bool prune = true;              // skip extensions of trivial Δ-vectors
    std::size_t max_entries = 400000; // stop after the layer that crosses this
};

/// Alg. 1 one layer at a time: layer k holds the subsets of size k.
class DeltaLayers {
  public:
    DeltaLayers(const std::vector<Term>& T, const DeltaTableOptions& opt) : T_(T), opt_(opt) {
        for (std::size_t i = 0; i < T.size(); ++i)
            for (std::size_t j = i + 1; j < T.size(); ++j)
                if (T[i] == T[j]) throw InternalError("fill_delta_table: duplicate terms");
        // singletons seed the extension; their all-wildcard Δ is never stored
        for (std::size_t i = 0; i < T.size(); ++i) layer_.push_back({i});
    }

    /// Computes the next layer into rows(); false when nothing is left.
    bool next() {
        rows_.clear();
        if (layer_.empty()) return false;
        std::vector<std::vector<std::size_t>> next;
        for (const auto& subset : layer_) {
            std::vector<const Term*> ptrs;
            for (std::size_t i : subset) ptrs.push_back(&T_[i]);
            ptrs.push_back(nullptr);
            for (std::size_t j = subset.back() + 1; j < T_.size(); ++j) {
                ptrs.back() = &T_[j];
                DeltaVector d = detail::delta(ptrs, opt_.alpha);
                if (d.trivial(opt_.alpha) && opt_.prune) continue;
                std::vector<std::size_t> ext = subset;
                ext.push_back(j);
                rows_[sorted_unique(*d.s)].push_back({d.u, ext});
                ++entries_;
                next.push_back(std::move(ext));
            }
        }
        layer_ = std::move(next);
        ++size_;
        return true;
    }

    std::size_t subset_size() const { return size_; }
    std::size_t entries() const { return entries_; }
    bool exhausted() const { return layer_.empty(); }
    std::map<std::vector<Term>, std::vector<DeltaTable::Entry>>& rows() { return rows_; }

  private:
    const std::vector<Term>& T_;
    DeltaTableOptions opt_;
    std::vector<std::vector<std::size_t>> layer_;
    std::map<std::vector<Term>, std::vector<DeltaTable::Entry>> rows_;
    std::size_t size_ = 1;
    std::size_t entries_ = 0;
};

inline DeltaTable fill_delta_table(const std::vector<Term>& T, const DeltaTableOptions& opt = {}) {
    DeltaTable table;
    table.alpha = opt.alpha;
    table.terms = T;
    DeltaLayers layers(T, opt);
    while (true) {
        if (layers.entries() > opt.max_entries) {
            table.truncated = !layers.exhausted();
            break;
        }
        if (!layers.next()) break;
        for (auto& [k, v] : layers.rows()) table.rows[k] = std::move(v);
    }
    table.entries = layers.entries();
    return table;
}

// ---------------------------------------------------------------------------
// Grammar search
// ---------------------------------------------------------------------------

namespace detail {

class Bits {
  public:
    Bits() = default;
    explicit Bits(std::size_t n) : w_((n + 63) / 64, 0) {}
    void set(std::size_t i) { w_[i / 64] |= std::uint64_t(1) << (i % 64); }
    bool test(std::size_t i) const { return (w_[i / 64] >> (i % 64)) & 1; }
    void unite(const Bits& o) {
        for (std::size_t k = 0; k < w_.size(); ++k) w_[k] |= o.w_[k];
    }
    std::size_t count() const {
        std::size_t n = 0;
        for (auto w : w_) n += static_cast<std::size_t>(__builtin_popcountll(w));
        return n;
    }
    friend bool operator==(const Bits&, const Bits&) = default;

  private:
    std::vector<std::uint64_t> w_;
};

/// All minimum-cardinality exact covers (union = universe) with at most max_pick sets.
class CoverSearch {
  public:
    CoverSearch(std::size_t universe, std::vector<Bits> sets, std::size_t max_set, std::size_t cap)
        : n_(universe), sets_(std::move(sets)), max_set_(std::max<std::size_t>(1, max_set)), cap_(cap) {
        covering_.resize(n_);
        for (std::size_t s = 0; s < sets_.size(); ++s)
            for (std::size_t e = 0; e < n_; ++e)
                if (sets_[s].test(e)) covering_[e].push_back(s);
    }

    std::vector<std::vector<std::size_t>> run(std::size_t max_pick) {
        best_ = max_pick;
        Bits covered(n_);
        std::vector<std::size_t> chosen;
        rec(covered, 0, chosen);
        return {found_.begin(), found_.end()};
    }

  private:
    void rec(Bits& covered, std::size_t ncovered, std::vector<std::size_t>& chosen) {
        if (ncovered == n_) {
            if (chosen.size() < best_) {
                best_ = chosen.size();
                found_.clear();
            }
            if (chosen.size() == best_ && found_.size() < cap_) {
                std::vector<std::size_t> c = chosen;
                std::sort(c.begin(), c.end());
                found_.insert(std::move(c));
            }
            return;
        }
        std::size_t rest = n_ - ncovered;
        if (chosen.size() + (rest + max_set_ - 1) / max_set_ > best_) return;
        if (found_.size() >= cap_ && chosen.size() + (rest + max_set_ - 1) / max_set_ >= best_) return;
        // branch on the uncovered element with the fewest options
        std::size_t pick = n_, options = std::numeric_limits<std::size_t>::max();
        for (std::size_t e = 0; e < n_; ++e)
            if (!covered.test(e) && covering_[e].size() < options) {
                pick = e;
                options = covering_[e].size();
            }
        for (std::size_t s : covering_[pick]) {
            Bits saved = covered;
            covered.unite(sets_[s]);
            chosen.push_back(s);
            rec(covered, covered.count(), chosen);
            chosen.pop_back();
            covered = saved;
        }
    }

    std::size_t n_;
    std::vector<Bits> sets_;
    std::size_t max_set_;
    std::size_t cap_;
    std::vector<std::vector<std::size_t>> covering_;
    std::size_t best_ = 0;
    std::set<std::vector<std::size_t>> found_;
};

struct KeyCandidate {
    std::vector<Term> key;
    std::vector<std::vector<Term>> covers; // each a U, sorted
};

/// Minimum covers of T for one key: table entries, the trivial entry (α, key) when key ⊆ T,
/// and one pass-through entry per term (a production without α).
inline KeyCandidate covers_for_key(const DeltaTable& table, const std::vector<Term>& key,
                                   const std::vector<DeltaTable::Entry>& entries, std::size_t max_u,
                                   std::size_t cap) {
    const auto& T = table.terms;
    std::vector<Bits> sets;
    std::vector<Term> us;
    for (const auto& e : entries) {
        Bits b(T.size());
        for (std::size_t i : e.covered) b.set(i);
        sets.push_back(std::move(b));
        us.push_back(e.u);
    }
    {
        Bits b(T.size());
        bool inside = true;
        for (const auto& s : key) {
            std::size_t idx = 0;
            bool hit = false;
            for (std::size_t i = 0; i < T.size(); ++i)
                if (T[i] == s) {
                    idx = i;
                    hit = true;
                    break;
                }
            if (!hit) {
                inside = false;
                break;
            }
            b.set(idx);
        }
        if (inside && key.size() < T.size()) {
            sets.push_back(std::move(b));
            us.push_back(Term::var(table.alpha));
        }
    }
    for (std::size_t i = 0; i < T.size(); ++i) {
        Bits b(T.size());
        b.set(i);
        sets.push_back(std::move(b));
        us.push_back(T[i]);
    }
    KeyCandidate kc;
    kc.key = key;
    CoverSearch cs(T.size(), std::move(sets), key.size(), cap);
    for (const auto& cover : cs.run(max_u)) {
        std::vector<Term> u;
        for (std::size_t s : cover) u.push_back(us[s]);
        kc.covers.push_back(sorted_unique(std::move(u)));
    }
    return kc;
}

inline std::vector<std::pair<const std::vector<Term>*, const std::vector<DeltaTable::Entry>*>>
ordered_keys(const DeltaTable& table) {
    std::vector<std::pair<const std::vector<Term>*, const std::vector<DeltaTable::Entry>*>> keys;
    for (const auto& [k, v] : table.rows)
        if (k.size() >= 2) keys.push_back({&k, &v});
    std::stable_sort(keys.begin(), keys.end(),
                     [](const auto& a, const auto& b) { return a.first->size() < b.first->size(); });
    return keys;
}

inline bool grammar_less(const TreeGrammar& a, const TreeGrammar& b) {
    if (a.size() != b.size()) return a.size() < b.size();
    return render(a) < render(b);
}

} // namespace detail

struct GrammarSearchOptions {
    std::size_t covers_per_key = 256;
    std::size_t max_table_entries = 400000;
};

/// Single-level grammars U ∘_α S with L = T and size < |T|: for every key the minimum covers
/// by its entries. Sorted by (size, rendering); the base-only grammar T closes the list.
inline std::vector<TreeGrammar> find_grammars(const std::vector<Term>& T, const DeltaTable& table,
                                              const GrammarSearchOptions& opt = {}) {
    std::vector<TreeGrammar> out;
    std::set<std::string> seen;
    if (T.size() >= 3) {
        for (const auto& [key, entries] : detail::ordered_keys(table)) {
            std::size_t k = key->size();
            if (k + 1 >= T.size()) continue;
            std::size_t max_u = T.size() - 1 - k;
            if ((T.size() + k - 1) / k > max_u) continue;
            auto kc = detail::covers_for_key(table, *key, *entries, max_u, opt.covers_per_key);
            for (auto& u : kc.covers) {
                TreeGrammar g{u, {{table.alpha, *key}}};
                g.normalize();
                if (seen.insert(render(g)).second) out.push_back(std::move(g));
            }
        }
    }
    std::sort(out.begin(), out.end(), detail::grammar_less);
    out.push_back(TreeGrammar{sorted_unique(T), {}});
    return out;
}

inline std::vector<TreeGrammar> find_grammars(const std::vector<Term>& T, const GrammarSearchOptions& opt = {}) {
    DeltaTableOptions dopt;
    dopt.max_entries = opt.max_table_entries;
    return find_grammars(T, fill_delta_table(T, dopt), opt);
}

/// Grammars of least size among find_grammars' output (the fallback when nothing compresses).
inline std::vector<TreeGrammar> minimal_single_level(const std::vector<TreeGrammar>& all) {
    std::vector<TreeGrammar> out;
    for (const auto& g : all)
        if (g.size() == all.front().size()) out.push_back(g);
    return out;
}

// ---------------------------------------------------------------------------
// Multi-level iteration
// ---------------------------------------------------------------------------

namespace detail {

/// Least Σ of at most levels+1 factors (levels of them ≥ 2) whose product reaches m.
class SizeBound {
  public:
    std::size_t operator()(std::size_t m, std::size_t levels) {
        if (m <= 1) return m;
        if (levels == 0) return m;
        auto key = std::make_pair(m, levels);
        if (auto it = memo_.find(key); it != memo_.end()) return it->second;
        std::size_t best = (*this)(m, levels - 1);
        for (std::size_t a = 2; a <= m; ++a) best = std::min(best, a + (*this)((m + a - 1) / a, levels - 1));
        memo_[key] = best;
        return best;
    }

  private:
    std::map<std::pair<std::size_t, std::size_t>, std::size_t> memo_;
};

class Iterator {
  public:
    static constexpr std::size_t kNone = std::numeric_limits<std::size_t>::max();

    struct Composite {
        std::vector<std::vector<Term>> levels; // outermost first, variable of depth d is "β<d>"
        std::vector<Term> base;
    };
    struct Result {
        std::size_t size = kNone;
        std::size_t levels = 0;
        std::vector<Composite> all;
        std::size_t bound = 0;
    };

    explicit Iterator(const GrammarSearchOptions& opt) : opt_(opt) {}

    static std::string var(std::size_t depth) { return "β" + std::to_string(depth); }

    Result search(const std::vector<Term>& T, std::size_t depth, std::size_t levels_left, std::size_t bound) {
        std::string mkey = std::to_string(depth) + "|" + std::to_string(levels_left) + "|" + render_set(T);
        if (auto it = memo_.find(mkey); it != memo_.end()) {
            const Result& r = it->second;
            if (r.size != kNone || r.bound >= bound) {
                if (r.size == kNone || r.size <= bound) return r;
                return Result{};
            }
        }
        Result best;
        best.bound = bound;
        if (T.size() <= bound) {
            best.size = T.size();
            best.all.push_back({{}, T});
        }
        if (levels_left > 0 && T.size() >= 3) explore(T, depth, levels_left, bound, best);
        memo_[mkey] = best;
        return best;
    }

  private:
    void consider(Result& best, std::size_t size, std::size_t levels, const std::vector<Term>& S,
                  const Result& sub) {
        bool better = best.size == kNone || size < best.size || (size == best.size && levels > best.levels);
        bool tie = size == best.size && levels == best.levels;
        if (!better && !tie) return;
        if (better) {
            best.size = size;
            best.levels = levels;
            best.all.clear();
        }
        for (const auto& c : sub.all) {
            if (best.all.size() >= opt_.covers_per_key) break;
            Composite x;
            x.levels.push_back(S);
            x.levels.insert(x.levels.end(), c.levels.begin(), c.levels.end());
            x.base = c.base;
            best.all.push_back(std::move(x));
        }
    }

    /// Least k' + LB(⌈m/k'⌉) over key sizes k' ≥ k.
    std::size_t key_bound(std::size_t m, std::size_t k, std::size_t levels_left) {
        std::size_t best = kNone;
        for (std::size_t j = k; j < m; ++j) best = std::min(best, j + lb_((m + j - 1) / j, levels_left - 1));
        return best;
    }

    void explore(const std::vector<Term>& T, std::size_t depth, std::size_t levels_left, std::size_t bound,
                 Result& best) {
        DeltaTableOptions dopt;
        dopt.alpha = var(depth);
        DeltaTable shell;
        shell.alpha = dopt.alpha;
        shell.terms = T;
        DeltaLayers layers(T, dopt);
        // layer k holds exactly the keys of size k
        while (layers.entries() <= opt_.max_table_entries) {
            std::size_t k = layers.subset_size() + 1;
            if (key_bound(T.size(), k, levels_left) > std::min(bound, best.size)) break;
            if (!layers.next()) break;
            for (const auto& [key, entries] : layers.rows()) {
                std::size_t limit = std::min(bound, best.size);
                if (k >= limit) continue;
                std::size_t budget = limit - k;
                std::size_t min_u = (T.size() + k - 1) / k;
                if (lb_(min_u, levels_left - 1) > budget) continue;
                std::size_t max_u = min_u;
                while (max_u < T.size() && lb_(max_u + 1, levels_left - 1) <= budget) ++max_u;
                auto kc = covers_for_key(shell, key, entries, max_u, opt_.covers_per_key);
                for (const auto& u : kc.covers) {
                    limit = std::min(bound, best.size);
                    if (k >= limit) break;
                    budget = limit - k;
                    if (lb_(u.size(), levels_left - 1) > budget) continue;
                    // a level must mention its variable somewhere
                    bool uses = false;
                    for (const auto& t : u)
                        if (occurs(shell.alpha, t)) uses = true;
                    if (!uses) continue;
                    Result sub = search(u, depth + 1, levels_left - 1, budget);
                    if (sub.size == kNone) continue;
                    consider(best, k + sub.size, 1 + sub.levels, key, sub);
                }
            }
        }
    }

    GrammarSearchOptions opt_;
    SizeBound lb_;
    std::map<std::string, Result> memo_;
};

inline TreeGrammar to_grammar(const Iterator::Composite& c) {
    std::size_t k = c.levels.size();
    Substitution rename;
    for (std::size_t d = 0; d < k; ++d) rename[Iterator::var(d)] = Term::var("α" + std::to_string(k - d));
    TreeGrammar g;
    for (const auto& u : c.base) g.base.push_back(substitute(u, rename));
    for (std::size_t i = 1; i <= k; ++i) {
        std::size_t d = k - i;
        TreeGrammar::Level l;
        l.var = "α" + std::to_string(i);
        for (const auto& s : c.levels[d]) l.productions.push_back(substitute(s, rename));
        g.levels.push_back(std::move(l));
    }
    g.normalize();
    return g;
}

} // namespace detail

/// All composed grammars of least total size (ties: most levels) with at most max_levels levels
/// and size < |T|; the base-only grammar when nothing compresses. Sorted by rendering.
inline std::vector<TreeGrammar> minimal_grammars(const std::vector<Term>& T, std::size_t max_levels,
                                                 const GrammarSearchOptions& opt = {}) {
    std::vector<Term> ts = sorted_unique(T);
    std::vector<TreeGrammar> out;
    if (max_levels > 0 && ts.size() >= 3) {
        detail::Iterator it(opt);
        auto r = it.search(ts, 0, max_levels, ts.size() - 1);
        if (r.size != detail::Iterator::kNone && r.levels > 0) {
            std::set<std::string> seen;
            for (const auto& c : r.all) {
                TreeGrammar g = detail::to_grammar(c);
                if (seen.insert(render(g)).second) out.push_back(std::move(g));
            }
        }
    }
    if (out.empty()) return {TreeGrammar{ts, {}}};
    std::sort(out.begin(), out.end(), detail::grammar_less);
    return out;
}

/// Repeated compression of the base set; first of minimal_grammars.
inline TreeGrammar iterate_grammars(const std::vector<Term>& T, std::size_t max_levels,
                                    const GrammarSearchOptions& opt = {}) {
    return minimal_grammars(T, max_levels, opt).front();
}

// ---------------------------------------------------------------------------
// Brute-force oracle
// ---------------------------------------------------------------------------

namespace detail {

inline void abstractions(const Term& t, const Term& s, const std::string& alpha, std::vector<Term>& out) {
    std::vector<Position> occ;
    for (const auto& p : positions(t))
        if (subterm_at(t, p) == s) occ.push_back(p);
    // occurrences of one term never nest
    std::size_t n = occ.size();
    if (n > 16) throw InternalError("brute_force_grammars: term too large");
    for (std::size_t mask = 1; mask < (std::size_t(1) << n); ++mask) {
        Term u = t;
        for (std::size_t i = 0; i < n; ++i)
            if (mask >> i & 1) u = replace_at(u, occ[i], Term::var(alpha));
        out.push_back(u);
    }
}

} // namespace detail

/// Every single-level grammar over subterms of T with size ≤ bound and language exactly T.
inline std::vector<TreeGrammar> brute_force_grammars(const std::vector<Term>& T_in, std::size_t bound,
                                                     const std::string& alpha = "α") {
    std::vector<Term> T = sorted_unique(T_in);
    std::set<std::string> seen;
    std::vector<TreeGrammar> out;
    auto emit = [&](TreeGrammar g) {
        g.normalize();
        if (language(g) != T) return;
        if (seen.insert(render(g)).second) out.push_back(std::move(g));
    };
    if (T.size() <= bound) emit(TreeGrammar{T, {}});

    TermSet subs;
    for (const auto& t : T) collect_subterms(t, subs);
    std::vector<Term> sub(subs.begin(), subs.end());
    auto in_T = [&](const Term& x) { return std::binary_search(T.begin(), T.end(), x); };

    // S grows in subterm order; the admissible α-productions shrink as S grows
    std::vector<Term> S;
    auto choose_u = [&](const std::vector<Term>& cands) {
        std::vector<Term> pool = cands;
        pool.insert(pool.end(), T.begin(), T.end());
        std::vector<std::vector<Term>> gen;
        for (const auto& u : pool) {
            std::vector<Term> g;
            if (occurs(alpha, u))
                for (const auto& s : S) g.push_back(substitute(u, alpha, s));
            else
                g.push_back(u);
            gen.push_back(sorted_unique(std::move(g)));
        }
        if (S.size() + 1 > bound) return;
        std::size_t cap = bound - S.size();
        std::vector<Term> chosen;
        std::vector<std::size_t> count(T.size(), 0);
        auto index_of = [&](const Term& x) {
            return static_cast<std::size_t>(std::lower_bound(T.begin(), T.end(), x) - T.begin());
        };
        std::size_t covered = 0;
        std::function<void(std::size_t)> rec = [&](std::size_t i) {
            if (covered == T.size()) {
                bool has_alpha = false;
                for (const auto& u : chosen)
                    if (occurs(alpha, u)) has_alpha = true;
                if (has_alpha) emit(TreeGrammar{chosen, {{alpha, S}}});
            }
            if (i == pool.size() || chosen.size() == cap) return;
            chosen.push_back(pool[i]);
            for (const auto& x : gen[i])
                if (count[index_of(x)]++ == 0) ++covered;
            rec(i + 1);
            for (const auto& x : gen[i])
                if (--count[index_of(x)] == 0) --covered;
            chosen.pop_back();
            rec(i + 1);
        };
        rec(0);
    };
    std::function<void(std::size_t, const std::vector<Term>&)> grow = [&](std::size_t from,
                                                                           const std::vector<Term>& cands) {
        if (S.size() >= 2) choose_u(cands);
        if (S.size() + 2 > bound) return;
        for (std::size_t i = from; i < sub.size(); ++i) {
            std::vector<Term> next;
            if (S.empty()) {
                std::vector<Term> raw;
                for (const auto& t : T) detail::abstractions(t, sub[i], alpha, raw);
                next = sorted_unique(std::move(raw));
            } else {
                for (const auto& u : cands)
                    if (in_T(substitute(u, alpha, sub[i]))) next.push_back(u);
            }
            if (next.empty()) continue;
            S.push_back(sub[i]);
            grow(i + 1, next);
            S.pop_back();
        }
    };
    grow(0, {});
    std::sort(out.begin(), out.end(), detail::grammar_less);
    return out;
}

} // namespace cutforge
