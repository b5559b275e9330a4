#pragma once

#include <cutforge/herbrand.hpp>

#include <map>
#include <set>
#include <string>
#include <vector>

namespace cutforge {

enum class Generator { Forgetful, Closure };

inline Generator generator_from_name(const std::string& s) {
    if (s == "forgetful") return Generator::Forgetful;
    if (s == "closure") return Generator::Closure;
    throw InputError("unknown generator '" + s + "' (expected forgetful or closure)");
}

inline const char* generator_name(Generator g) { return g == Generator::Forgetful ? "forgetful" : "closure"; }

/// Drops clauses without α.
inline ClauseSet remove_alpha_free(const ClauseSet& a, const std::string& alpha) {
    std::vector<Clause> out;
    for (const auto& c : a)
        if (mentions(c, alpha)) out.push_back(c);
    return ClauseSet(std::move(out));
}

/// {res(C,D)} ∪ (A∖{C,D}) for every pair with a resolvent.
inline std::vector<ClauseSet> forgetful_successors(const ClauseSet& a) {
    std::set<ClauseSet> out;
    const auto& cs = a.clauses();
    for (std::size_t i = 0; i < cs.size(); ++i)
        for (std::size_t j = i + 1; j < cs.size(); ++j) {
            auto r = resolvent(cs[i], cs[j]);
            if (!r) continue;
            std::vector<Clause> next;
            for (std::size_t k = 0; k < cs.size(); ++k)
                if (k != i && k != j) next.push_back(cs[k]);
            next.push_back(*r);
            out.insert(ClauseSet(std::move(next)));
        }
    return {out.begin(), out.end()};
}

/// All subsets with one clause removed.
inline std::vector<ClauseSet> subset_successors(const ClauseSet& a) {
    std::vector<ClauseSet> out;
    const auto& cs = a.clauses();
    for (std::size_t i = 0; i < cs.size(); ++i) {
        std::vector<Clause> next;
        for (std::size_t k = 0; k < cs.size(); ++k)
            if (k != i) next.push_back(cs[k]);
        out.push_back(ClauseSet(std::move(next)));
    }
    return out;
}

inline std::vector<ClauseSet> successors(Generator g, const ClauseSet& a) {
    auto out = g == Generator::Forgetful ? forgetful_successors(a) : subset_successors(a);
    for (const auto& b : out) {
        bool smaller = g == Generator::Forgetful ? b.symbols() < a.symbols() : b.size() < a.size();
        if (!smaller) throw InternalError("consequence generator did not decrease its measure");
    }
    return out;
}

/// Validity context of a single cut: B solves it when B[α\s_1],…,B[α\s_k], Γ ⊢ Δ is a tautology.
struct CutContext {
    std::string alpha;
    std::vector<Term> s;
    std::vector<Formula> antecedent, succedent;

    bool accepts(const ClauseSet& b) const {
        std::vector<Formula> ant = antecedent;
        Formula f = to_formula(b);
        for (const auto& t : s) ant.push_back(instantiate(f, alpha, t));
        return is_tautology(ant, succedent);
    }

    std::string key() const {
        std::string k = alpha + "|";
        for (const auto& t : s) k += render(t) + ",";
        k += "|";
        for (const auto& f : antecedent) k += render(f) + ";";
        k += "|";
        for (const auto& f : succedent) k += render(f) + ";";
        return k;
    }
};

struct SfOptions {
    Generator generator = Generator::Forgetful;
    std::size_t max_nodes = 200000; // stop expanding beyond this many visited sets
};

/// Memo shared between searches over the same context.
class SfCache {
  public:
    std::map<std::string, std::vector<ClauseSet>> results;
};

namespace detail {

class SfSearch {
  public:
    SfSearch(const CutContext& ctx, const SfOptions& opt) : ctx_(ctx), opt_(opt) {}

    std::vector<ClauseSet> run(const ClauseSet& a) {
        seen_.emplace(a, true);
        explore(a);
        std::vector<ClauseSet> best;
        for (const auto& [b, ok] : seen_) {
            if (!ok) continue;
            if (best.empty() || b.symbols() < best.front().symbols()) best = {b};
            else if (b.symbols() == best.front().symbols()) best.push_back(b);
        }
        std::sort(best.begin(), best.end(), smaller_solution);
        return best;
    }

  private:
    // every set is tested once; rejected sets are never expanded
    void explore(const ClauseSet& a) {
        if (++expanded_ > opt_.max_nodes) return;
        for (auto& b : successors(opt_.generator, a)) {
            if (seen_.count(b)) continue;
            bool ok = ctx_.accepts(b);
            auto it = seen_.emplace(std::move(b), ok).first;
            if (ok) explore(it->first);
        }
    }

    const CutContext& ctx_;
    SfOptions opt_;
    std::map<ClauseSet, bool> seen_;
    std::size_t expanded_ = 0;
};

} // namespace detail

/// Symbol-minimal solutions reachable from A through accepted successors. A itself is assumed to be a
/// solution; the result is sorted by symbols, clause count and rendering.
inline std::vector<ClauseSet> sf(const ClauseSet& a, const CutContext& ctx, const SfOptions& opt = {},
                                 SfCache* cache = nullptr) {
    std::string k;
    if (cache) {
        k = std::string(generator_name(opt.generator)) + "@" + ctx.key() + "@" + render(a);
        if (auto it = cache->results.find(k); it != cache->results.end()) return it->second;
    }
    detail::SfSearch search(ctx, opt);
    auto out = search.run(a);
    if (cache) cache->results.emplace(std::move(k), out);
    return out;
}

/// Preprocessing plus search: α-free clauses are dropped when that keeps a solution, and the closure
/// generator starts from the deductive closure.
inline std::vector<ClauseSet> minimize_solution(const ClauseSet& canonical, const CutContext& ctx,
                                                const SfOptions& opt = {}, SfCache* cache = nullptr) {
    ClauseSet start = remove_alpha_free(canonical, ctx.alpha);
    if (start.empty() || !ctx.accepts(start)) start = canonical;
    if (opt.generator == Generator::Closure) start = deductive_closure(start);
    return sf(start, ctx, opt, cache);
}

// ---------------------------------------------------------------------------
// Multiple cuts
// ---------------------------------------------------------------------------

struct LevelSolution {
    ClauseSet canonical;
    ClauseSet minimized;
    Formula formula;
};

namespace detail {

/// Language of U ∘ S_1 ⋯ ∘ S_{k} (the first k levels only).
inline std::vector<Term> partial_language(const TreeGrammar& g, std::size_t k) {
    TreeGrammar h{g.base, {g.levels.begin(), g.levels.begin() + static_cast<std::ptrdiff_t>(k)}};
    return language(h);
}

} // namespace detail

/// Single-cut problem for level i once the deeper levels carry the formulas in `solved`.
inline CutContext level_context(const SchematicEHS& h, std::size_t i, const std::vector<Formula>& solved,
                                const std::vector<Term>& Ti) {
    CutContext ctx;
    ctx.alpha = h.alpha(i);
    ctx.s = h.productions(i);
    auto [qa, qs] = h.sequent.quantifier_free_part();
    std::vector<Term> rest;
    for (const auto& t : Ti)
        if (!occurs(ctx.alpha, t)) rest.push_back(t);
    auto inst = instance_formulas(h.sequent, rest);
    ctx.antecedent = qa;
    for (const auto& f : inst.antecedent) add_unique(ctx.antecedent, f);
    for (std::size_t j = i + 1; j < h.levels(); ++j)
        add_unique(ctx.antecedent, cut_implication(solved[j], h.alpha(j), h.productions(j)));
    ctx.succedent = qs;
    for (const auto& f : inst.succedent) add_unique(ctx.succedent, f);
    return ctx;
}

struct SfnResult {
    ExtendedHerbrandSequent ehs;
    std::vector<LevelSolution> levels;
};

/// Solves the levels innermost first; level i minimizes ⋀F[L(U ∘ S_1 ⋯ ∘ S_{i-1})] against the
/// already fixed deeper cut formulas.
inline SfnResult sfn(const SchematicEHS& h, const SfOptions& opt = {}, SfCache* cache = nullptr) {
    std::size_t n = h.levels();
    SfnResult r;
    r.levels.resize(n);
    std::vector<Formula> solved(n);
    for (std::size_t k = n; k-- > 0;) {
        std::vector<Term> Ti = detail::partial_language(h.grammar, k);
        ClauseSet canonical = to_cnf(conjunction(canonical_base(h.sequent, Ti)));
        CutContext ctx = level_context(h, k, solved, Ti);
        if (!ctx.accepts(canonical)) throw InternalError("canonical solution rejected at level " + std::to_string(k + 1));
        auto best = minimize_solution(canonical, ctx, opt, cache);
        if (best.empty()) throw InternalError("solution search returned nothing");
        r.levels[k] = {canonical, best.front(), to_formula(best.front())};
        solved[k] = r.levels[k].formula;
    }
    r.ehs = ExtendedHerbrandSequent{h, solved};
    if (auto why = solution_violation(h, solved); !why.empty())
        throw InternalError("minimized solution is not a solution: " + why);
    return r;
}

} // namespace cutforge
