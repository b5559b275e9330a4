#pragma once

#include <cutforge/improve.hpp>
#include <cutforge/pca.hpp>

#include <optional>
#include <string>
#include <vector>

namespace cutforge {

struct Example {
    SigmaOneSequent sequent;
    InstanceLists instances;
    Proof proof;
};

inline Term numeral(const std::string& f, std::size_t k, const Term& base) {
    Term t = base;
    for (std::size_t i = 0; i < k; ++i) t = Term::app(f, {t});
    return t;
}

/// Generated cut-free examples: linear, square-diagonal, exp.
inline Example generate_example(const std::string& name, std::size_t n) {
    if (n < 1) throw InputError("example size must be positive");
    Example ex;
    Term zero = Term::app("0");
    Sequent es;
    auto P1 = [](const Term& t) { return Formula::atom("P", {t}); };
    auto P2 = [](const Term& a, const Term& b) { return Formula::atom("P", {a, b}); };
    auto s = [](const Term& t) { return Term::app("s", {t}); };
    Term x = Term::var("x"), y = Term::var("y");
    if (name == "linear") {
        es.antecedent = {P1(zero), Formula::forall({"x"}, Formula::imp(P1(x), P1(s(x))))};
        es.succedent = {P1(numeral("s", n, zero))};
        ex.sequent = SigmaOneSequent::from_sequent(es);
        ex.instances.resize(3);
        for (std::size_t k = 0; k < n; ++k) ex.instances[1].push_back({numeral("s", k, zero)});
    } else if (name == "square-diagonal") {
        es.antecedent = {Formula::forall({"x", "y"}, Formula::imp(P2(x, y), P2(x, s(y)))),
                         Formula::forall({"x", "y"}, Formula::imp(P2(x, y), P2(s(x), y))), P2(zero, zero)};
        es.succedent = {P2(numeral("s", n, zero), numeral("s", n, zero))};
        ex.sequent = SigmaOneSequent::from_sequent(es);
        ex.instances.resize(4);
        for (std::size_t k = 0; k < n; ++k) {
            ex.instances[0].push_back({numeral("s", k + 1, zero), numeral("s", k, zero)});
            ex.instances[1].push_back({numeral("s", k, zero), numeral("s", k, zero)});
        }
    } else if (name == "exp") {
        if (n > 12) throw InputError("exp example limited to n ≤ 12");
        Term a = Term::app("a");
        std::size_t m = std::size_t(1) << (n + 1);
        es.antecedent = {P1(a), Formula::forall({"x"}, Formula::imp(P1(x), P1(Term::app("f", {x}))))};
        es.succedent = {P1(numeral("f", m, a))};
        ex.sequent = SigmaOneSequent::from_sequent(es);
        ex.instances.resize(3);
        for (std::size_t k = 0; k < m; ++k) ex.instances[1].push_back({numeral("f", k, a)});
    } else {
        throw InputError("unknown example '" + name + "' (expected linear, square-diagonal or exp)");
    }
    ex.proof = build_cut_free(ex.sequent, extract_terms(ex.sequent, ex.instances));
    return ex;
}

/// Parses "name:n".
inline Example generate_example(const std::string& spec) {
    auto colon = spec.find(':');
    if (colon == std::string::npos) throw InputError("example must be given as name:n");
    std::size_t n = 0;
    try {
        n = std::stoul(spec.substr(colon + 1));
    } catch (const std::exception&) {
        throw InputError("bad example size in '" + spec + "'");
    }
    return generate_example(spec.substr(0, colon), n);
}

// ---------------------------------------------------------------------------
// Cut introduction
// ---------------------------------------------------------------------------

struct CutIntroOptions {
    std::size_t max_cuts = 1;
    Generator generator = Generator::Forgetful;
    std::optional<std::size_t> grammar_index;
    GrammarSearchOptions grammar;
    std::size_t sf_max_nodes = 200000;
};

struct CIReport {
    ProofStats input;
    std::size_t raw_terms = 0;
    std::size_t terms = 0;
    std::size_t minimal_grammars = 0;
    std::size_t minimal_size = 0;
    bool compressed = false;
    TreeGrammar grammar;
    std::vector<Formula> canonical;
    std::vector<Formula> minimized;
    std::vector<Formula> cut_formulas; // after interpolation repair, as ∀x A'
    std::vector<bool> repaired;
    ProofStats output;
    double compression_ratio = 1.0;
};

struct CutIntroResult {
    Proof proof;
    CIReport report;
    std::optional<ExtendedHerbrandSequent> ehs;
};

namespace detail {

struct Candidate {
    Proof proof;
    ProofStats stats;
    SfnResult sfn;
    LinearFormPlan plan;
    TreeGrammar grammar;
};

inline Candidate build_candidate(const SigmaOneSequent& s, const TreeGrammar& g, const SfOptions& sopt,
                                 SfCache& cache) {
    Candidate c;
    c.grammar = g;
    SchematicEHS h = build_shs(s, g);
    c.sfn = sfn(h, sopt, &cache);
    c.proof = build_proof_with_cut(c.sfn.ehs, &c.plan);
    if (auto v = check_proof(c.proof); !v.empty())
        throw InternalError("constructed proof fails the checker at " + v.front().node + ": " + v.front().message);
    c.stats = stats(c.proof);
    return c;
}

} // namespace detail

/// Herbrand terms → minimal grammars → minimized solutions → proofs; the smallest proof wins.
inline CutIntroResult cut_intro(const SigmaOneSequent& s, const InstanceLists& inst, const CutIntroOptions& opt = {},
                                std::optional<Proof> input = std::nullopt) {
    CutIntroResult r;
    CIReport& rep = r.report;
    std::vector<Term> T = extract_terms(s, inst);
    Proof in = input ? *input : build_cut_free(s, T);
    rep.input = stats(in);
    rep.raw_terms = raw_instance_count(s, inst);
    rep.terms = T.size();

    std::vector<TreeGrammar> gs = minimal_grammars(T, opt.max_cuts, opt.grammar);
    rep.minimal_size = gs.front().size();
    if (gs.front().trivial()) {
        rep.minimal_grammars = 0;
        rep.grammar = gs.front();
        r.proof = in;
        rep.output = rep.input;
        return r;
    }
    rep.minimal_grammars = gs.size();
    if (opt.grammar_index) {
        if (*opt.grammar_index >= gs.size())
            throw InputError("grammar index " + std::to_string(*opt.grammar_index) + " out of range (" +
                             std::to_string(gs.size()) + " minimal grammars)");
        gs = {gs[*opt.grammar_index]};
    }
    SfOptions sopt;
    sopt.generator = opt.generator;
    sopt.max_nodes = opt.sf_max_nodes;
    SfCache cache;
    std::optional<detail::Candidate> best;
    for (const auto& g : gs) {
        detail::Candidate c = detail::build_candidate(s, g, sopt, cache);
        if (!best || c.stats.total_rules < best->stats.total_rules) best = std::move(c);
    }
    rep.compressed = true;
    rep.grammar = best->grammar;
    for (const auto& l : best->sfn.levels) {
        rep.canonical.push_back(to_formula(l.canonical));
        rep.minimized.push_back(l.formula);
    }
    for (std::size_t i = 0; i < best->plan.matrices.size(); ++i) {
        rep.cut_formulas.push_back(
            Formula::forall({"x"}, instantiate(best->plan.matrices[i], best->grammar.levels[i].var, Term::var("x"))));
    }
    rep.repaired = best->plan.repaired;
    rep.output = best->stats;
    rep.compression_ratio = static_cast<double>(rep.output.total_rules) / static_cast<double>(rep.input.total_rules);
    r.proof = best->proof;
    r.ehs = best->sfn.ehs;
    return r;
}

inline std::string render(const CIReport& r) {
    std::string out;
    out += "Input proof:\n" + render_stats(r.input);
    out += "Herbrand terms: " + std::to_string(r.terms) + " (" + std::to_string(r.raw_terms) + " instances)\n";
    if (!r.compressed) {
        out += "No compression: no grammar smaller than the term set.\n";
        return out;
    }
    out += "Minimal grammars: " + std::to_string(r.minimal_grammars) + " of size " + std::to_string(r.minimal_size) + "\n";
    out += "Chosen grammar: " + render(r.grammar) + "\n";
    for (std::size_t i = 0; i < r.minimized.size(); ++i) {
        out += "Cut " + std::to_string(i + 1) + ":\n";
        out += "  canonical: " + render(r.canonical[i]) + "\n";
        out += "  minimized: " + render(r.minimized[i]) + "\n";
        out += "  formula:   " + render(r.cut_formulas[i]) + (r.repaired[i] ? " (interpolated)" : "") + "\n";
    }
    out += "Output proof:\n" + render_stats(r.output);
    char buf[64];
    std::snprintf(buf, sizeof buf, "Compression ratio: %.3f\n", r.compression_ratio);
    out += buf;
    return out;
}

} // namespace cutforge
