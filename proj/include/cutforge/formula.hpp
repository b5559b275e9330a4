#pragma once

#include <cutforge/term.hpp>

#include <algorithm>
#include <memory>
#include <string>
#include <vector>

namespace cutforge {

enum class Op { Atom, Top, Bottom, Not, And, Or, Imp, Forall, Exists };

/// First-order formula. Quantifier nodes carry a block of bound variables.
class Formula {
  public:
    struct Node {
        Op op = Op::Top;
        std::string pred;             // Atom
        std::vector<Term> args;       // Atom
        std::vector<std::string> vars; // Forall / Exists
        std::vector<Formula> kids;    // Not: 1, binary: 2, quantifier: 1
        std::size_t hash = 0;
        std::size_t symbols = 0;
        bool quantifier_free = true;
        std::string text; // rendering, atoms only
    };

    Formula() = default;

    static Formula atom(std::string pred, std::vector<Term> args = {}) {
        auto n = std::make_shared<Node>();
        n->op = Op::Atom;
        n->pred = std::move(pred);
        n->args = std::move(args);
        std::size_t h = hash_mix(std::hash<std::string>{}(n->pred), 1);
        n->symbols = 1;
        n->text = n->pred;
        if (!n->args.empty()) {
            n->text += "(";
            for (std::size_t i = 0; i < n->args.size(); ++i) {
                if (i) n->text += ",";
                n->text += render(n->args[i]);
                h = hash_mix(h, n->args[i].hash());
                n->symbols += n->args[i].size();
            }
            n->text += ")";
        }
        n->hash = h;
        return Formula(std::move(n));
    }
    static Formula top() { return constant(Op::Top); }
    static Formula bottom() { return constant(Op::Bottom); }
    static Formula neg(Formula a) { return make(Op::Not, {std::move(a)}); }
    static Formula conj(Formula a, Formula b) { return make(Op::And, {std::move(a), std::move(b)}); }
    static Formula disj(Formula a, Formula b) { return make(Op::Or, {std::move(a), std::move(b)}); }
    static Formula imp(Formula a, Formula b) { return make(Op::Imp, {std::move(a), std::move(b)}); }
    static Formula forall(std::vector<std::string> vars, Formula body) {
        return quant(Op::Forall, std::move(vars), std::move(body));
    }
    static Formula exists(std::vector<std::string> vars, Formula body) {
        return quant(Op::Exists, std::move(vars), std::move(body));
    }

    bool valid() const { return node_ != nullptr; }
    Op op() const { return node_->op; }
    bool is(Op o) const { return node_->op == o; }
    bool is_atom() const { return node_->op == Op::Atom; }
    bool is_quantifier() const { return node_->op == Op::Forall || node_->op == Op::Exists; }
    const std::string& pred() const { return node_->pred; }
    const std::vector<Term>& args() const { return node_->args; }
    const std::vector<std::string>& vars() const { return node_->vars; }
    const Formula& kid(std::size_t i = 0) const { return node_->kids[i]; }
    const Formula& left() const { return node_->kids[0]; }
    const Formula& right() const { return node_->kids[1]; }
    const Formula& body() const { return node_->kids[0]; }
    std::size_t hash() const { return node_->hash; }
    std::size_t symbols() const { return node_->symbols; }
    bool quantifier_free() const { return node_->quantifier_free; }
    const std::string& atom_text() const { return node_->text; }
    const Node* node() const { return node_.get(); }

    friend bool operator==(const Formula& a, const Formula& b) {
        if (a.node_ == b.node_) return true;
        if (a.hash() != b.hash() || a.op() != b.op() || a.symbols() != b.symbols()) return false;
        if (a.is_atom()) return a.pred() == b.pred() && a.args() == b.args();
        if (a.vars() != b.vars() || a.node_->kids.size() != b.node_->kids.size()) return false;
        for (std::size_t i = 0; i < a.node_->kids.size(); ++i)
            if (!(a.node_->kids[i] == b.node_->kids[i])) return false;
        return true;
    }
    friend bool operator!=(const Formula& a, const Formula& b) { return !(a == b); }

    friend int compare(const Formula& a, const Formula& b) {
        if (a.node_ == b.node_) return 0;
        if (a.op() != b.op()) return a.op() < b.op() ? -1 : 1;
        if (a.is_atom()) {
            if (int c = a.pred().compare(b.pred())) return c < 0 ? -1 : 1;
            if (a.args().size() != b.args().size()) return a.args().size() < b.args().size() ? -1 : 1;
            for (std::size_t i = 0; i < a.args().size(); ++i)
                if (int c = compare(a.args()[i], b.args()[i])) return c;
            return 0;
        }
        if (a.vars() != b.vars()) return a.vars() < b.vars() ? -1 : 1;
        for (std::size_t i = 0; i < a.node_->kids.size(); ++i)
            if (int c = compare(a.node_->kids[i], b.node_->kids[i])) return c;
        return 0;
    }
    friend bool operator<(const Formula& a, const Formula& b) { return compare(a, b) < 0; }

  private:
    explicit Formula(std::shared_ptr<const Node> n) : node_(std::move(n)) {}

    static Formula constant(Op op) {
        auto n = std::make_shared<Node>();
        n->op = op;
        n->hash = static_cast<std::size_t>(op) * 0x1234567ULL + 7;
        n->symbols = 1;
        return Formula(std::move(n));
    }
    static Formula make(Op op, std::vector<Formula> kids) {
        auto n = std::make_shared<Node>();
        n->op = op;
        std::size_t h = static_cast<std::size_t>(op) * 0x9e37ULL;
        n->symbols = 1;
        for (const auto& k : kids) {
            h = hash_mix(h, k.hash());
            n->symbols += k.symbols();
            n->quantifier_free = n->quantifier_free && k.quantifier_free();
        }
        n->hash = h;
        n->kids = std::move(kids);
        return Formula(std::move(n));
    }
    static Formula quant(Op op, std::vector<std::string> vars, Formula body) {
        auto n = std::make_shared<Node>();
        n->op = op;
        std::size_t h = static_cast<std::size_t>(op) * 0x7f4aULL;
        for (const auto& v : vars) h = hash_mix(h, std::hash<std::string>{}(v));
        h = hash_mix(h, body.hash());
        n->hash = h;
        n->symbols = vars.size() + body.symbols();
        n->quantifier_free = false;
        n->vars = std::move(vars);
        n->kids = {std::move(body)};
        return Formula(std::move(n));
    }

    std::shared_ptr<const Node> node_;
};

struct FormulaHash {
    std::size_t operator()(const Formula& f) const { return f.hash(); }
};

/// Conjunction of a list, right-nested; ⊤ when empty.
inline Formula conjunction(const std::vector<Formula>& fs) {
    if (fs.empty()) return Formula::top();
    Formula acc = fs.back();
    for (std::size_t i = fs.size() - 1; i-- > 0;) acc = Formula::conj(fs[i], acc);
    return acc;
}

/// Disjunction of a list, right-nested; ⊥ when empty.
inline Formula disjunction(const std::vector<Formula>& fs) {
    if (fs.empty()) return Formula::bottom();
    Formula acc = fs.back();
    for (std::size_t i = fs.size() - 1; i-- > 0;) acc = Formula::disj(fs[i], acc);
    return acc;
}

inline Formula instantiate(const Formula& f, const Substitution& sigma) {
    if (sigma.empty()) return f;
    switch (f.op()) {
    case Op::Atom: {
        std::vector<Term> args;
        args.reserve(f.args().size());
        for (const auto& a : f.args()) args.push_back(substitute(a, sigma));
        return Formula::atom(f.pred(), std::move(args));
    }
    case Op::Top:
    case Op::Bottom: return f;
    case Op::Not: return Formula::neg(instantiate(f.kid(), sigma));
    case Op::And: return Formula::conj(instantiate(f.left(), sigma), instantiate(f.right(), sigma));
    case Op::Or: return Formula::disj(instantiate(f.left(), sigma), instantiate(f.right(), sigma));
    case Op::Imp: return Formula::imp(instantiate(f.left(), sigma), instantiate(f.right(), sigma));
    case Op::Forall:
    case Op::Exists: {
        Substitution inner = sigma;
        for (const auto& v : f.vars()) inner.erase(v);
        Formula b = instantiate(f.body(), inner);
        return f.is(Op::Forall) ? Formula::forall(f.vars(), b) : Formula::exists(f.vars(), b);
    }
    }
    return f;
}

inline Formula instantiate(const Formula& f, const std::string& x, const Term& t) {
    return instantiate(f, Substitution{{x, t}});
}

/// Replaces the bound block of a quantified formula by terms.
inline Formula instantiate_block(const Formula& q, const std::vector<Term>& ts) {
    if (!q.is_quantifier() || q.vars().size() != ts.size())
        throw InternalError("block instantiation arity mismatch");
    Substitution sigma;
    for (std::size_t i = 0; i < ts.size(); ++i) sigma[q.vars()[i]] = ts[i];
    return instantiate(q.body(), sigma);
}

inline void collect_free_variables(const Formula& f, VarSet& out, const VarSet& bound = {}) {
    switch (f.op()) {
    case Op::Atom:
        for (const auto& a : f.args()) {
            VarSet vs = variables(a);
            for (const auto& v : vs)
                if (!bound.count(v)) out.insert(v);
        }
        return;
    case Op::Top:
    case Op::Bottom: return;
    case Op::Forall:
    case Op::Exists: {
        VarSet b = bound;
        b.insert(f.vars().begin(), f.vars().end());
        collect_free_variables(f.body(), out, b);
        return;
    }
    default:
        for (const auto& k : f.node()->kids) collect_free_variables(k, out, bound);
    }
}

inline VarSet free_variables(const Formula& f) {
    VarSet out;
    collect_free_variables(f, out);
    return out;
}

inline void collect_atoms(const Formula& f, std::vector<Formula>& out) {
    if (f.is_atom()) {
        out.push_back(f);
        return;
    }
    if (f.is(Op::Top) || f.is(Op::Bottom)) return;
    for (const auto& k : f.node()->kids) collect_atoms(k, out);
}

/// Distinct atoms, sorted.
inline std::vector<Formula> atoms_of(const std::vector<Formula>& fs) {
    std::vector<Formula> out;
    for (const auto& f : fs) collect_atoms(f, out);
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

/// ⊤/⊥ absorption, bottom-up.
inline Formula simplify(const Formula& f) {
    switch (f.op()) {
    case Op::Not: {
        Formula a = simplify(f.kid());
        if (a.is(Op::Top)) return Formula::bottom();
        if (a.is(Op::Bottom)) return Formula::top();
        return a.node() == f.kid().node() ? f : Formula::neg(a);
    }
    case Op::And: {
        Formula a = simplify(f.left()), b = simplify(f.right());
        if (a.is(Op::Bottom) || b.is(Op::Bottom)) return Formula::bottom();
        if (a.is(Op::Top)) return b;
        if (b.is(Op::Top)) return a;
        return Formula::conj(a, b);
    }
    case Op::Or: {
        Formula a = simplify(f.left()), b = simplify(f.right());
        if (a.is(Op::Top) || b.is(Op::Top)) return Formula::top();
        if (a.is(Op::Bottom)) return b;
        if (b.is(Op::Bottom)) return a;
        return Formula::disj(a, b);
    }
    case Op::Imp: {
        Formula a = simplify(f.left()), b = simplify(f.right());
        if (a.is(Op::Bottom) || b.is(Op::Top)) return Formula::top();
        if (a.is(Op::Top)) return b;
        if (b.is(Op::Bottom)) return a.is(Op::Not) ? a.kid() : Formula::neg(a);
        return Formula::imp(a, b);
    }
    default: return f;
    }
}

namespace detail {

inline int precedence(const Formula& f) {
    switch (f.op()) {
    case Op::Imp: return 1;
    case Op::Or: return 2;
    case Op::And: return 3;
    default: return 4;
    }
}

inline void render_into(const Formula& f, std::string& out) {
    auto sub = [&](const Formula& k, bool paren) {
        if (paren) out += "(";
        render_into(k, out);
        if (paren) out += ")";
    };
    switch (f.op()) {
    case Op::Atom: out += f.atom_text(); return;
    case Op::Top: out += "⊤"; return;
    case Op::Bottom: out += "⊥"; return;
    case Op::Not:
        out += "¬";
        sub(f.kid(), precedence(f.kid()) < 4);
        return;
    case Op::And:
    case Op::Or:
    case Op::Imp: {
        int p = precedence(f);
        const char* sym = f.is(Op::And) ? " ∧ " : f.is(Op::Or) ? " ∨ " : " ⊃ ";
        sub(f.left(), precedence(f.left()) <= p);
        out += sym;
        sub(f.right(), precedence(f.right()) < p);
        return;
    }
    case Op::Forall:
    case Op::Exists:
        for (const auto& v : f.vars()) {
            out += f.is(Op::Forall) ? "∀" : "∃";
            out += v;
            out += " ";
        }
        sub(f.body(), precedence(f.body()) < 4);
        return;
    }
}

class FormulaParser {
  public:
    FormulaParser(std::string_view src, const VarSet& free) : lx_(src), vars_(free) {}

    Formula parse_all() {
        Formula f = parse_imp();
        if (!lx_.eof()) lx_.fail("trailing input");
        return f;
    }

  private:
    Formula parse_imp() {
        Formula a = parse_or();
        if (lx_.accept("⊃") || lx_.accept("->") || lx_.accept("→")) return Formula::imp(a, parse_imp());
        return a;
    }
    Formula parse_or() {
        Formula a = parse_and();
        if (lx_.accept("∨") || lx_.accept("|")) return Formula::disj(a, parse_or());
        return a;
    }
    Formula parse_and() {
        Formula a = parse_unary();
        if (lx_.accept("∧") || lx_.accept("&")) return Formula::conj(a, parse_and());
        return a;
    }
    Formula parse_quant(Op op) {
        std::vector<std::string> block;
        block.push_back(lx_.ident());
        lx_.accept(".");
        while (lx_.accept(op == Op::Forall ? "∀" : "∃") ||
               lx_.accept_keyword(op == Op::Forall ? "forall" : "exists")) {
            block.push_back(lx_.ident());
            lx_.accept(".");
        }
        VarSet saved = vars_;
        vars_.insert(block.begin(), block.end());
        Formula body = parse_unary();
        vars_ = saved;
        return op == Op::Forall ? Formula::forall(block, body) : Formula::exists(block, body);
    }

    Formula parse_unary() {
        if (lx_.accept("¬") || lx_.accept("~")) return Formula::neg(parse_unary());
        if (lx_.accept("(")) {
            Formula f = parse_imp();
            lx_.expect(")");
            return f;
        }
        if (lx_.accept("⊤")) return Formula::top();
        if (lx_.accept("⊥")) return Formula::bottom();
        if (lx_.accept("∀")) return parse_quant(Op::Forall);
        if (lx_.accept("∃")) return parse_quant(Op::Exists);
        if (lx_.accept_keyword("forall")) return parse_quant(Op::Forall);
        if (lx_.accept_keyword("exists")) return parse_quant(Op::Exists);
        if (lx_.accept_keyword("true")) return Formula::top();
        if (lx_.accept_keyword("false")) return Formula::bottom();
        std::string name = lx_.ident();
        std::vector<Term> args;
        if (lx_.accept("(")) {
            if (!lx_.accept(")")) {
                do {
                    args.push_back(detail::parse_term(lx_, vars_));
                } while (lx_.accept(","));
                lx_.expect(")");
            }
        }
        return Formula::atom(std::move(name), std::move(args));
    }

    detail::Lexer lx_;
    VarSet vars_;
};

} // namespace detail

inline std::string render(const Formula& f) {
    std::string out;
    detail::render_into(f, out);
    return out;
}

/// Parses Unicode (∧ ∨ ⊃ ¬ ⊤ ⊥ ∀ ∃) or ASCII (& | -> ~ true false forall exists) syntax.
/// Identifiers in `free` and bound identifiers become variables inside terms.
inline Formula parse_formula(std::string_view src, const VarSet& free = {}) {
    detail::FormulaParser p(src, free);
    return p.parse_all();
}

inline std::vector<Formula> instantiate_all(const std::vector<Formula>& fs, const Substitution& sigma) {
    std::vector<Formula> out;
    out.reserve(fs.size());
    for (const auto& f : fs) out.push_back(instantiate(f, sigma));
    return out;
}

} // namespace cutforge
