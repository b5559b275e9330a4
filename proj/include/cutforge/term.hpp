#pragma once

#include <algorithm>
#include <cctype>
#include <cstddef>
#include <functional>
#include <map>
#include <memory>
#include <set>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace cutforge {

/// Raised for malformed user input (parse errors, arity clashes, unknown names).
struct InputError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Raised when an internal invariant is violated.
struct InternalError : std::logic_error {
    using std::logic_error::logic_error;
};

inline std::size_t hash_mix(std::size_t h, std::size_t v) {
    return h ^ (v + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2));
}

/// First-order term: a variable or an application. Constants are 0-ary applications.
class Term {
  public:
    struct Node {
        bool is_var = false;
        std::string name;
        std::vector<Term> args;
        std::size_t hash = 0;
        std::size_t size = 1;  // number of symbol occurrences
        std::size_t depth = 0; // constants and variables have depth 0
    };

    Term() = default;

    static Term var(std::string name) {
        auto n = std::make_shared<Node>();
        n->is_var = true;
        n->name = std::move(name);
        n->hash = hash_mix(std::hash<std::string>{}(n->name), 0x51);
        return Term(std::move(n));
    }

    static Term app(std::string head, std::vector<Term> args = {}) {
        auto n = std::make_shared<Node>();
        n->name = std::move(head);
        n->args = std::move(args);
        std::size_t h = std::hash<std::string>{}(n->name);
        for (const auto& a : n->args) {
            h = hash_mix(h, a.hash());
            n->size += a.size();
            n->depth = std::max(n->depth, a.depth() + 1);
        }
        n->hash = h;
        return Term(std::move(n));
    }

    bool valid() const { return node_ != nullptr; }
    bool is_var() const { return node_->is_var; }
    const std::string& name() const { return node_->name; }
    const std::vector<Term>& args() const { return node_->args; }
    std::size_t arity() const { return node_->args.size(); }
    std::size_t hash() const { return node_->hash; }
    std::size_t size() const { return node_->size; }
    std::size_t depth() const { return node_->depth; }
    const Node* node() const { return node_.get(); }

    friend bool operator==(const Term& a, const Term& b) {
        if (a.node_ == b.node_) return true;
        if (a.hash() != b.hash() || a.is_var() != b.is_var() || a.size() != b.size()) return false;
        if (a.name() != b.name() || a.arity() != b.arity()) return false;
        for (std::size_t i = 0; i < a.arity(); ++i)
            if (!(a.args()[i] == b.args()[i])) return false;
        return true;
    }
    friend bool operator!=(const Term& a, const Term& b) { return !(a == b); }

    /// Structural total order: variables first, then by name, arity and arguments.
    friend int compare(const Term& a, const Term& b) {
        if (a.node_ == b.node_) return 0;
        if (a.is_var() != b.is_var()) return a.is_var() ? -1 : 1;
        if (int c = a.name().compare(b.name())) return c < 0 ? -1 : 1;
        if (a.arity() != b.arity()) return a.arity() < b.arity() ? -1 : 1;
        for (std::size_t i = 0; i < a.arity(); ++i)
            if (int c = compare(a.args()[i], b.args()[i])) return c;
        return 0;
    }
    friend bool operator<(const Term& a, const Term& b) { return compare(a, b) < 0; }

  private:
    explicit Term(std::shared_ptr<const Node> n) : node_(std::move(n)) {}
    std::shared_ptr<const Node> node_;
};

struct TermHash {
    std::size_t operator()(const Term& t) const { return t.hash(); }
};

using TermSet = std::set<Term>;
using VarSet = std::set<std::string>;
using Substitution = std::map<std::string, Term>;
using Position = std::vector<std::size_t>;

/// Simultaneous substitution.
inline Term substitute(const Term& t, const Substitution& sigma) {
    if (sigma.empty()) return t;
    if (t.is_var()) {
        auto it = sigma.find(t.name());
        return it == sigma.end() ? t : it->second;
    }
    if (t.arity() == 0) return t;
    std::vector<Term> args;
    args.reserve(t.arity());
    bool changed = false;
    for (const auto& a : t.args()) {
        args.push_back(substitute(a, sigma));
        changed = changed || args.back().node() != a.node();
    }
    return changed ? Term::app(t.name(), std::move(args)) : t;
}

inline Term substitute(const Term& t, const std::string& x, const Term& s) {
    return substitute(t, Substitution{{x, s}});
}

inline void collect_variables(const Term& t, VarSet& out) {
    if (t.is_var()) {
        out.insert(t.name());
        return;
    }
    for (const auto& a : t.args()) collect_variables(a, out);
}

inline VarSet variables(const Term& t) {
    VarSet out;
    collect_variables(t, out);
    return out;
}

inline bool occurs(const std::string& x, const Term& t) {
    if (t.is_var()) return t.name() == x;
    for (const auto& a : t.args())
        if (occurs(x, a)) return true;
    return false;
}

/// Positions are 1-based argument indices, the root is the empty position.
inline const Term& subterm_at(const Term& t, const Position& p) {
    const Term* cur = &t;
    for (std::size_t i : p) {
        if (cur->is_var() || i == 0 || i > cur->arity())
            throw InternalError("invalid position in term");
        cur = &cur->args()[i - 1];
    }
    return *cur;
}

inline void positions_into(const Term& t, Position& cur, std::vector<Position>& out) {
    out.push_back(cur);
    if (t.is_var()) return;
    for (std::size_t i = 0; i < t.arity(); ++i) {
        cur.push_back(i + 1);
        positions_into(t.args()[i], cur, out);
        cur.pop_back();
    }
}

/// All positions in pre-order.
inline std::vector<Position> positions(const Term& t) {
    std::vector<Position> out;
    Position cur;
    positions_into(t, cur, out);
    return out;
}

inline Term replace_at(const Term& t, const Position& p, const Term& s, std::size_t k = 0) {
    if (k == p.size()) return s;
    std::vector<Term> args = t.args();
    args.at(p[k] - 1) = replace_at(args[p[k] - 1], p, s, k + 1);
    return Term::app(t.name(), std::move(args));
}

inline void collect_subterms(const Term& t, TermSet& out) {
    out.insert(t);
    for (const auto& a : t.args()) collect_subterms(a, out);
}

inline std::string render(const Term& t) {
    if (t.is_var() || t.arity() == 0) return t.name();
    std::string s = t.name() + "(";
    for (std::size_t i = 0; i < t.arity(); ++i) {
        if (i) s += ",";
        s += render(t.args()[i]);
    }
    return s + ")";
}

/// Records the arity of every function symbol and rejects inconsistent use.
class Signature {
  public:
    void add(const Term& t) {
        if (t.is_var()) return;
        auto [it, fresh] = arity_.emplace(t.name(), t.arity());
        if (!fresh && it->second != t.arity())
            throw InputError("symbol '" + t.name() + "' used with arities " + std::to_string(it->second) +
                             " and " + std::to_string(t.arity()));
        for (const auto& a : t.args()) add(a);
    }
    bool contains(const std::string& f) const { return arity_.count(f) != 0; }
    const std::map<std::string, std::size_t>& symbols() const { return arity_; }

  private:
    std::map<std::string, std::size_t> arity_;
};

namespace detail {

inline bool is_ident_byte(unsigned char c) {
    return std::isalnum(c) || c == '_' || c == '\'' || c >= 0x80;
}

/// Shared scanner for term and formula syntax.
class Lexer {
  public:
    explicit Lexer(std::string_view src) : src_(src) {}

    void skip_ws() {
        while (pos_ < src_.size() && std::isspace(static_cast<unsigned char>(src_[pos_]))) ++pos_;
    }
    bool eof() {
        skip_ws();
        return pos_ >= src_.size();
    }
    bool accept(std::string_view tok) {
        skip_ws();
        if (src_.substr(pos_, tok.size()) == tok) {
            pos_ += tok.size();
            return true;
        }
        return false;
    }
    bool peek(std::string_view tok) {
        skip_ws();
        return src_.substr(pos_, tok.size()) == tok;
    }
    /// Accepts a word only when it is not the prefix of a longer identifier.
    bool accept_keyword(std::string_view kw) {
        skip_ws();
        if (src_.substr(pos_, kw.size()) != kw) return false;
        std::size_t end = pos_ + kw.size();
        if (end < src_.size() && is_ident_byte(static_cast<unsigned char>(src_[end]))) return false;
        pos_ = end;
        return true;
    }
    void expect(std::string_view tok) {
        if (!accept(tok)) fail("expected '" + std::string(tok) + "'");
    }
    /// Identifier; stops before any of the reserved multi-byte operator spellings.
    std::string ident() {
        skip_ws();
        std::size_t start = pos_;
        while (pos_ < src_.size() && is_ident_byte(static_cast<unsigned char>(src_[pos_]))) {
            if (reserved_at(pos_)) break;
            ++pos_;
        }
        if (start == pos_) fail("expected identifier");
        return std::string(src_.substr(start, pos_ - start));
    }
    [[noreturn]] void fail(const std::string& msg) const {
        throw InputError("parse error at offset " + std::to_string(pos_) + " in \"" + std::string(src_) +
                         "\": " + msg);
    }
    std::size_t pos() const { return pos_; }

  private:
    bool reserved_at(std::size_t p) const {
        static const char* ops[] = {"∧", "∨", "⊃", "¬", "⊤", "⊥", "∀", "∃", "→"};
        for (const char* op : ops) {
            std::string_view o(op);
            if (src_.substr(p, o.size()) == o) return true;
        }
        return false;
    }
    std::string_view src_;
    std::size_t pos_ = 0;
};

inline Term parse_term(Lexer& lx, const VarSet& vars) {
    std::string name = lx.ident();
    if (lx.accept("(")) {
        std::vector<Term> args;
        if (!lx.accept(")")) {
            do {
                args.push_back(parse_term(lx, vars));
            } while (lx.accept(","));
            lx.expect(")");
        }
        return Term::app(std::move(name), std::move(args));
    }
    if (vars.count(name)) return Term::var(std::move(name));
    return Term::app(std::move(name));
}

} // namespace detail

/// Parses f(t1,...,tn); identifiers listed in `vars` become variables.
inline Term parse_term(std::string_view src, const VarSet& vars = {}) {
    detail::Lexer lx(src);
    Term t = detail::parse_term(lx, vars);
    if (!lx.eof()) lx.fail("trailing input");
    return t;
}

inline std::vector<Term> sorted_unique(std::vector<Term> ts) {
    std::sort(ts.begin(), ts.end());
    ts.erase(std::unique(ts.begin(), ts.end()), ts.end());
    return ts;
}

} // namespace cutforge
