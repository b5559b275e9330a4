#include "support.hpp"

#include <gtest/gtest.h>

using namespace cutforge;

namespace {

const VarSet kVars{"α", "α1", "α2", "α3"};
Term T(const std::string& s) { return parse_term(s, kVars); }
std::vector<Term> Ts(std::initializer_list<const char*> ss) {
    std::vector<Term> v;
    for (const char* s : ss) v.push_back(T(s));
    return v;
}
Term num(int k, const std::string& s = "s", Term base = Term::app("0")) {
    for (int i = 0; i < k; ++i) base = Term::app(s, {base});
    return base;
}

std::size_t min_size(const std::vector<TreeGrammar>& gs) {
    std::size_t m = SIZE_MAX;
    for (const auto& g : gs) m = std::min(m, g.size());
    return m;
}

std::vector<Term> staircase(int n) {
    std::vector<Term> out;
    for (int k = 0; k < n; ++k) {
        out.push_back(Term::app("f1", {num(k + 1), num(k)}));
        out.push_back(Term::app("f2", {num(k), num(k)}));
    }
    return sorted_unique(out);
}

} // namespace

TEST(Grammar, LanguageOfSimpleGrammar) {
    TreeGrammar g{Ts({"f(α)", "b"}), {{"α", Ts({"a", "g(a)"})}}};
    EXPECT_EQ(language(g), sorted_unique(Ts({"f(a)", "f(g(a))", "b"})));
    TreeGrammar two{Ts({"f(α1)"}), {{"α1", Ts({"g(α2)", "α2"})}, {"α2", Ts({"a", "b"})}}};
    EXPECT_EQ(language(two), sorted_unique(Ts({"f(g(a))", "f(g(b))", "f(a)", "f(b)"})));
    EXPECT_TRUE(grammar_violation(two).empty());
    TreeGrammar bad{Ts({"f(α1)"}), {{"α1", Ts({"g(α1)"})}}};
    EXPECT_FALSE(grammar_violation(bad).empty());
}

TEST(Grammar, DeltaVectorExamples) {
    auto d = delta_vector(Ts({"f(g(c),c)", "f(g(g(c)),g(c))", "f(g(g(g(c))),g(g(c)))"}));
    EXPECT_EQ(d.u, T("f(g(α),α)"));
    ASSERT_TRUE(d.s);
    EXPECT_EQ(*d.s, Ts({"c", "g(c)", "g(g(c))"}));

    d = delta_vector(Ts({"f(a)", "f(b)"}));
    EXPECT_EQ(d.u, T("f(α)"));
    EXPECT_EQ(*d.s, Ts({"a", "b"}));

    d = delta_vector(Ts({"c", "g(c)", "g(g(c))"}));
    EXPECT_EQ(d.u, T("α"));
    EXPECT_EQ(*d.s, Ts({"c", "g(c)", "g(g(c))"}));
    EXPECT_TRUE(d.trivial("α"));
}

TEST(Grammar, DeltaVectorWildcard) {
    auto d = delta_vector(Ts({"f(a)", "f(a)"}));
    EXPECT_EQ(d.u, T("f(a)"));
    EXPECT_FALSE(d.s);
    // the constant column unifies with the sibling difference
    d = delta_vector(Ts({"g(a,b)", "g(a,c)"}));
    EXPECT_EQ(d.u, T("g(a,α)"));
    EXPECT_EQ(*d.s, Ts({"b", "c"}));
    // two different difference vectors cannot share one α
    d = delta_vector(Ts({"g(a,b)", "g(b,a)"}));
    EXPECT_TRUE(d.trivial("α"));
}

TEST(Grammar, DeltaTableOfTower) {
    std::vector<Term> t{num(0, "f", T("a")), num(1, "f", T("a")), num(2, "f", T("a")), num(3, "f", T("a"))};
    DeltaTable table = fill_delta_table(t);
    for (const auto& key : {Ts({"a", "f(a)"}), Ts({"a", "f(f(a))"}), Ts({"a", "f(a)", "f(f(a))"})})
        EXPECT_TRUE(table.rows.count(sorted_unique(key))) << render_set(key);
    const auto& row = table.rows.at(sorted_unique(Ts({"a", "f(a)"})));
    std::set<Term> us;
    for (const auto& e : row) us.insert(e.u);
    EXPECT_TRUE(us.count(T("f(α)")));
    EXPECT_TRUE(us.count(T("f(f(α))")));
    for (const auto& [key, entries] : table.rows)
        for (const auto& e : entries) EXPECT_TRUE(occurs("α", e.u));
}

TEST(Grammar, DeltaTablePruningKeepsEveryRow) {
    std::vector<Term> t = staircase(3);
    DeltaTableOptions off;
    off.prune = false;
    DeltaTable pruned = fill_delta_table(t), full = fill_delta_table(t, off);
    EXPECT_LE(pruned.entries, full.entries);
    for (const auto& [key, entries] : pruned.rows) EXPECT_TRUE(full.rows.count(key));
    EXPECT_EQ(find_grammars(t, pruned).front().size(), find_grammars(t, full).front().size());
}

TEST(Grammar, StaircaseMinimalGrammars) {
    auto gs = find_grammars(staircase(4));
    EXPECT_EQ(gs.front().size(), 6u);
    auto mins = minimal_single_level(gs);
    EXPECT_EQ(mins.size(), 3u);
    TreeGrammar expect{Ts({"f1(s(α),α)", "f2(α,α)"}), {{"α", {num(0), num(1), num(2), num(3)}}}};
    expect.normalize();
    EXPECT_NE(std::find(mins.begin(), mins.end(), expect), mins.end());
    for (const auto& g : gs) EXPECT_EQ(oracle::as_set(language(g)), oracle::as_set(staircase(4))) << render(g);
    EXPECT_TRUE(gs.back().trivial());
}

TEST(Grammar, LinearNineIsSizeSix) {
    std::vector<Term> t;
    for (int k = 0; k < 9; ++k) t.push_back(num(k));
    auto g = iterate_grammars(sorted_unique(t), 1);
    EXPECT_EQ(g.size(), 6u);
    EXPECT_EQ(oracle::as_set(language(g)), oracle::as_set(t));
}

TEST(Grammar, ExponentialTowerNeedsLevels) {
    std::vector<Term> t;
    for (int k = 0; k < 16; ++k) t.push_back(num(k, "f", T("a")));
    // 2+2+2+2 ties with 4+4; the tie goes to more levels
    auto one = iterate_grammars(t, 1), three = iterate_grammars(t, 3);
    EXPECT_EQ(one.size(), 8u);
    EXPECT_EQ(three.levels.size(), 3u);
    EXPECT_EQ(three.size(), 8u);
    for (const auto& l : three.levels) EXPECT_EQ(l.productions.size(), 2u);
    EXPECT_EQ(oracle::as_set(language(three)), oracle::as_set(t));
}

TEST(Grammar, IncompressibleGivesBase) {
    auto t = sorted_unique(Ts({"a", "b", "f(b)"}));
    auto gs = find_grammars(t);
    ASSERT_EQ(gs.size(), 1u);
    EXPECT_TRUE(gs[0].trivial());
    EXPECT_TRUE(iterate_grammars(t, 3).trivial());
}

TEST(Grammar, BruteForceStaircase) {
    auto bf = brute_force_grammars(staircase(4), 6);
    EXPECT_EQ(min_size(bf), 6u);
    std::size_t six = 0;
    for (const auto& g : bf) six += g.size() == 6;
    EXPECT_EQ(six, 3u);
}

TEST(GrammarProperty, DerivationAgreesWithSubstitution) {
    oracle::Rng r(301);
    for (int i = 0; i < 200; ++i) {
        TreeGrammar g;
        std::size_t levels = 1 + r.below(2);
        std::vector<std::string> vars;
        for (std::size_t l = 0; l < levels; ++l) vars.push_back("α" + std::to_string(l + 1));
        for (std::size_t k = 1 + r.below(3); k-- > 0;) g.base.push_back(oracle::random_term(r, 2, {vars[0]}));
        for (std::size_t l = 0; l < levels; ++l) {
            std::vector<std::string> below(vars.begin() + static_cast<std::ptrdiff_t>(l) + 1, vars.end());
            TreeGrammar::Level lv{vars[l], {}};
            for (std::size_t k = 1 + r.below(3); k-- > 0;) lv.productions.push_back(oracle::random_term(r, 2, below));
            g.levels.push_back(lv);
        }
        g.normalize();
        ASSERT_TRUE(grammar_violation(g).empty()) << render(g);
        auto a = oracle::as_set(language(g));
        EXPECT_EQ(a, oracle::language(g));
        EXPECT_EQ(a, oracle::as_set(language_by_derivation(g))) << render(g);
    }
}

TEST(GrammarProperty, DeltaVectorReproducesTerms) {
    oracle::Rng r(307);
    for (int i = 0; i < 300; ++i) {
        std::vector<Term> ts;
        Term u = oracle::random_term(r, 2, {"x"});
        for (std::size_t k = 1 + r.below(4); k-- > 0;)
            ts.push_back(r.coin(0.8) ? substitute(u, "x", oracle::random_term(r, 2)) : oracle::random_term(r, 3));
        auto d = delta_vector(ts);
        for (std::size_t k = 0; k < ts.size(); ++k) {
            Term back = d.s ? substitute(d.u, "α", (*d.s)[k]) : d.u;
            EXPECT_EQ(back, ts[k]);
        }
    }
}

// grammars found by search have language T, and the least size agrees with exhaustive enumeration
TEST(GrammarProperty, MinimalSizeMatchesBruteForce) {
    oracle::Rng r(311);
    int compressible = 0;
    for (int i = 0; i < 50; ++i) {
        auto t = oracle::random_term_set(r, 8);
        auto gs = find_grammars(t);
        for (const auto& g : gs) ASSERT_EQ(oracle::as_set(language(g)), oracle::as_set(t)) << render(g);
        auto bf = brute_force_grammars(t, t.size());
        std::size_t m = min_size(bf);
        ASSERT_EQ(gs.front().size(), m) << render_set(t);
        compressible += m < t.size();
    }
    EXPECT_GE(compressible, 5);
}

TEST(GrammarProperty, IteratedGrammarsCoverExactly) {
    oracle::Rng r(313);
    for (int i = 0; i < 60; ++i) {
        auto t = oracle::random_term_set(r, 8);
        for (std::size_t levels : {1u, 2u, 3u}) {
            auto gs = minimal_grammars(t, levels);
            for (const auto& g : gs) {
                EXPECT_LE(g.levels.size(), levels);
                EXPECT_TRUE(grammar_violation(g).empty());
                EXPECT_EQ(oracle::as_set(language(g)), oracle::as_set(t)) << render(g);
                EXPECT_LE(g.size(), t.size());
            }
        }
        EXPECT_LE(iterate_grammars(t, 2).size(), iterate_grammars(t, 1).size());
    }
}
