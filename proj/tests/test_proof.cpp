#include "support.hpp"

#include <gtest/gtest.h>

using namespace cutforge;

namespace {

Formula F(const std::string& s) { return parse_formula(s, {"α"}); }

bool mentions_eigen_violation(const std::vector<Violation>& v) {
    for (const auto& x : v)
        if (x.message.find("eigenvariable condition") != std::string::npos) return true;
    return false;
}

} // namespace

TEST(Proof, AxiomChecks) {
    Proof p = make_node(Rule::Axiom, Sequent{{F("P(a)")}, {F("P(a)")}}, F("P(a)"));
    EXPECT_TRUE(check_proof(p).empty());
    ProofStats s = stats(p);
    EXPECT_EQ(s, (ProofStats{0, 0, 1, 0, 0}));
}

TEST(Proof, BadAxiomIsReported) {
    Proof p = make_node(Rule::Axiom, Sequent{{F("P(a)")}, {F("P(b)")}}, F("P(a)"));
    EXPECT_FALSE(check_proof(p).empty());
}

TEST(Proof, EigenvariableCondition) {
    // ⊢ ∀x P(x) from ⊢ P(α) is fine only when α is absent below
    Formula all = F("∀x P(x)");
    Sequent prem{{F("P(α)")}, {F("P(α)")}};
    Proof ax = make_node(Rule::Axiom, prem, F("P(α)"));
    Proof bad = make_node(Rule::ForallR, Sequent{{F("P(α)")}, {all}}, all, {ax}, {}, "α");
    EXPECT_TRUE(mentions_eigen_violation(check_proof(bad)));

    Sequent ok_prem{{F("∀x P(x)")}, {F("P(α)")}};
    Proof inst = make_node(Rule::ForallL, ok_prem, all,
                           {make_node(Rule::Axiom, Sequent{{all, F("P(α)")}, {F("P(α)")}}, F("P(α)"))},
                           {Term::var("α")});
    Proof good = make_node(Rule::ForallR, Sequent{{all}, {all}}, all, {inst}, {}, "α");
    EXPECT_TRUE(check_proof(good).empty()) << check_proof(good).front().message;
}

TEST(Proof, BlockInstanceMustMatchPayload) {
    Formula all = F("∀x P(x)");
    Proof ax = make_node(Rule::Axiom, Sequent{{all, F("P(b)")}, {F("P(b)")}}, F("P(b)"));
    Proof p = make_node(Rule::ForallL, Sequent{{all}, {F("P(b)")}}, all, {ax}, {parse_term("a")});
    EXPECT_FALSE(check_proof(p).empty());
}

TEST(Proof, PropositionalModusPonens) {
    Sequent s{{F("P(a)"), F("P(a) ⊃ P(f(a))")}, {F("P(f(a))")}};
    auto p = prove_propositional(s);
    ASSERT_TRUE(p);
    EXPECT_EQ((*p)->rule, Rule::ImpL);
    EXPECT_EQ((*p)->premises.size(), 2u);
    for (const auto& q : (*p)->premises) EXPECT_EQ(q->rule, Rule::Axiom);
    EXPECT_TRUE(check_proof(*p).empty());
    EXPECT_FALSE(prove_propositional(Sequent{{F("P(a)")}, {F("P(f(a))")}}));
}

TEST(Proof, StaircaseHerbrandSequent) {
    Example ex = generate_example("square-diagonal", 4);
    auto h = herbrand_sequent(ex.sequent, extract_terms(ex.sequent, ex.instances));
    ASSERT_TRUE(h.valid);
    EXPECT_TRUE(oracle::valid(h.sequent.antecedent, h.sequent.succedent));
    auto p = prove_propositional(h.sequent);
    ASSERT_TRUE(p);
    EXPECT_TRUE(check_proof(*p).empty());
    EXPECT_TRUE((*p)->conclusion.same_sets(h.sequent));
}

TEST(Proof, LinearNineStats) {
    Example ex = generate_example("linear", 9);
    ProofStats s = stats(ex.proof);
    EXPECT_EQ(s.cuts, 0u);
    EXPECT_EQ(s.quantifier_rules, 9u);
    EXPECT_EQ(s.quantifier_complexity, 9u);
    EXPECT_EQ(s.total_rules, 28u);
    EXPECT_TRUE(check_proof(ex.proof).empty());
    std::string block = render_stats(s);
    for (const char* field : {"Cuts: 0", "Number of quantifier rules: 9", "Number of rules: 28", "Quantifier complexity: 9"})
        EXPECT_NE(block.find(field), std::string::npos) << field;
}

TEST(Proof, RuleNamesRoundTrip) {
    for (int i = 0; i <= static_cast<int>(Rule::Cut); ++i) {
        Rule r = static_cast<Rule>(i);
        EXPECT_EQ(rule_from_name(rule_name(r)), r);
    }
    EXPECT_FALSE(rule_from_name("weaken"));
}

// extracting the instances of a generated cut-free proof and rebuilding gives equal quantifier complexity
TEST(ProofProperty, HerbrandRoundTrip) {
    for (const char* spec : {"linear:3", "linear:9", "square-diagonal:2", "square-diagonal:5", "exp:1", "exp:2"}) {
        Example ex = generate_example(spec);
        InstanceLists back = proof_instances(ex.sequent, ex.proof);
        auto T = extract_terms(ex.sequent, back);
        EXPECT_EQ(T, extract_terms(ex.sequent, ex.instances)) << spec;
        EXPECT_TRUE(herbrand_sequent(ex.sequent, T).valid);
        Proof again = build_cut_free(ex.sequent, T);
        EXPECT_EQ(stats(again).quantifier_complexity, stats(ex.proof).quantifier_complexity) << spec;
        EXPECT_TRUE(check_proof(again).empty());
    }
}

TEST(ProofProperty, PropositionalProverMatchesTruthTable) {
    oracle::Rng r(201);
    auto pool = oracle::atom_pool(5);
    int proved = 0;
    for (int i = 0; i < 300; ++i) {
        Sequent s;
        for (std::size_t k = r.below(4); k-- > 0;) s.antecedent.push_back(oracle::random_formula(r, pool, 3));
        for (std::size_t k = 1 + r.below(2); k-- > 0;) s.succedent.push_back(oracle::random_formula(r, pool, 3));
        bool valid = oracle::valid(s.antecedent, s.succedent);
        auto p = prove_propositional(s);
        ASSERT_EQ(p.has_value(), valid) << render(s);
        if (!p) continue;
        ++proved;
        auto v = check_proof(*p);
        ASSERT_TRUE(v.empty()) << render(s) << " : " << v.front().message;
        EXPECT_TRUE((*p)->conclusion.same_sets(s));
        EXPECT_EQ(stats(*p).quantifier_rules, 0u);
    }
    EXPECT_GT(proved, 30);
}

TEST(ProofProperty, StatsAdditive) {
    for (const char* spec : {"linear:5", "square-diagonal:3", "exp:2"}) {
        Example ex = generate_example(spec);
        auto r = cut_intro(ex.sequent, ex.instances, {}, ex.proof);
        const Proof& p = r.proof;
        ProofStats root = stats(p), sum{};
        for (const auto& q : p->premises) {
            ProofStats t = stats(q);
            sum.cuts += t.cuts;
            sum.total_rules += t.total_rules;
            sum.quantifier_rules += t.quantifier_rules;
            sum.quantifier_complexity += t.quantifier_complexity;
        }
        EXPECT_EQ(root.total_rules, sum.total_rules + 1);
        EXPECT_EQ(root.cuts, sum.cuts + (p->rule == Rule::Cut));
        bool block = p->rule == Rule::ForallL || p->rule == Rule::ExistsR;
        bool strong = p->rule == Rule::ForallR || p->rule == Rule::ExistsL;
        EXPECT_EQ(root.quantifier_complexity, sum.quantifier_complexity + block);
        EXPECT_EQ(root.quantifier_rules, sum.quantifier_rules + block + strong);
    }
}
