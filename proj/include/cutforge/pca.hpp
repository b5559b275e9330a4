#pragma once

#include <cutforge/herbrand.hpp>

#include <functional>
#include <string>
#include <vector>

namespace cutforge {

struct LinearFormPlan {
    std::vector<Formula> original;  // A_1..A_n as given
    std::vector<Formula> matrices;  // A'_1..A'_n after repair
    std::vector<bool> repaired;
    std::vector<std::vector<Term>> partition; // U_0 ⊇ U_1 ⊇ ⋯ ⊇ U_n
};

namespace detail {

/// U_i: base terms whose variables all belong to levels i..n-1 (0-based).
inline std::vector<std::vector<Term>> instance_partition(const SchematicEHS& h) {
    std::size_t n = h.levels();
    std::vector<std::vector<Term>> out(n + 1);
    for (std::size_t i = 0; i <= n; ++i) {
        VarSet allowed;
        for (std::size_t j = i; j < n; ++j) allowed.insert(h.alpha(j));
        for (const auto& u : h.grammar.base) {
            bool ok = true;
            for (const auto& v : variables(u))
                if (!allowed.count(v)) ok = false;
            if (ok) out[i].push_back(u);
        }
    }
    return out;
}

inline std::vector<Term> minus(const std::vector<Term>& a, const std::vector<Term>& b) {
    std::vector<Term> out;
    for (const auto& t : a)
        if (std::find(b.begin(), b.end(), t) == b.end()) out.push_back(t);
    return out;
}

inline std::vector<Formula> instances_at(const Formula& a, const std::string& alpha, const std::vector<Term>& s) {
    std::vector<Formula> out;
    for (const auto& t : s) add_unique(out, instantiate(a, alpha, t));
    return out;
}

inline void append(std::vector<Formula>& to, const std::vector<Formula>& from) {
    for (const auto& f : from) add_unique(to, f);
}

/// Propositional leaf R_i (0-based level i).
inline bool right_leaf_valid(const SchematicEHS& h, const LinearFormPlan& p, std::size_t i) {
    auto [qa, qs] = h.sequent.quantifier_free_part();
    auto inst = instance_formulas(h.sequent, p.partition[i + 1]);
    std::vector<Formula> ant = instances_at(p.matrices[i], h.alpha(i), h.productions(i));
    append(ant, inst.antecedent);
    append(ant, qa);
    std::vector<Formula> suc = inst.succedent;
    append(suc, qs);
    for (std::size_t j = i + 1; j < h.levels(); ++j) add_unique(suc, p.matrices[j]);
    return is_tautology(ant, suc);
}

} // namespace detail

/// Strengthens A_i to A_i ∧ I, innermost level last, wherever the right leaf of cut i is not valid.
inline LinearFormPlan repair_with_interpolants(const ExtendedHerbrandSequent& H) {
    const SchematicEHS& h = H.shs;
    std::size_t n = h.levels();
    LinearFormPlan p;
    p.original = H.solution;
    p.matrices = H.solution;
    p.repaired.assign(n, false);
    p.partition = detail::instance_partition(h);
    auto [qa, qs] = h.sequent.quantifier_free_part();
    for (std::size_t i = n; i-- > 0;) {
        if (detail::right_leaf_valid(h, p, i)) continue;
        std::vector<Term> outer = detail::minus(h.grammar.base, p.partition[i + 1]);
        auto out_inst = instance_formulas(h.sequent, outer);
        auto in_inst = instance_formulas(h.sequent, p.partition[i + 1]);
        PartitionedSequent ps;
        for (std::size_t j = 0; j < i; ++j)
            add_unique(ps.left1, cut_implication(p.original[j], h.alpha(j), h.productions(j)));
        detail::append(ps.left1, out_inst.antecedent);
        ps.right1 = out_inst.succedent;
        ps.left2 = detail::instances_at(p.original[i], h.alpha(i), h.productions(i));
        detail::append(ps.left2, in_inst.antecedent);
        detail::append(ps.left2, qa);
        ps.right2 = in_inst.succedent;
        detail::append(ps.right2, qs);
        for (std::size_t j = i + 1; j < n; ++j) add_unique(ps.right2, p.matrices[j]);
        Formula I = interpolate(ps);
        p.matrices[i] = simplify(Formula::conj(p.original[i], I));
        p.repaired[i] = true;
        if (!detail::right_leaf_valid(h, p, i)) throw InternalError("interpolant did not repair cut " + std::to_string(i + 1));
    }
    return p;
}

namespace detail {

inline std::string bound_name(const SchematicEHS& h) {
    std::string x = "x";
    auto clash = [&](const std::string& v) {
        for (std::size_t i = 0; i < h.levels(); ++i)
            if (h.alpha(i) == v) return true;
        return false;
    };
    while (clash(x)) x += "'";
    return x;
}

/// Chain of ∀*_l / ∃*_r inferences introducing the instances of `us` above `base`.
inline Proof instance_chain(const SigmaOneSequent& s, const Sequent& base, const std::vector<Term>& us,
                            const std::function<Proof(const Sequent&)>& top) {
    std::vector<Sequent> seqs{base};
    std::vector<std::pair<std::size_t, std::vector<Term>>> steps;
    for (const auto& u : us) {
        auto d = decode(s, u);
        if (s.entries[d.first].vars.empty()) continue;
        Sequent next = seqs.back();
        const SigmaEntry& e = s.entries[d.first];
        add_unique(e.succedent ? next.succedent : next.antecedent, e.instance(d.second));
        seqs.push_back(std::move(next));
        steps.push_back(std::move(d));
    }
    Proof p = top(seqs.back());
    for (std::size_t k = steps.size(); k-- > 0;) {
        const SigmaEntry& e = s.entries[steps[k].first];
        p = make_node(e.succedent ? Rule::ExistsR : Rule::ForallL, seqs[k], e.formula(), {p}, steps[k].second);
    }
    return p;
}

inline Proof prove_leaf(const Sequent& s) {
    auto p = prove_propositional(s);
    if (!p) throw InternalError("leaf is not a tautology: " + render(s));
    return *p;
}

} // namespace detail

/// Proof of the end-sequent with one Π1-cut per grammar level, in linear form.
inline Proof build_proof_with_cut(const ExtendedHerbrandSequent& H, LinearFormPlan* plan_out = nullptr) {
    const SchematicEHS& h = H.shs;
    const SigmaOneSequent& s = h.sequent;
    std::size_t n = h.levels();
    if (auto why = solution_violation(h, H.solution); !why.empty())
        throw InputError("extended Herbrand sequent is not valid: " + why);
    LinearFormPlan plan = repair_with_interpolants(H);
    const auto& U = plan.partition;
    std::string x = detail::bound_name(h);
    std::vector<Formula> cut(n);
    for (std::size_t i = 0; i < n; ++i)
        cut[i] = Formula::forall({x}, instantiate(plan.matrices[i], h.alpha(i), Term::var(x)));

    Sequent es = s.sequent();
    // Γ_i: end-sequent, instances of U_i, and the goals A'_{i+1}..A'_n
    auto gamma = [&](std::size_t i) {
        Sequent g = es;
        auto inst = instance_formulas(s, U[i]);
        detail::append(g.antecedent, inst.antecedent);
        detail::append(g.succedent, inst.succedent);
        for (std::size_t j = i; j < n; ++j) add_unique(g.succedent, plan.matrices[j]);
        return g;
    };

    // P(0) is the leaf L1
    std::function<Proof(std::size_t)> P = [&](std::size_t i) -> Proof {
        if (i == 0) return detail::prove_leaf(gamma(0));
        std::size_t lvl = i - 1; // 0-based level of this cut
        Sequent concl = gamma(i);
        Sequent left = concl;
        add_unique(left.succedent, cut[lvl]);
        Sequent left_prem = concl;
        add_unique(left_prem.succedent, plan.matrices[lvl]);
        std::vector<Term> fresh = detail::minus(U[i - 1], U[i]);
        Proof lp = detail::instance_chain(s, left_prem, fresh, [&](const Sequent&) { return P(i - 1); });
        Proof lnode = make_node(Rule::ForallR, left, cut[lvl], {lp}, {}, h.alpha(lvl));

        Sequent right = concl;
        add_unique(right.antecedent, cut[lvl]);
        std::vector<Sequent> seqs{right};
        for (const auto& t : h.productions(lvl)) {
            Sequent next = seqs.back();
            add_unique(next.antecedent, instantiate_block(cut[lvl], {t}));
            seqs.push_back(std::move(next));
        }
        Proof rp = detail::prove_leaf(seqs.back());
        for (std::size_t k = h.productions(lvl).size(); k-- > 0;)
            rp = make_node(Rule::ForallL, seqs[k], cut[lvl], {rp}, {h.productions(lvl)[k]});
        return make_node(Rule::Cut, concl, cut[lvl], {lnode, rp});
    };

    Proof root = detail::instance_chain(s, es, U[n], [&](const Sequent&) { return P(n); });
    if (plan_out) *plan_out = plan;
    return root;
}

/// Cut-free proof from a Herbrand term set.
inline Proof build_cut_free(const SigmaOneSequent& s, const std::vector<Term>& T) {
    if (!herbrand_sequent(s, T).valid) throw InputError("instances do not form a tautological Herbrand sequent");
    SchematicEHS h{s, TreeGrammar{sorted_unique(T), {}}};
    return build_proof_with_cut(ExtendedHerbrandSequent{h, {}});
}

} // namespace cutforge
