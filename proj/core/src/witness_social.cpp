#include "kerncert/social.hpp"
#include "witness_util.hpp"

namespace kerncert {

using namespace witness_detail;

namespace {

// Agent-merge bookkeeping shared by both encodings. Merge (a, b) drops
// coordinate a and evaluates with a copying b; child coordinates keep the
// remaining parent order.
struct MergeMap {
    int m, n; // parent dimensions
    int a, b;
    ProfileSpace parent_ps;
    ProfileSpace child_ps;

    MergeMap(int m_, int n_, int a_, int b_)
        : m(m_), n(n_), a(a_), b(b_), parent_ps(m_, n_), child_ps(m_, n_ - 1) {}

    std::vector<int> lift_ranks(const std::vector<int>& child) const {
        int b_child = b - (b > a ? 1 : 0);
        std::vector<int> parent;
        int ci = 0;
        for (int i = 1; i <= n; i++) {
            if (i == a) parent.push_back(child[b_child - 1]);
            else parent.push_back(child[ci++]);
        }
        return parent;
    }
    long lift(long child_index) const {
        return parent_ps.index_of(lift_ranks(child_ps.ranks_of(child_index)));
    }
    int parent_agent(int child_agent) const { return child_agent < a ? child_agent : child_agent + 1; }
};

int arrow_var(const Formula& f, long r, int pi_rank) {
    return f.registry().lookup({"X", {(int)r, pi_rank}});
}
int gs_var(const Formula& f, long r, int o) { return f.registry().lookup({"X", {(int)r, o}}); }

struct SocialGates {
    std::vector<RowChain> nd;  // per child agent
    RowChain g;                // conjunction of the nd outputs
};

SocialGates declare_branch_gates(Scaffold& sc, const Formula& parent, const MergeMap& mm,
                                 bool arrow) {
    SocialGates out;
    std::vector<Lit> nds;
    for (int l = 1; l <= mm.n - 1; l++) {
        std::vector<Lit> ins;
        for (long q = 0; q < mm.child_ps.total; q++) {
            auto ranks = mm.child_ps.ranks_of(q);
            long pr = mm.lift(q);
            int outcome = arrow ? ranks[l - 1] : top_of(mm.child_ps.prefs[ranks[l - 1]]);
            ins.push_back(arrow ? -arrow_var(parent, pr, outcome) : -gs_var(parent, pr, outcome));
        }
        RowChain c = declare_chain(false, sc.gates, sc.next_var, ins);
        out.nd.push_back(c);
        nds.push_back(c.out);
    }
    out.g = declare_chain(true, sc.gates, sc.next_var, nds);
    return out;
}

// derives the child non-dictatorship images from the assumed case literal
std::vector<StepRef> derive_nondict_images(Scaffold& sc, const SocialGates& gates) {
    CertBuilder& fb = *sc.fb;
    StepRef g_unit = fb.axiom(sc.assumed_clause_index(0));
    std::vector<StepRef> images;
    for (size_t l = 0; l < gates.nd.size(); l++) {
        StepRef nd_unit;
        if (gates.g.gate_idx.empty()) {
            nd_unit = g_unit; // single-agent child: g aliases the nd chain
        } else {
            StepRef proj = sc.and_proj(gates.g, l); // (~g | nd_l)
            nd_unit = fb.resolve(proj, g_unit, var_of(gates.g.out));
        }
        StepRef expand = sc.chain_expand(gates.nd[l]); // (~nd | lits...)
        images.push_back(fb.resolve(expand, nd_unit, var_of(gates.nd[l].out)));
    }
    return images;
}

} // namespace

// ----------------------------------------------------------------------

bool restriction_semantic_check(int m, int n, std::string* detail) {
    if (m < 4 || m > 5 || n < 2 || n > 3) {
        if (detail) *detail = "fixture guard: 4 <= m <= 5, 2 <= n <= 3";
        return false;
    }
    for (int agent = 1; agent <= n; agent++) {
        SCFTable w = dictator_scf(m, n, agent);
        // every (m-3)-element removal chain down to three objects
        std::vector<int> drop;
        for (int o = m; o > 3; o--) drop.push_back(o);
        SCFTable r = restrict_scf(w, drop);
        if (!is_onto(r).holds || !is_strategyproof(r).holds) {
            if (detail) *detail = "restriction lost an axiom for agent " + std::to_string(agent);
            return false;
        }
        CheckOutcome d = is_dictatorial(r);
        if (!d.holds || d.witness != "agent " + std::to_string(agent)) {
            if (detail) *detail = "restriction moved the dictator for agent " + std::to_string(agent);
            return false;
        }
    }
    if (detail) *detail = "dictator fixtures keep onto+strategyproofness+dictator under restriction";
    return true;
}

// ----------------------------------------------------------------------

namespace {

CoveringBundle social_covering(const Formula& parent, const std::vector<WitnessFragment>& frags,
                               const std::vector<MergeMap>& merges, bool arrow, int& next_var,
                               const RefuterLimits& limits) {
    CoveringBundle cov;
    int n1 = merges[0].n - 1; // child agent count
    // dictatorship indicator chains per (branch, child agent)
    std::vector<std::vector<RowChain>> dchain(merges.size());
    std::vector<GateDef> all_gates;
    for (const auto& f : frags) all_gates.insert(all_gates.end(), f.gates.begin(), f.gates.end());
    size_t cov_gate_base = all_gates.size();
    for (size_t t = 0; t < merges.size(); t++) {
        const MergeMap& mm = merges[t];
        for (int l = 1; l <= n1; l++) {
            std::vector<Lit> ins;
            for (long q = 0; q < mm.child_ps.total; q++) {
                auto ranks = mm.child_ps.ranks_of(q);
                long pr = mm.lift(q);
                int outcome = arrow ? ranks[l - 1] : top_of(mm.child_ps.prefs[ranks[l - 1]]);
                ins.push_back(arrow ? arrow_var(parent, pr, outcome)
                                    : gs_var(parent, pr, outcome));
            }
            dchain[t].push_back(declare_chain(true, cov.gates, next_var, ins));
        }
    }
    (void)cov_gate_base;
    all_gates.insert(all_gates.end(), cov.gates.begin(), cov.gates.end());
    Formula ext_all = gates_extended_formula(parent, all_gates);

    auto g_out = [&](size_t t) { return frags[t].assumed.at(0); };
    auto d_out = [&](size_t t, int l) { return dchain[t][l - 1].out; };

    auto run_case = [&](std::vector<Lit> assumed) {
        RefuterResult rr = refute_kernel(with_assumption_units(ext_all, assumed), limits);
        if (!rr.unsat())
            throw std::runtime_error("covering case unexpectedly satisfiable");
        CoveringBundle::CaseRefutation cr;
        cr.assumed = assumed;
        cr.refutation = std::move(rr.refutation);
        cov.cases.push_back(std::move(cr));
        std::vector<Lit> negs;
        for (Lit z : assumed) negs.push_back(-z);
        return Clause(negs);
    };

    std::vector<Clause> case_clauses;
    // bridges: ~g_t forces one of the dictator indicators
    for (size_t t = 0; t < merges.size(); t++) {
        std::vector<Lit> assumed{-g_out(t)};
        for (int l = 1; l <= n1; l++) assumed.push_back(-d_out(t, l));
        case_clauses.push_back(run_case(assumed));
    }
    // dictator combinations across the three merges are jointly impossible
    std::vector<int> combo(merges.size(), 1);
    for (;;) {
        std::vector<Lit> assumed;
        for (size_t t = 0; t < merges.size(); t++) assumed.push_back(d_out(t, combo[t]));
        case_clauses.push_back(run_case(assumed));
        size_t pos = 0;
        while (pos < combo.size()) {
            if (++combo[pos] <= n1) break;
            combo[pos] = 1;
            pos++;
        }
        if (pos == combo.size()) break;
    }

    for (size_t t = 0; t < merges.size(); t++) cov.glue_extra.push_back(Clause{-g_out(t)});
    for (const Clause& c : case_clauses) cov.glue_extra.push_back(c);

    Formula glue_formula = ext_all;
    for (const Clause& c : cov.glue_extra) glue_formula.add_clause(c);
    RefuterResult rr = refute_kernel(glue_formula, limits);
    if (!rr.unsat()) throw std::runtime_error("covering glue unexpectedly satisfiable");
    cov.glue = std::move(rr.refutation);
    return cov;
}

} // namespace

NodeWitness emit_arrow_witness(const Formula& parent, const ArrowInstance& inst,
                               const ReductionStep& step, const std::vector<Formula>& children,
                               const RefuterLimits& limits) {
    NodeWitness w;
    if (step.rule == RuleId::ArrowRestrictObjects) {
        w.partial = true;
        w.note = "object-restriction step: two-case structure emitted without discharge "
                 "(restriction substitutions act on demoted profiles)";
        return w;
    }
    int m = inst.m, n = inst.n;
    std::vector<MergeMap> merges;
    for (const ReductionBranch& br : step.branches)
        merges.emplace_back(m, n, br.merge.first, br.merge.second);

    int next_var = parent.num_vars() + 1;
    for (size_t t = 0; t < step.branches.size(); t++) {
        const MergeMap& mm = merges[t];
        const Formula& child = children[t];
        WitnessFragment frag;
        frag.note = rule_name(step.rule) + ":" + std::to_string(mm.a) + "," +
                    std::to_string(mm.b);
        frag.premise_fingerprint = formula_fingerprint(parent);
        frag.child_nvars = child.num_vars();
        frag.child_nclauses = child.num_clauses();

        Scaffold sc(parent);
        sc.next_var = next_var;
        SocialGates gates = declare_branch_gates(sc, parent, mm, true);
        sc.assumed = {gates.g.out};
        sc.finalize();
        next_var = sc.next_var;
        CertBuilder& fb = *sc.fb;

        frag.child_var_to_lit.assign(child.num_vars() + 1, 0);
        for (int cv = 1; cv <= child.num_vars(); cv++) {
            const VarName& nm = child.registry().name_of(cv);
            frag.child_var_to_lit[cv] = arrow_var(parent, mm.lift(nm.indices[0]), nm.indices[1]);
        }
        auto image_of = [&](int idx) {
            return rename_clause(child.clause(idx), frag.child_var_to_lit);
        };

        std::vector<StepRef> nondict = derive_nondict_images(sc, gates);
        std::vector<StepRef> targets;
        long fact = factorial(m);
        long child_profiles = merges[t].child_ps.total;
        int ci = 0;
        for (long q = 0; q < child_profiles; q++) {
            ci++;
            targets.push_back(sc.parent_row(image_of(ci)));
        }
        for (long q = 0; q < child_profiles; q++)
            for (int p = 0; p < fact; p++)
                for (int p2 = p + 1; p2 < fact; p2++) {
                    ci++;
                    targets.push_back(sc.parent_row(image_of(ci)));
                }
        for (int l = 1; l <= n - 1; l++) {
            ci++;
            if (!(fb.clause_of(nondict[l - 1]) == image_of(ci)))
                throw std::runtime_error("non-dictatorship image mismatch");
            targets.push_back(nondict[l - 1]);
        }
        for (; ci < child.num_clauses();) {
            ci++;
            targets.push_back(sc.parent_row(image_of(ci)));
        }
        seal(frag, sc, targets);
        w.fragments.push_back(std::move(frag));
    }

    w.covering = social_covering(parent, w.fragments, merges, true, next_var, limits);
    return w;
}

NodeWitness emit_gs_witness(const Formula& parent, const GSInstance& inst,
                            const ReductionStep& step, const std::vector<Formula>& children,
                            const RefuterLimits& limits) {
    NodeWitness w;
    if (step.rule == RuleId::GsRestrictObjects) {
        w.partial = true;
        std::string detail;
        bool ok = restriction_semantic_check(std::min(inst.m, 5), std::min(inst.n, 3), &detail);
        w.note = std::string("object-restriction step emitted without discharge; semantic check ") +
                 (ok ? "passed: " : "failed: ") + detail;
        return w;
    }
    int m = inst.m, n = inst.n;
    std::vector<MergeMap> merges;
    for (const ReductionBranch& br : step.branches)
        merges.emplace_back(m, n, br.merge.first, br.merge.second);

    int next_var = parent.num_vars() + 1;
    for (size_t t = 0; t < step.branches.size(); t++) {
        const MergeMap& mm = merges[t];
        const Formula& child = children[t];
        WitnessFragment frag;
        frag.note = rule_name(step.rule) + ":" + std::to_string(mm.a) + "," +
                    std::to_string(mm.b);
        frag.premise_fingerprint = formula_fingerprint(parent);
        frag.child_nvars = child.num_vars();
        frag.child_nclauses = child.num_clauses();

        Scaffold sc(parent);
        sc.next_var = next_var;
        SocialGates gates = declare_branch_gates(sc, parent, mm, false);
        sc.assumed = {gates.g.out};
        sc.finalize();
        next_var = sc.next_var;
        CertBuilder& fb = *sc.fb;

        frag.child_var_to_lit.assign(child.num_vars() + 1, 0);
        for (int cv = 1; cv <= child.num_vars(); cv++) {
            const VarName& nm = child.registry().name_of(cv);
            frag.child_var_to_lit[cv] = gs_var(parent, mm.lift(nm.indices[0]), nm.indices[1]);
        }
        auto image_of = [&](int idx) {
            return rename_clause(child.clause(idx), frag.child_var_to_lit);
        };

        std::vector<StepRef> nondict = derive_nondict_images(sc, gates);
        std::vector<StepRef> targets;
        long child_profiles = mm.child_ps.total;
        long fact = factorial(m);
        int ci = 0;
        for (long q = 0; q < child_profiles; q++) {
            ci++;
            targets.push_back(sc.parent_row(image_of(ci)));
        }
        for (long q = 0; q < child_profiles; q++)
            for (int o1 = 1; o1 <= m; o1++)
                for (int o2 = o1 + 1; o2 <= m; o2++) {
                    ci++;
                    targets.push_back(sc.parent_row(image_of(ci)));
                }
        for (int l = 1; l <= n - 1; l++) {
            ci++;
            if (!(fb.clause_of(nondict[l - 1]) == image_of(ci)))
                throw std::runtime_error("non-dictatorship image mismatch");
            targets.push_back(nondict[l - 1]);
        }
        // onto rows need the strategyproofness machinery of the parent
        for (int o = 1; o <= m; o++) {
            ci++;
            Clause image = image_of(ci);
            PremiseBag pb;
            pb.add_all_scaffold(sc);
            // drop the assumption unit: onto holds without the case split
            pb.clauses.pop_back();
            pb.refs.pop_back();
            targets.push_back(derive_clause_from(fb, pb.clauses, pb.refs, image, limits));
        }
        // strategyproofness rows: direct when the deviating coordinate is
        // not the duplicated one, a two-step resolution chain otherwise
        for (long q = 0; q < child_profiles; q++) {
            auto ranks = mm.child_ps.ranks_of(q);
            long r1 = mm.lift(q);
            for (int l = 1; l <= n - 1; l++) {
                const Pref& rl = mm.child_ps.prefs[ranks[l - 1]];
                int pa = mm.parent_agent(l);
                for (int pi = 0; pi < fact; pi++) {
                    if (pi == ranks[l - 1]) continue;
                    long q2 = mm.child_ps.index_of(deviate(ranks, l, pi));
                    long r3 = mm.lift(q2);
                    for (int o = 1; o <= m; o++) {
                        ci++;
                        Clause image = image_of(ci);
                        if (pa != mm.b) {
                            targets.push_back(sc.parent_row(image));
                            continue;
                        }
                        // deviating the duplicated coordinate: chain the
                        // parent rows through the intermediate profile
                        std::vector<int> ranks1 = mm.parent_ps.ranks_of(r1);
                        long r2 = mm.parent_ps.index_of(deviate(ranks1, mm.a, pi));
                        std::vector<Lit> row1{-gs_var(parent, r1, o)};
                        for (int o2 : pr_set(rl, o)) row1.push_back(gs_var(parent, r2, o2));
                        StepRef cur = sc.parent_row(Clause(row1));
                        for (int o2 : pr_set(rl, o)) {
                            if (!fb.clause_of(cur).contains(gs_var(parent, r2, o2))) continue;
                            std::vector<Lit> row2{-gs_var(parent, r2, o2)};
                            for (int o3 : pr_set(rl, o2)) row2.push_back(gs_var(parent, r3, o3));
                            cur = fb.resolve(cur, sc.parent_row(Clause(row2)),
                                             gs_var(parent, r2, o2));
                        }
                        if (!(fb.clause_of(cur) == image))
                            throw std::runtime_error("two-step strategyproof image mismatch");
                        targets.push_back(cur);
                    }
                }
            }
        }
        if (ci != child.num_clauses())
            throw std::runtime_error("gs witness family walk out of sync");
        seal(frag, sc, targets);
        w.fragments.push_back(std::move(frag));
    }

    w.covering = social_covering(parent, w.fragments, merges, false, next_var, limits);
    return w;
}

} // namespace kerncert
