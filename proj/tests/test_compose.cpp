#include <doctest.h>

#include "kerncert/bench.hpp"
#include "kerncert/checker.hpp"
#include "kerncert/dimacs.hpp"

using namespace kerncert;

namespace {

// tiny instance holder for hand-built trees
Instance dummy_instance() {
    Graph g(2);
    g.add_edge(1, 2);
    return GraphInstance{ProblemKind::VertexCover, g, 0};
}

Formula contradiction_child() {
    Formula f;
    f.add_clause(Clause{1});
    f.add_clause(Clause{-1});
    f.set_num_vars(1);
    return f;
}

} // namespace

TEST_CASE("composition stitches a synthetic two-case split") {
    // root: (a|b) & (~a|c) & (~b|c) & (~c); case on a, case on b
    Formula root;
    root.add_clause(Clause{1, 2});
    root.add_clause(Clause{-1, 3});
    root.add_clause(Clause{-2, 3});
    root.add_clause(Clause{-3});
    root.set_num_vars(3);

    Formula child = contradiction_child();

    ProofNode tree;
    tree.instance = dummy_instance();
    tree.formula = root;
    for (Lit side : {1, 2}) {
        WitnessFragment frag;
        frag.note = side == 1 ? "case-a" : "case-b";
        frag.premise_fingerprint = formula_fingerprint(root);
        frag.assumed = {side};
        frag.child_nvars = 1;
        frag.child_nclauses = 2;
        frag.child_var_to_lit = {0, 3}; // child var 1 is the root's c
        Formula ext = with_assumption_units(root, {side});
        CertBuilder fb(ext);
        // image of (c): resolve the side unit into the implication row
        StepRef imp = fb.axiom(side == 1 ? 2 : 3);
        StepRef unit = fb.axiom(5);
        StepRef c_pos = fb.resolve(imp, unit, side);
        StepRef c_neg = fb.axiom(4);
        fb.mark_target(c_pos);
        fb.mark_target(c_neg);
        frag.derivation = fb.take();

        ProofNode::BranchData bd;
        bd.fragment = std::move(frag);
        bd.child = std::make_unique<ProofNode>();
        bd.child->instance = dummy_instance();
        bd.child->formula = child;
        bd.child->leaf = true;
        bd.child->leaf_label = "kernel:case";
        bd.child->leaf_refutation = refute_kernel(child).refutation;
        tree.branches.push_back(std::move(bd));
    }

    CoveringBundle cov;
    cov.glue_extra = {Clause{-1}, Clause{-2}};
    Formula glue_formula = root;
    glue_formula.add_clause(Clause{-1});
    glue_formula.add_clause(Clause{-2});
    cov.glue = refute_kernel(glue_formula).refutation;
    tree.covering = std::move(cov);

    ComposeResult res = compose_tree(root, tree);
    CHECK(is_accepted_refutation(root, res.certificate));
    CHECK(res.report.branching_factor_R == 2);
    CHECK(res.report.chain_length_C == 1);
    CHECK(res.report.subtotal_sum() == res.report.step_clauses);

    SUBCASE("missing covering derivations are rejected") {
        tree.covering.reset();
        CHECK_THROWS_WITH_AS(compose_tree(root, tree), doctest::Contains("covering"),
                             std::runtime_error);
    }
    SUBCASE("childless branches are rejected") {
        tree.branches[0].child.reset();
        CHECK_THROWS_WITH_AS(compose_tree(root, tree), doctest::Contains("branch"),
                             std::runtime_error);
    }
}

TEST_CASE("composition rejects colliding extension variables") {
    Formula root;
    root.add_clause(Clause{1});
    root.add_clause(Clause{-1, 2});
    root.add_clause(Clause{-2});
    root.set_num_vars(2);

    ProofNode tree;
    tree.instance = dummy_instance();
    tree.formula = root;
    WitnessFragment frag;
    frag.note = "bad-gates";
    frag.premise_fingerprint = formula_fingerprint(root);
    frag.gates.push_back({true, 3, 1, 2});
    frag.gates.push_back({true, 3, 1, -2}); // same output var twice
    frag.child_nvars = 1;
    frag.child_nclauses = 2;
    frag.child_var_to_lit = {0, 2};
    Formula ext = gates_extended_formula(root, {{true, 3, 1, 2}});
    (void)ext;
    Formula ext2 = fragment_extended_formula(root, frag);
    CertBuilder fb(ext2);
    fb.mark_target(fb.resolve(fb.axiom(1), fb.axiom(2), 1));
    fb.mark_target(fb.axiom(3));
    frag.derivation = fb.take();

    ProofNode::BranchData bd;
    bd.fragment = std::move(frag);
    bd.child = std::make_unique<ProofNode>();
    bd.child->instance = dummy_instance();
    bd.child->formula = contradiction_child();
    bd.child->leaf = true;
    bd.child->leaf_refutation = refute_kernel(contradiction_child()).refutation;
    tree.branches.push_back(std::move(bd));

    CHECK_THROWS_WITH_AS(compose_tree(root, tree), doctest::Contains("collision"),
                         std::runtime_error);
}

TEST_CASE("certify handles the three-way aggregation splits") {
    CertifyResult arrow = certify(ArrowInstance{3, 3});
    REQUIRE(arrow.accepted());
    Formula aroot = encode_arrow(3, 3);
    CHECK(is_accepted_refutation(aroot, arrow.certificate));
    CHECK(arrow.certificate.fingerprint == formula_fingerprint(aroot));
    CHECK(arrow.report.branching_factor_R == 3);
    CHECK(arrow.report.chain_length_C == 1);

    CertifyResult gs = certify(GSInstance{3, 3});
    REQUIRE(gs.accepted());
    Formula groot = encode_gs(3, 3);
    CHECK(is_accepted_refutation(groot, gs.certificate));
    CHECK(gs.report.branching_factor_R == 3);
}

TEST_CASE("partial restriction witnesses fall back to direct refutations") {
    // structure-only emission carries the semantic check note
    StepOutcome out = reduce_gs_step(GSInstance{4, 2});
    auto& step = std::get<ReductionStep>(out);
    std::vector<Formula> children;
    for (auto& br : step.branches) children.push_back(encode_instance(br.child));
    Formula parent = encode_gs(4, 2);
    NodeWitness w = emit_gs_witness(parent, GSInstance{4, 2}, step, children);
    CHECK(w.partial);
    CHECK(w.note.find("passed") != std::string::npos);

    StepOutcome ao = reduce_arrow_step(ArrowInstance{7, 2});
    auto& astep = std::get<ReductionStep>(ao);
    Formula dummy;
    NodeWitness aw = emit_arrow_witness(dummy, ArrowInstance{7, 2}, astep, {});
    CHECK(aw.partial);
}

TEST_CASE("dictator fixtures survive object restriction") {
    std::string detail;
    CHECK(restriction_semantic_check(4, 2, &detail));
    CHECK(restriction_semantic_check(5, 2, &detail));
}
