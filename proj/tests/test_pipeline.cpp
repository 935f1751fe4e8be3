#include <doctest.h>

#include "kerncert/bench.hpp"
#include "kerncert/checker.hpp"
#include "kerncert/dimacs.hpp"
#include "kerncert/graph_oracles.hpp"

using namespace kerncert;

namespace {

Graph complete(int n) {
    Graph g(n);
    for (int u = 1; u <= n; u++)
        for (int v = u + 1; v <= n; v++) g.add_edge(u, v);
    return g;
}

Graph cycle(int n) {
    Graph g(n);
    for (int v = 1; v <= n; v++) g.add_edge(v, v % n + 1);
    return g;
}

Graph star(int leaves) {
    Graph g(leaves + 1);
    for (int v = 2; v <= leaves + 1; v++) g.add_edge(1, v);
    return g;
}

// fragment-level check: emits, audits, and verifies the target count
void check_step_fragment(const Instance& parent_inst) {
    StepOutcome out = reduce_step(parent_inst);
    auto& step = std::get<ReductionStep>(out);
    Formula parent = encode_instance(parent_inst);
    Formula child = encode_instance(step.branches[0].child);
    WitnessFragment frag;
    if (auto* g = std::get_if<GraphInstance>(&parent_inst)) {
        switch (g->kind) {
            case ProblemKind::DualColoring:
                frag = emit_dualcol_witness(parent, *g, step, child);
                break;
            case ProblemKind::VertexCover:
                frag = emit_vc_witness(parent, *g, step, child);
                break;
            case ProblemKind::EdgeCliqueCover:
                frag = emit_ecc_witness(parent, *g, step, child);
                break;
        }
    } else {
        frag = emit_hitting_witness(parent, std::get<HittingInstance>(parent_inst), step, child);
    }
    audit_fragment(parent, frag, child);
}

} // namespace

TEST_CASE("vc isolated-removal fragment carries no extension variables") {
    Graph g = star(5);
    Instance inst = GraphInstance{ProblemKind::VertexCover, g, 2};
    auto& gi = std::get<GraphInstance>(inst);
    StepOutcome s1 = reduce_vc_step(gi);
    auto& st1 = std::get<ReductionStep>(s1);
    const auto& child1 = std::get<GraphInstance>(st1.branches[0].child);
    StepOutcome s2 = reduce_vc_step(child1);
    auto& st2 = std::get<ReductionStep>(s2);
    REQUIRE(st2.rule == RuleId::VcIsolated);
    Formula parent = encode_instance(st1.branches[0].child);
    Formula child = encode_instance(st2.branches[0].child);
    WitnessFragment frag = emit_vc_witness(parent, child1, st2, child);
    audit_fragment(parent, frag, child);
    CHECK(frag.gates.empty());
    CHECK(frag.assumed.empty());
}

TEST_CASE("vc high-degree fragment audits on refutable instances") {
    // hub star plus a disjoint triangle: the hub is forced, leaving the
    // triangle over budget
    Graph g(8);
    for (int v = 2; v <= 5; v++) g.add_edge(1, v);
    g.add_edge(6, 7);
    g.add_edge(6, 8);
    g.add_edge(7, 8);
    check_step_fragment(GraphInstance{ProblemKind::VertexCover, g, 2});
    check_step_fragment(GraphInstance{ProblemKind::VertexCover, complete(5), 2});
}

TEST_CASE("vc high-degree witness refuses pendant images on satisfiable parents") {
    // every neighbor of the hub is a pendant and the instance has a cover,
    // so no local or global derivation of the child images exists
    Instance inst = GraphInstance{ProblemKind::VertexCover, star(5), 2};
    auto& gi = std::get<GraphInstance>(inst);
    StepOutcome out = reduce_vc_step(gi);
    auto& step = std::get<ReductionStep>(out);
    Formula parent = encode_instance(inst);
    Formula child = encode_instance(step.branches[0].child);
    CHECK_THROWS(emit_vc_witness(parent, gi, step, child));
}

TEST_CASE("ecc fragments audit for twins and isolated blocks") {
    check_step_fragment(GraphInstance{ProblemKind::EdgeCliqueCover, complete(4), 1});
    Graph mix(8);
    for (auto [u, v] : cycle(4).edges()) mix.add_edge(u, v);
    check_step_fragment(GraphInstance{ProblemKind::EdgeCliqueCover, mix, 2});
}

TEST_CASE("dualcol universal-vertex fragment audits") {
    Graph wheel(5);
    for (auto [u, v] : cycle(4).edges()) wheel.add_edge(u, v);
    for (int v = 1; v <= 4; v++) wheel.add_edge(5, v);
    check_step_fragment(GraphInstance{ProblemKind::DualColoring, wheel, 2});
}

TEST_CASE("dualcol crown fragment audits on a planted fixture") {
    Instance fx = dualcol_crown_fixture(2, 3, 0);
    check_step_fragment(fx);
}

TEST_CASE("hitting sunflower fragment audits") {
    check_step_fragment(Instance{HittingInstance{
        {1, 2, 3, 4, 5, 6}, {{1, 2}, {1, 3}, {1, 4}, {1, 5}, {1, 6}}, 1, 2}});
}

TEST_CASE("certify closes the books on the triangle cover instance") {
    CertifyResult res = certify(GraphInstance{ProblemKind::VertexCover, complete(3), 1});
    REQUIRE(res.accepted());
    Formula root = encode_vertex_cover(complete(3), 1);
    CHECK(is_accepted_refutation(root, res.certificate));
    CHECK(res.certificate.fingerprint == formula_fingerprint(root));
    CHECK(res.report.chain_length_C >= 1);
    CHECK(res.report.branching_factor_R == 1);
    CHECK(res.report.subtotal_sum() == res.report.step_clauses);
}

TEST_CASE("certify reports satisfiable instances instead of certificates") {
    CertifyResult res = certify(GraphInstance{ProblemKind::VertexCover, star(5), 2});
    CHECK(res.status == CertifyResult::Status::SatInstance);
}

TEST_CASE("certify refutes disjoint families past the budget directly") {
    // three pairwise disjoint pairs against a budget of two
    HittingInstance h{{1, 2, 3, 4, 5, 6}, {{1, 2}, {3, 4}, {5, 6}}, 2, 2};
    CertifyResult res = certify(h);
    REQUIRE(res.accepted());
    Formula root = encode_instance(Instance{h});
    CHECK(is_accepted_refutation(root, res.certificate));
}

TEST_CASE("a universal-vertex chain ends in a complement matching verdict") {
    Graph s3 = star(3);
    ReductionTrace t = kernelize(GraphInstance{ProblemKind::DualColoring, s3, 1});
    REQUIRE(t.root->kind == TraceNode::Kind::Reduced);
    CHECK(t.root->step->rule == RuleId::DualColUniversal);
    CHECK(std::get<GraphInstance>(t.root->step->branches[0].child).k == 1);
    CHECK(t.solved_sat_leaves == 1); // the leafless remainder is colorable
    CertifyResult res = certify(GraphInstance{ProblemKind::DualColoring, s3, 1});
    CHECK(res.status == CertifyResult::Status::SatInstance);
}

TEST_CASE("certify a hitting set pipeline end to end") {
    HittingInstance h{{1, 2, 3, 4, 5, 6, 7, 8},
                      {{1, 2}, {1, 3}, {1, 4}, {5, 6}, {5, 7}, {5, 8}},
                      1,
                      2};
    REQUIRE(hitting_min(h.family) == 2);
    CertifyResult res = certify(h);
    REQUIRE(res.accepted());
    Formula root = encode_instance(Instance{h});
    CHECK(is_accepted_refutation(root, res.certificate));
}

TEST_CASE("certify an edge clique cover chain with twin merges") {
    // two joined triangles sharing twins, plus isolated padding
    Graph g(8);
    for (auto [u, v] : cycle(4).edges()) g.add_edge(u, v);
    CertifyResult res = certify(GraphInstance{ProblemKind::EdgeCliqueCover, g, 2});
    REQUIRE(res.accepted());
    Formula root = encode_edge_clique_cover(g, 2);
    CHECK(is_accepted_refutation(root, res.certificate));
    CHECK(res.report.chain_length_C >= 1);
}

TEST_CASE("merging an isolated pair recycles its clique and stays safe") {
    // edge {1,2} is its own component; the merge must hand back a clique
    Graph g(6);
    g.add_edge(1, 2);
    g.add_edge(3, 4);
    g.add_edge(3, 5);
    g.add_edge(4, 5);
    g.add_edge(5, 6);
    // k=2: the triangle+pendant part alone needs two cliques, so with the
    // isolated edge the instance is unsatisfiable
    REQUIRE(ecc_min(g) == 3);
    Instance inst = GraphInstance{ProblemKind::EdgeCliqueCover, g, 2};
    StepOutcome out = reduce_step(inst);
    auto& st = std::get<ReductionStep>(out);
    REQUIRE(st.rule == RuleId::EccTwinMerge);
    CHECK(std::get<GraphInstance>(st.branches[0].child).k == 1);
    Formula parent = encode_instance(inst);
    Formula child = encode_instance(st.branches[0].child);
    WitnessFragment frag =
        emit_ecc_witness(parent, std::get<GraphInstance>(inst), st, child);
    audit_fragment(parent, frag, child);
    CHECK(!frag.gates.empty());

    CertifyResult res = certify(inst);
    REQUIRE(res.accepted());
    CHECK(is_accepted_refutation(parent, res.certificate));
}

TEST_CASE("certify verdicts match the semantic oracles on random instances") {
    SplitMix64 rng(314);
    int done = 0;
    while (done < 40) {
        int kind = rng.range(0, 3);
        Instance inst;
        bool expect_sat = false;
        if (kind == 0) {
            Graph g = random_graph(rng, rng.range(4, 9), 0.2 + 0.6 * rng.uniform());
            int k = rng.range(1, g.num_vertices() - 1);
            inst = GraphInstance{ProblemKind::DualColoring, g, k};
            expect_sat = chromatic_number(g) <= g.num_vertices() - k;
        } else if (kind == 1) {
            Graph g = random_graph(rng, rng.range(5, 12), 0.15 + 0.5 * rng.uniform());
            int k = rng.range(1, 3);
            inst = GraphInstance{ProblemKind::VertexCover, g, k};
            int noniso = 0;
            for (int v = 1; v <= g.num_vertices(); v++)
                if (g.degree(v) > 0) noniso++;
            if (noniso < k) continue; // outside the encoding's slot domain
            expect_sat = vc_min(g) <= k;
        } else if (kind == 2) {
            Graph g = random_graph(rng, rng.range(4, 9), 0.2 + 0.6 * rng.uniform());
            int k = rng.range(1, 2);
            inst = GraphInstance{ProblemKind::EdgeCliqueCover, g, k};
            expect_sat = ecc_min(g) <= k;
        } else {
            int m = rng.range(4, 7);
            std::set<std::vector<int>> fam;
            int sets = rng.range(3, 2 * m);
            for (int t = 0; t < sets; t++) {
                int a = rng.range(1, m), b = rng.range(1, m);
                if (a != b) fam.insert({std::min(a, b), std::max(a, b)});
            }
            if (fam.empty()) continue;
            std::vector<std::vector<int>> family(fam.begin(), fam.end());
            std::set<int> uni;
            for (auto& st : family) uni.insert(st.begin(), st.end());
            int k = rng.range(1, 2);
            inst = HittingInstance{{uni.begin(), uni.end()}, family, k, 2};
            expect_sat = hitting_min(family) <= k;
        }
        CertifyResult res = certify(inst);
        done++;
        if (expect_sat) {
            CHECK_MESSAGE(res.status == CertifyResult::Status::SatInstance,
                          instance_label(inst));
        } else {
            REQUIRE_MESSAGE(res.accepted(), instance_label(inst));
            Formula root = encode_instance(inst);
            CHECK(is_accepted_refutation(root, res.certificate));
        }
    }
}

TEST_CASE("certify the dualcol crown fixtures") {
    for (int i : {0, 2, 5}) {
        Instance fx = dualcol_fixture_suite()[i];
        const auto& gi = std::get<GraphInstance>(fx);
        REQUIRE(chromatic_number(gi.graph) > gi.graph.num_vertices() - gi.k);
        CertifyResult res = certify(fx);
        REQUIRE(res.accepted());
        Formula root = encode_instance(fx);
        CHECK(is_accepted_refutation(root, res.certificate));
    }
}
