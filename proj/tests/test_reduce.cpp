#include <doctest.h>

#include <sstream>

#include "kerncert/bench.hpp"
#include "kerncert/graph_oracles.hpp"
#include "kerncert/reduce.hpp"

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

Graph bipartite_complete(int a, int b) {
    Graph g(a + b);
    for (int u = 1; u <= a; u++)
        for (int v = a + 1; v <= a + b; v++) g.add_edge(u, v);
    return g;
}

bool instance_sat(const Instance& inst) {
    if (auto* g = std::get_if<GraphInstance>(&inst)) {
        switch (g->kind) {
            case ProblemKind::DualColoring:
                return chromatic_number(g->graph) <= g->graph.num_vertices() - g->k;
            case ProblemKind::VertexCover: return vc_at_most(g->graph, g->k);
            case ProblemKind::EdgeCliqueCover: return ecc_min(g->graph) <= g->k;
        }
    }
    if (auto* h = std::get_if<HittingInstance>(&inst)) return hitting_min(h->family) <= h->k;
    throw std::runtime_error("no oracle for this kind");
}

} // namespace

TEST_CASE("vertex cover steps follow the high-degree and isolated rules") {
    // star with budget two: remove the center, then the isolated leaves
    Instance inst = GraphInstance{ProblemKind::VertexCover, star(5), 2};
    StepOutcome s1 = reduce_vc_step(std::get<GraphInstance>(inst));
    auto& st1 = std::get<ReductionStep>(s1);
    CHECK(st1.rule == RuleId::VcHighDegree);
    CHECK(st1.removed_vertex == 1);
    const auto& child1 = std::get<GraphInstance>(st1.branches[0].child);
    CHECK(child1.k == 1);
    StepOutcome s2 = reduce_vc_step(child1);
    auto& st2 = std::get<ReductionStep>(s2); // the leaves went isolated
    CHECK(st2.rule == RuleId::VcIsolated);
    CHECK(st2.removed_set.size() == 5);
    StepOutcome s3 = reduce_vc_step(std::get<GraphInstance>(st2.branches[0].child));
    CHECK(std::get<SolvedInfo>(s3).sat);

    // triangle with budget one: forced into an out-of-budget child
    StepOutcome t1 = reduce_vc_step(GraphInstance{ProblemKind::VertexCover, complete(3), 1});
    auto& ts = std::get<ReductionStep>(t1);
    CHECK(ts.rule == RuleId::VcHighDegree);
    StepOutcome t2 = reduce_vc_step(std::get<GraphInstance>(ts.branches[0].child));
    auto& tsol = std::get<SolvedInfo>(t2);
    CHECK_FALSE(tsol.sat);

    // the empty instance is already a kernel
    Graph empty(0);
    StepOutcome e = reduce_vc_step(GraphInstance{ProblemKind::VertexCover, empty, 0});
    CHECK(std::holds_alternative<KernelTag>(e));
}

TEST_CASE("dualcol steps keep the parameter across universal removals") {
    // a wheel: the hub is universal; chi drops with it
    Graph wheel = cycle(4);
    {
        Graph g(5);
        for (auto [u, v] : wheel.edges()) g.add_edge(u, v);
        for (int v = 1; v <= 4; v++) g.add_edge(5, v);
        wheel = g;
    }
    Instance inst = GraphInstance{ProblemKind::DualColoring, wheel, 2};
    StepOutcome s = reduce_dualcol_step(std::get<GraphInstance>(inst));
    auto& st = std::get<ReductionStep>(s);
    CHECK(st.rule == RuleId::DualColUniversal);
    const auto& child = std::get<GraphInstance>(st.branches[0].child);
    CHECK(child.k == 2);
    CHECK(child.graph.num_vertices() == 4);
    // oracle agreement both sides
    CHECK(instance_sat(inst) == instance_sat(st.branches[0].child));

    // complete bipartite complement has a large matching: satisfiable
    StepOutcome m =
        reduce_dualcol_step(GraphInstance{ProblemKind::DualColoring, bipartite_complete(3, 3), 2});
    CHECK(std::get<SolvedInfo>(m).sat);

    // small instances become kernels immediately
    StepOutcome kk = reduce_dualcol_step(GraphInstance{ProblemKind::DualColoring, complete(4), 2});
    CHECK(std::holds_alternative<KernelTag>(kk));
}

TEST_CASE("ecc steps merge twins and drop isolated blocks") {
    StepOutcome s = reduce_ecc_step(GraphInstance{ProblemKind::EdgeCliqueCover, complete(4), 1});
    auto& st = std::get<ReductionStep>(s);
    CHECK(st.rule == RuleId::EccTwinMerge);
    CHECK(std::get<GraphInstance>(st.branches[0].child).graph.num_vertices() == 3);

    Graph mix(8);
    for (auto [u, v] : cycle(4).edges()) mix.add_edge(u, v);
    StepOutcome s2 = reduce_ecc_step(GraphInstance{ProblemKind::EdgeCliqueCover, mix, 2});
    auto& st2 = std::get<ReductionStep>(s2);
    CHECK(st2.rule == RuleId::EccIsolated);
    CHECK(std::get<GraphInstance>(st2.branches[0].child).graph.num_vertices() == 4);

    StepOutcome kk = reduce_ecc_step(GraphInstance{ProblemKind::EdgeCliqueCover, cycle(4), 2});
    CHECK(std::holds_alternative<KernelTag>(kk));
}

TEST_CASE("sunflowers surface small cores first") {
    auto sf = find_sunflower({{1, 2}, {1, 3}, {1, 4}}, 3, 2);
    REQUIRE(sf.has_value());
    CHECK(sf->core == std::vector<int>{1});

    auto disjoint = find_sunflower({{1, 2}, {3, 4}, {5, 6}}, 3, 2);
    REQUIRE(disjoint.has_value());
    CHECK(disjoint->core.empty());

    CHECK_FALSE(find_sunflower({{1, 2}, {1, 3}}, 3, 2).has_value());
}

TEST_CASE("hitting steps replace petals by the core") {
    // five pairs through a common element exceed the k=1 kernel bound of four
    HittingInstance h1{{1, 2, 3, 4, 5, 6}, {{1, 2}, {1, 3}, {1, 4}, {1, 5}, {1, 6}}, 1, 2};
    StepOutcome s = reduce_hitting_step(h1);
    auto& st = std::get<ReductionStep>(s);
    CHECK(st.rule == RuleId::HsSunflower);
    const auto& child = std::get<HittingInstance>(st.branches[0].child);
    CHECK(child.family.back() == std::vector<int>{1});
    CHECK(child.family.size() == 4); // two petals traded for the core

    // pairwise disjoint beyond the budget is already refuted
    HittingInstance d{{1, 2, 3, 4, 5, 6},
                      {{1, 2}, {3, 4}, {5, 6}, {1, 3}, {1, 4}, {1, 5}, {2, 4}, {2, 5},
                       {2, 6}, {3, 5}, {3, 6}, {4, 6}, {1, 6}, {2, 3}, {4, 5}, {2, 3},
                       {3, 4}},
                      2, 2};
    // the kernel bound for k=2, d=2 is 16, so 17 sets trigger the search;
    // the family holds three pairwise disjoint sets, beyond the budget
    StepOutcome s2 = reduce_hitting_step(d);
    auto& sol = std::get<SolvedInfo>(s2);
    CHECK_FALSE(sol.sat);
}

TEST_CASE("aggregation dispatch matches the rule table") {
    StepOutcome a = reduce_arrow_step(ArrowInstance{3, 3});
    auto& as = std::get<ReductionStep>(a);
    CHECK(as.rule == RuleId::ArrowMergeAgents);
    CHECK(as.branches.size() == 3);
    for (auto& br : as.branches) CHECK(std::get<ArrowInstance>(br.child).n == 2);

    CHECK(std::holds_alternative<KernelTag>(reduce_arrow_step(ArrowInstance{3, 2})));

    StepOutcome a7 = reduce_arrow_step(ArrowInstance{7, 2});
    auto& as7 = std::get<ReductionStep>(a7);
    CHECK(as7.rule == RuleId::ArrowRestrictObjects);
    CHECK(as7.branches.size() == 2);
    for (auto& br : as7.branches) CHECK(std::get<ArrowInstance>(br.child).m == 5);
    CHECK_THROWS(reduce_arrow_step(ArrowInstance{2, 3}));

    StepOutcome g = reduce_gs_step(GSInstance{3, 3});
    CHECK(std::get<ReductionStep>(g).branches.size() == 3);
    CHECK(std::holds_alternative<KernelTag>(reduce_gs_step(GSInstance{3, 2})));
    StepOutcome g4 = reduce_gs_step(GSInstance{4, 2});
    for (auto& br : std::get<ReductionStep>(g4).branches)
        CHECK(std::get<GSInstance>(br.child).m == 3);
    CHECK_THROWS(reduce_gs_step(GSInstance{2, 2}));
}

TEST_CASE("kernelize records depth, branching, and kernel bounds") {
    ReductionTrace t = kernelize(GraphInstance{ProblemKind::VertexCover, star(5), 2});
    CHECK(t.depth == 2);
    CHECK(t.max_branch == 1);
    CHECK(t.solved_sat_leaves == 1);

    ReductionTrace a = kernelize(ArrowInstance{3, 4});
    CHECK(a.depth == 2);
    CHECK(a.max_branch == 3);
    CHECK(a.kernel_leaves == 9);

    ReductionTrace e = kernelize(GraphInstance{ProblemKind::EdgeCliqueCover, complete(4), 1});
    CHECK(e.depth == 2); // two merges reach the two-vertex kernel
    CHECK(e.kernel_leaves == 1);

    std::ostringstream os;
    trace_write(a, os);
    CHECK(os.str().find("arrow-merge-agents") != std::string::npos);
    CHECK(os.str().find("KERNEL") != std::string::npos);
}

TEST_CASE("reduction steps preserve oracle verdicts on desk instances") {
    uint64_t seed = 5;
    SplitMix64 rng(seed);
    int checked = 0;
    for (int t = 0; t < 40; t++) {
        int n = rng.range(4, 9);
        Graph g = random_graph(rng, n, 0.2 + 0.6 * rng.uniform());
        int kind = rng.range(0, 2);
        Instance inst;
        if (kind == 0) {
            int k = rng.range(1, std::max(1, n - 2));
            if (k >= n) continue;
            inst = GraphInstance{ProblemKind::DualColoring, g, k};
        } else if (kind == 1) {
            inst = GraphInstance{ProblemKind::VertexCover, g, rng.range(1, 3)};
        } else {
            inst = GraphInstance{ProblemKind::EdgeCliqueCover, g, rng.range(1, 2)};
        }
        StepOutcome out;
        try {
            out = reduce_step(inst);
        } catch (const std::exception&) {
            continue; // invalid parameter combination
        }
        if (auto* st = std::get_if<ReductionStep>(&out)) {
            for (const auto& br : st->branches)
                CHECK(instance_sat(inst) == instance_sat(br.child));
            checked++;
        } else if (auto* sol = std::get_if<SolvedInfo>(&out)) {
            CHECK(sol->sat == instance_sat(inst));
            checked++;
        }
    }
    CHECK(checked >= 25);
}
