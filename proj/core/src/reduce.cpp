#include "kerncert/reduce.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>
#include <set>
#include <sstream>

#include "kerncert/graph_oracles.hpp"

namespace kerncert {

std::string instance_label(const Instance& inst) {
    std::ostringstream os;
    if (auto* g = std::get_if<GraphInstance>(&inst)) {
        const char* p = g->kind == ProblemKind::DualColoring ? "dualcol"
                        : g->kind == ProblemKind::VertexCover ? "vc"
                                                              : "ecc";
        os << p << "(n=" << g->graph.num_vertices() << ",m=" << g->graph.num_edges()
           << ",k=" << g->k << ")";
    } else if (auto* h = std::get_if<HittingInstance>(&inst)) {
        os << "hitting(|U|=" << h->universe.size() << ",|A|=" << h->family.size()
           << ",k=" << h->k << ",d=" << h->d << ")";
    } else if (auto* a = std::get_if<ArrowInstance>(&inst)) {
        os << "arrow(m=" << a->m << ",n=" << a->n << ")";
    } else {
        auto& s = std::get<GSInstance>(inst);
        os << "gs(m=" << s.m << ",n=" << s.n << ")";
    }
    return os.str();
}

Formula encode_instance(const Instance& inst, long max_literals) {
    if (auto* g = std::get_if<GraphInstance>(&inst)) {
        switch (g->kind) {
            case ProblemKind::DualColoring: return encode_dual_coloring(g->graph, g->k);
            case ProblemKind::VertexCover: return encode_vertex_cover(g->graph, g->k);
            case ProblemKind::EdgeCliqueCover: return encode_edge_clique_cover(g->graph, g->k);
        }
    }
    if (auto* h = std::get_if<HittingInstance>(&inst))
        return encode_hitting_set(h->universe, h->family, h->k, h->d);
    if (auto* a = std::get_if<ArrowInstance>(&inst))
        return encode_arrow(a->m, a->n, max_literals);
    auto& s = std::get<GSInstance>(inst);
    return encode_gs(s.m, s.n, max_literals);
}

long instance_measure(const Instance& inst) {
    if (auto* g = std::get_if<GraphInstance>(&inst)) return g->graph.num_vertices();
    if (auto* h = std::get_if<HittingInstance>(&inst)) return (long)h->family.size();
    if (auto* a = std::get_if<ArrowInstance>(&inst)) return a->m + a->n;
    auto& s = std::get<GSInstance>(inst);
    return s.m + s.n;
}

std::string rule_name(RuleId r) {
    switch (r) {
        case RuleId::DualColUniversal: return "dualcol-universal-vertex";
        case RuleId::DualColMatching: return "dualcol-complement-matching";
        case RuleId::DualColCrown: return "dualcol-crown";
        case RuleId::VcHighDegree: return "vc-high-degree";
        case RuleId::VcIsolated: return "vc-isolated";
        case RuleId::EccIsolated: return "ecc-isolated-block";
        case RuleId::EccTwinMerge: return "ecc-twin-merge";
        case RuleId::HsSunflower: return "hs-sunflower";
        case RuleId::ArrowRestrictObjects: return "arrow-restrict-objects";
        case RuleId::ArrowMergeAgents: return "arrow-merge-agents";
        case RuleId::GsRestrictObjects: return "gs-restrict-objects";
        case RuleId::GsMergeAgents: return "gs-merge-agents";
    }
    return "?";
}

namespace {

// child graph on kept vertices plus the child->parent vertex map
std::pair<Graph, std::vector<int>> remove_vertices(const Graph& g, const std::vector<int>& gone) {
    std::vector<char> drop(g.num_vertices() + 1, 0);
    for (int v : gone) drop[v] = 1;
    std::vector<int> keep;
    for (int v = 1; v <= g.num_vertices(); v++)
        if (!drop[v]) keep.push_back(v);
    return {g.induced(keep), keep};
}

std::vector<int> isolated_vertices(const Graph& g) {
    std::vector<int> out;
    for (int v = 1; v <= g.num_vertices(); v++)
        if (g.degree(v) == 0) out.push_back(v);
    return out;
}

} // namespace

StepOutcome reduce_dualcol_step(const GraphInstance& inst) {
    if (inst.kind != ProblemKind::DualColoring)
        throw std::runtime_error("dualcol step on wrong instance kind");
    const Graph& g = inst.graph;
    int n = g.num_vertices(), k = inst.k;
    if (k < 1 || k >= n) throw std::runtime_error("dualcol instance requires 1 <= k < n");
    if (n - k == 1) {
        if (g.num_edges() > 0) return SolvedInfo{false, "one color with an edge present"};
        return SolvedInfo{true, "edgeless graph is 1-colorable"};
    }
    if (n <= 3 * k - 2) return KernelTag{};

    // universal vertices, one per step
    for (int v = 1; v <= n; v++) {
        if (g.degree(v) == n - 1) {
            auto [child, keep] = remove_vertices(g, {v});
            ReductionStep st;
            st.rule = RuleId::DualColUniversal;
            st.removed_vertex = v;
            ReductionBranch br;
            br.child = GraphInstance{ProblemKind::DualColoring, child, k};
            br.vertex_map = keep;
            br.side_condition = "vertex " + std::to_string(v) + " adjacent to all others";
            st.branches.push_back(std::move(br));
            return st;
        }
    }

    Graph comp = g.complement();
    CrownResult cr = find_crown(comp, k);
    if (cr.kind == CrownResult::Kind::MatchingFound) {
        std::ostringstream os;
        os << "complement matching of size " << cr.matching.size() << " >= k: pairs";
        for (size_t i = 0; i < cr.matching.size() && i < (size_t)k; i++)
            os << ' ' << cr.matching[i].first << '-' << cr.matching[i].second;
        return SolvedInfo{true, os.str()};
    }
    if (cr.kind == CrownResult::Kind::TooSmall)
        throw std::runtime_error("internal: crown trichotomy failed above kernel size");

    std::vector<int> gone = cr.crown.crown;
    gone.insert(gone.end(), cr.crown.head.begin(), cr.crown.head.end());
    std::sort(gone.begin(), gone.end());
    auto [child, keep] = remove_vertices(g, gone);
    int k2 = k - (int)cr.crown.head.size();
    if (k2 < 1) throw std::runtime_error("internal: crown larger than the parameter");
    ReductionStep st;
    st.rule = RuleId::DualColCrown;
    st.crown = cr.crown;
    st.removed_set = gone;
    ReductionBranch br;
    br.child = GraphInstance{ProblemKind::DualColoring, child, k2};
    br.vertex_map = keep;
    br.side_condition = "complement crown with |H|=" + std::to_string(cr.crown.head.size());
    st.branches.push_back(std::move(br));
    return st;
}

StepOutcome reduce_vc_step(const GraphInstance& inst) {
    if (inst.kind != ProblemKind::VertexCover)
        throw std::runtime_error("vc step on wrong instance kind");
    const Graph& g = inst.graph;
    int n = g.num_vertices(), k = inst.k;
    if (k < 0) throw std::runtime_error("vc instance requires k >= 0");
    int m = g.num_edges();
    if (m > 0 && k == 0) return SolvedInfo{false, "edges present with zero budget"};

    for (int v = 1; v <= n; v++) {
        if (g.degree(v) > k) {
            auto [child, keep] = remove_vertices(g, {v});
            ReductionStep st;
            st.rule = RuleId::VcHighDegree;
            st.removed_vertex = v;
            ReductionBranch br;
            br.child = GraphInstance{ProblemKind::VertexCover, child, k - 1};
            br.vertex_map = keep;
            br.side_condition =
                "vertex " + std::to_string(v) + " has degree " + std::to_string(g.degree(v));
            st.branches.push_back(std::move(br));
            return st;
        }
    }
    std::vector<int> iso = isolated_vertices(g);
    if (!iso.empty()) {
        auto [child, keep] = remove_vertices(g, iso);
        ReductionStep st;
        st.rule = RuleId::VcIsolated;
        st.removed_set = iso;
        ReductionBranch br;
        br.child = GraphInstance{ProblemKind::VertexCover, child, k};
        br.vertex_map = keep;
        br.side_condition = std::to_string(iso.size()) + " isolated vertices";
        st.branches.push_back(std::move(br));
        return st;
    }
    if (n == 0) {
        if (k == 0) return KernelTag{};
        return SolvedInfo{true, "no vertices left; the empty cover works"};
    }
    // stalled: all degrees in [1, k]
    if (m > k * k) return SolvedInfo{false, "more than k^2 edges cannot be covered by k"};
    if ((int)max_matching(g).size() > k)
        return SolvedInfo{false, "matching larger than the budget"};
    if (n < k) {
        // too few vertices to fill the slots; settle semantically
        if (vc_at_most(g, k)) return SolvedInfo{true, "cover exists below the slot count"};
        return SolvedInfo{false, "no cover within the budget"};
    }
    if (n <= k * k) return KernelTag{};
    if (vc_at_most(g, k)) return SolvedInfo{true, "bounded search found a cover"};
    return SolvedInfo{false, "bounded search ruled out every cover"};
}

StepOutcome reduce_ecc_step(const GraphInstance& inst) {
    if (inst.kind != ProblemKind::EdgeCliqueCover)
        throw std::runtime_error("ecc step on wrong instance kind");
    const Graph& g = inst.graph;
    long n = g.num_vertices();
    int k = inst.k;
    if (k < 0) throw std::runtime_error("ecc instance requires k >= 0");
    if (k == 0 && g.num_edges() > 0)
        return SolvedInfo{false, "edges present with no cliques available"};
    long cap = k < 62 ? (1L << k) : (1L << 62);
    if (n <= cap) return KernelTag{};

    std::vector<int> iso = isolated_vertices(g);
    if (!iso.empty() && (long)iso.size() * cap >= n) {
        auto [child, keep] = remove_vertices(g, iso);
        ReductionStep st;
        st.rule = RuleId::EccIsolated;
        st.removed_set = iso;
        ReductionBranch br;
        br.child = GraphInstance{ProblemKind::EdgeCliqueCover, child, k};
        br.vertex_map = keep;
        br.side_condition = std::to_string(iso.size()) + " isolated vertices >= n/2^k";
        st.branches.push_back(std::move(br));
        return st;
    }
    for (const auto& cls : twin_classes(g)) {
        if (cls.size() < 2 || (long)cls.size() * cap < n) continue;
        int v = cls[0], w = cls[1];
        // an isolated pair loses its dedicated clique with the merge
        bool lone_pair = g.degree(v) == 1;
        auto [child, keep] = remove_vertices(g, {w});
        ReductionStep st;
        st.rule = RuleId::EccTwinMerge;
        st.twins = {v, w};
        st.removed_vertex = w;
        ReductionBranch br;
        br.child = GraphInstance{ProblemKind::EdgeCliqueCover, child, lone_pair ? k - 1 : k};
        br.vertex_map = keep;
        br.side_condition = "twins " + std::to_string(v) + "," + std::to_string(w) +
                            " in a class of size " + std::to_string(cls.size()) +
                            (lone_pair ? ", recycling their clique" : "");
        st.branches.push_back(std::move(br));
        return st;
    }
    return SolvedInfo{false, "stalled above the kernel bound: no cover of size k exists"};
}

std::optional<Sunflower> find_sunflower(const std::vector<std::vector<int>>& family, int petals,
                                        int d) {
    if (petals < 1) throw std::runtime_error("sunflower needs at least one petal");
    std::vector<std::vector<int>> sets;
    for (auto s : family) {
        std::sort(s.begin(), s.end());
        s.erase(std::unique(s.begin(), s.end()), s.end());
        if ((int)s.size() > d) throw std::runtime_error("set exceeds size bound d");
        sets.push_back(std::move(s));
    }
    // candidate cores: subsets of members, tried small to large
    std::set<std::vector<int>> cores;
    cores.insert({});
    for (const auto& s : sets) {
        int sz = (int)s.size();
        for (int mask = 0; mask < (1 << sz); mask++) {
            std::vector<int> sub;
            for (int i = 0; i < sz; i++)
                if (mask & (1 << i)) sub.push_back(s[i]);
            cores.insert(std::move(sub));
        }
    }
    std::vector<std::vector<int>> ordered(cores.begin(), cores.end());
    std::sort(ordered.begin(), ordered.end(), [](const auto& a, const auto& b) {
        return a.size() != b.size() ? a.size() < b.size() : a < b;
    });

    for (const auto& core : ordered) {
        std::vector<size_t> cand;
        for (size_t i = 0; i < sets.size(); i++) {
            if (sets[i] == core) continue; // petals differ from the core
            if (std::includes(sets[i].begin(), sets[i].end(), core.begin(), core.end()))
                cand.push_back(i);
        }
        if ((int)cand.size() < petals) continue;
        // exact search for `petals` sets whose pairwise intersection is the core,
        // i.e. whose kernels (set minus core) are pairwise disjoint
        std::vector<std::vector<int>> kern(cand.size());
        for (size_t i = 0; i < cand.size(); i++) {
            std::set_difference(sets[cand[i]].begin(), sets[cand[i]].end(), core.begin(),
                                core.end(), std::back_inserter(kern[i]));
        }
        std::vector<size_t> chosen;
        std::set<int> used;
        auto rec = [&](auto&& self, size_t from) -> bool {
            if ((int)chosen.size() == petals) return true;
            if (cand.size() - from < petals - chosen.size()) return false;
            for (size_t i = from; i < cand.size(); i++) {
                bool ok = true;
                for (int x : kern[i])
                    if (used.count(x)) {
                        ok = false;
                        break;
                    }
                if (!ok) continue;
                chosen.push_back(cand[i]);
                for (int x : kern[i]) used.insert(x);
                if (self(self, i + 1)) return true;
                for (int x : kern[i]) used.erase(x);
                chosen.pop_back();
            }
            return false;
        };
        if (rec(rec, 0)) {
            Sunflower sf;
            sf.core = core;
            sf.petal_indices = chosen;
            return sf;
        }
    }
    return std::nullopt;
}

namespace {

long hs_kernel_bound(int k, int d) {
    long f = 1;
    for (int i = 2; i <= d; i++) f *= i;
    long kd = 1;
    for (int i = 0; i < d; i++) {
        kd *= std::max(k, 1);
        if (kd > (1L << 50)) return (1L << 50);
    }
    return (long)d * f * kd;
}

} // namespace

StepOutcome reduce_hitting_step(const HittingInstance& inst) {
    if (inst.k < 0) throw std::runtime_error("hitting instance requires k >= 0");
    if (inst.family.empty()) return SolvedInfo{true, "empty family"};
    for (const auto& s : inst.family)
        if (s.empty()) return SolvedInfo{false, "family contains the empty set"};
    if ((long)inst.family.size() <= hs_kernel_bound(inst.k, inst.d)) return KernelTag{};

    auto sf = find_sunflower(inst.family, inst.k + 1, inst.d);
    if (!sf)
        throw std::runtime_error(
            "internal: no sunflower above the kernel bound (sunflower lemma violated)");
    if (sf->core.empty()) {
        return SolvedInfo{false, std::to_string(inst.k + 1) + " pairwise disjoint sets exceed k"};
    }
    ReductionStep st;
    st.rule = RuleId::HsSunflower;
    st.sunflower_core = sf->core;
    st.petal_indices = sf->petal_indices;

    std::vector<std::vector<int>> fam2;
    std::vector<char> drop(inst.family.size(), 0);
    for (size_t i : sf->petal_indices) drop[i] = 1;
    auto norm = [](std::vector<int> s) {
        std::sort(s.begin(), s.end());
        return s;
    };
    std::vector<int> core_n = norm(sf->core);
    for (size_t i = 0; i < inst.family.size(); i++)
        if (!drop[i] && norm(inst.family[i]) != core_n) fam2.push_back(inst.family[i]);
    fam2.push_back(sf->core); // the core set always sits last
    std::set<int> uni;
    for (const auto& s : fam2) uni.insert(s.begin(), s.end());

    ReductionBranch br;
    br.child = HittingInstance{{uni.begin(), uni.end()}, fam2, inst.k, inst.d};
    br.side_condition = "sunflower with " + std::to_string(inst.k + 1) + " petals, core size " +
                        std::to_string(sf->core.size());
    st.branches.push_back(std::move(br));
    return st;
}

StepOutcome reduce_arrow_step(const ArrowInstance& inst) {
    if (inst.m < 3) throw std::runtime_error("arrow reduction requires m >= 3");
    if (inst.n < 2) throw std::runtime_error("arrow reduction requires n >= 2");
    if (inst.m >= 6) {
        ReductionStep st;
        st.rule = RuleId::ArrowRestrictObjects;
        ReductionBranch b1;
        b1.child = ArrowInstance{5, inst.n};
        b1.side_condition = "every agent non-dictatorial for the fixed 5-object restriction";
        ReductionBranch b2;
        b2.child = ArrowInstance{5, inst.n};
        b2.side_condition = "some agent dictates the fixed restriction; a witness pair moves "
                            "the dictatorship to an alternative restriction";
        st.branches.push_back(std::move(b1));
        st.branches.push_back(std::move(b2));
        return st;
    }
    if (inst.n >= 3) {
        ReductionStep st;
        st.rule = RuleId::ArrowMergeAgents;
        for (auto [a, b] : {std::pair{1, 2}, std::pair{1, 3}, std::pair{2, 3}}) {
            ReductionBranch br;
            br.child = ArrowInstance{inst.m, inst.n - 1};
            br.merge = {a, b};
            br.side_condition = "merge of agents " + std::to_string(a) + "," + std::to_string(b) +
                                " is non-dictatorial";
            st.branches.push_back(std::move(br));
        }
        return st;
    }
    return KernelTag{};
}

StepOutcome reduce_gs_step(const GSInstance& inst) {
    if (inst.m < 3) throw std::runtime_error("gs reduction requires m >= 3");
    if (inst.n < 2) throw std::runtime_error("gs reduction requires n >= 2");
    if (inst.m >= 4) {
        // branch-per-candidate-dictator reading of the restriction rule
        ReductionStep st;
        st.rule = RuleId::GsRestrictObjects;
        ReductionBranch b0;
        b0.child = GSInstance{3, inst.n};
        b0.side_condition = "restriction to {1,2,3} non-dictatorial";
        st.branches.push_back(std::move(b0));
        for (int i = 1; i <= inst.n; i++) {
            ReductionBranch bi;
            bi.child = GSInstance{3, inst.n};
            bi.side_condition =
                "all 3-object restrictions dictated by agent " + std::to_string(i) +
                " (discharged via an interpolation chain)";
            st.branches.push_back(std::move(bi));
        }
        return st;
    }
    if (inst.n >= 3) {
        ReductionStep st;
        st.rule = RuleId::GsMergeAgents;
        for (auto [a, b] : {std::pair{1, 2}, std::pair{1, 3}, std::pair{2, 3}}) {
            ReductionBranch br;
            br.child = GSInstance{inst.m, inst.n - 1};
            br.merge = {a, b};
            br.side_condition = "merge of agents " + std::to_string(a) + "," + std::to_string(b) +
                                " is non-dictatorial";
            st.branches.push_back(std::move(br));
        }
        return st;
    }
    return KernelTag{};
}

StepOutcome reduce_step(const Instance& inst) {
    if (auto* g = std::get_if<GraphInstance>(&inst)) {
        switch (g->kind) {
            case ProblemKind::DualColoring: return reduce_dualcol_step(*g);
            case ProblemKind::VertexCover: return reduce_vc_step(*g);
            case ProblemKind::EdgeCliqueCover: return reduce_ecc_step(*g);
        }
    }
    if (auto* h = std::get_if<HittingInstance>(&inst)) return reduce_hitting_step(*h);
    if (auto* a = std::get_if<ArrowInstance>(&inst)) return reduce_arrow_step(*a);
    return reduce_gs_step(std::get<GSInstance>(inst));
}

void assert_kernel_bounds(const Instance& inst) {
    auto fail = [&](const std::string& what) {
        throw std::runtime_error("kernel bound violated for " + instance_label(inst) + ": " +
                                 what);
    };
    if (auto* g = std::get_if<GraphInstance>(&inst)) {
        int n = g->graph.num_vertices(), k = g->k;
        switch (g->kind) {
            case ProblemKind::DualColoring:
                if (n > 3 * k - 2) fail("|V| > 3k-2");
                break;
            case ProblemKind::VertexCover: {
                int noniso = 0;
                for (int v = 1; v <= n; v++)
                    if (g->graph.degree(v) > 0) noniso++;
                if (noniso > k * k) fail("non-isolated count > k^2");
                break;
            }
            case ProblemKind::EdgeCliqueCover:
                if (k >= 62 ? false : (long)n > (1L << k)) fail("|V| > 2^k");
                break;
        }
        return;
    }
    if (auto* h = std::get_if<HittingInstance>(&inst)) {
        if ((long)h->family.size() > hs_kernel_bound(h->k, h->d)) fail("|family| > d*d!*k^d");
        return;
    }
    if (auto* a = std::get_if<ArrowInstance>(&inst)) {
        if (a->m > 5 || a->n != 2) fail("arrow kernel must have m <= 5, n = 2");
        return;
    }
    auto& s = std::get<GSInstance>(inst);
    if (s.m != 3 || s.n != 2) fail("gs kernel must be (3, 2)");
}

namespace {

void expand(TraceNode& node, ReductionTrace& trace, int depth) {
    StepOutcome out = reduce_step(node.instance);
    if (std::holds_alternative<KernelTag>(out)) {
        node.kind = TraceNode::Kind::Kernel;
        assert_kernel_bounds(node.instance);
        trace.kernel_leaves++;
        trace.depth = std::max(trace.depth, depth);
        return;
    }
    if (auto* s = std::get_if<SolvedInfo>(&out)) {
        node.kind = TraceNode::Kind::Solved;
        node.solved = *s;
        (s->sat ? trace.solved_sat_leaves : trace.solved_unsat_leaves)++;
        trace.depth = std::max(trace.depth, depth);
        return;
    }
    node.kind = TraceNode::Kind::Reduced;
    node.step = std::move(std::get<ReductionStep>(out));
    trace.max_branch = std::max<int>(trace.max_branch, (int)node.step->branches.size());
    for (const ReductionBranch& br : node.step->branches) {
        if (instance_measure(br.child) >= instance_measure(node.instance))
            throw std::runtime_error("internal: reduction measure failed to decrease at " +
                                     instance_label(node.instance));
        auto child = std::make_unique<TraceNode>();
        child->instance = br.child;
        expand(*child, trace, depth + 1);
        node.children.push_back(std::move(child));
    }
}

long soft_chain_bound(const Instance& inst) {
    if (auto* g = std::get_if<GraphInstance>(&inst)) {
        long n = g->graph.num_vertices(), k = g->k;
        switch (g->kind) {
            case ProblemKind::DualColoring: return 4 * k + 4;
            case ProblemKind::VertexCover: return 2 * k + 2;
            case ProblemKind::EdgeCliqueCover: {
                if (n <= 1) return 2;
                double ratio = 1.0 + 1.0 / (std::pow(2.0, g->k) - 1.0 + 1e-9);
                return (long)(std::log((double)n) / std::log(ratio)) + 2;
            }
        }
    }
    if (auto* h = std::get_if<HittingInstance>(&inst)) {
        double nd = std::pow((double)h->universe.size(), h->d);
        return (long)(nd / std::max(1, h->k)) + 2;
    }
    if (auto* a = std::get_if<ArrowInstance>(&inst)) return a->n + 1;
    return std::get<GSInstance>(inst).n + 1;
}

} // namespace

ReductionTrace kernelize(const Instance& inst) {
    ReductionTrace trace;
    trace.root = std::make_unique<TraceNode>();
    trace.root->instance = inst;
    expand(*trace.root, trace, 0);
    long bound = soft_chain_bound(inst);
    if (trace.depth > bound) {
        std::ostringstream os;
        os << "chain length " << trace.depth << " exceeds the soft bound " << bound << " for "
           << instance_label(inst);
        trace.warnings.push_back(os.str());
    }
    return trace;
}

namespace {

void write_node(const TraceNode& node, std::ostream& out, int indent) {
    for (int i = 0; i < indent; i++) out << "  ";
    out << instance_label(node.instance);
    switch (node.kind) {
        case TraceNode::Kind::Kernel: out << " KERNEL\n"; return;
        case TraceNode::Kind::Solved:
            out << " SOLVED(" << (node.solved.sat ? "sat" : "unsat") << ": " << node.solved.reason
                << ")\n";
            return;
        case TraceNode::Kind::Reduced: break;
    }
    const ReductionStep& st = *node.step;
    out << " rule=" << rule_name(st.rule) << " branches=" << st.branches.size();
    if (st.removed_vertex) out << " removed=" << st.removed_vertex;
    if (!st.removed_set.empty()) out << " removed_set_size=" << st.removed_set.size();
    if (st.twins.first) out << " twins=" << st.twins.first << "," << st.twins.second;
    if (!st.petal_indices.empty())
        out << " petals=" << st.petal_indices.size() << " core_size=" << st.sunflower_core.size();
    if (st.rule == RuleId::DualColCrown)
        out << " crown=" << st.crown.crown.size() << "+" << st.crown.head.size();
    out << '\n';
    for (size_t b = 0; b < node.children.size(); b++) {
        for (int i = 0; i < indent + 1; i++) out << "  ";
        out << "case[" << b << "]: " << st.branches[b].side_condition << '\n';
        write_node(*node.children[b], out, indent + 2);
    }
}

} // namespace

void trace_write(const ReductionTrace& t, std::ostream& out) {
    out << "trace depth=" << t.depth << " max_branch=" << t.max_branch
        << " kernels=" << t.kernel_leaves << " solved_sat=" << t.solved_sat_leaves
        << " solved_unsat=" << t.solved_unsat_leaves << '\n';
    for (const std::string& w : t.warnings) out << "warning: " << w << '\n';
    write_node(*t.root, out, 0);
}

} // namespace kerncert
