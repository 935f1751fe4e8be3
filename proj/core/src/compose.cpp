#include "kerncert/compose.hpp"

#include <algorithm>
#include <unordered_map>

#include "kerncert/dimacs.hpp"

namespace kerncert {

namespace {

std::vector<Lit> identity_var_map(int nvars) {
    std::vector<Lit> m(nvars + 1, 0);
    for (int v = 1; v <= nvars; v++) m[v] = v;
    return m;
}

// Certificate plus a per-step attribution: which tree component each step
// serves. Bucket 0 is always node-level glue.
struct NodeOutput {
    Certificate cert;
    std::vector<int> step_bucket;
    std::vector<std::string> bucket_labels;
};

void emit_node_gates(CertBuilder& b, const std::vector<GateDef>& gates,
                     std::unordered_map<int, StepRef>& gate_steps, int premise_nvars) {
    for (const GateDef& g : gates) {
        if (g.out_var <= premise_nvars)
            throw std::runtime_error("fragment variable collision: gate var not above premise");
        if (gate_steps.count(g.out_var))
            throw std::runtime_error("fragment variable collision: duplicate extension var " +
                                     std::to_string(g.out_var));
        StepRef r = g.is_and ? b.gate_and(g.out_var, g.l1, g.l2)
                             : b.gate_or(g.out_var, g.l1, g.l2);
        gate_steps.emplace(g.out_var, r);
    }
}

AxiomProvider scaffold_axiom_provider(CertBuilder& b, int premise_nclauses,
                                      const std::vector<GateDef>& gates,
                                      const std::unordered_map<int, StepRef>& gate_steps,
                                      std::vector<StepRef> extra_refs) {
    return [&b, premise_nclauses, &gates, &gate_steps,
            extra = std::move(extra_refs)](int idx) -> StepRef {
        if (idx <= premise_nclauses) return b.axiom(idx);
        int off = idx - premise_nclauses - 1;
        if (off < (int)(3 * gates.size())) {
            const GateDef& g = gates[off / 3];
            StepRef r = gate_steps.at(g.out_var);
            r.sub = static_cast<uint8_t>(off % 3 + 1);
            return r;
        }
        int ex = off - (int)(3 * gates.size());
        if (ex < (int)extra.size()) return extra[ex];
        throw std::runtime_error("axiom index beyond scaffold");
    };
}

// Replays `cert` into b, assigning each freshly created step the bucket of
// the input step it came from.
ReplayResult replay_with_buckets(CertBuilder& b, const Formula& F, const Certificate& cert,
                                 const AxiomProvider& axiom_of, std::vector<Lit> var_map,
                                 const std::vector<int>& input_bucket,
                                 std::vector<int>& out_bucket) {
    size_t before = b.num_steps();
    ReplayResult rep = replay_certificate(b, F, cert, axiom_of, std::move(var_map));
    out_bucket.resize(b.num_steps(), 0);
    uint32_t prev_max = (uint32_t)before;
    for (size_t i = 0; i < rep.step_refs.size(); i++) {
        uint32_t id = rep.step_refs[i].id;
        if (id > prev_max) {
            out_bucket[id - 1] = input_bucket.empty() ? 0 : input_bucket[i];
            prev_max = id;
        }
    }
    return rep;
}

NodeOutput compose_node(const ProofNode& node);

NodeOutput compose_internal(const ProofNode& node) {
    const Formula& premise = node.formula;
    NodeOutput out;
    out.bucket_labels.push_back("glue");
    CertBuilder b(premise);
    std::vector<int> bucket; // per step of b

    std::vector<GateDef> all_gates;
    for (const auto& br : node.branches)
        all_gates.insert(all_gates.end(), br.fragment.gates.begin(), br.fragment.gates.end());
    if (node.covering)
        all_gates.insert(all_gates.end(), node.covering->gates.begin(),
                         node.covering->gates.end());
    std::unordered_map<int, StepRef> gate_steps;

    bool closed = false;
    StepRef empty_ref{};
    std::vector<StepRef> branch_neg_refs;
    size_t gate_cursor = 0;

    for (size_t t = 0; t < node.branches.size() && !closed; t++) {
        const WitnessFragment& frag = node.branches[t].fragment;
        if (frag.partial) throw std::runtime_error("cannot compose a partial fragment");
        if (frag.premise_fingerprint != formula_fingerprint(premise))
            throw std::runtime_error("fragment premise fingerprint mismatch");
        if (!node.branches[t].child) throw std::runtime_error("missing branch child");

        // local bucket ids for this branch: fragment + the child's buckets
        int frag_bucket = (int)out.bucket_labels.size();
        out.bucket_labels.push_back("fragment:" + frag.note);

        // this branch's extension gates belong to its fragment
        emit_node_gates(b, frag.gates, gate_steps, premise.num_vars());
        bucket.resize(b.num_steps(), frag_bucket);

        Formula ext_plain = gates_extended_formula(premise, frag.gates);
        Formula ext = with_assumption_units(ext_plain, frag.assumed);

        CertBuilder bc(ext);
        auto bc_axiom = [&bc](int i) { return bc.axiom(i); };
        ReplayResult frag_rep = replay_certificate(bc, ext, frag.derivation, bc_axiom,
                                                   identity_var_map(ext.num_vars()));
        size_t child_begin = bc.num_steps();

        NodeOutput child = compose_node(*node.branches[t].child);
        if (frag.child_nclauses != node.branches[t].child->formula.num_clauses())
            throw std::runtime_error("fragment child clause count mismatch");
        int child_bucket_base = (int)out.bucket_labels.size();
        for (const std::string& l : child.bucket_labels) out.bucket_labels.push_back(l);

        std::vector<StepRef> image_refs = frag_rep.target_refs;
        auto child_axiom = [&image_refs](int i) -> StepRef { return image_refs.at(i - 1); };
        std::vector<int> bc_bucket(child_begin, frag_bucket);
        ReplayResult child_rep = replay_with_buckets(
            bc, node.branches[t].child->formula, child.cert, child_axiom,
            frag.child_var_to_lit,
            [&] {
                std::vector<int> ib(child.cert.steps.size());
                for (size_t i = 0; i < ib.size(); i++)
                    ib[i] = child_bucket_base + child.step_bucket[i];
                return ib;
            }(),
            bc_bucket);
        if (child_rep.target_refs.empty())
            throw std::runtime_error("child certificate has no target");
        StepRef child_empty = child_rep.target_refs.front();
        if (!bc.clause_of(child_empty).empty())
            throw std::runtime_error("child certificate target is not the empty clause");
        bc.mark_target(child_empty);
        Certificate branch_cert = bc.take();

        const std::vector<GateDef> gates_slice(all_gates.begin() + gate_cursor,
                                               all_gates.begin() + gate_cursor +
                                                   frag.gates.size());
        gate_cursor += frag.gates.size();

        if (frag.assumed.empty()) {
            auto axiom_of =
                scaffold_axiom_provider(b, premise.num_clauses(), gates_slice, gate_steps, {});
            ReplayResult rep = replay_with_buckets(b, ext_plain, branch_cert, axiom_of,
                                                   identity_var_map(ext_plain.num_vars()),
                                                   bc_bucket, bucket);
            empty_ref = rep.target_refs.front();
            closed = true;
            break;
        }

        std::vector<uint32_t> origins;
        Certificate transformed = deduction_transform(ext_plain, frag.assumed, branch_cert,
                                                      &origins);
        std::vector<int> tr_bucket(transformed.steps.size(), frag_bucket);
        for (size_t i = 0; i < transformed.steps.size(); i++) {
            uint32_t q = origins.at(i);
            if (q >= 1 && q <= branch_cert.steps.size()) tr_bucket[i] = bc_bucket[q - 1];
        }
        auto axiom_of =
            scaffold_axiom_provider(b, premise.num_clauses(), gates_slice, gate_steps, {});
        ReplayResult rep = replay_with_buckets(b, ext_plain, transformed, axiom_of,
                                               identity_var_map(ext_plain.num_vars()),
                                               tr_bucket, bucket);
        branch_neg_refs.push_back(rep.target_refs.front());
    }

    if (!closed) {
        if (!node.covering)
            throw std::runtime_error("multi-branch node lacks a covering derivation");
        const CoveringBundle& cov = *node.covering;
        emit_node_gates(b, node.covering->gates, gate_steps, premise.num_vars());
        bucket.resize(b.num_steps(), 0);
        Formula ext_all = gates_extended_formula(premise, all_gates);

        std::vector<StepRef> derived_refs = branch_neg_refs;
        if (cov.glue_extra.size() != branch_neg_refs.size() + cov.cases.size())
            throw std::runtime_error("covering glue clause list has wrong size");
        for (size_t i = 0; i < branch_neg_refs.size(); i++)
            if (!(b.clause_of(branch_neg_refs[i]) == cov.glue_extra[i]))
                throw std::runtime_error("branch negation clause differs from the glue input");

        for (size_t ci = 0; ci < cov.cases.size(); ci++) {
            const auto& cs = cov.cases[ci];
            Certificate transformed = deduction_transform(ext_all, cs.assumed, cs.refutation);
            auto axiom_of =
                scaffold_axiom_provider(b, premise.num_clauses(), all_gates, gate_steps, {});
            ReplayResult rep = replay_with_buckets(b, ext_all, transformed, axiom_of,
                                                   identity_var_map(ext_all.num_vars()), {},
                                                   bucket);
            StepRef r = rep.target_refs.front();
            if (!(b.clause_of(r) == cov.glue_extra[branch_neg_refs.size() + ci]))
                throw std::runtime_error("case negation clause differs from the glue input");
            derived_refs.push_back(r);
        }

        Formula glue_formula = ext_all;
        for (const Clause& c : cov.glue_extra) glue_formula.add_clause(c);
        auto axiom_of = scaffold_axiom_provider(b, premise.num_clauses(), all_gates, gate_steps,
                                                derived_refs);
        ReplayResult rep = replay_with_buckets(b, glue_formula, cov.glue, axiom_of,
                                               identity_var_map(glue_formula.num_vars()), {},
                                               bucket);
        if (rep.target_refs.empty() || !b.clause_of(rep.target_refs.front()).empty())
            throw std::runtime_error("covering glue does not conclude with the empty clause");
        empty_ref = rep.target_refs.front();
        closed = true;
    }

    b.mark_target(empty_ref);
    out.cert = b.take();
    bucket.resize(out.cert.steps.size(), 0);
    out.step_bucket = std::move(bucket);
    return out;
}

NodeOutput compose_node(const ProofNode& node) {
    if (node.leaf) {
        if (!is_accepted_refutation(node.formula, node.leaf_refutation))
            throw std::runtime_error("leaf refutation rejected for " +
                                     instance_label(node.instance));
        NodeOutput out;
        out.cert = node.leaf_refutation;
        out.bucket_labels = {node.leaf_label};
        out.step_bucket.assign(out.cert.steps.size(), 0);
        return out;
    }
    if (node.branches.empty()) throw std::runtime_error("missing branch");
    return compose_internal(node);
}

} // namespace

namespace {

void tree_shape(const ProofNode& node, int depth, uint64_t& max_depth, uint64_t& max_branch) {
    if (node.leaf) {
        max_depth = std::max<uint64_t>(max_depth, depth);
        return;
    }
    max_branch = std::max<uint64_t>(max_branch, node.branches.size());
    for (const auto& br : node.branches) tree_shape(*br.child, depth + 1, max_depth, max_branch);
}

} // namespace

ComposeResult compose_tree(const Formula& root_formula, const ProofNode& root) {
    if (formula_fingerprint(root_formula) != formula_fingerprint(root.formula))
        throw std::runtime_error("root formula differs from the tree root");
    NodeOutput out = compose_node(root);
    ComposeResult res;
    res.certificate = std::move(out.cert);
    // aggregate per-label subtotals (gate steps count as their 3 clauses)
    std::unordered_map<std::string, uint64_t> buckets;
    std::vector<std::string> order;
    for (size_t i = 0; i < res.certificate.steps.size(); i++) {
        const ProofStep& st = res.certificate.steps[i];
        uint64_t cnt = (st.kind == StepKind::GateAnd || st.kind == StepKind::GateOr) ? 3 : 1;
        const std::string& label = out.bucket_labels.at(out.step_bucket.at(i));
        if (!buckets.count(label)) order.push_back(label);
        buckets[label] += cnt;
    }
    res.report.step_clauses = count_step_clauses(res.certificate);
    res.report.step_lines = count_step_lines(res.certificate);
    res.report.extension_vars = count_extension_vars(res.certificate);
    for (const std::string& l : order) res.report.fragment_subtotals.push_back({l, buckets[l]});
    if (res.report.subtotal_sum() != res.report.step_clauses)
        throw std::runtime_error("internal: size subtotals do not add up");
    uint64_t depth = 0, branch = 1;
    tree_shape(root, 0, depth, branch);
    res.report.chain_length_C = depth;
    res.report.branching_factor_R = branch;
    return res;
}

StepRef derive_clause_from(CertBuilder& b, const std::vector<Clause>& premises,
                           const std::vector<StepRef>& premise_refs, const Clause& target,
                           const RefuterLimits& limits) {
    if (premises.size() != premise_refs.size())
        throw std::runtime_error("premise/ref arity mismatch");
    if (target.empty()) throw std::runtime_error("use a refutation for empty targets");
    Formula mini;
    int maxv = 0;
    for (const Clause& c : premises) {
        mini.add_clause(c);
        for (Lit l : c.lits()) maxv = std::max(maxv, var_of(l));
    }
    for (Lit l : target.lits()) maxv = std::max(maxv, var_of(l));
    mini.set_num_vars(maxv);
    std::vector<Lit> assumed;
    for (Lit l : target.lits()) assumed.push_back(-l);
    RefuterResult rr = refute_kernel(with_assumption_units(mini, assumed), limits);
    if (!rr.unsat())
        throw std::runtime_error("derivation failed: premises do not force the target clause");
    Certificate transformed = deduction_transform(mini, assumed, rr.refutation);
    auto axiom_of = [&premise_refs](int i) { return premise_refs.at(i - 1); };
    ReplayResult rep = replay_certificate(b, mini, transformed, axiom_of,
                                          identity_var_map(mini.num_vars()));
    StepRef r = rep.target_refs.front();
    if (!(b.clause_of(r) == target))
        throw std::runtime_error("internal: derived clause differs from the target");
    return r;
}

StepRef derive_clause_by_refutation(CertBuilder& b, const std::vector<StepRef>& premise_refs,
                                    const Clause& target, const RefuterLimits& limits) {
    std::vector<Clause> premises;
    premises.reserve(premise_refs.size());
    for (StepRef r : premise_refs) premises.push_back(b.clause_of(r));
    return derive_clause_from(b, premises, premise_refs, target, limits);
}

RefuteCheckResult refute_and_check(const Formula& f, const RefuterLimits& limits) {
    RefuteCheckResult out;
    RefuterResult rr = refute_kernel(f, limits);
    out.stats = rr.stats;
    if (rr.status == RefuterResult::Status::Limit)
        throw std::runtime_error("refuter resource cap exceeded (conflicts=" +
                                 std::to_string(rr.stats.conflicts) + ")");
    out.unsat = rr.unsat();
    if (out.unsat) {
        if (!is_accepted_refutation(f, rr.refutation))
            throw std::runtime_error("internal: emitted refutation rejected by the checker");
        out.certificate = std::move(rr.refutation);
    }
    return out;
}

// ---------------------------------------------------------------------

namespace {

struct SatAbort {
    std::string label;
    std::string reason;
};

struct TreeBuilder {
    const RefuterLimits& limits;
    std::unordered_map<uint64_t, Certificate> leaf_cache;
    bool partial = false;
    std::string partial_note;

    explicit TreeBuilder(const RefuterLimits& l) : limits(l) {}

    Certificate refute_leaf(const Formula& f, const std::string& label) {
        uint64_t fp = formula_fingerprint(f);
        auto it = leaf_cache.find(fp);
        if (it != leaf_cache.end()) return it->second;
        RefuterResult rr = refute_kernel(f, limits);
        if (rr.status == RefuterResult::Status::Limit)
            throw std::runtime_error("refuter resource cap exceeded on " + label);
        if (rr.sat()) throw SatAbort{label, "leaf instance is satisfiable"};
        leaf_cache.emplace(fp, rr.refutation);
        return rr.refutation;
    }

    std::unique_ptr<ProofNode> build(const TraceNode& t) {
        auto node = std::make_unique<ProofNode>();
        node->instance = t.instance;
        node->formula = encode_instance(t.instance);
        switch (t.kind) {
            case TraceNode::Kind::Kernel:
                node->leaf = true;
                node->leaf_label = "kernel:" + instance_label(t.instance);
                node->leaf_refutation = refute_leaf(node->formula, node->leaf_label);
                return node;
            case TraceNode::Kind::Solved:
                if (t.solved.sat) throw SatAbort{instance_label(t.instance), t.solved.reason};
                node->leaf = true;
                node->leaf_label = "solved-unsat:" + instance_label(t.instance);
                node->leaf_refutation = refute_leaf(node->formula, node->leaf_label);
                return node;
            case TraceNode::Kind::Reduced: break;
        }
        const ReductionStep& step = *t.step;
        // children first: satisfiable descendants abort before any witness
        // emission is attempted
        std::vector<std::unique_ptr<ProofNode>> child_nodes;
        std::vector<Formula> children;
        for (const auto& ch : t.children) {
            child_nodes.push_back(build(*ch));
            children.push_back(child_nodes.back()->formula);
        }

        NodeWitness w;
        if (auto* g = std::get_if<GraphInstance>(&t.instance)) {
            WitnessFragment frag;
            switch (g->kind) {
                case ProblemKind::DualColoring:
                    frag = emit_dualcol_witness(node->formula, *g, step, children[0]);
                    break;
                case ProblemKind::VertexCover:
                    frag = emit_vc_witness(node->formula, *g, step, children[0]);
                    break;
                case ProblemKind::EdgeCliqueCover:
                    frag = emit_ecc_witness(node->formula, *g, step, children[0]);
                    break;
            }
            w.fragments.push_back(std::move(frag));
        } else if (auto* h = std::get_if<HittingInstance>(&t.instance)) {
            w.fragments.push_back(emit_hitting_witness(node->formula, *h, step, children[0]));
        } else if (auto* a = std::get_if<ArrowInstance>(&t.instance)) {
            w = emit_arrow_witness(node->formula, *a, step, children, limits);
        } else {
            w = emit_gs_witness(node->formula, std::get<GSInstance>(t.instance), step, children,
                                limits);
        }

        if (w.partial) {
            // fall back to a direct refutation of this node
            partial = true;
            partial_note = w.note;
            node->leaf = true;
            node->leaf_label = "direct:" + instance_label(t.instance);
            node->leaf_refutation = refute_leaf(node->formula, node->leaf_label);
            return node;
        }
        for (size_t i = 0; i < w.fragments.size(); i++) {
            audit_fragment(node->formula, w.fragments[i], children[i]);
            ProofNode::BranchData bd;
            bd.fragment = std::move(w.fragments[i]);
            bd.child = std::move(child_nodes[i]);
            node->branches.push_back(std::move(bd));
        }
        node->covering = std::move(w.covering);
        return node;
    }
};

} // namespace

CertifyResult certify(const Instance& inst, const RefuterLimits& limits) {
    CertifyResult res;
    res.trace = kernelize(inst);
    TreeBuilder tb(limits);
    std::unique_ptr<ProofNode> tree;
    try {
        tree = tb.build(*res.trace.root);
    } catch (const SatAbort& s) {
        res.status = CertifyResult::Status::SatInstance;
        res.detail = s.label + ": " + s.reason;
        return res;
    }
    Formula root_formula = encode_instance(inst);
    ComposeResult comp = compose_tree(root_formula, *tree);
    if (!is_accepted_refutation(root_formula, comp.certificate))
        throw std::runtime_error("internal: composed certificate rejected");
    res.certificate = std::move(comp.certificate);
    res.report = std::move(comp.report);
    res.report.chain_length_C = res.trace.depth;
    res.report.branching_factor_R = res.trace.max_branch;
    res.status = tb.partial ? CertifyResult::Status::Partial : CertifyResult::Status::Accepted;
    res.detail = tb.partial_note;
    return res;
}

} // namespace kerncert
