#include "kerncert/builder.hpp"

#include <algorithm>

#include "kerncert/dimacs.hpp"

namespace kerncert {

CertBuilder::CertBuilder(const Formula& root) : root_(&root) {
    cert_.fingerprint = formula_fingerprint(root);
    cert_.root_nvars = root.num_vars();
    cert_.root_nclauses = root.num_clauses();
    next_var_ = root.num_vars() + 1;
}

StepRef CertBuilder::axiom(int clause_index1) {
    auto it = axiom_cache_.find(clause_index1);
    if (it != axiom_cache_.end()) return it->second;
    uint32_t id = cert_.add(ProofStep::mk_axiom(clause_index1));
    clauses_.push_back(root_->clause(clause_index1));
    StepRef r{id, 0};
    axiom_cache_.emplace(clause_index1, r);
    return r;
}

StepRef CertBuilder::resolve(StepRef a, StepRef b, int pivot_var) {
    Clause res = resolve_clauses(clause_of(a), clause_of(b), pivot_var);
    uint32_t id = cert_.add(ProofStep::mk_resolve(a, b, pivot_var));
    clauses_.push_back(std::move(res));
    return {id, 0};
}

StepRef CertBuilder::weaken(StepRef a, std::vector<Lit> added) {
    std::vector<Lit> lits = clause_of(a).lits();
    for (Lit l : added) lits.push_back(l);
    Clause res(std::move(lits));
    uint32_t id = cert_.add(ProofStep::mk_weaken(a, std::move(added)));
    clauses_.push_back(std::move(res));
    return {id, 0};
}

StepRef CertBuilder::gate_and(int fresh_var, Lit l1, Lit l2) {
    next_var_ = std::max(next_var_, fresh_var + 1);
    uint32_t id = cert_.add(ProofStep::mk_gate_and(fresh_var, l1, l2));
    clauses_.emplace_back();
    return {id, 0};
}

StepRef CertBuilder::gate_or(int fresh_var, Lit l1, Lit l2) {
    next_var_ = std::max(next_var_, fresh_var + 1);
    uint32_t id = cert_.add(ProofStep::mk_gate_or(fresh_var, l1, l2));
    clauses_.emplace_back();
    return {id, 0};
}

void CertBuilder::mark_target(StepRef r) { cert_.targets.push_back(r); }

Clause CertBuilder::clause_of(StepRef r) const {
    const ProofStep& s = cert_.steps.at(r.id - 1);
    if (s.kind == StepKind::GateAnd || s.kind == StepKind::GateOr)
        return gate_defining_clause(s, r.sub);
    if (r.sub != 0) throw std::runtime_error("sub-reference into non-gate step");
    return clauses_.at(r.id - 1);
}

Certificate CertBuilder::take() { return std::move(cert_); }

GateChain build_and_chain(CertBuilder& b, std::vector<Lit> inputs) {
    if (inputs.empty()) throw std::runtime_error("empty gate chain");
    GateChain c;
    c.is_and = true;
    c.inputs = std::move(inputs);
    Lit acc = c.inputs[0];
    for (size_t i = 1; i < c.inputs.size(); i++) {
        int v = b.alloc_var();
        c.gates.push_back(b.gate_and(v, acc, c.inputs[i]));
        acc = v;
    }
    c.out = acc;
    return c;
}

GateChain build_or_chain(CertBuilder& b, std::vector<Lit> inputs) {
    if (inputs.empty()) throw std::runtime_error("empty gate chain");
    GateChain c;
    c.is_and = false;
    c.inputs = std::move(inputs);
    Lit acc = c.inputs[0];
    for (size_t i = 1; i < c.inputs.size(); i++) {
        int v = b.alloc_var();
        c.gates.push_back(b.gate_or(v, acc, c.inputs[i]));
        acc = v;
    }
    c.out = acc;
    return c;
}

StepRef or_chain_lift(CertBuilder& b, const GateChain& c, size_t input_index) {
    if (c.gates.empty()) throw std::runtime_error("or_chain_lift on trivial chain");
    // node j has defining clauses (o_j | ~prev), (o_j | ~in_{j+1})
    size_t start = input_index == 0 ? 0 : input_index - 1;
    StepRef cur = {c.gates[start].id, static_cast<uint8_t>(input_index == 0 ? 1 : 2)};
    for (size_t j = start + 1; j < c.gates.size(); j++) {
        const ProofStep& g = b.current().steps[c.gates[j].id - 1];
        // (o_j | ~o_{j-1}) resolved on o_{j-1}
        cur = b.resolve(cur, {c.gates[j].id, 1}, var_of(g.gate_l1));
    }
    return cur;
}

StepRef or_chain_expand(CertBuilder& b, const GateChain& c) {
    if (c.gates.empty()) throw std::runtime_error("or_chain_expand on trivial chain");
    // fold .3 clauses (~o_j | o_{j-1} | in_{j+1}) downward from the output
    StepRef cur = {c.gates.back().id, 3};
    for (size_t j = c.gates.size() - 1; j-- > 0;) {
        const ProofStep& g = b.current().steps[c.gates[j].id - 1];
        (void)g;
        StepRef node3{c.gates[j].id, 3};
        // current clause contains o_j positively; node3 = (~o_j | prev | input)
        int pivot = b.current().steps[c.gates[j].id - 1].gate_var;
        cur = b.resolve(cur, node3, pivot);
    }
    return cur;
}

StepRef and_chain_proj(CertBuilder& b, const GateChain& c, size_t input_index) {
    if (c.gates.empty()) throw std::runtime_error("and_chain_proj on trivial chain");
    size_t start = input_index == 0 ? 0 : input_index - 1;
    StepRef cur = {c.gates[start].id, static_cast<uint8_t>(input_index == 0 ? 1 : 2)};
    // cur = (~o_start | in); lift through (~o_{j} | o_{j-1}) upward
    for (size_t j = start + 1; j < c.gates.size(); j++) {
        int pivot = b.current().steps[c.gates[j - 1].id - 1].gate_var;
        cur = b.resolve(cur, {c.gates[j].id, 1}, pivot);
    }
    return cur;
}

StepRef and_chain_intro(CertBuilder& b, const GateChain& c) {
    if (c.gates.empty()) throw std::runtime_error("and_chain_intro on trivial chain");
    StepRef cur = {c.gates.back().id, 3};
    for (size_t j = c.gates.size() - 1; j-- > 0;) {
        int pivot = b.current().steps[c.gates[j].id - 1].gate_var;
        cur = b.resolve(cur, {c.gates[j].id, 3}, pivot);
    }
    return cur;
}

ReplayResult replay_certificate(CertBuilder& b, const Formula& F, const Certificate& cert,
                                const AxiomProvider& axiom_of, std::vector<Lit> var_map) {
    if (static_cast<int>(var_map.size()) != F.num_vars() + 1)
        throw std::runtime_error("replay: variable map size mismatch");
    {
        std::vector<char> hit(b.peek_next_var() + 1, 0);
        for (int v = 1; v <= F.num_vars(); v++) {
            int w = var_of(var_map[v]);
            if (w == 0) throw std::runtime_error("replay: unmapped variable");
            if (w < static_cast<int>(hit.size())) {
                if (hit[w]) throw std::runtime_error("replay: variable map not injective");
                hit[w] = 1;
            }
        }
    }
    auto map_lit = [&](Lit l) -> Lit {
        Lit base = var_map[var_of(l)];
        return l > 0 ? base : -base;
    };

    ReplayResult out;
    out.step_refs.resize(cert.steps.size());
    auto map_ref = [&](StepRef r) -> StepRef {
        StepRef m = out.step_refs.at(r.id - 1);
        // sub-references into the replayed cert's own gates carry over;
        // axioms that map onto ambient gate rows keep their mapped sub
        if (r.sub) m.sub = r.sub;
        return m;
    };

    for (uint32_t id = 1; id <= cert.steps.size(); id++) {
        const ProofStep& s = cert.steps[id - 1];
        switch (s.kind) {
            case StepKind::Axiom:
                out.step_refs[id - 1] = axiom_of(s.axiom_index);
                break;
            case StepKind::Resolve:
                out.step_refs[id - 1] =
                    b.resolve(map_ref(s.left), map_ref(s.right), var_of(var_map[s.pivot]));
                break;
            case StepKind::GateAnd:
            case StepKind::GateOr: {
                int fresh = b.alloc_var();
                Lit l1 = map_lit(s.gate_l1), l2 = map_lit(s.gate_l2);
                out.step_refs[id - 1] = s.kind == StepKind::GateAnd ? b.gate_and(fresh, l1, l2)
                                                                    : b.gate_or(fresh, l1, l2);
                if (s.gate_var >= static_cast<int>(var_map.size()))
                    var_map.resize(s.gate_var + 1, 0);
                var_map[s.gate_var] = fresh;
                break;
            }
            case StepKind::Weaken: {
                std::vector<Lit> lits;
                lits.reserve(s.weaken_lits.size());
                for (Lit l : s.weaken_lits) lits.push_back(map_lit(l));
                out.step_refs[id - 1] = b.weaken(map_ref(s.left), std::move(lits));
                break;
            }
        }
    }
    for (StepRef t : cert.targets) out.target_refs.push_back(map_ref(t));
    return out;
}

Formula with_assumption_units(const Formula& f, const std::vector<Lit>& assumed) {
    Formula fx;
    for (const Clause& c : f.clauses()) fx.add_clause(c);
    for (Lit z : assumed) {
        if (z == 0 || var_of(z) > f.num_vars())
            throw std::runtime_error("assumption literal outside formula variables");
        fx.add_clause(Clause{z});
    }
    fx.set_num_vars(f.num_vars());
    return fx;
}

namespace {

struct Image {
    bool assumed = false;
    int assume_index = -1; // into assumed[]
    StepRef ref{};
    Clause clause;
};

} // namespace

Certificate deduction_transform(const Formula& f, const std::vector<Lit>& assumed,
                                const Certificate& refutation,
                                std::vector<uint32_t>* origins) {
    if (assumed.empty()) throw std::runtime_error("deduction transform needs assumptions");
    for (size_t i = 0; i < assumed.size(); i++)
        for (size_t j = i + 1; j < assumed.size(); j++)
            if (var_of(assumed[i]) == var_of(assumed[j]))
                throw std::runtime_error("assumption literals share a variable");

    Formula fx = with_assumption_units(f, assumed);
    Verdict v = check_certificate(fx, refutation);
    if (!v.accepted)
        throw std::runtime_error("deduction input rejected at step " +
                                 std::to_string(v.failed_step) + ": " + v.reason);
    std::vector<Clause> in_clauses = replay_step_clauses(fx, refutation);

    // identify an empty-clause target
    std::optional<StepRef> empty_target;
    for (StepRef t : refutation.targets)
        if (clause_of_ref(fx, refutation, in_clauses, t).empty()) empty_target = t;
    if (!empty_target) throw std::runtime_error("deduction input is not a refutation");

    // mark needed steps backwards from the empty-clause target
    std::vector<char> needed(refutation.steps.size() + 1, 0);
    std::vector<uint32_t> stack{empty_target->id};
    needed[empty_target->id] = 1;
    while (!stack.empty()) {
        uint32_t id = stack.back();
        stack.pop_back();
        const ProofStep& s = refutation.steps[id - 1];
        auto push = [&](StepRef r) {
            if (r.id && !needed[r.id]) {
                needed[r.id] = 1;
                stack.push_back(r.id);
            }
        };
        if (s.kind == StepKind::Resolve) {
            push(s.left);
            push(s.right);
        } else if (s.kind == StepKind::Weaken) {
            push(s.left);
        }
    }

    const int nc = f.num_clauses();
    std::unordered_map<int, int> assume_of_axiom; // axiom index -> assumption idx
    for (size_t i = 0; i < assumed.size(); i++) assume_of_axiom[nc + 1 + (int)i] = (int)i;

    CertBuilder out(f);
    if (origins) origins->clear();
    std::vector<Image> img(refutation.steps.size());
    std::vector<char> neg_assumed_in(assumed.size(), 0);
    auto record = [&](uint32_t input_id) {
        if (origins)
            while (origins->size() < out.num_steps()) origins->push_back(input_id);
    };

    auto is_neg_assumption_lit = [&](Lit l) -> int {
        for (size_t i = 0; i < assumed.size(); i++)
            if (l == -assumed[i]) return (int)i;
        return -1;
    };

    for (uint32_t id = 1; id <= refutation.steps.size(); id++) {
        if (!needed[id]) continue;
        const ProofStep& s = refutation.steps[id - 1];
        Image& m = img[id - 1];
        switch (s.kind) {
            case StepKind::Axiom: {
                auto it = assume_of_axiom.find(s.axiom_index);
                if (it != assume_of_axiom.end()) {
                    m.assumed = true;
                    m.assume_index = it->second;
                } else {
                    m.ref = out.axiom(s.axiom_index);
                    m.clause = f.clause(s.axiom_index);
                }
                break;
            }
            case StepKind::Resolve: {
                const Image& a = img[s.left.id - 1];
                const Image& b = img[s.right.id - 1];
                const ProofStep& ls = refutation.steps[s.left.id - 1];
                const ProofStep& rs = refutation.steps[s.right.id - 1];
                bool a_gate = ls.kind == StepKind::GateAnd || ls.kind == StepKind::GateOr;
                bool b_gate = rs.kind == StepKind::GateAnd || rs.kind == StepKind::GateOr;
                bool a_assumed = !a_gate && a.assumed;
                bool b_assumed = !b_gate && b.assumed;
                if (a_assumed && b_assumed)
                    throw std::runtime_error("resolution of two assumption units");
                if (a_assumed || b_assumed) {
                    // drop the assumption resolution; keep the other side,
                    // whose clause retains the negated assumption literal
                    const ProofStep& other_step = a_assumed ? rs : ls;
                    StepRef other_ref_in = a_assumed ? s.right : s.left;
                    const Image& o = img[other_ref_in.id - 1];
                    bool other_gate =
                        other_step.kind == StepKind::GateAnd || other_step.kind == StepKind::GateOr;
                    if (other_gate) {
                        m.ref = StepRef{o.ref.id, other_ref_in.sub};
                        m.clause = gate_defining_clause(
                            out.current().steps[o.ref.id - 1], other_ref_in.sub);
                    } else {
                        m.ref = o.ref;
                        m.clause = o.clause;
                    }
                    break;
                }
                StepRef ra = a_gate ? StepRef{a.ref.id, s.left.sub} : a.ref;
                StepRef rb = b_gate ? StepRef{b.ref.id, s.right.sub} : b.ref;
                Clause ca = out.clause_of(ra), cb = out.clause_of(rb);
                // tautology pre-check: a positive assumption literal meeting
                // a retained negated one cannot be transformed
                for (Lit l : ca.lits())
                    if (cb.contains(-l) && var_of(l) != s.pivot)
                        throw std::runtime_error(
                            "deduction transform stuck: refutation resolves a clause "
                            "satisfied under the assumptions");
                m.ref = out.resolve(ra, rb, s.pivot);
                m.clause = out.clause_of(m.ref);
                break;
            }
            case StepKind::GateAnd:
            case StepKind::GateOr: {
                m.ref = s.kind == StepKind::GateAnd
                            ? out.gate_and(s.gate_var, s.gate_l1, s.gate_l2)
                            : out.gate_or(s.gate_var, s.gate_l1, s.gate_l2);
                break;
            }
            case StepKind::Weaken: {
                const Image& a = img[s.left.id - 1];
                const ProofStep& ls = refutation.steps[s.left.id - 1];
                bool a_gate = ls.kind == StepKind::GateAnd || ls.kind == StepKind::GateOr;
                if (!a_gate && a.assumed)
                    throw std::runtime_error("cannot transform weakening of an assumption unit");
                for (Lit l : s.weaken_lits)
                    for (Lit z : assumed)
                        if (var_of(l) == var_of(z))
                            throw std::runtime_error(
                                "weakening introduces an assumption variable");
                StepRef ra = a_gate ? StepRef{a.ref.id, s.left.sub} : a.ref;
                // skip literals already present in the mapped source
                Clause src = out.clause_of(ra);
                std::vector<Lit> add;
                for (Lit l : s.weaken_lits)
                    if (!src.contains(l)) add.push_back(l);
                m.ref = add.empty() ? ra : out.weaken(ra, std::move(add));
                m.clause = out.clause_of(m.ref);
                break;
            }
        }
        (void)neg_assumed_in;
        record(id);
    }

    // final step: image of the empty clause, a subclause of the negated
    // assumption clause; weaken to the exact clause if literals are missing
    const Image& fin = img[empty_target->id - 1];
    if (fin.assumed) throw std::runtime_error("deduction target maps to an assumption");
    std::vector<Lit> missing;
    for (Lit z : assumed)
        if (!fin.clause.contains(-z)) missing.push_back(-z);
    for (Lit l : fin.clause.lits())
        if (is_neg_assumption_lit(l) == -1)
            throw std::runtime_error("internal: deduction image carries a stray literal");
    StepRef final_ref = fin.ref;
    if (!missing.empty()) final_ref = out.weaken(final_ref, std::move(missing));
    record(empty_target->id);
    out.mark_target(final_ref);
    return out.take();
}

} // namespace kerncert
