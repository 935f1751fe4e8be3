#include "kerncert/checker.hpp"

#include <algorithm>
#include <unordered_set>

#include "kerncert/dimacs.hpp"

namespace kerncert {

namespace {

// Local clause arithmetic, deliberately separate from resolve_clauses.
struct LitSet {
    std::vector<Lit> lits; // sorted by (var, sign)

    static LitSet from(const Clause& c) { return {c.lits()}; }

    // union minus the pivot pair; false if the result is tautological
    bool resolve(const LitSet& other, int pivot, LitSet& out) const {
        out.lits.clear();
        size_t i = 0, j = 0;
        auto lt = [](Lit a, Lit b) {
            return var_of(a) != var_of(b) ? var_of(a) < var_of(b) : a < b;
        };
        while (i < lits.size() || j < other.lits.size()) {
            Lit l;
            if (i == lits.size()) l = other.lits[j++];
            else if (j == other.lits.size()) l = lits[i++];
            else if (lt(lits[i], other.lits[j])) l = lits[i++];
            else if (lt(other.lits[j], lits[i])) l = other.lits[j++];
            else { l = lits[i]; i++; j++; }
            if (var_of(l) == pivot) continue;
            if (!out.lits.empty() && out.lits.back() == l) continue;
            if (!out.lits.empty() && var_of(out.lits.back()) == var_of(l)) return false;
            out.lits.push_back(l);
        }
        return true;
    }

    bool has(Lit l) const { return std::find(lits.begin(), lits.end(), l) != lits.end(); }
};

} // namespace

Verdict check_certificate(const Formula& formula, const Certificate& cert) {
    if (cert.fingerprint != formula_fingerprint(formula))
        return Verdict::reject(0, "fingerprint mismatch");
    if (cert.root_nvars != formula.num_vars() || cert.root_nclauses != formula.num_clauses())
        return Verdict::reject(0, "header dimensions mismatch");

    std::vector<LitSet> clauses(cert.steps.size());
    std::vector<char> is_gate(cert.steps.size(), 0);

    // variables occurring anywhere so far (root formula + earlier steps)
    std::unordered_set<int> used_vars;
    for (const Clause& c : formula.clauses())
        for (Lit l : c.lits()) used_vars.insert(var_of(l));
    for (int v = 1; v <= formula.num_vars(); v++) used_vars.insert(v);

    auto deref = [&](StepRef r, uint32_t current, LitSet& out) -> const char* {
        if (r.id == 0 || r.id >= current) return "reference to undefined step";
        const ProofStep& s = cert.steps[r.id - 1];
        bool gate = s.kind == StepKind::GateAnd || s.kind == StepKind::GateOr;
        if (gate) {
            if (r.sub < 1 || r.sub > 3) return "gate step must be referenced as .1/.2/.3";
            int v = s.gate_var;
            Lit a = s.gate_l1, b = s.gate_l2;
            bool is_and = s.kind == StepKind::GateAnd;
            std::vector<Lit> lits;
            switch (r.sub) {
                case 1: lits = {is_and ? -v : v, is_and ? a : -a}; break;
                case 2: lits = {is_and ? -v : v, is_and ? b : -b}; break;
                default:
                    lits = {is_and ? v : -v, is_and ? -a : a, is_and ? -b : b};
                    break;
            }
            std::sort(lits.begin(), lits.end(), [](Lit x, Lit y) {
                return var_of(x) != var_of(y) ? var_of(x) < var_of(y) : x < y;
            });
            lits.erase(std::unique(lits.begin(), lits.end()), lits.end());
            out.lits = std::move(lits);
            return nullptr;
        }
        if (r.sub != 0) return "sub-reference into a non-gate step";
        out = clauses[r.id - 1];
        return nullptr;
    };

    for (uint32_t id = 1; id <= cert.steps.size(); id++) {
        const ProofStep& s = cert.steps[id - 1];
        switch (s.kind) {
            case StepKind::Axiom: {
                if (s.axiom_index < 1 || s.axiom_index > formula.num_clauses())
                    return Verdict::reject(id, "axiom index out of range");
                clauses[id - 1] = LitSet::from(formula.clause(s.axiom_index));
                break;
            }
            case StepKind::Resolve: {
                LitSet a, b;
                if (const char* e = deref(s.left, id, a)) return Verdict::reject(id, e);
                if (const char* e = deref(s.right, id, b)) return Verdict::reject(id, e);
                bool pa = a.has(s.pivot), na = a.has(-s.pivot);
                bool pb = b.has(s.pivot), nb = b.has(-s.pivot);
                if (!((pa && nb) || (na && pb)))
                    return Verdict::reject(id, "bad pivot " + std::to_string(s.pivot));
                LitSet out;
                if (!a.resolve(b, s.pivot, out))
                    return Verdict::reject(id, "tautological resolvent");
                clauses[id - 1] = std::move(out);
                break;
            }
            case StepKind::GateAnd:
            case StepKind::GateOr: {
                int v = s.gate_var;
                if (v < 1) return Verdict::reject(id, "gate variable must be positive");
                if (used_vars.count(v))
                    return Verdict::reject(id, "gate variable " + std::to_string(v) +
                                                   " is not fresh");
                if (s.gate_l1 == 0 || s.gate_l2 == 0)
                    return Verdict::reject(id, "zero literal in gate");
                if (var_of(s.gate_l1) == v || var_of(s.gate_l2) == v)
                    return Verdict::reject(id, "gate refers to its own output");
                if (var_of(s.gate_l1) == var_of(s.gate_l2) && s.gate_l1 != s.gate_l2)
                    return Verdict::reject(id, "degenerate gate over complementary literals");
                if (!used_vars.count(var_of(s.gate_l1)) || !used_vars.count(var_of(s.gate_l2)))
                    return Verdict::reject(id, "gate input variable undefined");
                used_vars.insert(v);
                is_gate[id - 1] = 1;
                break;
            }
            case StepKind::Weaken: {
                LitSet a;
                if (const char* e = deref(s.left, id, a)) return Verdict::reject(id, e);
                std::vector<Lit> lits = a.lits;
                for (Lit l : s.weaken_lits) {
                    if (l == 0) return Verdict::reject(id, "zero literal in weakening");
                    if (!used_vars.count(var_of(l)))
                        return Verdict::reject(id, "weakening introduces undefined variable");
                    lits.push_back(l);
                }
                std::sort(lits.begin(), lits.end(), [](Lit x, Lit y) {
                    return var_of(x) != var_of(y) ? var_of(x) < var_of(y) : x < y;
                });
                lits.erase(std::unique(lits.begin(), lits.end()), lits.end());
                for (size_t i = 0; i + 1 < lits.size(); i++)
                    if (var_of(lits[i]) == var_of(lits[i + 1]))
                        return Verdict::reject(id, "tautological weakening");
                clauses[id - 1].lits = std::move(lits);
                break;
            }
        }
        if (s.kind != StepKind::GateAnd && s.kind != StepKind::GateOr)
            for (Lit l : clauses[id - 1].lits) used_vars.insert(var_of(l));
    }

    for (const StepRef& t : cert.targets) {
        if (t.id == 0 || t.id > cert.steps.size())
            return Verdict::reject(t.id, "target references undefined step");
        const ProofStep& s = cert.steps[t.id - 1];
        bool gate = s.kind == StepKind::GateAnd || s.kind == StepKind::GateOr;
        if (gate && (t.sub < 1 || t.sub > 3))
            return Verdict::reject(t.id, "target must address a gate sub-clause");
        if (!gate && t.sub != 0) return Verdict::reject(t.id, "target sub-reference into non-gate");
    }
    return Verdict::accept();
}

bool is_accepted_refutation(const Formula& formula, const Certificate& cert) {
    if (!check_certificate(formula, cert).accepted) return false;
    std::vector<Clause> cls = replay_step_clauses(formula, cert);
    for (const StepRef& t : cert.targets)
        if (clause_of_ref(formula, cert, cls, t).empty()) return true;
    return false;
}

std::vector<Clause> replay_step_clauses(const Formula& formula, const Certificate& cert) {
    Verdict v = check_certificate(formula, cert);
    if (!v.accepted)
        throw std::runtime_error("certificate rejected at step " + std::to_string(v.failed_step) +
                                 ": " + v.reason);
    std::vector<Clause> out(cert.steps.size());
    for (uint32_t id = 1; id <= cert.steps.size(); id++) {
        const ProofStep& s = cert.steps[id - 1];
        switch (s.kind) {
            case StepKind::Axiom: out[id - 1] = formula.clause(s.axiom_index); break;
            case StepKind::Resolve: {
                Clause a = clause_of_ref(formula, cert, out, s.left);
                Clause b = clause_of_ref(formula, cert, out, s.right);
                out[id - 1] = resolve_clauses(a, b, s.pivot);
                break;
            }
            case StepKind::GateAnd:
            case StepKind::GateOr: break; // addressed via sub-references
            case StepKind::Weaken: {
                Clause a = clause_of_ref(formula, cert, out, s.left);
                std::vector<Lit> lits = a.lits();
                for (Lit l : s.weaken_lits) lits.push_back(l);
                out[id - 1] = Clause(std::move(lits));
                break;
            }
        }
    }
    return out;
}

Clause clause_of_ref(const Formula&, const Certificate& cert,
                     const std::vector<Clause>& step_clauses, StepRef ref) {
    const ProofStep& s = cert.steps.at(ref.id - 1);
    if (s.kind == StepKind::GateAnd || s.kind == StepKind::GateOr)
        return gate_defining_clause(s, ref.sub);
    return step_clauses.at(ref.id - 1);
}

} // namespace kerncert
