#include <algorithm>
#include <map>

#include "kerncert/dimacs.hpp"
#include "kerncert/witness.hpp"

namespace kerncert {

Formula gates_extended_formula(const Formula& premise, const std::vector<GateDef>& gates) {
    Formula ext;
    for (const Clause& c : premise.clauses()) ext.add_clause(c);
    int maxv = premise.num_vars();
    for (const GateDef& g : gates) {
        if (g.out_var <= premise.num_vars())
            throw std::runtime_error("gate output variable not fresh");
        int v = g.out_var;
        if (g.is_and) {
            ext.add_clause(Clause{-v, g.l1});
            ext.add_clause(Clause{-v, g.l2});
            ext.add_clause(Clause{v, -g.l1, -g.l2});
        } else {
            ext.add_clause(Clause{v, -g.l1});
            ext.add_clause(Clause{v, -g.l2});
            ext.add_clause(Clause{-v, g.l1, g.l2});
        }
        maxv = std::max(maxv, v);
    }
    ext.set_num_vars(maxv);
    return ext;
}

Formula fragment_extended_formula(const Formula& premise, const WitnessFragment& frag) {
    Formula ext = gates_extended_formula(premise, frag.gates);
    return with_assumption_units(ext, frag.assumed);
}

void audit_fragment(const Formula& premise, const WitnessFragment& frag,
                    const Formula& child_formula) {
    if (frag.premise_fingerprint != formula_fingerprint(premise))
        throw std::runtime_error("fragment premise fingerprint mismatch");
    if (frag.child_nvars != child_formula.num_vars() ||
        frag.child_nclauses != child_formula.num_clauses())
        throw std::runtime_error("fragment child dimensions mismatch");
    if ((int)frag.child_var_to_lit.size() != child_formula.num_vars() + 1)
        throw std::runtime_error("fragment renaming has wrong arity");
    if ((int)frag.derivation.targets.size() != child_formula.num_clauses())
        throw std::runtime_error("fragment target count differs from the child clause count");

    Formula ext = fragment_extended_formula(premise, frag);
    Verdict v = check_certificate(ext, frag.derivation);
    if (!v.accepted)
        throw std::runtime_error("fragment derivation rejected at step " +
                                 std::to_string(v.failed_step) + ": " + v.reason);
    std::vector<Clause> steps = replay_step_clauses(ext, frag.derivation);
    for (int i = 1; i <= child_formula.num_clauses(); i++) {
        std::vector<Lit> lits;
        for (Lit l : child_formula.clause(i).lits()) {
            Lit base = frag.child_var_to_lit[var_of(l)];
            if (base == 0) throw std::runtime_error("fragment renaming misses a child variable");
            lits.push_back(l > 0 ? base : -base);
        }
        Clause expected(std::move(lits));
        Clause got = clause_of_ref(ext, frag.derivation, steps, frag.derivation.targets[i - 1]);
        if (!(got == expected))
            throw std::runtime_error("fragment image mismatch at child clause " +
                                     std::to_string(i));
    }
}

// ---------------------------------------------------------------------

int php_var(int, int holes, int pigeon, int hole) { return (pigeon - 1) * holes + hole; }

Formula php_formula(int pigeons, int holes) {
    if (pigeons < 1 || holes < 0) throw std::runtime_error("bad pigeonhole dimensions");
    Formula f;
    f.meta().problem = "php";
    f.meta().params = {{"pigeons", pigeons}, {"holes", holes}};
    for (int i = 1; i <= pigeons; i++)
        for (int j = 1; j <= holes; j++) f.registry().register_var({"x", {i, j}});
    f.set_num_vars(pigeons * holes);
    for (int i = 1; i <= pigeons; i++) {
        std::vector<Lit> c;
        for (int j = 1; j <= holes; j++) c.push_back(php_var(pigeons, holes, i, j));
        f.add_clause(Clause(c));
    }
    for (int j = 1; j <= holes; j++)
        for (int i1 = 1; i1 <= pigeons; i1++)
            for (int i2 = i1 + 1; i2 <= pigeons; i2++)
                f.add_clause(Clause{-php_var(pigeons, holes, i1, j),
                                    -php_var(pigeons, holes, i2, j)});
    return f;
}

namespace {

int php_pigeon_clause(int /*pigeons*/, int /*holes*/, int pigeon) { return pigeon; }

int php_amo_clause(int pigeons, int /*holes*/, int hole, int p1, int p2) {
    // after the `pigeons` at-least-one rows: hole-major blocks of C(pigeons,2)
    int pairs = pigeons * (pigeons - 1) / 2;
    int base = pigeons + (hole - 1) * pairs;
    // pair (p1,p2), p1 < p2, lexicographic position
    int pos = (p1 - 1) * pigeons - (p1 - 1) * p1 / 2 + (p2 - p1);
    return base + pos;
}

} // namespace

Certificate emit_php_refutation(int pigeons, int holes) {
    if (!(pigeons > holes && holes >= 1))
        throw std::runtime_error("pigeonhole refutation requires pigeons > holes >= 1");
    Formula f = php_formula(pigeons, holes);
    CertBuilder b(f);

    // D_S: some of pigeons 1..|S|+1 maps outside the hole set S.
    // Ascending over subsets; D_{full} is the empty clause.
    std::map<uint32_t, StepRef> derived;
    derived[0] = b.axiom(php_pigeon_clause(pigeons, holes, 1));

    std::vector<uint32_t> masks;
    for (uint32_t m = 1; m < (1u << holes); m++) masks.push_back(m);
    std::sort(masks.begin(), masks.end(), [](uint32_t a, uint32_t b2) {
        int pa = __builtin_popcount(a), pb = __builtin_popcount(b2);
        return pa != pb ? pa < pb : a < b2;
    });

    for (uint32_t mask : masks) {
        int s = __builtin_popcount(mask);
        // fold the next pigeon's row against the per-hole eliminations
        StepRef cur = b.axiom(php_pigeon_clause(pigeons, holes, s + 1));
        for (int j0 = 1; j0 <= holes; j0++) {
            if (!(mask & (1u << (j0 - 1)))) continue;
            StepRef g = derived.at(mask & ~(1u << (j0 - 1)));
            // remove x[i,j0] for i = 1..s from D_{S\j0}, trading them for ~x[s+1,j0]
            for (int i = 1; i <= s; i++) {
                StepRef amo = b.axiom(php_amo_clause(pigeons, holes, j0, i, s + 1));
                g = b.resolve(g, amo, php_var(pigeons, holes, i, j0));
            }
            cur = b.resolve(cur, g, php_var(pigeons, holes, s + 1, j0));
        }
        derived[mask] = cur;
    }
    StepRef fin = derived.at((1u << holes) - 1);
    b.mark_target(fin);
    if (!b.clause_of(fin).empty()) throw std::runtime_error("internal: pigeonhole fold not empty");
    return b.take();
}

// ---------------------------------------------------------------------

CountGadget emit_count_gadget(const std::vector<Lit>& inputs, int threshold, int& next_var,
                              std::vector<GateDef>& gates) {
    if (threshold < 0) throw std::runtime_error("negative threshold");
    if (threshold > (int)inputs.size())
        throw std::runtime_error("threshold exceeds the input count");
    CountGadget g;
    g.inputs = inputs;
    g.threshold = threshold;
    g.first_gate = gates.size();
    if (threshold == 0) {
        g.output = std::nullopt; // constantly true
        return g;
    }
    int p = (int)inputs.size();
    // s[i][j]: at least j among the first i inputs; j in 1..min(i, threshold)
    std::vector<std::vector<Lit>> s(p + 1);
    s[1] = {inputs[0]};
    auto and_gate = [&](Lit a, Lit bl) {
        int v = next_var++;
        gates.push_back({true, v, a, bl});
        return v;
    };
    auto or_gate = [&](Lit a, Lit bl) {
        int v = next_var++;
        gates.push_back({false, v, a, bl});
        return v;
    };
    for (int i = 2; i <= p; i++) {
        int jmax = std::min(i, threshold);
        s[i].resize(jmax);
        for (int j = 1; j <= jmax; j++) {
            if (j == 1) {
                s[i][0] = or_gate(s[i - 1][0], inputs[i - 1]);
            } else if (j == i) {
                s[i][j - 1] = and_gate(s[i - 1][j - 2], inputs[i - 1]);
            } else {
                Lit carry = and_gate(s[i - 1][j - 2], inputs[i - 1]);
                s[i][j - 1] = or_gate(s[i - 1][j - 1], carry);
            }
        }
    }
    g.output = s[p][threshold - 1];
    g.num_gates = gates.size() - g.first_gate;
    return g;
}

std::optional<bool> propagate_gate_value(const std::vector<GateDef>& gates,
                                         const std::vector<std::pair<int, bool>>& fixed,
                                         Lit query) {
    std::map<int, bool> val;
    for (auto [v, bv] : fixed) val[v] = bv;
    auto lit_val = [&](Lit l) -> std::optional<bool> {
        auto it = val.find(var_of(l));
        if (it == val.end()) return std::nullopt;
        return l > 0 ? it->second : !it->second;
    };
    bool changed = true;
    while (changed) {
        changed = false;
        for (const GateDef& g : gates) {
            if (val.count(g.out_var)) continue;
            auto a = lit_val(g.l1), b2 = lit_val(g.l2);
            if (g.is_and) {
                if (a && b2) {
                    val[g.out_var] = *a && *b2;
                    changed = true;
                } else if ((a && !*a) || (b2 && !*b2)) {
                    val[g.out_var] = false;
                    changed = true;
                }
            } else {
                if (a && b2) {
                    val[g.out_var] = *a || *b2;
                    changed = true;
                } else if ((a && *a) || (b2 && *b2)) {
                    val[g.out_var] = true;
                    changed = true;
                }
            }
        }
    }
    return lit_val(query);
}

} // namespace kerncert
