#pragma once

// Internal helpers shared by the witness emitters.

#include <algorithm>
#include <map>
#include <memory>
#include <set>

#include "kerncert/compose.hpp"
#include "kerncert/dimacs.hpp"
#include "kerncert/witness.hpp"

namespace kerncert {
namespace witness_detail {

// Declared gate chain; gates live in a GateDef list and appear as
// defining clauses of the fragment's extended formula.
struct RowChain {
    bool is_and = false;
    Lit out = 0;
    std::vector<Lit> inputs;
    std::vector<size_t> gate_idx;
};

inline RowChain declare_chain(bool is_and, std::vector<GateDef>& gates, int& next_var,
                       std::vector<Lit> inputs) {
    if (inputs.empty()) throw std::runtime_error("empty gate chain");
    RowChain c;
    c.is_and = is_and;
    c.inputs = std::move(inputs);
    Lit acc = c.inputs[0];
    for (size_t i = 1; i < c.inputs.size(); i++) {
        int v = next_var++;
        c.gate_idx.push_back(gates.size());
        gates.push_back({is_and, v, acc, c.inputs[i]});
        acc = v;
    }
    c.out = acc;
    return c;
}

struct Scaffold {
    const Formula* parent = nullptr;
    std::vector<GateDef> gates;
    std::vector<Lit> assumed;
    int next_var = 0;

    Formula ext;
    std::unique_ptr<CertBuilder> fb;

    explicit Scaffold(const Formula& p) : parent(&p), next_var(p.num_vars() + 1) {}

    void finalize() {
        ext = with_assumption_units(gates_extended_formula(*parent, gates), assumed);
        fb = std::make_unique<CertBuilder>(ext);
    }
    int gate_clause_index(size_t gate_idx, int sub) const {
        return parent->num_clauses() + (int)(3 * gate_idx) + sub;
    }
    StepRef gate_row(size_t gate_idx, int sub) {
        return fb->axiom(gate_clause_index(gate_idx, sub));
    }
    StepRef parent_row(const Clause& content) {
        return fb->axiom(parent_row_index(content));
    }
    int parent_row_index(const Clause& content) const {
        auto idx = parent->find_clause(content);
        if (!idx) throw std::runtime_error("expected parent clause not found");
        return *idx;
    }

    int assumed_clause_index(size_t i) const {
        return parent->num_clauses() + (int)(3 * gates.size()) + 1 + (int)i;
    }

    // (~input_i | out) for an or-chain; the identical fold projects
    // (~out | input_i) out of an and-chain.
    StepRef chain_lift(const RowChain& c, size_t input_index) {
        if (c.gate_idx.empty()) throw std::runtime_error("or_lift on trivial chain");
        size_t start = input_index == 0 ? 0 : input_index - 1;
        StepRef cur = gate_row(c.gate_idx[start], input_index == 0 ? 1 : 2);
        for (size_t j = start + 1; j < c.gate_idx.size(); j++) {
            int pivot = gates[c.gate_idx[j - 1]].out_var;
            cur = fb->resolve(cur, gate_row(c.gate_idx[j], 1), pivot);
        }
        return cur;
    }
    StepRef or_lift(const RowChain& c, size_t input_index) { return chain_lift(c, input_index); }
    StepRef and_proj(const RowChain& c, size_t input_index) { return chain_lift(c, input_index); }

    // (~out | in_1 | ... | in_p) for an or-chain; for an and-chain the
    // same fold yields (out | ~in_1 | ... | ~in_p).
    StepRef chain_expand(const RowChain& c) {
        if (c.gate_idx.empty()) throw std::runtime_error("chain_expand on trivial chain");
        StepRef cur = gate_row(c.gate_idx.back(), 3);
        for (size_t j = c.gate_idx.size() - 1; j-- > 0;) {
            int pivot = gates[c.gate_idx[j]].out_var;
            cur = fb->resolve(cur, gate_row(c.gate_idx[j], 3), pivot);
        }
        return cur;
    }
};

struct PremiseBag {
    std::vector<Clause> clauses;
    std::vector<StepRef> refs;

    void add(CertBuilder& fb, StepRef r) {
        refs.push_back(r);
        clauses.push_back(fb.clause_of(r));
    }
    void add_chain(Scaffold& sc, const RowChain& c) {
        for (size_t gi : c.gate_idx)
            for (int s = 1; s <= 3; s++) add(*sc.fb, sc.gate_row(gi, s));
    }
    void add_parent(Scaffold& sc, const Clause& content) { add(*sc.fb, sc.parent_row(content)); }
    void add_all_scaffold(Scaffold& sc) {
        clauses.clear();
        refs.clear();
        for (int ci = 1; ci <= sc.ext.num_clauses(); ci++) {
            refs.push_back(sc.fb->axiom(ci));
            clauses.push_back(sc.ext.clause(ci));
        }
    }
};

inline int y_var(const Formula& f, int u, int v) {
    return f.registry().lookup({"Y", {std::min(u, v), std::max(u, v)}});
}
inline int x_var(const Formula& f, int v, int i) { return f.registry().lookup({"X", {v, i}}); }

inline Clause y_unit(const Formula& f, const Graph& g, int u, int v) {
    int y = y_var(f, u, v);
    return Clause{g.has_edge(u, v) ? y : -y};
}

inline Clause coloring_conflict_row(const Formula& f, int u, int v, int i) {
    return Clause{-y_var(f, u, v), -x_var(f, u, i), -x_var(f, v, i)};
}
inline Clause coloring_alo_row(const Formula& f, int v, int colors) {
    std::vector<Lit> lits;
    for (int i = 1; i <= colors; i++) lits.push_back(x_var(f, v, i));
    return Clause(lits);
}
inline Clause amo_pair_row(const Formula& f, int v, int i, int j) {
    return Clause{-x_var(f, v, i), -x_var(f, v, j)};
}
inline Clause slot_amo_row(const Formula& f, int u, int v, int i) {
    return Clause{-x_var(f, u, i), -x_var(f, v, i)};
}

inline int lift_color(int l, int j) { return j < l ? j : j + 1; }

inline std::vector<Lit> graph_renaming(const Formula& child, const Formula& parent,
                                const std::vector<int>& vmap) {
    std::vector<Lit> out(child.num_vars() + 1, 0);
    for (int cv = 1; cv <= child.num_vars(); cv++) {
        const VarName& nm = child.registry().name_of(cv);
        if (nm.tag == "X") {
            out[cv] = x_var(parent, vmap[nm.indices[0] - 1], nm.indices[1]);
        } else if (nm.tag == "Y") {
            out[cv] = y_var(parent, vmap[nm.indices[0] - 1], vmap[nm.indices[1] - 1]);
        } else if (nm.tag == "G") {
            int pu = vmap[nm.indices[0] - 1], pv = vmap[nm.indices[1] - 1];
            out[cv] = parent.registry().lookup(
                {"G", {std::min(pu, pv), std::max(pu, pv), nm.indices[2]}});
        } else {
            throw std::runtime_error("unexpected variable tag " + nm.tag);
        }
    }
    return out;
}

inline Clause rename_clause(const Clause& c, const std::vector<Lit>& vmap) {
    std::vector<Lit> lits;
    for (Lit l : c.lits()) {
        Lit base = vmap[var_of(l)];
        if (base == 0) throw std::runtime_error("renaming misses a variable");
        lits.push_back(l > 0 ? base : -base);
    }
    return Clause(std::move(lits));
}

inline void seal(WitnessFragment& frag, Scaffold& sc, const std::vector<StepRef>& targets) {
    for (StepRef t : targets) sc.fb->mark_target(t);
    frag.derivation = sc.fb->take();
    frag.gates = sc.gates;
    frag.assumed = sc.assumed;
}


} // namespace witness_detail
} // namespace kerncert
