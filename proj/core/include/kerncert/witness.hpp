#pragma once

#include <functional>
#include <optional>

#include "kerncert/builder.hpp"
#include "kerncert/cdcl.hpp"
#include "kerncert/reduce.hpp"

namespace kerncert {

// Extension-gate declaration carried by fragments; realized as formula
// clauses inside a fragment's local derivation and as gate steps when the
// fragment is spliced into an ambient certificate.
struct GateDef {
    bool is_and = true;
    int out_var = 0;
    Lit l1 = 0, l2 = 0;
};

// Local soundness witness for one reduction branch. The derivation lives
// over the extended formula: premise clauses, then 3 defining clauses per
// gate, then one unit per assumed literal. Target i derives the image of
// the child formula's clause i+1 under child_var_to_lit.
struct WitnessFragment {
    uint64_t premise_fingerprint = 0;
    std::vector<GateDef> gates;
    std::vector<Lit> assumed;
    Certificate derivation;
    std::vector<Lit> child_var_to_lit; // 1-based; index 0 unused
    int child_nvars = 0;
    int child_nclauses = 0;
    bool partial = false;
    std::string note;
};

Formula gates_extended_formula(const Formula& premise, const std::vector<GateDef>& gates);
Formula fragment_extended_formula(const Formula& premise, const WitnessFragment& frag);

// Verifies the fragment in isolation: the derivation checks over the
// extended formula and each target equals the renamed child clause.
void audit_fragment(const Formula& premise, const WitnessFragment& frag,
                    const Formula& child_formula);

// Exhaustiveness data for multi-branch nodes: indicator gates, case
// refutations (each over premise + all node gates + its assumed units,
// later deduction-transformed), and a glue refutation over premise + node
// gates + the derived clauses listed in glue_extra (branch negation
// clauses first, then case negation clauses, in order).
struct CoveringBundle {
    std::vector<GateDef> gates;
    struct CaseRefutation {
        std::vector<Lit> assumed;
        Certificate refutation;
    };
    std::vector<CaseRefutation> cases;
    std::vector<Clause> glue_extra;
    Certificate glue;
};

struct NodeWitness {
    std::vector<WitnessFragment> fragments; // one per branch
    std::optional<CoveringBundle> covering; // required when fragments assume literals
    bool partial = false;
    std::string note;
};

// --- pigeonhole refutations -----------------------------------------

// Canonical pigeonhole formula over x[pigeon,hole] with ids
// (pigeon-1)*holes + hole: per-pigeon at-least-one rows then per-hole
// at-most-one rows.
Formula php_formula(int pigeons, int holes);
int php_var(int pigeons, int holes, int pigeon, int hole);

// Subset-indexed resolution refutation of php_formula(pigeons, holes);
// requires pigeons > holes >= 1 and uses only the first holes+1 pigeons.
Certificate emit_php_refutation(int pigeons, int holes);

// --- threshold counting gates ----------------------------------------

// Sequential counter for "at least threshold of inputs are true". For
// threshold 0 the output is absent (constantly true); otherwise the
// output literal is forced either way by unit propagation over the
// definitions once all inputs are assigned.
struct CountGadget {
    std::vector<Lit> inputs;
    int threshold = 0;
    std::optional<Lit> output;
    size_t first_gate = 0, num_gates = 0; // range inside the gate list used
};

CountGadget emit_count_gadget(const std::vector<Lit>& inputs, int threshold, int& next_var,
                              std::vector<GateDef>& gates);

// Unit propagation over gate defining clauses given fixed input values;
// returns the forced value of `query` (empty when not forced).
std::optional<bool> propagate_gate_value(const std::vector<GateDef>& gates,
                                         const std::vector<std::pair<int, bool>>& fixed,
                                         Lit query);

// --- per-rule emitters -------------------------------------------------

WitnessFragment emit_dualcol_witness(const Formula& parent, const GraphInstance& inst,
                                     const ReductionStep& step, const Formula& child);
WitnessFragment emit_vc_witness(const Formula& parent, const GraphInstance& inst,
                                const ReductionStep& step, const Formula& child);
WitnessFragment emit_ecc_witness(const Formula& parent, const GraphInstance& inst,
                                 const ReductionStep& step, const Formula& child);
WitnessFragment emit_hitting_witness(const Formula& parent, const HittingInstance& inst,
                                     const ReductionStep& step, const Formula& child);

NodeWitness emit_arrow_witness(const Formula& parent, const ArrowInstance& inst,
                               const ReductionStep& step, const std::vector<Formula>& children,
                               const RefuterLimits& limits = {});
NodeWitness emit_gs_witness(const Formula& parent, const GSInstance& inst,
                            const ReductionStep& step, const std::vector<Formula>& children,
                            const RefuterLimits& limits = {});

// Oracle-level restriction check attached to partial object-restriction
// witnesses: dictator fixtures restrict to smaller instances preserving
// their axioms and dictator identity.
bool restriction_semantic_check(int m, int n, std::string* detail = nullptr);

} // namespace kerncert
