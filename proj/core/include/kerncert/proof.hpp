#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <variant>
#include <vector>

#include "kerncert/formula.hpp"

namespace kerncert {

// Reference to a proof step. sub = 0 addresses the step's clause; for gate
// steps, sub in 1..3 addresses the defining clauses.
struct StepRef {
    uint32_t id = 0;
    uint8_t sub = 0;

    bool operator==(const StepRef& o) const { return id == o.id && sub == o.sub; }
    std::string str() const;
};

enum class StepKind : uint8_t { Axiom, Resolve, GateAnd, GateOr, Weaken };

struct ProofStep {
    StepKind kind;
    int axiom_index = 0;        // Axiom
    StepRef left, right;        // Resolve (left, right); Weaken (left)
    int pivot = 0;              // Resolve
    int gate_var = 0;           // GateAnd / GateOr
    Lit gate_l1 = 0, gate_l2 = 0;
    std::vector<Lit> weaken_lits;

    static ProofStep mk_axiom(int index1);
    static ProofStep mk_resolve(StepRef a, StepRef b, int pivot_var);
    static ProofStep mk_gate_and(int var, Lit l1, Lit l2);
    static ProofStep mk_gate_or(int var, Lit l1, Lit l2);
    static ProofStep mk_weaken(StepRef a, std::vector<Lit> added);
};

struct Certificate {
    uint64_t fingerprint = 0;
    int root_nvars = 0;
    int root_nclauses = 0;
    std::vector<ProofStep> steps; // ids are 1-based positions
    std::vector<StepRef> targets;

    uint32_t add(ProofStep s) {
        steps.push_back(std::move(s));
        return static_cast<uint32_t>(steps.size());
    }
    size_t num_steps() const { return steps.size(); }
};

// Defining clauses of a gate step, in sub order 1..3.
// GateAnd v <-> l1 & l2 : (~v|l1), (~v|l2), (v|~l1|~l2)
// GateOr  v <-> l1 | l2 : (v|~l1), (v|~l2), (~v|l1|l2)
Clause gate_defining_clause(const ProofStep& s, int sub);

// Emitter-side resolution. Pivot must appear with opposite signs; a
// tautological resolvent is an error.
Clause resolve_clauses(const Clause& a, const Clause& b, int pivot_var);

struct Verdict {
    bool accepted = false;
    uint32_t failed_step = 0;
    std::string reason;

    static Verdict accept() { return {true, 0, ""}; }
    static Verdict reject(uint32_t step, std::string why) { return {false, step, std::move(why)}; }
};

// Size accounting. Clause counts treat a gate step as its 3 defining
// clauses; line counts treat it as 1.
struct SizeReport {
    uint64_t step_clauses = 0;
    uint64_t step_lines = 0;
    uint64_t extension_vars = 0;
    uint64_t branching_factor_R = 1;
    uint64_t chain_length_C = 0;
    std::vector<std::pair<std::string, uint64_t>> fragment_subtotals; // clause counts

    uint64_t subtotal_sum() const;
};

uint64_t count_step_clauses(const Certificate& c);
uint64_t count_step_lines(const Certificate& c);
uint64_t count_extension_vars(const Certificate& c);

struct BoundEstimate {
    long double value = 0;
    bool saturated = false;
};

// (sum_{i=0}^{C} R^i) * (h + two_pow_g)
BoundEstimate bound_evaluate(long double h, long double two_pow_g, uint64_t branching_R,
                             uint64_t chain_C);

// Text format:
//   p ecert <root-nvars> <root-nclauses> <fingerprint-hex>
//   A <clause-index> | R <id1> <id2> <pivot> | GA <var> <l1> <l2>
//   GO <var> <l1> <l2> | W <id> <lit>... 0 | T <id>
void certificate_write(const Certificate& c, std::ostream& out);
std::string certificate_string(const Certificate& c);
Certificate certificate_read(std::istream& in);
Certificate certificate_read_string(const std::string& text);

} // namespace kerncert
