#pragma once

#include <functional>
#include <unordered_map>

#include "kerncert/checker.hpp"
#include "kerncert/proof.hpp"

namespace kerncert {

// Incremental certificate construction over a fixed root formula. Tracks
// the clause of every step so emitters can assert what they derive.
class CertBuilder {
  public:
    explicit CertBuilder(const Formula& root);

    const Formula& root() const { return *root_; }

    StepRef axiom(int clause_index1); // cached per index
    StepRef resolve(StepRef a, StepRef b, int pivot_var);
    StepRef weaken(StepRef a, std::vector<Lit> added);
    StepRef gate_and(int fresh_var, Lit l1, Lit l2);
    StepRef gate_or(int fresh_var, Lit l1, Lit l2);
    void mark_target(StepRef r);

    int alloc_var() { return next_var_++; }
    int peek_next_var() const { return next_var_; }

    Clause clause_of(StepRef r) const;
    size_t num_steps() const { return cert_.steps.size(); }

    // Resolves away `lit` from clause_of(a) using `other` which contains
    // the complement.
    StepRef resolve_out(StepRef a, Lit lit, StepRef other) {
        return resolve(a, other, var_of(lit));
    }

    Certificate take();
    const Certificate& current() const { return cert_; }

  private:
    const Formula* root_;
    Certificate cert_;
    std::vector<Clause> clauses_; // per step; empty placeholder for gates
    std::unordered_map<int, StepRef> axiom_cache_;
    int next_var_;
};

// Fanin-2 gate chain over >= 1 inputs. For a single input the output IS
// that input and no gates exist.
struct GateChain {
    bool is_and = false;
    Lit out = 0;
    std::vector<Lit> inputs;
    std::vector<StepRef> gates; // chain nodes, size inputs.size()-1
};

GateChain build_and_chain(CertBuilder& b, std::vector<Lit> inputs);
GateChain build_or_chain(CertBuilder& b, std::vector<Lit> inputs);

// Derived implication clauses (single inputs yield no step):
//   or:  lift(i)   = (~input_i | out)        expand = (~out | in_1 | ... | in_k)
//   and: proj(i)   = (~out | input_i)        intro  = (out | ~in_1 | ... | ~in_k)
StepRef or_chain_lift(CertBuilder& b, const GateChain& c, size_t input_index);
StepRef or_chain_expand(CertBuilder& b, const GateChain& c);
StepRef and_chain_proj(CertBuilder& b, const GateChain& c, size_t input_index);
StepRef and_chain_intro(CertBuilder& b, const GateChain& c);

// Replay of a certificate over formula F into an ambient builder.
// axiom_of(i) supplies the ambient step deriving F's clause i (1-based).
// var_map maps F's variables (1-based) to ambient literals and must be
// injective on variables; the certificate's own extension variables get
// fresh ambient variables.
struct ReplayResult {
    std::vector<StepRef> step_refs;
    std::vector<StepRef> target_refs;
};

using AxiomProvider = std::function<StepRef(int)>;

ReplayResult replay_certificate(CertBuilder& b, const Formula& F, const Certificate& cert,
                                const AxiomProvider& axiom_of, std::vector<Lit> var_map);

// Derives from F the clause (~assumed[0] | ... | ~assumed[m-1]), given a
// refutation of F extended with the assumption units (appended as clause
// indices F.num_clauses()+1 ...). Output step count never exceeds the
// input's except when the input never touches the assumptions at all.
// `origins`, when given, receives per output step the 1-based input step
// it descends from.
Certificate deduction_transform(const Formula& f, const std::vector<Lit>& assumed,
                                const Certificate& refutation,
                                std::vector<uint32_t>* origins = nullptr);

// Extends F with unit clauses (used to set up deduction inputs).
Formula with_assumption_units(const Formula& f, const std::vector<Lit>& assumed);

} // namespace kerncert
