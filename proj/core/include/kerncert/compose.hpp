#pragma once

#include <memory>

#include "kerncert/witness.hpp"

namespace kerncert {

// Tree of per-instance formulas, per-branch fragments, and leaf
// refutations; composition stitches them into one refutation of the root.
struct ProofNode {
    Instance instance;
    Formula formula;
    bool leaf = false;
    Certificate leaf_refutation; // refutes `formula` when leaf
    std::string leaf_label = "kernel";

    struct BranchData {
        WitnessFragment fragment;
        std::unique_ptr<ProofNode> child;
    };
    std::vector<BranchData> branches;
    std::optional<CoveringBundle> covering;
};

struct ComposeResult {
    Certificate certificate;
    SizeReport report;
};

ComposeResult compose_tree(const Formula& root_formula, const ProofNode& root);

// Derives `target` inside `b` from the given premise steps: refutes
// (premise clauses + negated target literals) with the search engine,
// deduction-transforms, and replays the result.
StepRef derive_clause_by_refutation(CertBuilder& b,
                                    const std::vector<StepRef>& premise_refs,
                                    const Clause& target,
                                    const RefuterLimits& limits = {});

// Same, but the mini-refutation runs over explicit clauses; premise_refs
// supply the ambient steps in the same order.
StepRef derive_clause_from(CertBuilder& b, const std::vector<Clause>& premises,
                           const std::vector<StepRef>& premise_refs, const Clause& target,
                           const RefuterLimits& limits = {});

struct CertifyResult {
    enum class Status { Accepted, SatInstance, Partial } status = Status::Accepted;
    Certificate certificate;
    SizeReport report;
    ReductionTrace trace;
    std::string detail;

    bool accepted() const { return status == Status::Accepted; }
};

CertifyResult certify(const Instance& inst, const RefuterLimits& limits = {});

// Direct route: refute the encoding and re-check the certificate.
struct RefuteCheckResult {
    bool unsat = false;
    Certificate certificate;
    RefuterStats stats;
};
RefuteCheckResult refute_and_check(const Formula& f, const RefuterLimits& limits = {});

} // namespace kerncert
