#pragma once

#include "kerncert/proof.hpp"

namespace kerncert {

// Independent single-pass validator. Implements its own clause arithmetic
// and shares no derivation code with the emitters it checks.
Verdict check_certificate(const Formula& formula, const Certificate& cert);

// Accepted refutation: check passes and some target is the empty clause.
bool is_accepted_refutation(const Formula& formula, const Certificate& cert);

// Clause content of every step (gates resolve to their sub-clauses on
// demand). Used by audits and by composition; validation is repeated here
// so callers can trust the result independently of how the cert was built.
std::vector<Clause> replay_step_clauses(const Formula& formula, const Certificate& cert);

Clause clause_of_ref(const Formula& formula, const Certificate& cert,
                     const std::vector<Clause>& step_clauses, StepRef ref);

} // namespace kerncert
