#pragma once

#include <cstdint>
#include <optional>

#include "kerncert/proof.hpp"

namespace kerncert {

struct RefuterLimits {
    uint64_t max_conflicts = 8'000'000;
    // Proof log budget; exceeding it aborts with Limit status.
    uint64_t max_log_entries = 200'000'000;
};

struct RefuterStats {
    uint64_t conflicts = 0;
    uint64_t decisions = 0;
    uint64_t propagations = 0;
};

struct RefuterResult {
    enum class Status { Unsat, Sat, Limit } status;
    Certificate refutation;        // Unsat: targets hold the empty clause
    Assignment model;              // Sat: 1-based
    RefuterStats stats;

    bool unsat() const { return status == Status::Unsat; }
    bool sat() const { return status == Status::Sat; }
};

// Conflict-driven search with clause learning; every learned clause is a
// logged chain of input resolutions, so an Unsat answer comes with a
// checkable resolution refutation (trimmed to the steps the empty clause
// needs).
RefuterResult refute_kernel(const Formula& f, const RefuterLimits& limits = {});

} // namespace kerncert
