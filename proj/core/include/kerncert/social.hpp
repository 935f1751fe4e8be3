#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace kerncert {

// A preference lists objects most-preferred first.
using Pref = std::vector<int>;

long factorial(int m);
int perm_rank(const Pref& p);        // lexicographic, 0-based
Pref perm_unrank(int m, int rank);
std::vector<Pref> all_prefs(int m);

int pref_position(const Pref& p, int object); // 1-based
bool prefers(const Pref& p, int a, int b);
int top_of(const Pref& p);

// Restriction keeps the relative order of the surviving objects; demotion
// appends B at the bottom in ascending order.
Pref drop_objects(const Pref& p, const std::vector<int>& b);
Pref demote_objects(const Pref& p, const std::vector<int>& b);

// Full profile tuples of n agents over m objects, indexed in lexicographic
// order of per-agent permutation ranks (agent 1 most significant).
struct ProfileSpace {
    int m = 0, n = 0;
    long fact = 0;
    long total = 0;
    std::vector<Pref> prefs;

    ProfileSpace() = default;
    ProfileSpace(int m_, int n_);
    long index_of(const std::vector<int>& agent_ranks) const;
    std::vector<int> ranks_of(long index) const;
};

// Objects agent i (with preference ri) weakly prefers o to; includes o.
std::vector<int> pr_set(const Pref& ri, int o);

// Replace agent's coordinate (1-based) by the given permutation rank.
std::vector<int> deviate(std::vector<int> agent_ranks, int agent1, int new_rank);

struct SWFTable {
    int m = 0, n = 0;
    std::vector<int> out; // perm rank of the aggregate ordering per profile index
};

struct SCFTable {
    int m = 0, n = 0;
    std::vector<int> out; // chosen object (1..m) per profile index
};

struct CheckOutcome {
    bool holds = false;
    std::string witness; // populated on failure (or for dictator identity)
};

CheckOutcome is_unanimous(const SWFTable& w);
CheckOutcome is_iia(const SWFTable& w);          // guard m <= 3, n <= 2
CheckOutcome is_dictatorial(const SWFTable& w);
CheckOutcome is_dictatorial(const SCFTable& w);
CheckOutcome is_onto(const SCFTable& w);
CheckOutcome is_strategyproof(const SCFTable& w); // guard m <= 3, n <= 3

SWFTable dictator_swf(int m, int n, int agent);
SCFTable dictator_scf(int m, int n, int agent);

// W_{-B}: demote B, evaluate, drop B; surviving objects relabel to 1..m'
// ascending. The SCF variant errors if some value lands in B.
SWFTable restrict_swf(const SWFTable& w, const std::vector<int>& b);
SCFTable restrict_scf(const SCFTable& w, const std::vector<int>& b);

// W_{a,b}: duplicate agent b's preference into slot a, dropping slot a.
SWFTable merge_agents(const SWFTable& w, int a, int b);
SCFTable merge_agents(const SCFTable& w, int a, int b);

// Text format: per line "<pref1> | <pref2> | ... -> <outcome>", outcome an
// object for SCFs and a full ordering for SWFs.
void scf_write(const SCFTable& t, std::ostream& out);
SCFTable scf_read(std::istream& in);
void swf_write(const SWFTable& t, std::ostream& out);
SWFTable swf_read(std::istream& in);

struct PreservationReport {
    int swf_cases = 0, swf_failures = 0;
    int scf_cases = 0, scf_failures = 0;
    std::vector<std::string> failures;
};

// Restriction preserves unanimity+IIA for SWFs and onto+strategyproofness
// for SCFs, over dictator tables and relabelings at m=3, n=2.
PreservationReport preservation_tests(uint64_t seed, int samples);

} // namespace kerncert
