#pragma once

#include <string>

#include "kerncert/compose.hpp"
#include "kerncert/counting.hpp"

namespace kerncert {

// Single documented generator so runs reproduce across toolchains.
struct SplitMix64 {
    uint64_t state = 0;

    explicit SplitMix64(uint64_t seed) : state(seed) {}
    uint64_t next() {
        state += 0x9e3779b97f4a7c15ull;
        uint64_t z = state;
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
        return z ^ (z >> 31);
    }
    double uniform() { return (next() >> 11) * 0x1.0p-53; }
    int range(int lo, int hi) { return lo + (int)(next() % (uint64_t)(hi - lo + 1)); }
};

struct BenchRecord {
    std::string instance;
    long formula_clauses = 0;
    long formula_vars = 0;
    uint64_t chain_C = 0;
    uint64_t branch_R = 1;
    std::vector<std::pair<std::string, uint64_t>> fragment_sizes;
    std::vector<uint64_t> kernel_sizes;
    uint64_t total_steps = 0;  // clause-counted
    uint64_t total_lines = 0;
    uint64_t ext_vars = 0;
    long double bound_predicted = 0;
    bool bound_saturated = false;
    std::string verdict; // accept | sat | partial | error:<msg>
    double wall_ms = 0;
};

std::string bench_record_json(const BenchRecord& r, bool include_wall);
std::string count_comparison_json(const CountComparison& c);

BenchRecord record_of_certify(const std::string& label, const Formula& root,
                              const CertifyResult& res);

// Deterministic instance generators.
Graph random_graph(SplitMix64& rng, int n, double edge_prob);
Instance random_unsat_vc(SplitMix64& rng, int max_n, int max_k);
Instance random_unsat_hitting(SplitMix64& rng, int max_universe, int k, int d);
Instance random_unsat_ecc(SplitMix64& rng, int max_n, int max_k);
Instance dualcol_crown_fixture(int k, int clique_size, int apexes);
std::vector<Instance> dualcol_fixture_suite(); // ten crown-reducible instances

struct BenchConfig {
    std::string problem; // vc | hitting | ecc | dualcol | kneser | schrijver | arrow | gs
    int count = 10;
    uint64_t seed = 1;
    RefuterLimits limits;
    bool include_wall = false;
    std::string cert_dir; // store certificates when nonempty
    int jobs = 1;         // worker pool width; records keep submission order
};

// Runs the sweep; every record appears in submission order. Kernel-size
// bounds are hard assertions inside kernelize, so a violating instance
// surfaces as an error record.
std::vector<BenchRecord> run_bench(const BenchConfig& cfg);

struct GrowthFit {
    double slope = 0;
    double intercept = 0;
    double r2 = 0;
    int points = 0;
};

// Least squares on (log clauses, log steps); needs >= 4 records and
// nonzero variance.
GrowthFit fit_growth(const std::vector<BenchRecord>& records);

} // namespace kerncert
