#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace kerncert {

// Closed-form counts from the combinatorial analysis, each paired with an
// independent exhaustive enumerator. Disagreement is recorded data, not an
// error: the comparisons audit the printed formulas.
struct CountComparison {
    std::string lemma;
    std::vector<std::pair<std::string, long>> params;
    long long formula_value = 0;
    long long enumeration_value = 0;
    bool agree = false;

    static CountComparison make(std::string lemma,
                                std::vector<std::pair<std::string, long>> params, long long f,
                                long long e) {
        return {std::move(lemma), std::move(params), f, e, f == e};
    }
};

long long binomial(long n, long k);

// Solutions of x_1 + ... + x_k = n in nonnegative integers.
long long stars_and_bars(int n, int k);
long long count_solution_vectors(int n, int k); // enumerator
CountComparison stars_and_bars_compare(int n, int k);

// Cyclically stable k-subsets of [n].
std::vector<std::vector<int>> enumerate_stable_sets(int n, int k);
long long stable_count_formula(int n, int k); // C(n-k+1,k) + C(n-k,k-1), as printed
CountComparison stable_count_compare(int n, int k);

// Stable k-subsets containing a fixed element x.
long long stable_containing_formula(int n, int k); // C(n-k,k-1), as printed
CountComparison count_stable_containing(int n, int k, int x);

// Stable r-subsets of the linear segment [a..b] (no wraparound).
long long segment_stable_formula(int a, int b, int r); // C(b-a-r+2, r)
long long segment_stable_enumerate(int a, int b, int r);
CountComparison segment_stable_count(int a, int b, int r);

// Largest pairwise-intersecting, non-star-shaped family of stable k-sets,
// versus the bound k^2 * C(n+k-1, k-2). Guarded to k = 2, n <= 9.
struct NonstarReport {
    long long bound = 0;
    long long enumerated_maximum = 0;
    bool within_bound = false;
    std::vector<std::vector<int>> witness;
};
NonstarReport nonstar_bound_check(int n, int k);

// Lower bound on the number of star-shaped color classes, from the
// displayed inequality; threshold scan for the least n where it clears
// n*beta/k.
struct StarClassBound {
    long double alpha_lower = 0;
    long double threshold = 0; // n*beta/k
    bool exceeds = false;
    bool denominator_positive = false;
};
StarClassBound star_class_bound(int n, int k, double beta);
long star_class_threshold_scan(int k, double beta, long n_max); // least n, or -1

// (den/num) * n for the displayed bound's leading terms; approaches k.
long double star_bound_leading_ratio(long n, int k);

// Iterations of n <- n - ceil(n*beta/k) down to the scan threshold,
// against ceil(log_{1+beta/(k-beta)} n).
struct ChainLengthReport {
    long iterations = 0;
    long closed_form = 0;
    long threshold_n = 0;
};
ChainLengthReport schrijver_chain_length(long n, int k, double beta);

} // namespace kerncert
