#include "kerncert/counting.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "kerncert/graph.hpp"

namespace kerncert {

long long binomial(long n, long k) {
    if (k < 0 || n < 0 || k > n) return 0;
    k = std::min(k, n - k);
    __int128 r = 1;
    for (long i = 1; i <= k; i++) {
        r = r * (n - k + i) / i;
        if (r > (__int128)4 * 1000000000000000000LL)
            throw std::runtime_error("binomial overflow");
    }
    return (long long)r;
}

long long stars_and_bars(int n, int k) {
    if (n < 0 || k < 1) throw std::runtime_error("stars_and_bars needs n >= 0, k >= 1");
    return binomial(n + k - 1, k - 1);
}

long long count_solution_vectors(int n, int k) {
    if (k == 1) return 1;
    long long total = 0;
    for (int first = 0; first <= n; first++) total += count_solution_vectors(n - first, k - 1);
    return total;
}

CountComparison stars_and_bars_compare(int n, int k) {
    return CountComparison::make("stars-and-bars", {{"n", n}, {"k", k}}, stars_and_bars(n, k),
                                 count_solution_vectors(n, k));
}

std::vector<std::vector<int>> enumerate_stable_sets(int n, int k) {
    std::vector<std::vector<int>> out;
    std::vector<int> cur;
    auto rec = [&](auto&& self, int next) -> void {
        if ((int)cur.size() == k) {
            if (is_stable_subset(cur, n)) out.push_back(cur);
            return;
        }
        for (int x = next; x <= n; x++) {
            cur.push_back(x);
            self(self, x + 1);
            cur.pop_back();
        }
    };
    rec(rec, 1);
    return out;
}

long long stable_count_formula(int n, int k) {
    return binomial(n - k + 1, k) + binomial(n - k, k - 1);
}

CountComparison stable_count_compare(int n, int k) {
    return CountComparison::make("stable-cardinality", {{"n", n}, {"k", k}},
                                 stable_count_formula(n, k),
                                 (long long)enumerate_stable_sets(n, k).size());
}

long long stable_containing_formula(int n, int k) { return binomial(n - k, k - 1); }

CountComparison count_stable_containing(int n, int k, int x) {
    long long cnt = 0;
    for (const auto& s : enumerate_stable_sets(n, k))
        if (std::find(s.begin(), s.end(), x) != s.end()) cnt++;
    return CountComparison::make("stable-containing", {{"n", n}, {"k", k}, {"x", x}},
                                 stable_containing_formula(n, k), cnt);
}

long long segment_stable_formula(int a, int b, int r) { return binomial(b - a - r + 2, r); }

long long segment_stable_enumerate(int a, int b, int r) {
    if (a >= b) throw std::runtime_error("segment requires a < b");
    if (r == 0) return 1;
    // subsets of {a..b} with no two consecutive
    std::vector<int> cur;
    long long cnt = 0;
    auto rec = [&](auto&& self, int next, int left) -> void {
        if (left == 0) {
            cnt++;
            return;
        }
        for (int x = next; x <= b - 2 * (left - 1); x++) self(self, x + 2, left - 1);
    };
    rec(rec, a, r);
    return cnt;
}

CountComparison segment_stable_count(int a, int b, int r) {
    return CountComparison::make("segment-stable", {{"a", a}, {"b", b}, {"r", r}},
                                 segment_stable_formula(a, b, r),
                                 segment_stable_enumerate(a, b, r));
}

namespace {

bool sets_intersect(const std::vector<int>& x, const std::vector<int>& y) {
    for (int e : x)
        if (std::find(y.begin(), y.end(), e) != y.end()) return true;
    return false;
}

bool star_shaped(const std::vector<std::vector<int>>& fam) {
    if (fam.empty()) return true;
    for (int e : fam[0]) {
        bool all = true;
        for (const auto& s : fam)
            if (std::find(s.begin(), s.end(), e) == s.end()) {
                all = false;
                break;
            }
        if (all) return true;
    }
    return false;
}

void nonstar_search(const std::vector<std::vector<int>>& sets, size_t from,
                    std::vector<size_t>& chosen, size_t& best, std::vector<size_t>& best_sel) {
    if (chosen.size() > best) {
        std::vector<std::vector<int>> fam;
        for (size_t i : chosen) fam.push_back(sets[i]);
        if (!star_shaped(fam)) {
            best = chosen.size();
            best_sel = chosen;
        }
    }
    if (from >= sets.size()) return;
    if (chosen.size() + (sets.size() - from) <= best) return;
    for (size_t i = from; i < sets.size(); i++) {
        bool ok = true;
        for (size_t j : chosen)
            if (!sets_intersect(sets[i], sets[j])) {
                ok = false;
                break;
            }
        if (!ok) continue;
        chosen.push_back(i);
        nonstar_search(sets, i + 1, chosen, best, best_sel);
        chosen.pop_back();
    }
}

} // namespace

NonstarReport nonstar_bound_check(int n, int k) {
    if (k != 2 || n > 9)
        throw std::runtime_error("nonstar enumeration guard exceeded (k = 2, n <= 9)");
    NonstarReport rep;
    rep.bound = (long long)k * k * binomial(n + k - 1, k - 2);
    auto sets = enumerate_stable_sets(n, k);
    size_t best = 0;
    std::vector<size_t> chosen, best_sel;
    nonstar_search(sets, 0, chosen, best, best_sel);
    rep.enumerated_maximum = (long long)best;
    for (size_t i : best_sel) rep.witness.push_back(sets[i]);
    rep.within_bound = rep.enumerated_maximum <= rep.bound;
    return rep;
}

namespace {

long double binomial_ld(long n, long k) {
    if (k < 0 || n < 0 || k > n) return 0.0L;
    k = std::min(k, n - k);
    long double r = 1.0L;
    for (long i = 1; i <= k; i++) r = r * (long double)(n - k + i) / (long double)i;
    return r;
}

} // namespace

StarClassBound star_class_bound(int n, int k, double beta) {
    StarClassBound out;
    long double vertices = binomial_ld(n - k + 1, k) + binomial_ld(n - k, k - 1);
    long double nonstar_cap = (long double)k * k * binomial_ld(n + k - 1, k - 2);
    long double star_cap = binomial_ld(n - k - 1, k - 1);
    long double num = vertices - (long double)(n - 2 * k + 1) * nonstar_cap;
    long double den = star_cap - nonstar_cap;
    out.denominator_positive = den > 0;
    if (out.denominator_positive) out.alpha_lower = num / den;
    out.threshold = (long double)n * beta / k;
    out.exceeds = out.denominator_positive && out.alpha_lower > out.threshold;
    return out;
}

long star_class_threshold_scan(int k, double beta, long n_max) {
    for (long n = 2L * k; n <= n_max; n++) {
        StarClassBound b = star_class_bound((int)n, k, beta);
        if (b.exceeds) return n;
    }
    return -1;
}

long double star_bound_leading_ratio(long n, int k) {
    long double vertices = binomial_ld(n - k + 1, k) + binomial_ld(n - k, k - 1);
    long double nonstar_cap = (long double)k * k * binomial_ld(n + k - 1, k - 2);
    long double star_cap = binomial_ld(n - k - 1, k - 1);
    long double num = vertices - (long double)(n - 2 * k + 1) * nonstar_cap;
    long double den = star_cap - nonstar_cap;
    return den / num * (long double)n;
}

ChainLengthReport schrijver_chain_length(long n, int k, double beta) {
    if (k <= 1 || beta <= 0 || beta >= 1)
        throw std::runtime_error("chain length needs k > 1 and 0 < beta < 1");
    ChainLengthReport rep;
    long threshold = star_class_threshold_scan(k, beta, 1000000);
    if (threshold < 0) threshold = 1000000;
    rep.threshold_n = threshold;
    long cur = n;
    while (cur > threshold) {
        long drop = (long)std::ceil((double)cur * beta / k);
        if (drop <= 0) drop = 1;
        cur -= drop;
        rep.iterations++;
    }
    double ratio = 1.0 + beta / (k - beta);
    rep.closed_form = n <= 1 ? 0 : (long)std::ceil(std::log((double)n) / std::log(ratio));
    return rep;
}

} // namespace kerncert
