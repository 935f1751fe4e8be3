#include "kerncert/encoders.hpp"

#include <algorithm>
#include <stdexcept>

#include "kerncert/social.hpp"

namespace kerncert {

namespace {

// canonical unordered pair (smaller vertex first)
std::pair<int, int> pr(int u, int v) { return {std::min(u, v), std::max(u, v)}; }

void add_pair_units(Formula& f, const Graph& g) {
    int n = g.num_vertices();
    for (int u = 1; u <= n; u++)
        for (int v = u + 1; v <= n; v++) {
            int y = f.registry().lookup({"Y", {u, v}});
            f.add_clause(Clause{g.has_edge(u, v) ? y : -y});
        }
}

} // namespace

Formula encode_coloring(const Graph& g, int colors) {
    if (colors < 0) throw std::runtime_error("coloring encoder needs colors >= 0");
    int n = g.num_vertices();
    Formula f;
    f.meta().problem = "coloring";
    f.meta().params = {{"n", n}, {"colors", colors}};
    for (int v = 1; v <= n; v++)
        for (int i = 1; i <= colors; i++) f.registry().register_var({"X", {v, i}});
    for (int u = 1; u <= n; u++)
        for (int v = u + 1; v <= n; v++) f.registry().register_var({"Y", {u, v}});
    f.set_num_vars(f.registry().size());

    add_pair_units(f, g);
    auto x = [&](int v, int i) { return f.registry().lookup({"X", {v, i}}); };
    auto y = [&](int u, int v) {
        auto [a, b] = pr(u, v);
        return f.registry().lookup({"Y", {a, b}});
    };
    for (int v = 1; v <= n; v++) {
        std::vector<Lit> alo;
        for (int i = 1; i <= colors; i++) alo.push_back(x(v, i));
        f.add_clause(Clause(alo)); // empty when colors == 0
    }
    for (int v = 1; v <= n; v++)
        for (int i = 1; i <= colors; i++)
            for (int j = i + 1; j <= colors; j++) f.add_clause(Clause{-x(v, i), -x(v, j)});
    for (int u = 1; u <= n; u++)
        for (int v = u + 1; v <= n; v++)
            for (int i = 1; i <= colors; i++)
                f.add_clause(Clause{-y(u, v), -x(u, i), -x(v, i)});
    return f;
}

Formula encode_dual_coloring(const Graph& g, int k) {
    int n = g.num_vertices();
    if (k < 1 || k >= n) throw std::runtime_error("dual coloring requires 1 <= k < n");
    Formula f = encode_coloring(g, n - k);
    f.meta().problem = "dualcol";
    f.meta().params = {{"n", n}, {"k", k}, {"colors", n - k}};
    return f;
}

Formula encode_vertex_cover(const Graph& g, int k) {
    if (k < 0) throw std::runtime_error("vertex cover encoder needs k >= 0");
    int n = g.num_vertices();
    Formula f;
    f.meta().problem = "vc";
    f.meta().params = {{"n", n}, {"k", k}};
    for (int v = 1; v <= n; v++)
        for (int i = 1; i <= k; i++) f.registry().register_var({"X", {v, i}});
    for (int u = 1; u <= n; u++)
        for (int v = u + 1; v <= n; v++) f.registry().register_var({"Y", {u, v}});
    f.set_num_vars(f.registry().size());

    auto x = [&](int v, int i) { return f.registry().lookup({"X", {v, i}}); };
    auto y = [&](int u, int v) {
        auto [a, b] = pr(u, v);
        return f.registry().lookup({"Y", {a, b}});
    };

    add_pair_units(f, g);
    // chosen vertices are not isolated
    for (int v = 1; v <= n; v++)
        for (int i = 1; i <= k; i++) {
            std::vector<Lit> c{-x(v, i)};
            for (int w = 1; w <= n; w++)
                if (w != v) c.push_back(y(v, w));
            f.add_clause(Clause(c));
        }
    for (int i = 1; i <= k; i++) {
        std::vector<Lit> c;
        for (int v = 1; v <= n; v++) c.push_back(x(v, i));
        f.add_clause(Clause(c));
    }
    for (int i = 1; i <= k; i++)
        for (int u = 1; u <= n; u++)
            for (int v = u + 1; v <= n; v++) f.add_clause(Clause{-x(u, i), -x(v, i)});
    for (int v = 1; v <= n; v++)
        for (int i = 1; i <= k; i++)
            for (int j = i + 1; j <= k; j++) f.add_clause(Clause{-x(v, i), -x(v, j)});
    for (int u = 1; u <= n; u++)
        for (int v = u + 1; v <= n; v++) {
            std::vector<Lit> c{-y(u, v)};
            for (int i = 1; i <= k; i++) c.push_back(x(u, i));
            for (int i = 1; i <= k; i++) c.push_back(x(v, i));
            f.add_clause(Clause(c));
        }
    return f;
}

Formula encode_edge_clique_cover(const Graph& g, int k) {
    if (k < 0) throw std::runtime_error("edge clique cover encoder needs k >= 0");
    int n = g.num_vertices();
    Formula f;
    f.meta().problem = "ecc";
    f.meta().params = {{"n", n}, {"k", k}};
    for (int v = 1; v <= n; v++)
        for (int i = 1; i <= k; i++) f.registry().register_var({"X", {v, i}});
    for (int u = 1; u <= n; u++)
        for (int v = u + 1; v <= n; v++) f.registry().register_var({"Y", {u, v}});
    auto es = g.edges();
    for (auto [u, v] : es)
        for (int j = 1; j <= k; j++) f.registry().register_var({"G", {u, v, j}});
    f.set_num_vars(f.registry().size());

    auto x = [&](int v, int i) { return f.registry().lookup({"X", {v, i}}); };
    auto y = [&](int u, int v) {
        auto [a, b] = pr(u, v);
        return f.registry().lookup({"Y", {a, b}});
    };
    auto gt = [&](int u, int v, int j) { return f.registry().lookup({"G", {u, v, j}}); };

    add_pair_units(f, g);
    for (int u = 1; u <= n; u++)
        for (int v = u + 1; v <= n; v++)
            for (int i = 1; i <= k; i++) f.add_clause(Clause{-x(u, i), -x(v, i), y(u, v)});
    for (auto [u, v] : es)
        for (int j = 1; j <= k; j++) {
            int w = gt(u, v, j);
            f.add_clause(Clause{-w, x(u, j)});
            f.add_clause(Clause{-w, x(v, j)});
            f.add_clause(Clause{w, -x(u, j), -x(v, j)});
        }
    for (auto [u, v] : es) {
        std::vector<Lit> c{-y(u, v)};
        for (int j = 1; j <= k; j++) c.push_back(gt(u, v, j));
        f.add_clause(Clause(c));
    }
    return f;
}

Formula encode_hitting_set(const std::vector<int>& universe,
                           const std::vector<std::vector<int>>& family, int k, int d) {
    std::vector<int> uni = universe;
    std::sort(uni.begin(), uni.end());
    uni.erase(std::unique(uni.begin(), uni.end()), uni.end());
    for (const auto& s : family) {
        if ((int)s.size() > d) throw std::runtime_error("family set exceeds size bound d");
        for (int e : s)
            if (!std::binary_search(uni.begin(), uni.end(), e))
                throw std::runtime_error("family element outside universe");
    }
    Formula f;
    f.meta().problem = "hitting";
    f.meta().params = {{"universe", (long)uni.size()},
                       {"sets", (long)family.size()},
                       {"k", k},
                       {"d", d}};
    for (int e : uni)
        for (int j = 1; j <= k; j++) f.registry().register_var({"X", {e, j}});
    f.set_num_vars(f.registry().size());
    auto x = [&](int e, int j) { return f.registry().lookup({"X", {e, j}}); };

    for (int j = 1; j <= k; j++) {
        std::vector<Lit> c;
        for (int e : uni) c.push_back(x(e, j));
        f.add_clause(Clause(c));
    }
    for (int j = 1; j <= k; j++)
        for (size_t a = 0; a < uni.size(); a++)
            for (size_t b = a + 1; b < uni.size(); b++)
                f.add_clause(Clause{-x(uni[a], j), -x(uni[b], j)});
    for (const auto& s : family) {
        std::vector<Lit> c;
        std::vector<int> se = s;
        std::sort(se.begin(), se.end());
        for (int e : se)
            for (int j = 1; j <= k; j++) c.push_back(x(e, j));
        f.add_clause(Clause(c)); // empty set yields the empty clause
    }
    return f;
}

Formula encode_kneser(int n, int k) {
    Formula f = encode_coloring(build_kneser(n, k), n - 2 * k + 1);
    f.meta().problem = "kneser";
    f.meta().params = {{"n", n}, {"k", k}, {"colors", n - 2 * k + 1}};
    return f;
}

Formula encode_schrijver(int n, int k) {
    Formula f = encode_coloring(build_stable_kneser(n, k), n - 2 * k + 1);
    f.meta().problem = "schrijver";
    f.meta().params = {{"n", n}, {"k", k}, {"colors", n - 2 * k + 1}};
    return f;
}

namespace {

long arrow_literal_estimate(int m, int n) {
    long fact = factorial(m);
    long profiles = 1;
    for (int i = 0; i < n; i++) {
        profiles *= fact;
        if (profiles > (1L << 40)) return (1L << 62);
    }
    // IIA dominates: pairs * buckets * (bucket size)^2 * orderings-pairs * width
    long bucket = 1, buckets = 1;
    for (int i = 0; i < n; i++) {
        bucket *= fact / 2;
        buckets *= 2;
        if (bucket > (1L << 30)) return (1L << 62);
    }
    long npairs = (long)m * (m - 1) / 2;
    long pi_pairs = (fact / 2) * (fact / 2);
    long est = profiles * (1 + fact);
    long double iia = (long double)npairs * buckets * bucket * bucket * pi_pairs * 2.0L;
    if (iia > 4e18L) return (1L << 62);
    est += (long)iia;
    return est;
}

} // namespace

Formula encode_arrow(int m, int n, long max_literals) {
    if (m < 2 || n < 1) throw std::runtime_error("ranking aggregation needs m >= 2, n >= 1");
    if (arrow_literal_estimate(m, n) > max_literals)
        throw std::runtime_error("encoding exceeds literal cap");
    ProfileSpace ps(m, n);
    Formula f;
    f.meta().problem = "arrow";
    f.meta().params = {{"m", m}, {"n", n}};
    for (long r = 0; r < ps.total; r++)
        for (int p = 0; p < ps.fact; p++) f.registry().register_var({"X", {(int)r, p}});
    f.set_num_vars(f.registry().size());
    auto x = [&](long r, int p) { return (int)(r * ps.fact + p + 1); };

    // functionality
    for (long r = 0; r < ps.total; r++) {
        std::vector<Lit> c;
        for (int p = 0; p < ps.fact; p++) c.push_back(x(r, p));
        f.add_clause(Clause(c));
    }
    for (long r = 0; r < ps.total; r++)
        for (int p = 0; p < ps.fact; p++)
            for (int q = p + 1; q < ps.fact; q++) f.add_clause(Clause{-x(r, p), -x(r, q)});
    // non-dictatorship
    for (int i = 0; i < n; i++) {
        std::vector<Lit> c;
        for (long r = 0; r < ps.total; r++) c.push_back(-x(r, ps.ranks_of(r)[i]));
        f.add_clause(Clause(c));
    }
    // unanimity
    std::vector<std::vector<char>> pref_ab(ps.fact, std::vector<char>(0));
    for (int p = 0; p < ps.fact; p++) {
        pref_ab[p].assign((m + 1) * (m + 1), 0);
        for (int a = 1; a <= m; a++)
            for (int b = 1; b <= m; b++)
                if (a != b && prefers(ps.prefs[p], a, b)) pref_ab[p][a * (m + 1) + b] = 1;
    }
    auto p_prefers = [&](int p, int a, int b) { return pref_ab[p][a * (m + 1) + b] != 0; };
    for (int a = 1; a <= m; a++)
        for (int b = 1; b <= m; b++) {
            if (a == b) continue;
            for (long r = 0; r < ps.total; r++) {
                auto ranks = ps.ranks_of(r);
                bool all = true;
                for (int i = 0; i < n && all; i++) all = p_prefers(ranks[i], a, b);
                if (!all) continue;
                std::vector<Lit> c;
                for (int p = 0; p < ps.fact; p++)
                    if (p_prefers(p, a, b)) c.push_back(x(r, p));
                f.add_clause(Clause(c));
            }
        }
    // independence of irrelevant alternatives
    for (int a = 1; a <= m; a++)
        for (int b = a + 1; b <= m; b++) {
            // bucket profiles by the per-agent a-vs-b pattern
            std::vector<std::vector<long>> bucket(1L << n);
            for (long r = 0; r < ps.total; r++) {
                auto ranks = ps.ranks_of(r);
                long key = 0;
                for (int i = 0; i < n; i++) key = key * 2 + (p_prefers(ranks[i], a, b) ? 1 : 0);
                bucket[key].push_back(r);
            }
            std::vector<int> pi_a, pi_b;
            for (int p = 0; p < ps.fact; p++)
                (p_prefers(p, a, b) ? pi_a : pi_b).push_back(p);
            for (const auto& cls : bucket)
                for (long r1 : cls)
                    for (long r2 : cls) {
                        if (r1 == r2) continue;
                        for (int p1 : pi_a)
                            for (int p2 : pi_b)
                                f.add_clause(Clause{-x(r1, p1), -x(r2, p2)});
                    }
        }
    return f;
}

Formula encode_gs(int m, int n, long max_literals) {
    if (m < 2 || n < 1) throw std::runtime_error("strategyproof choice needs m >= 2, n >= 1");
    ProfileSpace ps(m, n);
    {
        long est = ps.total * (long)m * (long)n * ps.fact;
        if (est > max_literals) throw std::runtime_error("encoding exceeds literal cap");
    }
    Formula f;
    f.meta().problem = "gs";
    f.meta().params = {{"m", m}, {"n", n}};
    for (long r = 0; r < ps.total; r++)
        for (int o = 1; o <= m; o++) f.registry().register_var({"X", {(int)r, o}});
    f.set_num_vars(f.registry().size());
    auto x = [&](long r, int o) { return (int)(r * m + o); };

    for (long r = 0; r < ps.total; r++) {
        std::vector<Lit> c;
        for (int o = 1; o <= m; o++) c.push_back(x(r, o));
        f.add_clause(Clause(c));
    }
    for (long r = 0; r < ps.total; r++)
        for (int o1 = 1; o1 <= m; o1++)
            for (int o2 = o1 + 1; o2 <= m; o2++) f.add_clause(Clause{-x(r, o1), -x(r, o2)});
    for (int i = 0; i < n; i++) {
        std::vector<Lit> c;
        for (long r = 0; r < ps.total; r++)
            c.push_back(-x(r, top_of(ps.prefs[ps.ranks_of(r)[i]])));
        f.add_clause(Clause(c));
    }
    for (int o = 1; o <= m; o++) {
        std::vector<Lit> c;
        for (long r = 0; r < ps.total; r++) c.push_back(x(r, o));
        f.add_clause(Clause(c));
    }
    // strategyproofness
    for (long r = 0; r < ps.total; r++) {
        auto ranks = ps.ranks_of(r);
        for (int i = 1; i <= n; i++) {
            const Pref& ri = ps.prefs[ranks[i - 1]];
            for (int pi = 0; pi < ps.fact; pi++) {
                if (pi == ranks[i - 1]) continue;
                long s = ps.index_of(deviate(ranks, i, pi));
                for (int o = 1; o <= m; o++) {
                    std::vector<Lit> c{-x(r, o)};
                    for (int o2 : pr_set(ri, o)) c.push_back(x(s, o2));
                    f.add_clause(Clause(c));
                }
            }
        }
    }
    return f;
}

bool schrijver_subformula_of_kneser(int n, int k, std::string* why) {
    Formula kf = encode_kneser(n, k);
    Formula sf = encode_schrijver(n, k);
    Graph kg = build_kneser(n, k);
    Graph sg = build_stable_kneser(n, k);
    int colors = n - 2 * k + 1;

    // stable vertex -> kneser vertex via labels
    std::vector<int> vmap(sg.num_vertices() + 1, 0);
    for (int v = 1; v <= sg.num_vertices(); v++) {
        const auto& lab = sg.labels()[v - 1];
        bool found = false;
        for (int u = 1; u <= kg.num_vertices(); u++)
            if (kg.labels()[u - 1] == lab) {
                vmap[v] = u;
                found = true;
                break;
            }
        if (!found) {
            if (why) *why = "stable label missing from the full graph";
            return false;
        }
    }
    auto map_var = [&](int var) -> int {
        const VarName& nm = sf.registry().name_of(var);
        if (nm.tag == "X")
            return kf.registry().lookup({"X", {vmap[nm.indices[0]], nm.indices[1]}});
        int a = vmap[nm.indices[0]], b = vmap[nm.indices[1]];
        return kf.registry().lookup({"Y", {std::min(a, b), std::max(a, b)}});
    };
    (void)colors;
    for (const Clause& c : sf.clauses()) {
        std::vector<Lit> lits;
        for (Lit l : c.lits()) {
            int mv = map_var(var_of(l));
            lits.push_back(l > 0 ? mv : -mv);
        }
        if (!kf.find_clause(Clause(std::move(lits)))) {
            if (why) *why = "mapped clause missing from the full encoding";
            return false;
        }
    }
    return true;
}

} // namespace kerncert
