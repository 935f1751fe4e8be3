#include "kerncert/graph.hpp"

#include <algorithm>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace kerncert {

void Graph::add_edge(int u, int v) {
    if (u < 1 || v < 1 || u > n_ || v > n_)
        throw std::runtime_error("edge endpoint out of range");
    if (u == v) throw std::runtime_error("self-loop rejected");
    adj_[u][v] = adj_[v][u] = 1;
}

int Graph::degree(int v) const {
    int d = 0;
    for (int u = 1; u <= n_; u++) d += adj_[v][u];
    return d;
}

int Graph::num_edges() const {
    int m = 0;
    for (int u = 1; u <= n_; u++)
        for (int v = u + 1; v <= n_; v++) m += adj_[u][v];
    return m;
}

std::vector<int> Graph::neighbors(int v) const {
    std::vector<int> out;
    for (int u = 1; u <= n_; u++)
        if (adj_[v][u]) out.push_back(u);
    return out;
}

std::vector<std::pair<int, int>> Graph::edges() const {
    std::vector<std::pair<int, int>> out;
    for (int u = 1; u <= n_; u++)
        for (int v = u + 1; v <= n_; v++)
            if (adj_[u][v]) out.emplace_back(u, v);
    return out;
}

Graph Graph::complement() const {
    Graph g(n_);
    for (int u = 1; u <= n_; u++)
        for (int v = u + 1; v <= n_; v++)
            if (!adj_[u][v]) g.add_edge(u, v);
    return g;
}

Graph Graph::induced(const std::vector<int>& keep) const {
    Graph g(static_cast<int>(keep.size()));
    for (size_t i = 0; i < keep.size(); i++)
        for (size_t j = i + 1; j < keep.size(); j++)
            if (adj_[keep[i]][keep[j]]) g.add_edge((int)i + 1, (int)j + 1);
    if (!labels_.empty()) {
        std::vector<std::vector<int>> l;
        for (int v : keep) l.push_back(labels_[v - 1]);
        g.set_labels(std::move(l));
    }
    return g;
}

Graph graph_read_dimacs(std::istream& in) {
    std::string line;
    int lineno = 0;
    long n = -1, m = -1, seen = 0;
    Graph g;
    while (std::getline(in, line)) {
        lineno++;
        if (line.empty() || line[0] == 'c') continue;
        std::istringstream is(line);
        std::string op;
        is >> op;
        if (op == "p") {
            std::string kind;
            if (!(is >> kind >> n >> m) || (kind != "edge" && kind != "col") || n < 0)
                throw std::runtime_error("graph parse error at line " + std::to_string(lineno));
            g = Graph(static_cast<int>(n));
        } else if (op == "e") {
            long u, v;
            if (!(is >> u >> v) || n < 0)
                throw std::runtime_error("graph parse error at line " + std::to_string(lineno));
            if (!g.has_edge((int)u, (int)v)) g.add_edge((int)u, (int)v);
            seen++;
        } else {
            throw std::runtime_error("graph parse error at line " + std::to_string(lineno) +
                                     ": unknown record '" + op + "'");
        }
    }
    if (n < 0) throw std::runtime_error("graph parse error: missing header");
    return g;
}

void graph_write_dimacs(const Graph& g, std::ostream& out) {
    if (g.has_labels()) {
        for (int v = 1; v <= g.num_vertices(); v++) {
            out << "c label " << v << " {";
            const auto& l = g.labels()[v - 1];
            for (size_t i = 0; i < l.size(); i++) out << (i ? "," : "") << l[i];
            out << "}\n";
        }
    }
    out << "p edge " << g.num_vertices() << ' ' << g.num_edges() << '\n';
    for (auto [u, v] : g.edges()) out << "e " << u << ' ' << v << '\n';
}

namespace {

void k_subsets(int n, int k, std::vector<std::vector<int>>& out) {
    std::vector<int> cur(k);
    // lexicographic enumeration
    auto rec = [&](auto&& self, int start, int depth) -> void {
        if (depth == k) {
            out.push_back(cur);
            return;
        }
        for (int x = start; x <= n - (k - depth - 1); x++) {
            cur[depth] = x;
            self(self, x + 1, depth + 1);
        }
    };
    rec(rec, 1, 0);
}

bool disjoint(const std::vector<int>& a, const std::vector<int>& b) {
    size_t i = 0, j = 0;
    while (i < a.size() && j < b.size()) {
        if (a[i] == b[j]) return false;
        if (a[i] < b[j]) i++;
        else j++;
    }
    return true;
}

} // namespace

bool is_stable_subset(const std::vector<int>& s, int n) {
    for (size_t i = 0; i + 1 < s.size(); i++)
        if (s[i + 1] - s[i] == 1) return false;
    if (s.size() >= 2 && s.front() == 1 && s.back() == n) return false;
    return true;
}

Graph build_kneser(int n, int k) {
    if (k < 1 || n < 2 * k)
        throw std::runtime_error("kneser graph requires n >= 2k >= 2");
    std::vector<std::vector<int>> labels;
    k_subsets(n, k, labels);
    Graph g(static_cast<int>(labels.size()));
    for (size_t i = 0; i < labels.size(); i++)
        for (size_t j = i + 1; j < labels.size(); j++)
            if (disjoint(labels[i], labels[j])) g.add_edge((int)i + 1, (int)j + 1);
    g.set_labels(std::move(labels));
    return g;
}

Graph build_stable_kneser(int n, int k) {
    if (k < 1 || n < 2 * k)
        throw std::runtime_error("stable kneser graph requires n >= 2k >= 2");
    std::vector<std::vector<int>> all;
    k_subsets(n, k, all);
    std::vector<std::vector<int>> labels;
    for (auto& s : all)
        if (is_stable_subset(s, n)) labels.push_back(s);
    Graph g(static_cast<int>(labels.size()));
    for (size_t i = 0; i < labels.size(); i++)
        for (size_t j = i + 1; j < labels.size(); j++)
            if (disjoint(labels[i], labels[j])) g.add_edge((int)i + 1, (int)j + 1);
    g.set_labels(std::move(labels));
    return g;
}

// ---------------------------------------------------------------------
// Maximum matching (Edmonds blossom, O(V^3)).

namespace {

struct Blossom {
    int n;
    const Graph* g;
    std::vector<int> match, p, base;
    std::vector<char> used, blossom;

    explicit Blossom(const Graph& graph) : n(graph.num_vertices()), g(&graph) {
        match.assign(n + 1, 0);
        p.assign(n + 1, 0);
        base.assign(n + 1, 0);
    }

    int lca(int a, int b) {
        std::vector<char> seen(n + 1, 0);
        for (;;) {
            a = base[a];
            seen[a] = 1;
            if (!match[a]) break;
            a = p[match[a]];
        }
        for (;;) {
            b = base[b];
            if (seen[b]) return b;
            b = p[match[b]];
        }
    }

    void mark_path(int v, int b, int child) {
        while (base[v] != b) {
            blossom[base[v]] = 1;
            blossom[base[match[v]]] = 1;
            p[v] = child;
            child = match[v];
            v = p[match[v]];
        }
    }

    int find_path(int root) {
        used.assign(n + 1, 0);
        p.assign(n + 1, 0);
        for (int i = 1; i <= n; i++) base[i] = i;
        used[root] = 1;
        std::vector<int> q{root};
        for (size_t qi = 0; qi < q.size(); qi++) {
            int v = q[qi];
            for (int to = 1; to <= n; to++) {
                if (!g->has_edge(v, to)) continue;
                if (base[v] == base[to] || match[v] == to) continue;
                if (to == root || (match[to] && p[match[to]])) {
                    int curbase = lca(v, to);
                    blossom.assign(n + 1, 0);
                    mark_path(v, curbase, to);
                    mark_path(to, curbase, v);
                    for (int i = 1; i <= n; i++) {
                        if (blossom[base[i]]) {
                            base[i] = curbase;
                            if (!used[i]) {
                                used[i] = 1;
                                q.push_back(i);
                            }
                        }
                    }
                } else if (!p[to]) {
                    p[to] = v;
                    if (!match[to]) return to;
                    used[match[to]] = 1;
                    q.push_back(match[to]);
                }
            }
        }
        return 0;
    }

    void augment(int v) {
        while (v) {
            int pv = p[v], ppv = match[pv];
            match[v] = pv;
            match[pv] = v;
            v = ppv;
        }
    }

    Matching run() {
        for (int v = 1; v <= n; v++) {
            if (match[v]) continue;
            int u = find_path(v);
            if (u) augment(u);
        }
        Matching out;
        for (int v = 1; v <= n; v++)
            if (match[v] > v) out.emplace_back(v, match[v]);
        return out;
    }
};

} // namespace

Matching max_matching(const Graph& g) { return Blossom(g).run(); }

// ---------------------------------------------------------------------
// Crown decomposition.

namespace {

// Kuhn augmenting paths; left vertices indexed 0..L-1 map into right list.
struct Bipartite {
    int nl, nr;
    std::vector<std::vector<int>> adj; // left -> right indices
    std::vector<int> match_l, match_r; // -1 if free

    Bipartite(int l, int r) : nl(l), nr(r), adj(l), match_l(l, -1), match_r(r, -1) {}

    bool try_kuhn(int v, std::vector<char>& used) {
        for (int to : adj[v]) {
            if (used[to]) continue;
            used[to] = 1;
            if (match_r[to] == -1 || try_kuhn(match_r[to], used)) {
                match_l[v] = to;
                match_r[to] = v;
                return true;
            }
        }
        return false;
    }

    int solve() {
        int sz = 0;
        for (int v = 0; v < nl; v++) {
            std::vector<char> used(nr, 0);
            if (try_kuhn(v, used)) sz++;
        }
        return sz;
    }
};

} // namespace

CrownResult find_crown(const Graph& g, int k) {
    int n = g.num_vertices();
    for (int v = 1; v <= n; v++)
        if (g.degree(v) == 0)
            throw std::runtime_error(
                "isolated vertex " + std::to_string(v) +
                " (universal in the complement instance); remove it first");

    CrownResult res;

    // greedy maximal matching
    std::vector<char> used(n + 1, 0);
    Matching m1;
    for (auto [u, v] : g.edges()) {
        if (used[u] || used[v]) continue;
        used[u] = used[v] = 1;
        m1.emplace_back(u, v);
    }
    if ((int)m1.size() >= k) {
        res.kind = CrownResult::Kind::MatchingFound;
        res.matching = m1;
        return res;
    }

    std::vector<int> left;  // independent set I
    std::vector<int> right; // V(M1)
    for (int v = 1; v <= n; v++)
        if (!used[v]) left.push_back(v);
    for (auto [u, v] : m1) {
        right.push_back(u);
        right.push_back(v);
    }
    std::sort(right.begin(), right.end());

    Bipartite bp((int)left.size(), (int)right.size());
    for (size_t i = 0; i < left.size(); i++)
        for (size_t j = 0; j < right.size(); j++)
            if (g.has_edge(left[i], right[j])) bp.adj[i].push_back((int)j);
    int m2 = bp.solve();

    if (m2 >= k) {
        res.kind = CrownResult::Kind::MatchingFound;
        for (size_t i = 0; i < left.size(); i++)
            if (bp.match_l[i] != -1)
                res.matching.emplace_back(std::min(left[i], right[bp.match_l[i]]),
                                          std::max(left[i], right[bp.match_l[i]]));
        return res;
    }

    // alternating reachability from free left vertices (Koenig)
    std::vector<char> zl(left.size(), 0), zr(right.size(), 0);
    std::vector<int> stack;
    bool any_free = false;
    for (size_t i = 0; i < left.size(); i++)
        if (bp.match_l[i] == -1) {
            zl[i] = 1;
            stack.push_back((int)i);
            any_free = true;
        }
    if (!any_free) {
        if (n > 3 * k - 2)
            throw std::runtime_error("internal: crown trichotomy violated");
        res.kind = CrownResult::Kind::TooSmall;
        return res;
    }
    while (!stack.empty()) {
        int v = stack.back();
        stack.pop_back();
        for (int to : bp.adj[v]) {
            if (zr[to] || bp.match_l[v] == to) continue;
            zr[to] = 1;
            int w = bp.match_r[to];
            if (w != -1 && !zl[w]) {
                zl[w] = 1;
                stack.push_back(w);
            }
        }
    }

    // head = cover vertices on the matched side, crown = their partners
    CrownDecomposition cd;
    std::vector<char> in_c(n + 1, 0), in_h(n + 1, 0);
    for (size_t j = 0; j < right.size(); j++) {
        if (!zr[j]) continue;
        int h = right[j];
        int c = left[bp.match_r[j]];
        cd.head.push_back(h);
        cd.crown.push_back(c);
        cd.matching.emplace_back(h, c);
        in_h[h] = 1;
        in_c[c] = 1;
    }
    if (cd.head.empty()) throw std::runtime_error("internal: empty crown head");
    for (int v = 1; v <= n; v++)
        if (!in_c[v] && !in_h[v]) cd.rest.push_back(v);
    std::sort(cd.crown.begin(), cd.crown.end());
    std::sort(cd.head.begin(), cd.head.end());

    res.kind = CrownResult::Kind::Crown;
    res.crown = std::move(cd);
    return res;
}

bool validate_crown(const Graph& g, const CrownDecomposition& c, std::string* why) {
    auto fail = [&](const std::string& w) {
        if (why) *why = w;
        return false;
    };
    int n = g.num_vertices();
    std::vector<int> role(n + 1, 0); // 1=C, 2=H, 3=R
    for (int v : c.crown) {
        if (v < 1 || v > n || role[v]) return fail("crown sets overlap or out of range");
        role[v] = 1;
    }
    for (int v : c.head) {
        if (v < 1 || v > n || role[v]) return fail("crown sets overlap or out of range");
        role[v] = 2;
    }
    for (int v : c.rest) {
        if (v < 1 || v > n || role[v]) return fail("crown sets overlap or out of range");
        role[v] = 3;
    }
    for (int v = 1; v <= n; v++)
        if (!role[v]) return fail("vertex " + std::to_string(v) + " unassigned");
    if (c.crown.empty()) return fail("empty crown");
    for (size_t i = 0; i < c.crown.size(); i++)
        for (size_t j = i + 1; j < c.crown.size(); j++)
            if (g.has_edge(c.crown[i], c.crown[j])) return fail("crown not independent");
    for (int u : c.crown)
        for (int r : c.rest)
            if (g.has_edge(u, r)) return fail("crown adjacent to rest");
    std::vector<char> used_c(n + 1, 0), used_h(n + 1, 0);
    for (auto [h, cc] : c.matching) {
        if (role[h] != 2 || role[cc] != 1) return fail("matching pair outside H x C");
        if (used_h[h] || used_c[cc]) return fail("matching not injective");
        used_h[h] = used_c[cc] = 1;
        if (!g.has_edge(h, cc)) return fail("matching pair is not an edge");
    }
    for (int h : c.head)
        if (!used_h[h]) return fail("head vertex unmatched");
    return true;
}

std::vector<std::vector<int>> twin_classes(const Graph& g) {
    int n = g.num_vertices();
    std::vector<std::vector<int>> keys(n + 1);
    for (int v = 1; v <= n; v++) {
        keys[v] = g.neighbors(v);
        keys[v].push_back(v);
        std::sort(keys[v].begin(), keys[v].end());
    }
    std::vector<int> order;
    for (int v = 1; v <= n; v++) order.push_back(v);
    std::sort(order.begin(), order.end(),
              [&](int a, int b) { return keys[a] != keys[b] ? keys[a] < keys[b] : a < b; });
    std::vector<std::vector<int>> classes;
    for (int v : order) {
        if (!classes.empty() && keys[classes.back().front()] == keys[v])
            classes.back().push_back(v);
        else
            classes.push_back({v});
    }
    std::sort(classes.begin(), classes.end());
    return classes;
}

} // namespace kerncert
