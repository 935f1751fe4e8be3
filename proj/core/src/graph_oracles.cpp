#include "kerncert/graph_oracles.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>

namespace kerncert {

namespace {

bool color_rec(const Graph& g, const std::vector<int>& order, std::vector<int>& color,
               size_t pos, int colors, int& used) {
    if (pos == order.size()) return true;
    int v = order[pos];
    int cap = std::min(colors, used + 1); // new colors introduced in order
    for (int c = 1; c <= cap; c++) {
        bool ok = true;
        for (int u = 1; u <= g.num_vertices(); u++)
            if (g.has_edge(v, u) && color[u] == c) {
                ok = false;
                break;
            }
        if (!ok) continue;
        color[v] = c;
        int prev = used;
        used = std::max(used, c);
        if (color_rec(g, order, color, pos + 1, colors, used)) return true;
        used = prev;
        color[v] = 0;
    }
    return false;
}

} // namespace

bool colorable(const Graph& g, int colors) {
    if (colors < 0) return g.num_vertices() == 0;
    if (colors == 0) return g.num_vertices() == 0;
    std::vector<int> order;
    for (int v = 1; v <= g.num_vertices(); v++) order.push_back(v);
    std::sort(order.begin(), order.end(),
              [&](int a, int b) { return g.degree(a) != g.degree(b) ? g.degree(a) > g.degree(b)
                                                                    : a < b; });
    std::vector<int> color(g.num_vertices() + 1, 0);
    int used = 0;
    return color_rec(g, order, color, 0, colors, used);
}

int chromatic_number(const Graph& g) {
    if (g.num_vertices() > 16)
        throw std::runtime_error("chromatic oracle guard exceeded (n <= 16)");
    if (g.num_vertices() == 0) return 0;
    for (int c = 1; c <= g.num_vertices(); c++)
        if (colorable(g, c)) return c;
    return g.num_vertices();
}

namespace {

int vc_rec(const Graph& g, std::vector<char>& removed, int budget) {
    // find an uncovered edge
    int eu = 0, ev = 0;
    for (int u = 1; u <= g.num_vertices() && !eu; u++) {
        if (removed[u]) continue;
        for (int v = u + 1; v <= g.num_vertices(); v++) {
            if (removed[v] || !g.has_edge(u, v)) continue;
            eu = u;
            ev = v;
            break;
        }
    }
    if (!eu) return 0;
    if (budget == 0) return -1; // infeasible marker
    int best = -1;
    for (int pick : {eu, ev}) {
        removed[pick] = 1;
        int sub = vc_rec(g, removed, budget - 1);
        removed[pick] = 0;
        if (sub >= 0 && (best < 0 || sub + 1 < best)) best = sub + 1;
    }
    return best;
}

} // namespace

int vc_min(const Graph& g) {
    if (g.num_vertices() > 20)
        throw std::runtime_error("vertex cover oracle guard exceeded (n <= 20)");
    for (int k = 0; k <= g.num_vertices(); k++) {
        std::vector<char> removed(g.num_vertices() + 1, 0);
        if (vc_rec(g, removed, k) >= 0) return k;
    }
    return g.num_vertices();
}

namespace {

void all_maximal_cliques(const Graph& g, std::vector<int> r, std::vector<int> p,
                         std::vector<int> x, std::vector<std::vector<int>>& out) {
    if (p.empty() && x.empty()) {
        out.push_back(r);
        return;
    }
    int pivot = !p.empty() ? p.front() : x.front();
    std::vector<int> cand;
    for (int v : p)
        if (!g.has_edge(pivot, v)) cand.push_back(v);
    for (int v : cand) {
        std::vector<int> r2 = r, p2, x2;
        r2.push_back(v);
        for (int u : p)
            if (g.has_edge(v, u)) p2.push_back(u);
        for (int u : x)
            if (g.has_edge(v, u)) x2.push_back(u);
        all_maximal_cliques(g, r2, p2, x2, out);
        p.erase(std::find(p.begin(), p.end(), v));
        x.push_back(v);
    }
}

int ecc_rec(const Graph& g, const std::vector<std::vector<int>>& cliques,
            std::vector<std::pair<int, int>>& uncovered, int budget) {
    if (uncovered.empty()) return 0;
    if (budget == 0) return -1;
    auto [eu, ev] = uncovered.front();
    int best = -1;
    for (const auto& q : cliques) {
        bool has_u = std::find(q.begin(), q.end(), eu) != q.end();
        bool has_v = std::find(q.begin(), q.end(), ev) != q.end();
        if (!has_u || !has_v) continue;
        std::vector<std::pair<int, int>> rest;
        for (auto [a, b] : uncovered) {
            bool in_q = std::find(q.begin(), q.end(), a) != q.end() &&
                        std::find(q.begin(), q.end(), b) != q.end();
            if (!in_q) rest.emplace_back(a, b);
        }
        int sub = ecc_rec(g, cliques, rest, budget - 1);
        if (sub >= 0 && (best < 0 || sub + 1 < best)) best = sub + 1;
    }
    return best;
}

} // namespace

int ecc_min(const Graph& g) {
    if (g.num_vertices() > 16)
        throw std::runtime_error("edge clique cover oracle guard exceeded (n <= 16)");
    auto edges = g.edges();
    if (edges.empty()) return 0;
    std::vector<int> p;
    for (int v = 1; v <= g.num_vertices(); v++) p.push_back(v);
    std::vector<std::vector<int>> cliques;
    all_maximal_cliques(g, {}, p, {}, cliques);
    for (int k = 1; k <= (int)edges.size(); k++) {
        auto unc = edges;
        if (ecc_rec(g, cliques, unc, k) >= 0) return k;
    }
    return (int)edges.size();
}

namespace {

int hitting_rec(const std::vector<std::vector<int>>& family, std::set<int>& chosen, int budget) {
    const std::vector<int>* unhit = nullptr;
    for (const auto& s : family) {
        bool hit = false;
        for (int x : s)
            if (chosen.count(x)) {
                hit = true;
                break;
            }
        if (!hit) {
            unhit = &s;
            break;
        }
    }
    if (!unhit) return (int)chosen.size();
    if (budget == 0) return -1;
    if (unhit->empty()) return -1; // empty set can never be hit
    int best = -1;
    for (int x : *unhit) {
        chosen.insert(x);
        int sub = hitting_rec(family, chosen, budget - 1);
        chosen.erase(x);
        if (sub >= 0 && (best < 0 || sub < best)) best = sub;
    }
    return best;
}

} // namespace

bool vc_at_most(const Graph& g, int k) {
    std::vector<char> removed(g.num_vertices() + 1, 0);
    return vc_rec(g, removed, k) >= 0;
}

int hitting_min(const std::vector<std::vector<int>>& family) {
    std::set<int> uni;
    for (const auto& s : family) uni.insert(s.begin(), s.end());
    if (uni.size() > 24)
        throw std::runtime_error("hitting set oracle guard exceeded (universe <= 24)");
    for (const auto& s : family)
        if (s.empty()) throw std::runtime_error("empty set is unhittable");
    for (int k = 0; k <= (int)uni.size(); k++) {
        std::set<int> chosen;
        if (hitting_rec(family, chosen, k) >= 0) return k;
    }
    return (int)uni.size();
}

} // namespace kerncert
