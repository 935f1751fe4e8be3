#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace kerncert {

// Simple undirected graph on vertices 1..n, optional k-subset labels.
class Graph {
  public:
    Graph() = default;
    explicit Graph(int n) : n_(n), adj_(n + 1, std::vector<char>(n + 1, 0)) {}

    int num_vertices() const { return n_; }
    void add_edge(int u, int v);
    bool has_edge(int u, int v) const { return adj_[u][v] != 0; }
    int degree(int v) const;
    int num_edges() const;
    std::vector<int> neighbors(int v) const;
    std::vector<std::pair<int, int>> edges() const; // lexicographic

    Graph complement() const;
    // Induced subgraph on `keep` (ascending); returns the graph plus the
    // old-vertex list in new-vertex order.
    Graph induced(const std::vector<int>& keep) const;

    bool has_labels() const { return !labels_.empty(); }
    const std::vector<std::vector<int>>& labels() const { return labels_; }
    void set_labels(std::vector<std::vector<int>> l) { labels_ = std::move(l); }

  private:
    int n_ = 0;
    std::vector<std::vector<char>> adj_;
    std::vector<std::vector<int>> labels_;
};

// DIMACS graph format: "p edge n m" header, "e u v" edge lines.
Graph graph_read_dimacs(std::istream& in);
void graph_write_dimacs(const Graph& g, std::ostream& out);

// Kneser graph: vertices are the k-subsets of [n] in lexicographic order,
// edges join disjoint subsets. The stable variant keeps subsets with no
// two cyclically consecutive elements.
Graph build_kneser(int n, int k);
Graph build_stable_kneser(int n, int k);
bool is_stable_subset(const std::vector<int>& s, int n);

using Matching = std::vector<std::pair<int, int>>;

// Maximum matching in a general graph (blossom contraction).
Matching max_matching(const Graph& g);

struct CrownDecomposition {
    std::vector<int> crown;           // C: independent, no edges to rest
    std::vector<int> head;            // H: matched into C
    std::vector<int> rest;            // R
    std::vector<std::pair<int, int>> matching; // (head vertex, crown vertex)
};

struct CrownResult {
    enum class Kind { Crown, MatchingFound, TooSmall } kind;
    CrownDecomposition crown;
    Matching matching; // size >= k when kind == MatchingFound
};

// Finds a crown of g, or a matching of size >= k, or reports the graph
// small (|V| <= 3k-2). Errors on isolated vertices: in the dual-coloring
// pipeline those correspond to universal vertices of the complement,
// which the caller must remove first.
CrownResult find_crown(const Graph& g, int k);

// All three conditions of the definition, plus head/crown matching shape.
bool validate_crown(const Graph& g, const CrownDecomposition& c, std::string* why = nullptr);

// Partition of vertices into classes with equal closed neighborhoods.
std::vector<std::vector<int>> twin_classes(const Graph& g);

} // namespace kerncert
