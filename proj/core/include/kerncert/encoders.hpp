#pragma once

#include "kerncert/formula.hpp"
#include "kerncert/graph.hpp"

namespace kerncert {

inline constexpr long kDefaultLiteralCap = 10'000'000;

// Proper-coloring encoding. Variables X[v,i] then Y[u,v]; clause families
// in order: Y units (edge/non-edge per pair), at-least-one color,
// at-most-one color, edge conflicts per pair and color.
Formula encode_coloring(const Graph& g, int colors);

// Same schema with colors = n - k. Requires 1 <= k < n.
Formula encode_dual_coloring(const Graph& g, int k);

// Slot-based cover of size exactly k. Families: Y units; member-covers-
// an-edge rows; per-slot at-least-one; per-slot at-most-one; per-vertex
// at-most-one-slot; edge coverage rows.
Formula encode_vertex_cover(const Graph& g, int k);

// Families: Y units; clique consistency; per-(edge,slot) conjunction
// gates G[u,v,j] with their defining clauses; per-edge coverage rows.
Formula encode_edge_clique_cover(const Graph& g, int k);

// Families: per-slot at-least-one, per-slot at-most-one, per-set coverage.
Formula encode_hitting_set(const std::vector<int>& universe,
                           const std::vector<std::vector<int>>& family, int k, int d);

Formula encode_kneser(int n, int k);
Formula encode_schrijver(int n, int k);

// Ranking-aggregation impossibility encoding: X[r,p] for profile index r
// and ordering rank p. Families: functionality (at-least/at-most-one),
// non-dictatorship, unanimity, independence of irrelevant alternatives.
Formula encode_arrow(int m, int n, long max_literals = kDefaultLiteralCap);

// Strategyproof-choice impossibility encoding: X[r,o]. Families:
// functionality, non-dictatorship, onto, strategyproofness.
Formula encode_gs(int m, int n, long max_literals = kDefaultLiteralCap);

// Label-preserving renaming check: every clause of the stable-subgraph
// encoding appears among the full encoding's clauses.
bool schrijver_subformula_of_kneser(int n, int k, std::string* why = nullptr);

} // namespace kerncert
