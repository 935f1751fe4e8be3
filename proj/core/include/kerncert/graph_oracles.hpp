#pragma once

#include <set>
#include <vector>

#include "kerncert/graph.hpp"

namespace kerncert {

// Exact brute-force oracles. Each refuses inputs beyond its guard rather
// than approximate.

int chromatic_number(const Graph& g);                 // n <= 16
int vc_min(const Graph& g);                           // n <= 20
int ecc_min(const Graph& g);                          // n <= 16
int hitting_min(const std::vector<std::vector<int>>& family); // <= ~24 distinct elements

bool colorable(const Graph& g, int colors);

// Bounded-search decision procedure; cost O(2^k poly), any n.
bool vc_at_most(const Graph& g, int k);

} // namespace kerncert
