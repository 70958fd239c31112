#pragma once

#include <vector>

namespace matchlab {

// Exact min-cost assignment on an n x n matrix (row-major), arbitrary finite
// real costs.  Shortest augmenting paths with potentials, O(n^3).
// Returns row_to_col.
std::vector<int> assign_min_cost(const std::vector<double>& cost, int n);

// Maximum-cardinality bipartite matching on an adjacency list
// (left -> list of right neighbours).  Returns (size, left_mate) with -1 for
// unmatched left vertices.  Hopcroft-Karp.
std::pair<int, std::vector<int>> max_bipartite_matching(
    const std::vector<std::vector<int>>& adj, int n_right);

}  // namespace matchlab
