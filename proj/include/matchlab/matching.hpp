#pragma once

#include <utility>
#include <vector>

#include "matchlab/points.hpp"

namespace matchlab {

// A (partial) matching of a PointConfig.  Two-colour edges are
// (red index, blue index); one-colour edges are unordered index pairs into
// the point list, stored with first < second.  `unmatched` uses concatenated
// indexing: red points keep their index, blue points are offset by n_red.
struct Matching {
  Mode mode = Mode::two_colour;
  std::vector<std::pair<int, int>> edges;
  std::vector<int> unmatched;
  bool tie = false;
};

// length of an edge under the matching's index conventions
double edge_length(const PointConfig& config, const Matching& m, int edge_idx);

// sort edges, recompute unmatched as the complement of matched indices
void canonicalize(const PointConfig& config, Matching& m);

// throws InvalidMatching unless m is a valid matching of config
void check_matching(const PointConfig& config, const Matching& m);

bool same_edge_set(const Matching& a, const Matching& b);

}  // namespace matchlab
