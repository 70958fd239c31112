#pragma once

#include <vector>

#include "matchlab/costs.hpp"

namespace matchlab {

// exhaustive enumeration cap (total points) for oracle_min / detect_tie
inline constexpr int kOracleCap = 12;
// subset-DP cap for the 1-colour sum-cost solver
inline constexpr int kOneColourDpCap = 20;

// Exact gamma-minimal matching for any CostSpec kind.  The returned matching
// attains the minimum MatchScore; when several optima coincide within
// eps_tie a tie flag is set and any one of them is returned.
Matching solve_min(const CostSpec& spec, const PointConfig& config);

// Independent verification oracle: enumerate every matching with the minimal
// number of unmatched points and return all score-minimal ones (within
// eps_tie).  Total point count <= kOracleCap.
std::vector<Matching> oracle_min(const CostSpec& spec, const PointConfig& config);

// The unique stable matching under distinct pairwise distances, computed by
// iteratively matching mutually nearest eligible pairs.
Matching solve_stable(const PointConfig& config);

// Union over tiles of solve_min restricted to each tile's points; tiles are
// the boxes of edge tile_size anchored at offset.  Finite or +-inf kinds.
Matching tile_match(const CostSpec& spec, const PointConfig& config, double tile_size,
                    const std::vector<double>& offset);

// Whether two distinct matchings of the config have equal score within
// eps_tie (any partial matchings, not only optima).  Total points <=
// kOracleCap.
bool detect_tie(const CostSpec& spec, const PointConfig& config);

}  // namespace matchlab
