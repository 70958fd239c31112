#pragma once

#include <functional>
#include <map>
#include <optional>
#include <vector>

#include "matchlab/finite_match.hpp"
#include "matchlab/walklevel.hpp"

namespace matchlab {

// Finite-window truncation of an infinite matching: points whose partner may
// lie outside the window are listed in `boundary` (concatenated indexing) and
// carry no edge.  Statistics only ever use non-boundary points.
struct WindowMatching {
  Matching match;
  std::vector<int> boundary;
};

enum class Phase { plus, minus };

// The two alternating matchings of a 1-colour d=1 configuration: consecutive
// disjoint nearest-neighbour pairs, phase anchored at the origin indexing
// x_{-1} < 0 <= x_0.
WindowMatching alternating(const PointConfig& config, Phase phase);

// Order-preserving matching M^k = {<r_{i+k}, b_i>} with origin indexing
// r_{-1} < 0 <= r_0, b_{-1} < 0 <= b_0.
WindowMatching order_matching_k(const PointConfig& config, int k);

// M_minus_inf: each red point matched to the first position to its right
// where red and blue counts balance; all edges oriented right.  The
// colour-swapped call gives M_inf.
WindowMatching meshalkin(const PointConfig& config);

// threshold for the level-matching family M_k; k in Z union {-inf, +inf}
struct KThreshold {
  enum class Tag { finite, neg_inf, pos_inf } tag = Tag::finite;
  int k = 0;
  static KThreshold at(int k) { return {Tag::finite, k}; }
  static KThreshold neg_infinity() { return {Tag::neg_inf, 0}; }
  static KThreshold pos_infinity() { return {Tag::pos_inf, 0}; }
};

// M_k: level j matched by the all-left alternating level matching when
// j < k-1/2, all-right when j > k-1/2.
WindowMatching level_matching(const PointConfig& config, const LevelAssignment& assignment,
                              KThreshold k);

// Swap partners at every maximal pattern r < r' < b' < b of four consecutive
// points (no others between r and b) whenever selector(|r'-b'|) holds; the
// base must be a meshalkin output on the same config.
WindowMatching one_swap_variant(const PointConfig& config, const WindowMatching& base,
                                const std::function<bool(double)>& selector);

// Quasistability constant kappa(gamma) for gamma < 1 or kind -inf:
//   -inf -> 1;  gamma<0 -> 2^(-1/gamma)+1;  gamma=0 -> 3;
//   0<gamma<1 -> u*+1 with g(u*,u*)=0, g(u,v)=u^g+v^g-1-(1+u+v)^g,
//   bisection to 1e-9.
double kappa(const CostSpec& spec);

// The (kappa, a, Y, H) data certifying a locally determined partner in the
// subcritical regime.
struct FinitaryCertificate {
  double query = 0;
  int V = -1;      // concatenated index of the first point >= query
  int level = 0;   // level of V
  double kappa_value = 0;
  double a = 0;    // 2*kappa + 1
  double Y = 0;    // from the (3a)^n grid
  std::vector<int> H;  // level cap (query-Y, query+Y), concatenated indices
  int partner = -1;    // concatenated index of V's partner
};

// Partner of the first point right of `query` in the unique gamma-minimal
// matching, certified by walk positivity on [query-aY,query-Y] and
// [query+Y,query+aY]; nullopt when no Y on the grid up to max_n certifies.
std::optional<FinitaryCertificate> finitary_partner(const PointConfig& config,
                                                    const CostSpec& spec, double query,
                                                    int max_n);

// variant over a prebuilt walk + level assignment (one window, many queries)
std::optional<FinitaryCertificate> finitary_partner(const PointConfig& config, const Walk& walk,
                                                    const LevelAssignment& levels,
                                                    const CostSpec& spec, double query,
                                                    int max_n);

double coding_radius(const FinitaryCertificate& cert);

// Sizes of the connected components of the union multigraph of two
// matchings of the same config; components touching a boundary point of
// either side are excluded and counted separately.
struct ComponentSummary {
  std::vector<int> sizes;  // vertex counts, descending
  int excluded = 0;        // components dropped for touching a boundary point
};

ComponentSummary compare_matchings(const PointConfig& config, const WindowMatching& m1,
                                   const WindowMatching& m2);

// edges of a window matching within one level, plus helpers used by the
// statistics drivers
std::map<int, std::vector<std::pair<int, int>>> edges_by_level(const PointConfig& config,
                                                               const LevelAssignment& levels,
                                                               const WindowMatching& wm);

}  // namespace matchlab
