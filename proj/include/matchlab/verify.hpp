#pragma once

#include <optional>
#include <string>
#include <utility>

#include "matchlab/finite_match.hpp"
#include "matchlab/rng.hpp"

namespace matchlab {

// witness: the first violating pair (concatenated indices), or the failing
// compatible subset for the local-minimality check
struct VerifyReport {
  bool ok = true;
  std::optional<std::pair<int, int>> witness_pair;
  std::vector<int> witness_subset;
  long long subsets_checked = 0;
  std::string to_json(const std::string& predicate) const;
};

// |x - M(x)| ^ |y - M(y)| <= |x - y| for all pairs (opposite colours in
// two-colour mode); unmatched points count as infinitely far from their
// partner.
VerifyReport is_stable(const PointConfig& config, const Matching& m);

// the stability inequality weakened by the multiplicative constant kappa
VerifyReport is_quasistable(const PointConfig& config, const Matching& m, double kappa);

// Every compatible subset of at most subset_cap points has a score-minimal
// restriction (checked against oracle_min).  Edge-pair-level subsets are
// exhaustive; larger subsets are sampled (n_random draws, seeded).
VerifyReport is_gamma_minimal_local(const CostSpec& spec, const PointConfig& config,
                                    const Matching& m, int subset_cap, int n_random = 200,
                                    Seed seed = {0, 0});

}  // namespace matchlab
