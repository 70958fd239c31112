#pragma once

#include <string>
#include <vector>

#include "matchlab/matching.hpp"
#include "matchlab/points.hpp"

namespace matchlab {

// gamma in R union {-inf, +inf, 1-, 1+}
enum class Kind { finite, neg_inf, pos_inf, one_minus, one_plus };

struct CostSpec {
  Kind kind = Kind::finite;
  double gamma = 1.0;  // meaningful for Kind::finite only

  static CostSpec finite(double g) { return {Kind::finite, g}; }
  static CostSpec neg_infinity() { return {Kind::neg_inf, 0.0}; }
  static CostSpec pos_infinity() { return {Kind::pos_inf, 0.0}; }
  static CostSpec one_minus() { return {Kind::one_minus, 1.0}; }
  static CostSpec one_plus() { return {Kind::one_plus, 1.0}; }
};

// serialized form: number | "-inf" | "+inf" | "1-" | "1+"
std::string costspec_to_string(const CostSpec& spec);
CostSpec costspec_parse(const std::string& s);

// f_gamma(x): x^g for g>0, log x for g=0, -x^g for g<0.  Finite kinds only.
double edge_cost(const CostSpec& spec, double length);

// Lexicographic score: unmatched count first, then the kind-dependent
// payload.  For +-inf the payload is the sorted edge-length sequence
// (ascending for -inf, descending for +inf); for 1+- it is the gamma=1 cost
// plus a flag marking the forbidden arrangement (straddling for 1+,
// entwined for 1-).
struct MatchScore {
  Kind kind = Kind::finite;
  int unmatched = 0;
  double cost = 0.0;
  std::vector<double> lengths;
  bool violation = false;
};

enum class Ordering { less, equal, greater };

MatchScore score(const CostSpec& spec, const PointConfig& config, const Matching& m);
Ordering compare(const CostSpec& spec, const MatchScore& a, const MatchScore& b);

enum class Arrangement { separate, entwined, straddling };

struct ArrangementResult {
  Arrangement kind = Arrangement::separate;
  int outer = -1;  // straddling: 0 if the first edge is outer, 1 if the second
};

// d=1 classification of two edges given by their endpoints; the four
// endpoints must be pairwise distinct.
ArrangementResult arrangement(double e_a, double e_b, double f_a, double f_b);

// Whether two edges in the given arrangement can occur in a gamma-minimal
// matching, for four ordered points with colour pattern `colours` (e.g.
// "rrbb"; one-colour patterns use 'r' throughout) and successive gaps
// a, b, c.  Decided by scoring every colour-legal pairing of the four points
// and testing the queried arrangement for optimality.
bool pair_legal(const CostSpec& spec, Mode mode, const std::string& colours, Arrangement arr,
                double a, double b, double c);

}  // namespace matchlab
