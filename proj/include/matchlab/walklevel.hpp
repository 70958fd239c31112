#pragma once

#include <optional>
#include <vector>

#include "matchlab/points.hpp"

namespace matchlab {

// The difference walk of a two-colour d=1 configuration: +1 at red points,
// -1 at blue points, anchored so that the value just left of 0 is 0.  Stored
// as jump positions with post-jump values; queries are exact.  W is
// right-continuous: value_at(x) is the value on [x, next jump).
struct Walk {
  std::vector<double> pos;      // jump positions, ascending
  std::vector<int> val_after;   // value just right of pos[i]
  int val_leftmost = 0;         // value on (-inf, pos[0])
  double window_lo = 0, window_hi = 0;

  int value_at(double x) const;      // W(x)
  int value_before(double x) const;  // W(x-)
  // min of W over the closed interval [lo, hi]; interval must sit inside the
  // window
  int min_on(double lo, double hi) const;

  // block minima for min_on; built by build_walk
  std::vector<int> block_min;
  static constexpr int kBlock = 64;
};

// point index -> level: a point sits at level k when the walk moves between
// k and k+1 across it.  Red levels are W(x-), blue levels W(x-)-1.
struct LevelAssignment {
  std::vector<int> level_red;
  std::vector<int> level_blue;
  int level_of(const PointConfig& c, int concat_idx) const {
    return concat_idx < c.n_red() ? level_red[static_cast<size_t>(concat_idx)]
                                  : level_blue[static_cast<size_t>(concat_idx - c.n_red())];
  }
};

Walk build_walk(const PointConfig& config);
LevelAssignment assign_levels(const Walk& walk, const PointConfig& config);

// least jump position > from at which the post-jump value equals target;
// nullopt when the window is exhausted first
std::optional<double> first_hit(const Walk& walk, int target, double from);

// smallest Y in {(3a)^n : 0 <= n <= max_n} with W > 0 on [-aY,-Y] and
// [Y,aY], re-anchored at `at` (values shifted by -W(at-)).  Requires the
// window to cover [at - a(3a)^max_n, at + a(3a)^max_n].
std::optional<double> find_Y(const Walk& walk, double a, int max_n, double at = 0.0);

// CSV dump: position,value rows (value after the jump)
std::string walk_to_csv(const Walk& walk);

}  // namespace matchlab
