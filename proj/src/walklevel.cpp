#include "matchlab/walklevel.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <limits>
#include <string>

namespace matchlab {

namespace {

// index of the last jump with pos <= x, or -1
int last_jump_leq(const Walk& w, double x) {
  auto it = std::upper_bound(w.pos.begin(), w.pos.end(), x);
  return static_cast<int>(it - w.pos.begin()) - 1;
}

// index of the last jump with pos < x, or -1
int last_jump_lt(const Walk& w, double x) {
  auto it = std::lower_bound(w.pos.begin(), w.pos.end(), x);
  return static_cast<int>(it - w.pos.begin()) - 1;
}

int range_min_val(const Walk& w, int i_lo, int i_hi) {
  // min of val_after over jump indices [i_lo, i_hi]
  int best = std::numeric_limits<int>::max();
  int i = i_lo;
  while (i <= i_hi) {
    if (i % Walk::kBlock == 0 && i + Walk::kBlock - 1 <= i_hi) {
      best = std::min(best, w.block_min[static_cast<size_t>(i / Walk::kBlock)]);
      i += Walk::kBlock;
    } else {
      best = std::min(best, w.val_after[static_cast<size_t>(i)]);
      ++i;
    }
  }
  return best;
}

}  // namespace

int Walk::value_at(double x) const {
  int i = last_jump_leq(*this, x);
  return i < 0 ? val_leftmost : val_after[static_cast<size_t>(i)];
}

int Walk::value_before(double x) const {
  int i = last_jump_lt(*this, x);
  return i < 0 ? val_leftmost : val_after[static_cast<size_t>(i)];
}

int Walk::min_on(double lo, double hi) const {
  int m = value_at(lo);
  int i_lo = last_jump_leq(*this, lo) + 1;
  int i_hi = last_jump_leq(*this, hi);
  if (i_lo <= i_hi) m = std::min(m, range_min_val(*this, i_lo, i_hi));
  return m;
}

Walk build_walk(const PointConfig& config) {
  if (config.dim != 1 || config.mode != Mode::two_colour)
    fail(Err::InvalidInput, "walk needs a two-colour d=1 configuration");
  Walk w;
  w.window_lo = config.window[0].first;
  w.window_hi = config.window[0].second;
  int nr = config.n_red(), nb = config.n_blue();
  w.pos.resize(static_cast<size_t>(nr + nb));
  std::vector<int> step(static_cast<size_t>(nr + nb));
  {
    int i = 0, j = 0, k = 0;
    while (i < nr || j < nb) {
      if (j >= nb || (i < nr && config.red1(i) < config.blue1(j))) {
        w.pos[static_cast<size_t>(k)] = config.red1(i++);
        step[static_cast<size_t>(k++)] = +1;
      } else {
        w.pos[static_cast<size_t>(k)] = config.blue1(j++);
        step[static_cast<size_t>(k++)] = -1;
      }
    }
  }
  // anchor: value just left of 0 is 0; points at exactly 0 jump on the right
  int n = nr + nb;
  int first_geq0 = static_cast<int>(std::lower_bound(w.pos.begin(), w.pos.end(), 0.0) -
                                    w.pos.begin());
  int neg_sum = 0;
  for (int i = 0; i < first_geq0; ++i) neg_sum += step[static_cast<size_t>(i)];
  w.val_leftmost = -neg_sum;
  w.val_after.resize(static_cast<size_t>(n));
  int v = w.val_leftmost;
  for (int i = 0; i < n; ++i) {
    v += step[static_cast<size_t>(i)];
    w.val_after[static_cast<size_t>(i)] = v;
  }
  w.block_min.assign(static_cast<size_t>((n + Walk::kBlock - 1) / Walk::kBlock),
                     std::numeric_limits<int>::max());
  for (int i = 0; i < n; ++i) {
    auto b = static_cast<size_t>(i / Walk::kBlock);
    w.block_min[b] = std::min(w.block_min[b], w.val_after[static_cast<size_t>(i)]);
  }
  return w;
}

LevelAssignment assign_levels(const Walk& walk, const PointConfig& config) {
  LevelAssignment out;
  out.level_red.resize(static_cast<size_t>(config.n_red()));
  out.level_blue.resize(static_cast<size_t>(config.n_blue()));
  for (int i = 0; i < config.n_red(); ++i)
    out.level_red[static_cast<size_t>(i)] = walk.value_before(config.red1(i));
  for (int j = 0; j < config.n_blue(); ++j)
    out.level_blue[static_cast<size_t>(j)] = walk.value_before(config.blue1(j)) - 1;
  return out;
}

std::optional<double> first_hit(const Walk& walk, int target, double from) {
  if (!(from >= walk.window_lo && from <= walk.window_hi))
    fail(Err::InvalidInput, "from outside window");
  int n = static_cast<int>(walk.pos.size());
  for (int i = last_jump_leq(walk, from) + 1; i < n; ++i)
    if (walk.val_after[static_cast<size_t>(i)] == target) return walk.pos[static_cast<size_t>(i)];
  return std::nullopt;
}

std::optional<double> find_Y(const Walk& walk, double a, int max_n, double at) {
  if (!(a > 1)) fail(Err::InvalidParameter, "find_Y needs a > 1");
  if (max_n < 0) fail(Err::InvalidParameter, "max_n must be >= 0");
  double reach = a * std::pow(3.0 * a, max_n);
  if (at - reach < walk.window_lo || at + reach > walk.window_hi)
    fail(Err::WindowTooSmall, "window does not cover [at - a(3a)^max_n, at + a(3a)^max_n]");
  int anchor = walk.value_before(at);
  for (int n = 0; n <= max_n; ++n) {
    double y = std::pow(3.0 * a, n);
    if (walk.min_on(at + y, at + a * y) > anchor &&
        walk.min_on(at - a * y, at - y) > anchor)
      return y;
  }
  return std::nullopt;
}

std::string walk_to_csv(const Walk& walk) {
  std::string out = "position,value\n";
  char buf[64];
  for (size_t i = 0; i < walk.pos.size(); ++i) {
    auto [p, ec] = std::to_chars(buf, buf + sizeof(buf), walk.pos[i]);
    out.append(buf, p);
    out.push_back(',');
    out += std::to_string(walk.val_after[i]);
    out.push_back('\n');
  }
  return out;
}

}  // namespace matchlab
