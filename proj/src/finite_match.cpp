#include "matchlab/finite_match.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <limits>
#include <map>
#include <queue>

#include "matchlab/assignment.hpp"
#include "matchlab/walklevel.hpp"

namespace matchlab {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double dist_rb(const PointConfig& c, int i, int j) {
  return point_distance(c, i, c.n_red() + j);
}

Matching empty_matching(const PointConfig& config) {
  Matching m;
  m.mode = config.mode;
  canonicalize(config, m);
  return m;
}

// ---------------------------------------------------------------------------
// oracle-side enumeration: every matching with the minimal unmatched count,
// each produced exactly once
// ---------------------------------------------------------------------------

template <class Fn>
void enumerate_minimal_unmatched(const PointConfig& config, Fn&& fn) {
  Matching m;
  m.mode = config.mode;
  if (config.mode == Mode::two_colour) {
    int nr = config.n_red(), nb = config.n_blue();
    bool red_minor = nr <= nb;
    int minor = red_minor ? nr : nb;
    int major = red_minor ? nb : nr;
    std::vector<char> used(static_cast<size_t>(major), 0);
    std::function<void(int)> rec = [&](int i) {
      if (i == minor) {
        Matching out = m;
        canonicalize(config, out);
        fn(out);
        return;
      }
      for (int j = 0; j < major; ++j) {
        if (used[static_cast<size_t>(j)]) continue;
        used[static_cast<size_t>(j)] = 1;
        m.edges.emplace_back(red_minor ? i : j, red_minor ? j : i);
        rec(i + 1);
        m.edges.pop_back();
        used[static_cast<size_t>(j)] = 0;
      }
    };
    rec(0);
  } else {
    int n = config.n_red();
    std::vector<char> used(static_cast<size_t>(n), 0);
    std::function<void(int, int)> rec = [&](int lo, int skips) {
      while (lo < n && used[static_cast<size_t>(lo)]) ++lo;
      if (lo == n) {
        Matching out = m;
        canonicalize(config, out);
        fn(out);
        return;
      }
      used[static_cast<size_t>(lo)] = 1;
      for (int j = lo + 1; j < n; ++j) {
        if (used[static_cast<size_t>(j)]) continue;
        used[static_cast<size_t>(j)] = 1;
        m.edges.emplace_back(lo, j);
        rec(lo + 1, skips);
        m.edges.pop_back();
        used[static_cast<size_t>(j)] = 0;
      }
      if (skips > 0) rec(lo + 1, skips - 1);
      used[static_cast<size_t>(lo)] = 0;
    };
    rec(0, config.n_red() % 2);
  }
}

// every partial matching, each exactly once (for tie detection)
template <class Fn>
void enumerate_all_matchings(const PointConfig& config, Fn&& fn) {
  int n = config.n_total(), nr = config.n_red();
  Matching m;
  m.mode = config.mode;
  std::vector<char> used(static_cast<size_t>(n), 0);
  std::function<void(int)> rec = [&](int lo) {
    while (lo < n && used[static_cast<size_t>(lo)]) ++lo;
    if (lo == n) {
      Matching out = m;
      canonicalize(config, out);
      fn(out);
      return;
    }
    used[static_cast<size_t>(lo)] = 1;
    rec(lo + 1);  // lo unmatched
    for (int j = lo + 1; j < n; ++j) {
      if (used[static_cast<size_t>(j)]) continue;
      if (config.mode == Mode::two_colour && (lo < nr) == (j < nr)) continue;
      used[static_cast<size_t>(j)] = 1;
      if (config.mode == Mode::two_colour) {
        m.edges.emplace_back(lo, j - nr);  // lo is red here: lo<nr or j<nr, lo<j => lo red
      } else {
        m.edges.emplace_back(lo, j);
      }
      rec(lo + 1);
      m.edges.pop_back();
      used[static_cast<size_t>(j)] = 0;
    }
    used[static_cast<size_t>(lo)] = 0;
  };
  rec(0);
}

// ---------------------------------------------------------------------------
// solver-side small-case search (kept structurally separate from the oracle)
// ---------------------------------------------------------------------------

struct BestSearch {
  bool have = false;
  MatchScore best_score;
  Matching best;
  int tie_count = 0;
};

Matching enum_best(const CostSpec& spec, const PointConfig& config) {
  if (config.n_total() > kOracleCap) fail(Err::TooLarge, "fallback enumeration capped");
  BestSearch bs;
  enumerate_minimal_unmatched(config, [&](const Matching& m) {
    MatchScore s = score(spec, config, m);
    if (!bs.have) {
      bs.have = true;
      bs.best_score = s;
      bs.best = m;
      bs.tie_count = 1;
      return;
    }
    switch (compare(spec, s, bs.best_score)) {
      case Ordering::less:
        bs.best_score = s;
        bs.best = m;
        bs.tie_count = 1;
        break;
      case Ordering::equal:
        if (!same_edge_set(m, bs.best)) ++bs.tie_count;
        break;
      case Ordering::greater:
        break;
    }
  });
  if (!bs.have) return empty_matching(config);
  bs.best.tie = bs.tie_count > 1;
  return bs.best;
}

// ---------------------------------------------------------------------------
// 2-colour sum-cost solver: square assignment with zero-cost virtual
// partners for the surplus colour
// ---------------------------------------------------------------------------

Matching solve_2c_finite(const CostSpec& spec, const PointConfig& config) {
  int nr = config.n_red(), nb = config.n_blue();
  Matching m;
  m.mode = Mode::two_colour;
  if (nr > 0 && nb > 0) {
    int n = std::max(nr, nb);
    std::vector<double> cost(static_cast<size_t>(n) * n, 0.0);
    for (int i = 0; i < nr; ++i)
      for (int j = 0; j < nb; ++j)
        cost[static_cast<size_t>(i) * n + j] = edge_cost(spec, dist_rb(config, i, j));
    std::vector<int> row_to_col = assign_min_cost(cost, n);
    for (int i = 0; i < nr; ++i)
      if (row_to_col[static_cast<size_t>(i)] < nb) m.edges.emplace_back(i, row_to_col[static_cast<size_t>(i)]);
  }
  canonicalize(config, m);
  return m;
}

// ---------------------------------------------------------------------------
// 1-colour sum-cost solver: subset DP (exact), one drop allowed at odd count
// ---------------------------------------------------------------------------

Matching solve_1c_dp(const CostSpec& spec, const PointConfig& config) {
  int n = config.n_red();
  std::vector<double> c(static_cast<size_t>(n) * n, 0.0);
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      c[static_cast<size_t>(i) * n + j] = c[static_cast<size_t>(j) * n + i] =
          edge_cost(spec, point_distance(config, i, j));
  size_t full = (size_t{1} << n);
  std::vector<double> dp(full, kInf);
  std::vector<int8_t> choice(full, -1);
  dp[0] = 0.0;
  for (size_t mask = 1; mask < full; ++mask) {
    int pc = __builtin_popcountll(mask);
    if (pc % 2) continue;
    int i = __builtin_ctzll(mask);
    size_t rest = mask ^ (size_t{1} << i);
    size_t sub = rest;
    while (sub) {
      int j = __builtin_ctzll(sub);
      sub &= sub - 1;
      double v = dp[rest ^ (size_t{1} << j)] + c[static_cast<size_t>(i) * n + j];
      if (v < dp[mask]) {
        dp[mask] = v;
        choice[mask] = static_cast<int8_t>(j);
      }
    }
  }
  size_t pick;
  if (n % 2 == 0) {
    pick = full - 1;
  } else {
    pick = 0;
    double best = kInf;
    for (int p = 0; p < n; ++p) {
      size_t mask = (full - 1) ^ (size_t{1} << p);
      if (dp[mask] < best) {
        best = dp[mask];
        pick = mask;
      }
    }
  }
  Matching m;
  m.mode = Mode::one_colour;
  size_t mask = pick;
  while (mask) {
    int i = __builtin_ctzll(mask);
    int j = choice[mask];
    m.edges.emplace_back(i, j);
    mask ^= (size_t{1} << i) | (size_t{1} << j);
  }
  canonicalize(config, m);
  return m;
}

// 1-colour d=1 with gamma >= 1 (and the 1+- kinds): any two edges of a
// minimal matching are separate, so the matching pairs consecutive points;
// at odd count the unmatched point splits the line at an even index.
Matching solve_1c_line_consecutive(const CostSpec& spec, const PointConfig& config, bool* tied) {
  int n = config.n_red();
  CostSpec costspec = spec.kind == Kind::finite ? spec : CostSpec::finite(1.0);
  auto block_cost = [&](int from, int to) {  // pair (from,from+1),... up to to exclusive
    double s = 0;
    for (int i = from; i + 1 < to; i += 2)
      s += edge_cost(costspec, config.red1(i + 1) - config.red1(i));
    return s;
  };
  Matching m;
  m.mode = Mode::one_colour;
  int drop = -1;
  if (n % 2 == 1) {
    double best = kInf, second = kInf;
    for (int p = 0; p < n; p += 2) {
      double v = block_cost(0, p) + block_cost(p + 1, n);
      if (v < best) {
        second = best;
        best = v;
        drop = p;
      } else if (v < second) {
        second = v;
      }
    }
    if (tied) *tied = std::isfinite(second) && nearly_equal(best, second);
  } else if (tied) {
    *tied = false;
  }
  for (int i = 0; i < n; ++i) {
    if (i == drop) continue;
    int j = i + 1 + (i + 1 == drop ? 1 : 0);
    if (j >= n) break;
    m.edges.emplace_back(i, j);
    i = j;
  }
  canonicalize(config, m);
  return m;
}

// ---------------------------------------------------------------------------
// stable matching: iterated mutually-nearest pairs (= shortest eligible pair)
// ---------------------------------------------------------------------------

bool eligible(const PointConfig& c, int a, int b) {
  if (c.mode == Mode::one_colour) return true;
  return c.is_red_index(a) != c.is_red_index(b);
}

Matching stable_greedy(const PointConfig& config) {
  int n = config.n_total();
  Matching m;
  m.mode = config.mode;
  if (n >= 2 && config.dim == 1) {
    // merged order + linked list + lazy heap of adjacent eligible pairs
    std::vector<int> order(static_cast<size_t>(n));
    for (int i = 0; i < n; ++i) order[static_cast<size_t>(i)] = i;
    std::sort(order.begin(), order.end(), [&](int a, int b) {
      return *config.point_at(a) < *config.point_at(b);
    });
    std::vector<int> nxt(static_cast<size_t>(n)), prv(static_cast<size_t>(n));
    std::vector<char> alive(static_cast<size_t>(n), 1);
    for (int k = 0; k < n; ++k) {
      nxt[static_cast<size_t>(k)] = k + 1 < n ? k + 1 : -1;
      prv[static_cast<size_t>(k)] = k - 1;
    }
    using Entry = std::pair<double, std::pair<int, int>>;  // dist, (order idx l, r)
    std::priority_queue<Entry, std::vector<Entry>, std::greater<>> heap;
    auto push_pair = [&](int l, int r) {
      if (l < 0 || r < 0) return;
      int a = order[static_cast<size_t>(l)], b = order[static_cast<size_t>(r)];
      if (!eligible(config, a, b)) return;
      heap.push({*config.point_at(b) - *config.point_at(a), {l, r}});
    };
    for (int k = 0; k + 1 < n; ++k) push_pair(k, k + 1);
    auto valid = [&](const Entry& e) {
      auto [l, r] = e.second;
      return alive[static_cast<size_t>(l)] && alive[static_cast<size_t>(r)] &&
             nxt[static_cast<size_t>(l)] == r;
    };
    while (!heap.empty()) {
      Entry top = heap.top();
      heap.pop();
      if (!valid(top)) continue;
      // peek the next valid candidate for a distance tie
      while (!heap.empty() && !valid(heap.top())) heap.pop();
      if (!heap.empty() && nearly_equal(heap.top().first, top.first))
        fail(Err::DegenerateDistances, "tied nearest-pair distances");
      auto [l, r] = top.second;
      int a = order[static_cast<size_t>(l)], b = order[static_cast<size_t>(r)];
      if (config.mode == Mode::two_colour) {
        int red = config.is_red_index(a) ? a : b;
        int blue = red == a ? b : a;
        m.edges.emplace_back(red, blue - config.n_red());
      } else {
        m.edges.emplace_back(std::min(a, b), std::max(a, b));
      }
      alive[static_cast<size_t>(l)] = alive[static_cast<size_t>(r)] = 0;
      int before = prv[static_cast<size_t>(l)], after = nxt[static_cast<size_t>(r)];
      if (before >= 0) nxt[static_cast<size_t>(before)] = after;
      if (after >= 0) prv[static_cast<size_t>(after)] = before;
      push_pair(before, after);
    }
  } else if (n >= 2) {
    std::vector<char> alive(static_cast<size_t>(n), 1);
    for (;;) {
      double best = kInf, second = kInf;
      int ba = -1, bb = -1;
      for (int a = 0; a < n; ++a) {
        if (!alive[static_cast<size_t>(a)]) continue;
        for (int b = a + 1; b < n; ++b) {
          if (!alive[static_cast<size_t>(b)] || !eligible(config, a, b)) continue;
          double d = point_distance(config, a, b);
          if (d < best) {
            second = best;
            best = d;
            ba = a;
            bb = b;
          } else if (d < second) {
            second = d;
          }
        }
      }
      if (ba < 0) break;
      if (std::isfinite(second) && nearly_equal(best, second))
        fail(Err::DegenerateDistances, "tied nearest-pair distances");
      if (config.mode == Mode::two_colour) {
        int red = config.is_red_index(ba) ? ba : bb;
        int blue = red == ba ? bb : ba;
        m.edges.emplace_back(red, blue - config.n_red());
      } else {
        m.edges.emplace_back(ba, bb);
      }
      alive[static_cast<size_t>(ba)] = alive[static_cast<size_t>(bb)] = 0;
    }
  }
  canonicalize(config, m);
  return m;
}

// ---------------------------------------------------------------------------
// +inf: lexicographic bottleneck via forced extreme pairs.  Under distinct
// distances the minimal feasible bottleneck value is attained by exactly one
// pair, which every optimum must contain; match it and recurse with the
// threshold as a cap.
// ---------------------------------------------------------------------------

// max matching among alive points using only pairs of distance <= tau
int threshold_matching_size(const PointConfig& config, const std::vector<int>& alive,
                            double tau) {
  if (config.mode == Mode::two_colour) {
    std::vector<int> reds, blues;
    for (int idx : alive) (config.is_red_index(idx) ? reds : blues).push_back(idx);
    std::vector<std::vector<int>> adj(reds.size());
    for (size_t i = 0; i < reds.size(); ++i)
      for (size_t j = 0; j < blues.size(); ++j)
        if (point_distance(config, reds[i], blues[j]) <= tau) adj[i].push_back(static_cast<int>(j));
    return max_bipartite_matching(adj, static_cast<int>(blues.size())).first;
  }
  // one-colour d=1: greedy leftmost pairing is maximum on a line
  int size = 0;
  int pending = -1;
  for (int idx : alive) {  // alive kept sorted by position
    if (pending < 0) {
      pending = idx;
    } else if (*config.point_at(idx) - *config.point_at(pending) <= tau) {
      ++size;
      pending = -1;
    } else {
      pending = idx;
    }
  }
  return size;
}

Matching solve_pos_inf(const PointConfig& config) {
  Matching m;
  m.mode = config.mode;
  std::vector<int> alive(static_cast<size_t>(config.n_total()));
  for (int i = 0; i < config.n_total(); ++i) alive[static_cast<size_t>(i)] = i;
  double cap = kInf;
  for (;;) {
    int nr_alive = 0, nb_alive = 0;
    for (int idx : alive) (config.is_red_index(idx) ? nr_alive : nb_alive)++;
    int target = config.mode == Mode::two_colour ? std::min(nr_alive, nb_alive)
                                                 : static_cast<int>(alive.size()) / 2;
    if (target == 0) break;
    std::vector<std::pair<double, std::pair<int, int>>> pairs;
    for (size_t i = 0; i < alive.size(); ++i)
      for (size_t j = i + 1; j < alive.size(); ++j) {
        int a = alive[i], b = alive[j];
        if (!eligible(config, a, b)) continue;
        double d = point_distance(config, a, b);
        if (d <= cap) pairs.push_back({d, {a, b}});
      }
    std::sort(pairs.begin(), pairs.end());
    // smallest threshold index with a feasible matching
    int lo = 0, hi = static_cast<int>(pairs.size()) - 1, found = -1;
    while (lo <= hi) {
      int mid = (lo + hi) / 2;
      if (threshold_matching_size(config, alive, pairs[static_cast<size_t>(mid)].first) >= target) {
        found = mid;
        hi = mid - 1;
      } else {
        lo = mid + 1;
      }
    }
    if (found < 0) fail(Err::InvalidInput, "bottleneck search failed");
    double tau = pairs[static_cast<size_t>(found)].first;
    if ((found + 1 < static_cast<int>(pairs.size()) &&
         nearly_equal(pairs[static_cast<size_t>(found) + 1].first, tau)) ||
        (found > 0 && nearly_equal(pairs[static_cast<size_t>(found) - 1].first, tau)))
      fail(Err::DegenerateDistances, "tied bottleneck distances");
    auto [a, b] = pairs[static_cast<size_t>(found)].second;
    if (config.mode == Mode::two_colour) {
      int red = config.is_red_index(a) ? a : b;
      int blue = red == a ? b : a;
      m.edges.emplace_back(red, blue - config.n_red());
    } else {
      m.edges.emplace_back(a, b);
    }
    alive.erase(std::remove_if(alive.begin(), alive.end(),
                               [&](int idx) { return idx == a || idx == b; }),
                alive.end());
    cap = tau;
  }
  canonicalize(config, m);
  return m;
}

// ---------------------------------------------------------------------------
// 1+- structural solvers, d=1, equal counts
// ---------------------------------------------------------------------------

Matching solve_one_plus_2c(const PointConfig& config) {
  Matching m;
  m.mode = Mode::two_colour;
  for (int i = 0; i < config.n_red(); ++i) m.edges.emplace_back(i, i);
  canonicalize(config, m);
  return m;
}

Matching solve_one_minus_2c(const PointConfig& config) {
  Walk w = build_walk(config);
  LevelAssignment lv = assign_levels(w, config);
  std::map<int, std::vector<int>> levels;  // level -> concat indices (position order)
  std::vector<int> order(static_cast<size_t>(config.n_total()));
  for (int i = 0; i < config.n_total(); ++i) order[static_cast<size_t>(i)] = i;
  std::sort(order.begin(), order.end(), [&](int a, int b) {
    return *config.point_at(a) < *config.point_at(b);
  });
  for (int idx : order) levels[lv.level_of(config, idx)].push_back(idx);
  Matching m;
  m.mode = Mode::two_colour;
  for (auto& [k, pts] : levels) {
    if (pts.size() % 2 != 0) fail(Err::InvalidInput, "odd level in equal-count config");
    for (size_t t = 0; t + 1 < pts.size(); t += 2) {
      int a = pts[t], b = pts[t + 1];
      int red = config.is_red_index(a) ? a : b;
      int blue = red == a ? b : a;
      if (config.is_red_index(a) == config.is_red_index(b))
        fail(Err::InvalidInput, "level colours fail to alternate");
      m.edges.emplace_back(red, blue - config.n_red());
    }
  }
  canonicalize(config, m);
  return m;
}

// tie scan for gamma=1, d=1: a non-separate edge pair always admits an
// equal-cost rival
bool has_nonseparate_pair(const PointConfig& config, const Matching& m) {
  if (config.dim != 1) return false;
  size_t ne = m.edges.size();
  std::vector<std::pair<double, double>> iv(ne);
  for (size_t i = 0; i < ne; ++i) {
    double xa, xb;
    if (m.mode == Mode::two_colour) {
      xa = config.red1(m.edges[i].first);
      xb = config.blue1(m.edges[i].second);
    } else {
      xa = config.red1(m.edges[i].first);
      xb = config.red1(m.edges[i].second);
    }
    iv[i] = {std::min(xa, xb), std::max(xa, xb)};
  }
  std::sort(iv.begin(), iv.end());
  for (size_t i = 0; i < ne; ++i)
    for (size_t j = i + 1; j < ne && iv[j].first < iv[i].second; ++j)
      return true;  // iv[j] starts inside iv[i]
  return false;
}

int count_score_ties(const CostSpec& spec, const PointConfig& config, const Matching& best) {
  MatchScore target = score(spec, config, best);
  int ties = 0;
  enumerate_minimal_unmatched(config, [&](const Matching& m) {
    if (compare(spec, score(spec, config, m), target) == Ordering::equal &&
        !same_edge_set(m, best))
      ++ties;
  });
  return ties;
}

void attach_tie_flag(const CostSpec& spec, const PointConfig& config, Matching& m) {
  if (config.n_total() <= kOracleCap) {
    m.tie = count_score_ties(spec, config, m) > 0;
  } else if (spec.kind == Kind::finite && spec.gamma == 1.0) {
    m.tie = has_nonseparate_pair(config, m);
  } else {
    m.tie = false;
  }
}

}  // namespace

Matching solve_min(const CostSpec& spec, const PointConfig& config) {
  if (config.n_total() == 0) return empty_matching(config);
  switch (spec.kind) {
    case Kind::finite: {
      Matching m;
      if (config.mode == Mode::two_colour) {
        m = solve_2c_finite(spec, config);
      } else if (config.n_total() <= kOneColourDpCap) {
        m = solve_1c_dp(spec, config);
      } else if (config.dim == 1 && spec.gamma >= 1.0) {
        bool tied = false;
        m = solve_1c_line_consecutive(spec, config, &tied);
        m.tie = tied;
        return m;
      } else {
        fail(Err::TooLarge, "1-colour sum-cost solver capped at " +
                                std::to_string(kOneColourDpCap) + " points");
      }
      attach_tie_flag(spec, config, m);
      return m;
    }
    case Kind::neg_inf: {
      try {
        return stable_greedy(config);
      } catch (const Error& e) {
        if (e.code() != Err::DegenerateDistances || config.n_total() > kOracleCap) throw;
        return enum_best(spec, config);
      }
    }
    case Kind::pos_inf: {
      if (config.mode == Mode::one_colour && config.dim != 1) {
        // line feasibility does not apply; the general case needs a blossom
        // matcher, capped at enumeration size instead
        if (config.n_total() <= kOracleCap) return enum_best(spec, config);
        fail(Err::TooLarge, "+inf 1-colour beyond the enumeration cap needs d=1");
      }
      try {
        return solve_pos_inf(config);
      } catch (const Error& e) {
        if (e.code() != Err::DegenerateDistances || config.n_total() > kOracleCap) throw;
        return enum_best(spec, config);
      }
    }
    case Kind::one_plus:
    case Kind::one_minus: {
      if (config.dim != 1) {
        // arrangements are a d=1 notion; elsewhere 1+- reduces to gamma=1
        return solve_min(CostSpec::finite(1.0), config);
      }
      if (config.mode == Mode::one_colour) {
        bool tied = false;
        Matching m = solve_1c_line_consecutive(spec, config, &tied);
        m.tie = tied;
        return m;
      }
      if (config.n_red() == config.n_blue()) {
        return spec.kind == Kind::one_plus ? solve_one_plus_2c(config)
                                           : solve_one_minus_2c(config);
      }
      if (config.n_total() <= kOracleCap) return enum_best(spec, config);
      fail(Err::TooLarge, "1+- with unequal colour counts capped at enumeration size");
    }
  }
  fail(Err::InvalidParameter, "unreachable");
}

std::vector<Matching> oracle_min(const CostSpec& spec, const PointConfig& config) {
  if (config.n_total() > kOracleCap)
    fail(Err::TooLarge, "oracle capped at " + std::to_string(kOracleCap) + " points");
  if (config.n_total() == 0) return {empty_matching(config)};
  std::vector<Matching> best;
  MatchScore best_score;
  enumerate_minimal_unmatched(config, [&](const Matching& m) {
    MatchScore s = score(spec, config, m);
    if (best.empty()) {
      best_score = s;
      best.push_back(m);
      return;
    }
    switch (compare(spec, s, best_score)) {
      case Ordering::less:
        best_score = s;
        best.clear();
        best.push_back(m);
        break;
      case Ordering::equal:
        best.push_back(m);
        break;
      case Ordering::greater:
        break;
    }
  });
  for (auto& m : best) m.tie = best.size() > 1;
  return best;
}

Matching solve_stable(const PointConfig& config) { return stable_greedy(config); }

Matching tile_match(const CostSpec& spec, const PointConfig& config, double tile_size,
                    const std::vector<double>& offset) {
  if (!(tile_size > 0)) fail(Err::InvalidParameter, "tile_size must be > 0");
  if (spec.kind == Kind::one_plus || spec.kind == Kind::one_minus)
    fail(Err::WrongKind, "tile_match takes finite or +-inf kinds");
  if (static_cast<int>(offset.size()) != config.dim)
    fail(Err::InvalidParameter, "offset needs one coordinate per axis");

  std::map<std::vector<std::int64_t>, std::pair<std::vector<int>, std::vector<int>>> tiles;
  auto tile_key = [&](const double* p) {
    std::vector<std::int64_t> key(static_cast<size_t>(config.dim));
    for (int k = 0; k < config.dim; ++k)
      key[static_cast<size_t>(k)] =
          static_cast<std::int64_t>(std::floor((p[k] - offset[static_cast<size_t>(k)]) / tile_size));
    return key;
  };
  for (int i = 0; i < config.n_red(); ++i) tiles[tile_key(config.red_at(i))].first.push_back(i);
  for (int j = 0; j < config.n_blue(); ++j) tiles[tile_key(config.blue_at(j))].second.push_back(j);

  Matching out;
  out.mode = config.mode;
  for (auto& [key, members] : tiles) {
    auto& [reds, blues] = members;
    PointConfig sub;
    sub.dim = config.dim;
    sub.mode = config.mode;
    for (int k = 0; k < config.dim; ++k) {
      double lo = offset[static_cast<size_t>(k)] + tile_size * static_cast<double>(key[static_cast<size_t>(k)]);
      sub.window.emplace_back(lo, lo + tile_size);
    }
    for (int i : reds)
      sub.red.insert(sub.red.end(), config.red_at(i), config.red_at(i) + config.dim);
    for (int j : blues)
      sub.blue.insert(sub.blue.end(), config.blue_at(j), config.blue_at(j) + config.dim);
    Matching piece = solve_min(spec, sub);
    for (auto& e : piece.edges) {
      if (config.mode == Mode::two_colour) {
        out.edges.emplace_back(reds[static_cast<size_t>(e.first)], blues[static_cast<size_t>(e.second)]);
      } else {
        out.edges.emplace_back(reds[static_cast<size_t>(e.first)], reds[static_cast<size_t>(e.second)]);
      }
    }
    out.tie = out.tie || piece.tie;
  }
  canonicalize(config, out);
  return out;
}

bool detect_tie(const CostSpec& spec, const PointConfig& config) {
  if (config.n_total() > kOracleCap)
    fail(Err::TooLarge, "tie detection capped at " + std::to_string(kOracleCap) + " points");
  std::vector<MatchScore> scores;
  enumerate_all_matchings(config, [&](const Matching& m) {
    scores.push_back(score(spec, config, m));
  });
  auto raw_less = [&](const MatchScore& a, const MatchScore& b) {
    if (a.unmatched != b.unmatched) return a.unmatched < b.unmatched;
    switch (spec.kind) {
      case Kind::finite: return a.cost < b.cost;
      case Kind::neg_inf:
      case Kind::pos_inf: return a.lengths < b.lengths;
      case Kind::one_minus:
      case Kind::one_plus:
        if (a.cost != b.cost) return a.cost < b.cost;
        return a.violation < b.violation;
    }
    return false;
  };
  std::sort(scores.begin(), scores.end(), raw_less);
  for (size_t i = 0; i + 1 < scores.size(); ++i)
    if (compare(spec, scores[i], scores[i + 1]) == Ordering::equal) return true;
  return false;
}

}  // namespace matchlab
