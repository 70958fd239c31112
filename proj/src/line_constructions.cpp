#include "matchlab/line_constructions.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace matchlab {

namespace {

void require_line(const PointConfig& config, Mode mode, const char* what) {
  if (config.dim != 1 || config.mode != mode)
    fail(Err::InvalidInput, std::string(what) + " needs a " +
                                (mode == Mode::one_colour ? "one" : "two") +
                                std::string("-colour d=1 configuration"));
}

std::vector<int> position_order(const PointConfig& config) {
  std::vector<int> order(static_cast<size_t>(config.n_total()));
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](int a, int b) {
    return *config.point_at(a) < *config.point_at(b);
  });
  return order;
}

void finish(const PointConfig& config, WindowMatching& wm) {
  wm.match.mode = config.mode;
  canonicalize(config, wm.match);
  std::sort(wm.boundary.begin(), wm.boundary.end());
}

}  // namespace

WindowMatching alternating(const PointConfig& config, Phase phase) {
  require_line(config, Mode::one_colour, "alternating");
  int n = config.n_red();
  WindowMatching wm;
  if (n == 0) {
    finish(config, wm);
    return wm;
  }
  // m = #points < 0, so x_{-1} has array index m-1 and x_0 has index m.
  int m = static_cast<int>(std::lower_bound(config.red.begin(), config.red.end(), 0.0) -
                           config.red.begin());
  // pairs (j, j+1) with j of fixed parity: plus pairs start at x_{-1}
  int parity = phase == Phase::plus ? (m - 1) & 1 : m & 1;
  int start = parity;
  if (start - 1 >= 0) wm.boundary.push_back(start - 1);  // only ever index 0
  int j = start;
  for (; j + 1 < n; j += 2) wm.match.edges.emplace_back(j, j + 1);
  if (j < n) wm.boundary.push_back(j);
  finish(config, wm);
  return wm;
}

WindowMatching order_matching_k(const PointConfig& config, int k) {
  require_line(config, Mode::two_colour, "order_matching_k");
  WindowMatching wm;
  int nr = config.n_red(), nb = config.n_blue();
  // array index of r_0 / b_0
  int mr = static_cast<int>(std::lower_bound(config.red.begin(), config.red.end(), 0.0) -
                            config.red.begin());
  int mb = static_cast<int>(std::lower_bound(config.blue.begin(), config.blue.end(), 0.0) -
                            config.blue.begin());
  std::vector<char> red_used(static_cast<size_t>(nr), 0);
  for (int jb = 0; jb < nb; ++jb) {
    long long i = static_cast<long long>(jb) - mb;       // b_i
    long long jr = static_cast<long long>(mr) + i + k;   // array index of r_{i+k}
    if (jr >= 0 && jr < nr) {
      wm.match.edges.emplace_back(static_cast<int>(jr), jb);
      red_used[static_cast<size_t>(jr)] = 1;
    } else {
      wm.boundary.push_back(nr + jb);
    }
  }
  for (int ir = 0; ir < nr; ++ir)
    if (!red_used[static_cast<size_t>(ir)]) wm.boundary.push_back(ir);
  finish(config, wm);
  return wm;
}

WindowMatching meshalkin(const PointConfig& config) {
  require_line(config, Mode::two_colour, "meshalkin");
  WindowMatching wm;
  std::vector<int> stack;  // unmatched red indices, nested
  for (int idx : position_order(config)) {
    if (config.is_red_index(idx)) {
      stack.push_back(idx);
    } else if (!stack.empty()) {
      wm.match.edges.emplace_back(stack.back(), idx - config.n_red());
      stack.pop_back();
    } else {
      wm.boundary.push_back(idx);  // balancing red lies left of the window
    }
  }
  for (int idx : stack) wm.boundary.push_back(idx);  // balance point right of window
  finish(config, wm);
  return wm;
}

WindowMatching level_matching(const PointConfig& config, const LevelAssignment& assignment,
                              KThreshold k) {
  require_line(config, Mode::two_colour, "level_matching");
  std::map<int, std::vector<int>> levels;
  for (int idx : position_order(config)) levels[assignment.level_of(config, idx)].push_back(idx);
  WindowMatching wm;
  for (auto& [j, pts] : levels) {
    bool right = k.tag == KThreshold::Tag::neg_inf ||
                 (k.tag == KThreshold::Tag::finite && j >= k.k);
    // all-right: edges are (red, next point); all-left: (blue, next point).
    // Leading/trailing points whose partner falls outside are boundary.
    size_t t = 0;
    auto is_left_end = [&](int idx) {
      bool red = config.is_red_index(idx);
      return right ? !red : red;  // partner would lie before the window
    };
    while (t < pts.size() && is_left_end(pts[t])) {
      wm.boundary.push_back(pts[t]);
      ++t;
    }
    for (; t + 1 < pts.size(); t += 2) {
      int a = pts[t], b = pts[t + 1];
      if (config.is_red_index(a) == config.is_red_index(b))
        fail(Err::InvalidInput, "level colours fail to alternate");
      int red = config.is_red_index(a) ? a : b;
      int blue = red == a ? b : a;
      wm.match.edges.emplace_back(red, blue - config.n_red());
    }
    if (t < pts.size()) wm.boundary.push_back(pts[t]);
  }
  finish(config, wm);
  return wm;
}

WindowMatching one_swap_variant(const PointConfig& config, const WindowMatching& base,
                                const std::function<bool(double)>& selector) {
  require_line(config, Mode::two_colour, "one_swap_variant");
  WindowMatching wm = base;
  auto order = position_order(config);
  int nr = config.n_red();
  auto has_edge = [&](int r, int b) {
    return std::find(wm.match.edges.begin(), wm.match.edges.end(),
                     std::make_pair(r, b)) != wm.match.edges.end();
  };
  for (size_t t = 0; t + 3 < order.size(); ++t) {
    int p0 = order[t], p1 = order[t + 1], p2 = order[t + 2], p3 = order[t + 3];
    if (!(config.is_red_index(p0) && config.is_red_index(p1) && !config.is_red_index(p2) &&
          !config.is_red_index(p3)))
      continue;
    int r = p0, rp = p1, bp = p2 - nr, b = p3 - nr;
    if (!has_edge(r, b) || !has_edge(rp, bp)) continue;  // boundary-affected
    if (!selector(config.blue1(bp) - config.red1(rp))) continue;
    for (auto& e : wm.match.edges) {
      if (e == std::make_pair(r, b)) e = {r, bp};
      else if (e == std::make_pair(rp, bp)) e = {rp, b};
    }
  }
  finish(config, wm);
  return wm;
}

double kappa(const CostSpec& spec) {
  if (spec.kind == Kind::neg_inf) return 1.0;
  if (spec.kind != Kind::finite || !(spec.gamma < 1.0))
    fail(Err::OutOfRange, "kappa is defined for gamma < 1 or kind -inf");
  double g = spec.gamma;
  if (g < 0) return std::pow(2.0, -1.0 / g) + 1.0;
  if (g == 0) return 3.0;
  // root of g(u,u) = 2u^g - 1 - (1+2u)^g, increasing, negative at 0+
  auto f = [&](double u) { return 2.0 * std::pow(u, g) - 1.0 - std::pow(1.0 + 2.0 * u, g); };
  double lo = 1e-12, hi = 1.0;
  while (f(hi) <= 0) hi *= 2.0;
  while (hi - lo > 1e-9) {
    double mid = 0.5 * (lo + hi);
    (f(mid) > 0 ? hi : lo) = mid;
  }
  return 0.5 * (lo + hi) + 1.0;
}

namespace {

PointConfig subset_config(const PointConfig& config, const std::vector<int>& concat_indices,
                          std::vector<int>& red_map, std::vector<int>& blue_map) {
  PointConfig sub;
  sub.dim = 1;
  sub.mode = Mode::two_colour;
  sub.window = config.window;
  for (int idx : concat_indices) {
    if (config.is_red_index(idx)) {
      red_map.push_back(idx);
      sub.red.push_back(config.red1(idx));
    } else {
      blue_map.push_back(idx);
      sub.blue.push_back(config.blue1(idx - config.n_red()));
    }
  }
  std::sort(sub.red.begin(), sub.red.end());
  std::sort(sub.blue.begin(), sub.blue.end());
  std::sort(red_map.begin(), red_map.end(), [&](int a, int b) {
    return config.red1(a) < config.red1(b);
  });
  std::sort(blue_map.begin(), blue_map.end(), [&](int a, int b) {
    return config.blue1(a - config.n_red()) < config.blue1(b - config.n_red());
  });
  return sub;
}

}  // namespace

std::optional<FinitaryCertificate> finitary_partner(const PointConfig& config, const Walk& walk,
                                                    const LevelAssignment& levels,
                                                    const CostSpec& spec, double query,
                                                    int max_n) {
  FinitaryCertificate cert;
  cert.query = query;
  cert.kappa_value = kappa(spec);
  cert.a = 2.0 * cert.kappa_value + 1.0;
  auto y = find_Y(walk, cert.a, max_n, query);
  if (!y) return std::nullopt;
  cert.Y = *y;

  // V: first point at position >= query
  int ir = static_cast<int>(std::lower_bound(config.red.begin(), config.red.end(), query) -
                            config.red.begin());
  int ib = static_cast<int>(std::lower_bound(config.blue.begin(), config.blue.end(), query) -
                            config.blue.begin());
  int best = -1;
  double best_pos = std::numeric_limits<double>::infinity();
  if (ir < config.n_red()) {
    best = ir;
    best_pos = config.red1(ir);
  }
  if (ib < config.n_blue() && config.blue1(ib) < best_pos) {
    best = config.n_red() + ib;
    best_pos = config.blue1(ib);
  }
  if (best < 0 || best_pos >= query + cert.Y)
    fail(Err::InvalidInput, "no point in [query, query+Y): walk certificate inconsistent");
  cert.V = best;
  cert.level = levels.level_of(config, best);

  auto collect = [&](const std::vector<double>& pts, int offset) {
    auto lo = std::upper_bound(pts.begin(), pts.end(), query - cert.Y);
    auto hi = std::lower_bound(pts.begin(), pts.end(), query + cert.Y);
    for (auto it = lo; it != hi; ++it) {
      int idx = offset + static_cast<int>(it - pts.begin());
      if (levels.level_of(config, idx) == cert.level) cert.H.push_back(idx);
    }
  };
  collect(config.red, 0);
  collect(config.blue, config.n_red());
  std::sort(cert.H.begin(), cert.H.end());
  int reds = 0, blues = 0;
  for (int idx : cert.H) (config.is_red_index(idx) ? reds : blues)++;
  if (reds != blues) fail(Err::InvalidInput, "certified H is colour-imbalanced");

  std::vector<int> red_map, blue_map;
  PointConfig sub = subset_config(config, cert.H, red_map, blue_map);
  Matching m = solve_min(spec, sub);
  int v_sub = -1;
  bool v_red = config.is_red_index(cert.V);
  auto& vmap = v_red ? red_map : blue_map;
  for (size_t i = 0; i < vmap.size(); ++i)
    if (vmap[i] == cert.V) v_sub = static_cast<int>(i);
  for (auto& e : m.edges) {
    if (v_red && e.first == v_sub) cert.partner = blue_map[static_cast<size_t>(e.second)];
    if (!v_red && e.second == v_sub) cert.partner = red_map[static_cast<size_t>(e.first)];
  }
  if (cert.partner < 0) fail(Err::InvalidInput, "V unmatched inside its certified set");
  return cert;
}

std::optional<FinitaryCertificate> finitary_partner(const PointConfig& config,
                                                    const CostSpec& spec, double query,
                                                    int max_n) {
  Walk w = build_walk(config);
  LevelAssignment lv = assign_levels(w, config);
  return finitary_partner(config, w, lv, spec, query, max_n);
}

double coding_radius(const FinitaryCertificate& cert) { return cert.a * cert.Y; }

ComponentSummary compare_matchings(const PointConfig& config, const WindowMatching& m1,
                                   const WindowMatching& m2) {
  if (m1.match.mode != config.mode || m2.match.mode != config.mode)
    fail(Err::InvalidInput, "matchings do not belong to the config");
  check_matching(config, m1.match);
  check_matching(config, m2.match);
  int n = config.n_total();
  std::vector<int> parent(static_cast<size_t>(n));
  std::iota(parent.begin(), parent.end(), 0);
  std::function<int(int)> find = [&](int x) {
    while (parent[static_cast<size_t>(x)] != x) {
      parent[static_cast<size_t>(x)] = parent[static_cast<size_t>(parent[static_cast<size_t>(x)])];
      x = parent[static_cast<size_t>(x)];
    }
    return x;
  };
  auto unite = [&](int a, int b) { parent[static_cast<size_t>(find(a))] = find(b); };
  auto add_edges = [&](const Matching& m) {
    for (auto& e : m.edges) {
      int a = e.first;
      int b = m.mode == Mode::two_colour ? config.n_red() + e.second : e.second;
      unite(a, b);
    }
  };
  add_edges(m1.match);
  add_edges(m2.match);
  std::vector<char> root_boundary(static_cast<size_t>(n), 0);
  for (int b : m1.boundary) root_boundary[static_cast<size_t>(find(b))] = 1;
  for (int b : m2.boundary) root_boundary[static_cast<size_t>(find(b))] = 1;
  std::map<int, int> size_of;
  for (int i = 0; i < n; ++i) size_of[find(i)]++;
  ComponentSummary out;
  for (auto& [root, sz] : size_of) {
    if (root_boundary[static_cast<size_t>(root)]) {
      out.excluded++;
    } else {
      out.sizes.push_back(sz);
    }
  }
  std::sort(out.sizes.rbegin(), out.sizes.rend());
  return out;
}

std::map<int, std::vector<std::pair<int, int>>> edges_by_level(const PointConfig& config,
                                                               const LevelAssignment& levels,
                                                               const WindowMatching& wm) {
  std::map<int, std::vector<std::pair<int, int>>> out;
  for (auto& e : wm.match.edges) {
    int lv = levels.level_of(config, e.first);
    out[lv].push_back(e);
  }
  return out;
}

}  // namespace matchlab
