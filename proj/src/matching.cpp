#include "matchlab/matching.hpp"

#include <algorithm>

namespace matchlab {

double edge_length(const PointConfig& config, const Matching& m, int edge_idx) {
  auto [a, b] = m.edges[static_cast<size_t>(edge_idx)];
  if (m.mode == Mode::two_colour) return point_distance(config, a, config.n_red() + b);
  return point_distance(config, a, b);
}

void canonicalize(const PointConfig& config, Matching& m) {
  for (auto& e : m.edges)
    if (m.mode == Mode::one_colour && e.first > e.second) std::swap(e.first, e.second);
  std::sort(m.edges.begin(), m.edges.end());
  int n = config.n_total();
  std::vector<char> used(static_cast<size_t>(n), 0);
  for (auto& e : m.edges) {
    used[static_cast<size_t>(e.first)] = 1;
    used[static_cast<size_t>(m.mode == Mode::two_colour ? config.n_red() + e.second : e.second)] = 1;
  }
  m.unmatched.clear();
  for (int i = 0; i < n; ++i)
    if (!used[static_cast<size_t>(i)]) m.unmatched.push_back(i);
}

void check_matching(const PointConfig& config, const Matching& m) {
  if (m.mode != config.mode) fail(Err::InvalidMatching, "mode mismatch");
  int nr = config.n_red(), n = config.n_total();
  std::vector<char> used(static_cast<size_t>(n), 0);
  auto take = [&](int idx) {
    if (idx < 0 || idx >= n) fail(Err::InvalidMatching, "index out of range");
    if (used[static_cast<size_t>(idx)]) fail(Err::InvalidMatching, "point used twice");
    used[static_cast<size_t>(idx)] = 1;
  };
  for (auto& e : m.edges) {
    if (m.mode == Mode::two_colour) {
      if (e.first < 0 || e.first >= nr || e.second < 0 || e.second >= config.n_blue())
        fail(Err::InvalidMatching, "edge index out of range");
      take(e.first);
      take(nr + e.second);
    } else {
      if (e.first == e.second) fail(Err::InvalidMatching, "self edge");
      take(e.first);
      take(e.second);
    }
  }
  for (int u : m.unmatched) {
    if (u < 0 || u >= n) fail(Err::InvalidMatching, "unmatched index out of range");
    if (used[static_cast<size_t>(u)]) fail(Err::InvalidMatching, "unmatched point is matched");
    used[static_cast<size_t>(u)] = 1;
  }
  for (int i = 0; i < n; ++i)
    if (!used[static_cast<size_t>(i)])
      fail(Err::InvalidMatching, "unmatched set is not the complement of matched points");
}

bool same_edge_set(const Matching& a, const Matching& b) {
  auto ea = a.edges, eb = b.edges;
  auto norm = [](std::vector<std::pair<int, int>>& v, Mode mode) {
    for (auto& e : v)
      if (mode == Mode::one_colour && e.first > e.second) std::swap(e.first, e.second);
    std::sort(v.begin(), v.end());
  };
  norm(ea, a.mode);
  norm(eb, b.mode);
  return ea == eb;
}

}  // namespace matchlab
