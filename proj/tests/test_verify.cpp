#include "doctest.h"
#include "matchlab/line_constructions.hpp"
#include "matchlab/verify.hpp"

using namespace matchlab;

namespace {

PointConfig line1c(std::vector<double> red) {
  PointConfig c;
  c.dim = 1;
  c.mode = Mode::one_colour;
  c.window = {{-100.0, 100.0}};
  c.red = std::move(red);
  return c;
}

Matching matching_of(const PointConfig& c, std::vector<std::pair<int, int>> edges) {
  Matching m;
  m.mode = c.mode;
  m.edges = std::move(edges);
  canonicalize(c, m);
  return m;
}

}  // namespace

TEST_CASE("is_stable") {
  auto c = line1c({0.0, 1.0, 3.0, 7.0});
  CHECK(is_stable(c, solve_stable(c)).ok);

  // {0,1,2,3} matched (0-2),(1-3): e.g. the pair (1,2) violates the
  // inequality (|1-2| = 1 < 2 ^ 2); any returned witness must be genuine
  auto c2 = line1c({0.0, 1.0, 2.0, 3.0});
  auto bad = matching_of(c2, {{0, 2}, {1, 3}});
  auto rep = is_stable(c2, bad);
  CHECK_FALSE(rep.ok);
  REQUIRE(rep.witness_pair.has_value());
  auto [wx, wy] = *rep.witness_pair;
  CHECK(point_distance(c2, wx, wy) < 2.0);  // both partner distances are 2

  // two unmatched points always violate
  auto c3 = line1c({0.0, 5.0});
  auto empty = matching_of(c3, {});
  CHECK_FALSE(is_stable(c3, empty).ok);
}

TEST_CASE("is_quasistable") {
  // solve_min at gamma=0 with kappa=3 passes on random configs
  Rng rng(5150, 0);
  for (int t = 0; t < 100; ++t) {
    auto c = equal_count_pair({{0.0, 10.0}}, 1 + static_cast<int>(rng.below(4)),
                              {static_cast<uint64_t>(t), 21});
    auto m = solve_min(CostSpec::finite(0.0), c);
    CHECK(is_quasistable(c, m, 3.0).ok);
  }
  // constructed violation: both points matched far away relative to gap
  PointConfig c;
  c.dim = 1;
  c.mode = Mode::two_colour;
  c.window = {{-100.0, 100.0}};
  c.red = {0.0, 50.0};
  c.blue = {0.001, 50.002};
  auto far = matching_of(c, {{0, 1}, {1, 0}});
  CHECK_FALSE(is_quasistable(c, far, 3.0).ok);
  CHECK(is_quasistable(c, matching_of(c, {{0, 0}, {1, 1}}), 3.0).ok);
  CHECK_THROWS_AS(is_quasistable(c, far, 0.5), Error);
}

TEST_CASE("witnesses are genuine") {
  auto c = line1c({0.0, 1.0, 2.0, 3.0});
  auto bad = matching_of(c, {{0, 2}, {1, 3}});
  auto rep = is_stable(c, bad);
  REQUIRE_FALSE(rep.ok);
  auto [x, y] = *rep.witness_pair;
  double dx = 2.0, dy = 2.0;  // partner distances of points 1 and 2
  CHECK(point_distance(c, x, y) < std::min(dx, dy));
}

TEST_CASE("is_gamma_minimal_local") {
  Rng rng(606, 0);
  for (int t = 0; t < 40; ++t) {
    auto c = equal_count_pair({{0.0, 10.0}}, 3, {static_cast<uint64_t>(t), 31});
    auto spec = CostSpec::finite(t % 2 ? 0.5 : 2.0);
    auto m = solve_min(spec, c);
    CHECK(is_gamma_minimal_local(spec, c, m, 6, 50, {7, 7}).ok);
  }
  // meshalkin is locally minimal at kind 1- on its matched interior
  for (uint64_t s = 0; s < 10; ++s) {
    auto cfg = sample_poisson({{-15.0, 15.0}}, 1.0, Mode::two_colour, {s, 33});
    auto wm = meshalkin(cfg);
    // restrict to matched points only (boundary points are not compatible)
    PointConfig sub;
    sub.dim = 1;
    sub.mode = Mode::two_colour;
    sub.window = cfg.window;
    std::vector<int> red_ids, blue_ids;
    for (auto& e : wm.match.edges) {
      red_ids.push_back(e.first);
      blue_ids.push_back(e.second);
    }
    std::sort(red_ids.begin(), red_ids.end());
    std::sort(blue_ids.begin(), blue_ids.end());
    Matching m;
    m.mode = Mode::two_colour;
    for (auto& e : wm.match.edges) {
      int ri = static_cast<int>(std::lower_bound(red_ids.begin(), red_ids.end(), e.first) -
                                red_ids.begin());
      int bi = static_cast<int>(std::lower_bound(blue_ids.begin(), blue_ids.end(), e.second) -
                                blue_ids.begin());
      m.edges.emplace_back(ri, bi);
    }
    for (int i : red_ids) sub.red.push_back(cfg.red1(i));
    for (int j : blue_ids) sub.blue.push_back(cfg.blue1(j));
    canonicalize(sub, m);
    CHECK(is_gamma_minimal_local(CostSpec::one_minus(), sub, m, 6, 50, {s, 1}).ok);
  }
  // order matching with k=1 at gamma=1/2 admits an entwined-pair witness
  int witnessed = 0;
  for (uint64_t s = 0; s < 20; ++s) {
    auto cfg = sample_poisson({{-15.0, 15.0}}, 1.0, Mode::two_colour, {s, 34});
    auto wm = order_matching_k(cfg, 1);
    if (wm.match.edges.size() < 2) continue;
    PointConfig sub;
    sub.dim = 1;
    sub.mode = Mode::two_colour;
    sub.window = cfg.window;
    std::vector<int> red_ids, blue_ids;
    for (auto& e : wm.match.edges) {
      red_ids.push_back(e.first);
      blue_ids.push_back(e.second);
    }
    std::sort(red_ids.begin(), red_ids.end());
    std::sort(blue_ids.begin(), blue_ids.end());
    Matching m;
    m.mode = Mode::two_colour;
    for (auto& e : wm.match.edges) {
      int ri = static_cast<int>(std::lower_bound(red_ids.begin(), red_ids.end(), e.first) -
                                red_ids.begin());
      int bi = static_cast<int>(std::lower_bound(blue_ids.begin(), blue_ids.end(), e.second) -
                                blue_ids.begin());
      m.edges.emplace_back(ri, bi);
    }
    for (int i : red_ids) sub.red.push_back(cfg.red1(i));
    for (int j : blue_ids) sub.blue.push_back(cfg.blue1(j));
    canonicalize(sub, m);
    auto rep = is_gamma_minimal_local(CostSpec::finite(0.5), sub, m, 6, 50, {s, 2});
    if (!rep.ok) ++witnessed;
  }
  CHECK(witnessed > 0);
}

TEST_CASE("stable equivalence: is_stable agrees with -inf local minimality") {
  for (uint64_t s = 0; s < 20; ++s) {
    auto cfg = sample_poisson({{-8.0, 8.0}}, 0.3, Mode::two_colour, {s, 35});
    if (cfg.n_total() > 10 || cfg.n_total() == 0) continue;
    auto m = solve_stable(cfg);
    CHECK(is_stable(cfg, m).ok);
    CHECK(is_gamma_minimal_local(CostSpec::neg_infinity(), cfg, m, 6, 50, {s, 3}).ok);
  }
}
