#include <algorithm>
#include <cmath>
#include <map>
#include <set>

#include "doctest.h"
#include "matchlab/line_constructions.hpp"
#include "matchlab/verify.hpp"

using namespace matchlab;

namespace {

PointConfig line2c(std::vector<double> red, std::vector<double> blue, double lo = -100,
                   double hi = 100) {
  PointConfig c;
  c.dim = 1;
  c.mode = Mode::two_colour;
  c.window = {{lo, hi}};
  c.red = std::move(red);
  c.blue = std::move(blue);
  return c;
}

PointConfig line1c(std::vector<double> red, double lo = -100, double hi = 100) {
  PointConfig c;
  c.dim = 1;
  c.mode = Mode::one_colour;
  c.window = {{lo, hi}};
  c.red = std::move(red);
  return c;
}

// reference meshalkin partner straight from the balance-count definition
int meshalkin_partner_bruteforce(const PointConfig& c, int red_idx) {
  double r = c.red1(red_idx);
  for (int j = 0; j < c.n_blue(); ++j) {
    double b = c.blue1(j);
    if (b <= r) continue;
    int reds = 0, blues = 0;
    for (double x : c.red)
      if (x >= r && x <= b) ++reds;
    for (double x : c.blue)
      if (x >= r && x <= b) ++blues;
    if (reds == blues) return j;
  }
  return -1;
}

}  // namespace

TEST_CASE("alternating matchings and phases") {
  auto c = line1c({-1.0, 1.0, 2.0, 4.0});
  auto plus = alternating(c, Phase::plus);
  CHECK(plus.match.edges == std::vector<std::pair<int, int>>{{0, 1}, {2, 3}});
  CHECK(plus.boundary.empty());
  auto minus = alternating(c, Phase::minus);
  CHECK(minus.match.edges == std::vector<std::pair<int, int>>{{1, 2}});
  CHECK(minus.boundary == std::vector<int>{0, 3});
  // every edge pair separate
  for (uint64_t s = 0; s < 10; ++s) {
    auto cfg = sample_poisson({{-20.0, 20.0}}, 1.0, Mode::one_colour, {s, 6});
    for (Phase ph : {Phase::plus, Phase::minus}) {
      auto wm = alternating(cfg, ph);
      for (size_t i = 0; i < wm.match.edges.size(); ++i)
        for (size_t j = i + 1; j < wm.match.edges.size(); ++j) {
          auto arr = arrangement(cfg.red1(wm.match.edges[i].first),
                                 cfg.red1(wm.match.edges[i].second),
                                 cfg.red1(wm.match.edges[j].first),
                                 cfg.red1(wm.match.edges[j].second));
          CHECK(arr.kind == Arrangement::separate);
        }
    }
  }
}

TEST_CASE("order matching M^k") {
  auto c = line2c({1.0}, {2.0});
  auto m0 = order_matching_k(c, 0);
  CHECK(m0.match.edges == std::vector<std::pair<int, int>>{{0, 0}});

  // |k| edges cross 0 on a wide window (fully in-window edges only)
  for (uint64_t s = 0; s < 10; ++s) {
    auto cfg = sample_poisson({{-60.0, 60.0}}, 1.0, Mode::two_colour, {s, 8});
    for (int k : {-3, -1, 0, 2, 4}) {
      auto wm = order_matching_k(cfg, k);
      int crossings = 0;
      for (auto& e : wm.match.edges) {
        double r = cfg.red1(e.first), b = cfg.blue1(e.second);
        if (std::min(r, b) < 0.0 && std::max(r, b) > 0.0) ++crossings;
      }
      CHECK(crossings == std::abs(k));
    }
  }
}

TEST_CASE("meshalkin matches the balance-count definition") {
  auto c = line2c({0.0}, {1.0});
  CHECK(meshalkin(c).match.edges == std::vector<std::pair<int, int>>{{0, 0}});

  auto c2 = line2c({0.0, 1.0}, {2.0, 3.0});
  auto m2 = meshalkin(c2);
  CHECK(m2.match.edges == std::vector<std::pair<int, int>>{{0, 1}, {1, 0}});

  for (uint64_t s = 0; s < 20; ++s) {
    auto cfg = sample_poisson({{-40.0, 40.0}}, 1.0, Mode::two_colour, {s, 10});
    auto wm = meshalkin(cfg);
    std::set<int> boundary(wm.boundary.begin(), wm.boundary.end());
    for (auto& e : wm.match.edges) {
      CHECK(meshalkin_partner_bruteforce(cfg, e.first) == e.second);
      CHECK(cfg.red1(e.first) < cfg.blue1(e.second));  // right oriented
    }
    // reds with an in-window balance point are matched, others boundary
    for (int i = 0; i < cfg.n_red(); ++i) {
      bool matched = false;
      for (auto& e : wm.match.edges) matched = matched || e.first == i;
      CHECK((matched || boundary.count(i) == 1));
    }
  }
}

TEST_CASE("meshalkin edges stay within a level and never entwine") {
  for (uint64_t s = 0; s < 20; ++s) {
    auto cfg = sample_poisson({{-40.0, 40.0}}, 1.0, Mode::two_colour, {s, 11});
    auto wm = meshalkin(cfg);
    auto w = build_walk(cfg);
    auto lv = assign_levels(w, cfg);
    for (auto& e : wm.match.edges)
      CHECK(lv.level_red[e.first] == lv.level_blue[e.second]);
    for (size_t i = 0; i < wm.match.edges.size(); ++i)
      for (size_t j = i + 1; j < wm.match.edges.size(); ++j) {
        auto arr = arrangement(cfg.red1(wm.match.edges[i].first),
                               cfg.blue1(wm.match.edges[i].second),
                               cfg.red1(wm.match.edges[j].first),
                               cfg.blue1(wm.match.edges[j].second));
        CHECK(arr.kind != Arrangement::entwined);
      }
  }
}

TEST_CASE("level matching family") {
  auto c = line2c({1.0}, {2.0});
  auto w = build_walk(c);
  auto lv = assign_levels(w, c);
  auto m0 = level_matching(c, lv, KThreshold::at(0));
  CHECK(m0.match.edges == std::vector<std::pair<int, int>>{{0, 0}});

  for (uint64_t s = 0; s < 20; ++s) {
    auto cfg = sample_poisson({{-40.0, 40.0}}, 1.0, Mode::two_colour, {s, 12});
    auto walk = build_walk(cfg);
    auto levels = assign_levels(walk, cfg);
    // k = -inf reproduces meshalkin exactly
    auto lm = level_matching(cfg, levels, KThreshold::neg_infinity());
    auto mk = meshalkin(cfg);
    CHECK(same_edge_set(lm.match, mk.match));
    CHECK(lm.boundary == mk.boundary);

    // crossing-count identity: edges of M_k crossing x number |W(x)-k|,
    // counting boundary points' cut edges towards their off-window side.
    // Only checkable at positions where every contributing level keeps a
    // representative inside the window on both sides of x.
    std::map<int, std::vector<double>> level_positions;
    for (int idx = 0; idx < cfg.n_total(); ++idx)
      level_positions[levels.level_of(cfg, idx)].push_back(*cfg.point_at(idx));
    for (auto& [lvl, ps] : level_positions) std::sort(ps.begin(), ps.end());
    Rng rng(s, 13);
    int checked_positions = 0;
    for (int k : {-2, 0, 1}) {
      auto wm = level_matching(cfg, levels, KThreshold::at(k));
      for (int t = 0; t < 50; ++t) {
        double x = rng.uniform(-15.0, 15.0);
        int wv = walk.value_at(x);
        bool representable = true;
        for (int j = std::min(wv, k); j < std::max(wv, k); ++j) {
          auto it = level_positions.find(j);
          if (it == level_positions.end() || it->second.front() > x ||
              it->second.back() < x)
            representable = false;
        }
        if (!representable) continue;
        ++checked_positions;
        int crossings = 0;
        for (auto& e : wm.match.edges) {
          double r = cfg.red1(e.first), b = cfg.blue1(e.second);
          if (std::min(r, b) < x && std::max(r, b) > x) ++crossings;
        }
        for (int bidx : wm.boundary) {
          double p = *cfg.point_at(bidx);
          bool right_type = levels.level_of(cfg, bidx) >= k;
          bool red = cfg.is_red_index(bidx);
          // right-type levels orient red->blue rightward, so a boundary red
          // is missing a partner off the right edge and vice versa;
          // left-type levels mirror this
          bool partner_off_right = right_type ? red : !red;
          if (partner_off_right ? (x > p) : (x < p)) ++crossings;
        }
        CHECK(crossings == std::abs(wv - k));
      }
    }
    CHECK(checked_positions > 0);
  }
}

TEST_CASE("one swap variant") {
  auto c = line2c({0.0, 1.0}, {2.0, 3.0});
  auto base = meshalkin(c);
  auto none = one_swap_variant(c, base, [](double) { return false; });
  CHECK(same_edge_set(none.match, base.match));
  auto all = one_swap_variant(c, base, [](double) { return true; });
  CHECK(all.match.edges == std::vector<std::pair<int, int>>{{0, 0}, {1, 1}});
  // swapped and unswapped have equal gamma=1 score on the 4-point set
  auto s1 = score(CostSpec::finite(1.0), c, base.match);
  auto s2 = score(CostSpec::finite(1.0), c, all.match);
  CHECK(compare(CostSpec::finite(1.0), s1, s2) == Ordering::equal);
}

TEST_CASE("kappa values") {
  CHECK(kappa(CostSpec::neg_infinity()) == doctest::Approx(1.0));
  CHECK(kappa(CostSpec::finite(0.0)) == doctest::Approx(3.0));
  CHECK(kappa(CostSpec::finite(-1.0)) == doctest::Approx(3.0));  // 2^{1}+1
  CHECK(kappa(CostSpec::finite(0.5)) == doctest::Approx(5.0).epsilon(1e-6));  // root u*=4
  CHECK_THROWS_AS(kappa(CostSpec::finite(1.0)), Error);
  CHECK_THROWS_AS(kappa(CostSpec::pos_infinity()), Error);
  // numeric sanity of the defining inequality at gamma<0: modifying two far
  // partners to each other reduces cost when both exceed kappa|x-y|
  double g = -1.0, k = kappa(CostSpec::finite(g));
  for (double u : {k + 0.1, 2 * k, 10 * k}) {
    double lhs = -std::pow(u, g) - std::pow(u, g);
    double rhs = -std::pow(1.0, g);
    CHECK(lhs > rhs);  // swap strictly cheaper, so the arrangement is excluded
  }
}

TEST_CASE("finitary partner certificates") {
  CostSpec g0 = CostSpec::finite(0.0);
  int found = 0, checked = 0;
  for (uint64_t s = 0; s < 40 && found < 12; ++s) {
    double reach = 7.0 * std::pow(21.0, 2);  // covers max_n = 2
    auto cfg = sample_poisson({{-reach - 10, reach + 10}}, 1.0, Mode::two_colour, {s, 14});
    auto walk = build_walk(cfg);
    auto levels = assign_levels(walk, cfg);
    Rng rng(s, 15);
    for (int q = 0; q < 25; ++q) {
      double query = rng.uniform(-5.0, 5.0);
      auto cert = finitary_partner(cfg, walk, levels, g0, query, 1);
      ++checked;
      if (!cert) continue;
      ++found;
      // colour balance of H
      int reds = 0, blues = 0;
      for (int idx : cert->H) (cfg.is_red_index(idx) ? reds : blues)++;
      CHECK(reds == blues);
      CHECK(std::find(cert->H.begin(), cert->H.end(), cert->V) != cert->H.end());
      CHECK(std::find(cert->H.begin(), cert->H.end(), cert->partner) != cert->H.end());
      CHECK(coding_radius(*cert) == doctest::Approx(cert->a * cert->Y));
      CHECK(cert->a == doctest::Approx(7.0));

      // partner lies within the coding radius
      CHECK(std::fabs(*cfg.point_at(cert->partner) - query) <= coding_radius(*cert));

      // involution: querying at the partner position returns V
      auto back = finitary_partner(cfg, walk, levels, g0, *cfg.point_at(cert->partner), 1);
      if (back) {
        CHECK(back->V == cert->partner);
        CHECK(back->partner == cert->V);
      }

      // window stability: raising max_n never changes the partner
      auto cert2 = finitary_partner(cfg, walk, levels, g0, query, 2);
      REQUIRE(cert2.has_value());
      CHECK(cert2->partner == cert->partner);
      CHECK(cert2->Y == doctest::Approx(cert->Y));
    }
  }
  CHECK(found > 0);
  CHECK(checked >= found);
}

TEST_CASE("finitary at -inf agrees with solve_stable on the certified set") {
  CostSpec ninf = CostSpec::neg_infinity();
  int found = 0;
  for (uint64_t s = 0; s < 120 && found < 10; ++s) {
    double reach = 3.0 * std::pow(9.0, 2);
    auto cfg = sample_poisson({{-reach - 10, reach + 10}}, 1.0, Mode::two_colour, {s, 16});
    auto walk = build_walk(cfg);
    auto levels = assign_levels(walk, cfg);
    auto cert = finitary_partner(cfg, walk, levels, ninf, 0.0, 2);
    if (!cert) continue;
    ++found;
    // the partner under the stable matching of the certified set matches
    PointConfig sub;
    sub.dim = 1;
    sub.mode = Mode::two_colour;
    sub.window = cfg.window;
    for (int idx : cert->H) {
      if (cfg.is_red_index(idx)) sub.red.push_back(cfg.red1(idx));
      else sub.blue.push_back(cfg.blue1(idx - cfg.n_red()));
    }
    std::sort(sub.red.begin(), sub.red.end());
    std::sort(sub.blue.begin(), sub.blue.end());
    auto st = solve_stable(sub);
    double vpos = *cfg.point_at(cert->V);
    double ppos = *cfg.point_at(cert->partner);
    bool ok = false;
    for (auto& e : st.edges) {
      double r = sub.red1(e.first), b = sub.blue1(e.second);
      if ((r == vpos && b == ppos) || (b == vpos && r == ppos)) ok = true;
    }
    CHECK(ok);
  }
  CHECK(found > 0);
}

TEST_CASE("compare_matchings component summary") {
  auto c = line1c({-1.0, 1.0, 2.0, 4.0});
  auto plus = alternating(c, Phase::plus);
  auto summary = compare_matchings(c, plus, plus);
  for (int sz : summary.sizes) CHECK(sz == 2);

  auto minus = alternating(c, Phase::minus);
  auto diff = compare_matchings(c, plus, minus);
  // the union is the single nearest-neighbour path spanning the window; it
  // touches the minus phase's boundary points, so it lands in `excluded`
  CHECK(diff.excluded == 1);
  CHECK(diff.sizes.empty());

  auto c2 = line2c({0.0}, {1.0});
  auto mk = meshalkin(c2);
  CHECK_THROWS_AS(compare_matchings(line2c({0.0}, {}), mk, mk), Error);
}
