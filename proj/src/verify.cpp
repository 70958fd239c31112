#include "matchlab/verify.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "json.hpp"

namespace matchlab {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// partner distance per concatenated index; inf when unmatched
std::vector<double> partner_distances(const PointConfig& config, const Matching& m) {
  std::vector<double> d(static_cast<size_t>(config.n_total()), kInf);
  for (auto& e : m.edges) {
    int a = e.first;
    int b = m.mode == Mode::two_colour ? config.n_red() + e.second : e.second;
    double len = point_distance(config, a, b);
    d[static_cast<size_t>(a)] = len;
    d[static_cast<size_t>(b)] = len;
  }
  return d;
}

VerifyReport check_pairs(const PointConfig& config, const Matching& m, double factor) {
  check_matching(config, m);
  auto pd = partner_distances(config, m);
  int n = config.n_total();
  VerifyReport rep;
  for (int x = 0; x < n; ++x) {
    for (int y = x + 1; y < n; ++y) {
      if (config.mode == Mode::two_colour &&
          config.is_red_index(x) == config.is_red_index(y))
        continue;
      double lhs = std::min(pd[static_cast<size_t>(x)], pd[static_cast<size_t>(y)]);
      if (lhs > factor * point_distance(config, x, y)) {
        rep.ok = false;
        rep.witness_pair = {x, y};
        return rep;
      }
      ++rep.subsets_checked;
    }
  }
  return rep;
}

}  // namespace

VerifyReport is_stable(const PointConfig& config, const Matching& m) {
  return check_pairs(config, m, 1.0);
}

VerifyReport is_quasistable(const PointConfig& config, const Matching& m, double kappa) {
  if (!(kappa >= 1.0)) fail(Err::InvalidParameter, "kappa must be >= 1");
  return check_pairs(config, m, kappa);
}

VerifyReport is_gamma_minimal_local(const CostSpec& spec, const PointConfig& config,
                                    const Matching& m, int subset_cap, int n_random,
                                    Seed seed) {
  if (subset_cap > kOracleCap) fail(Err::InvalidParameter, "subset_cap exceeds the oracle cap");
  check_matching(config, m);

  // compatible units: matched pairs and single unmatched points
  struct Unit {
    std::vector<int> pts;      // concatenated indices
    std::pair<int, int> edge;  // valid when matched
    bool matched;
  };
  std::vector<Unit> units;
  for (auto& e : m.edges) {
    int b = m.mode == Mode::two_colour ? config.n_red() + e.second : e.second;
    units.push_back({{e.first, b}, e, true});
  }
  for (int u : m.unmatched) units.push_back({{u}, {0, 0}, false});

  VerifyReport rep;
  auto check_subset = [&](const std::vector<int>& chosen) -> bool {
    std::vector<int> concat;
    for (int ui : chosen)
      concat.insert(concat.end(), units[static_cast<size_t>(ui)].pts.begin(),
                    units[static_cast<size_t>(ui)].pts.end());
    std::sort(concat.begin(), concat.end());
    // restriction of m to the subset, as a config of its own
    PointConfig sub;
    sub.dim = config.dim;
    sub.mode = config.mode;
    sub.window = config.window;
    std::vector<int> back;  // sub concat index -> original concat index
    std::vector<int> red_ids, blue_ids;
    for (int idx : concat)
      (config.is_red_index(idx) ? red_ids : blue_ids).push_back(idx);
    auto by_pos = [&](int a, int b) {
      return std::lexicographical_compare(config.point_at(a), config.point_at(a) + config.dim,
                                          config.point_at(b), config.point_at(b) + config.dim);
    };
    std::sort(red_ids.begin(), red_ids.end(), by_pos);
    std::sort(blue_ids.begin(), blue_ids.end(), by_pos);
    for (int idx : red_ids)
      sub.red.insert(sub.red.end(), config.point_at(idx), config.point_at(idx) + config.dim);
    for (int idx : blue_ids)
      sub.blue.insert(sub.blue.end(), config.point_at(idx), config.point_at(idx) + config.dim);
    back = red_ids;
    back.insert(back.end(), blue_ids.begin(), blue_ids.end());
    auto sub_index = [&](int orig) {
      for (size_t i = 0; i < back.size(); ++i)
        if (back[i] == orig) return static_cast<int>(i);
      return -1;
    };
    Matching restriction;
    restriction.mode = config.mode;
    for (int ui : chosen) {
      const Unit& u = units[static_cast<size_t>(ui)];
      if (!u.matched) continue;
      int a = sub_index(u.pts[0]);
      int b = sub_index(u.pts[1]);
      if (config.mode == Mode::two_colour) {
        restriction.edges.emplace_back(a, b - sub.n_red());
      } else {
        restriction.edges.emplace_back(std::min(a, b), std::max(a, b));
      }
    }
    canonicalize(sub, restriction);
    MatchScore got = score(spec, sub, restriction);
    auto best = oracle_min(spec, sub);
    MatchScore want = score(spec, sub, best.front());
    ++rep.subsets_checked;
    if (compare(spec, got, want) == Ordering::greater) {
      rep.ok = false;
      rep.witness_subset = concat;
      return false;
    }
    return true;
  };

  // exhaustive over unit pairs (complete for d=1 by the arrangement table)
  for (size_t i = 0; i < units.size() && rep.ok; ++i)
    for (size_t j = i + 1; j < units.size() && rep.ok; ++j) {
      if (static_cast<int>(units[i].pts.size() + units[j].pts.size()) > subset_cap) continue;
      check_subset({static_cast<int>(i), static_cast<int>(j)});
    }
  // randomized larger subsets
  Rng rng(seed);
  for (int t = 0; t < n_random && rep.ok && !units.empty(); ++t) {
    std::vector<int> chosen;
    int pts = 0;
    for (int tries = 0; tries < subset_cap; ++tries) {
      int ui = static_cast<int>(rng.below(units.size()));
      if (std::find(chosen.begin(), chosen.end(), ui) != chosen.end()) continue;
      int sz = static_cast<int>(units[static_cast<size_t>(ui)].pts.size());
      if (pts + sz > subset_cap) continue;
      chosen.push_back(ui);
      pts += sz;
    }
    if (chosen.size() >= 2) check_subset(chosen);
  }
  return rep;
}

std::string VerifyReport::to_json(const std::string& predicate) const {
  nlohmann::json j;
  j["predicate"] = predicate;
  j["result"] = ok ? "pass" : "fail";
  j["subsets_checked"] = subsets_checked;
  if (witness_pair) j["witness"] = {witness_pair->first, witness_pair->second};
  if (!witness_subset.empty()) j["witness_subset"] = witness_subset;
  return j.dump(2);
}

}  // namespace matchlab
