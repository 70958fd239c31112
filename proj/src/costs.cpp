#include "matchlab/costs.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <cmath>
#include <limits>

namespace matchlab {

std::string costspec_to_string(const CostSpec& spec) {
  switch (spec.kind) {
    case Kind::neg_inf: return "-inf";
    case Kind::pos_inf: return "+inf";
    case Kind::one_minus: return "1-";
    case Kind::one_plus: return "1+";
    case Kind::finite: break;
  }
  char buf[32];
  auto [p, ec] = std::to_chars(buf, buf + sizeof(buf), spec.gamma);
  return std::string(buf, p);
}

CostSpec costspec_parse(const std::string& s) {
  if (s == "-inf" || s == "-oo") return CostSpec::neg_infinity();
  if (s == "+inf" || s == "inf" || s == "+oo") return CostSpec::pos_infinity();
  if (s == "1-") return CostSpec::one_minus();
  if (s == "1+") return CostSpec::one_plus();
  try {
    size_t used = 0;
    double g = std::stod(s, &used);
    if (used != s.size()) throw std::invalid_argument(s);
    return CostSpec::finite(g);
  } catch (const std::exception&) {
    fail(Err::InvalidParameter, "cannot parse gamma '" + s + "'");
  }
}

double edge_cost(const CostSpec& spec, double length) {
  if (spec.kind != Kind::finite) fail(Err::WrongKind, "edge_cost needs a finite gamma");
  if (!(length > 0)) fail(Err::InvalidLength, "edge length must be > 0");
  if (spec.gamma > 0) return std::pow(length, spec.gamma);
  if (spec.gamma == 0) return std::log(length);
  return -std::pow(length, spec.gamma);
}

namespace {

// any straddling pair (for 1+) or any entwined pair (for 1-) among the edges
bool has_forbidden_pair(const PointConfig& config, const Matching& m, Kind kind) {
  if (config.dim != 1) return false;  // arrangements are a d=1 notion
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
  for (size_t i = 0; i < ne; ++i)
    for (size_t j = i + 1; j < ne; ++j) {
      auto r = arrangement(iv[i].first, iv[i].second, iv[j].first, iv[j].second);
      if (kind == Kind::one_plus && r.kind == Arrangement::straddling) return true;
      if (kind == Kind::one_minus && r.kind == Arrangement::entwined) return true;
    }
  return false;
}

}  // namespace

MatchScore score(const CostSpec& spec, const PointConfig& config, const Matching& m) {
  check_matching(config, m);
  MatchScore s;
  s.kind = spec.kind;
  s.unmatched = static_cast<int>(m.unmatched.size());
  switch (spec.kind) {
    case Kind::finite: {
      double total = 0;
      for (size_t i = 0; i < m.edges.size(); ++i)
        total += edge_cost(spec, edge_length(config, m, static_cast<int>(i)));
      s.cost = total;
      break;
    }
    case Kind::neg_inf:
    case Kind::pos_inf: {
      s.lengths.resize(m.edges.size());
      for (size_t i = 0; i < m.edges.size(); ++i)
        s.lengths[i] = edge_length(config, m, static_cast<int>(i));
      std::sort(s.lengths.begin(), s.lengths.end());
      if (spec.kind == Kind::pos_inf) std::reverse(s.lengths.begin(), s.lengths.end());
      break;
    }
    case Kind::one_minus:
    case Kind::one_plus: {
      double total = 0;
      for (size_t i = 0; i < m.edges.size(); ++i)
        total += edge_length(config, m, static_cast<int>(i));
      s.cost = total;
      s.violation = has_forbidden_pair(config, m, spec.kind);
      break;
    }
  }
  return s;
}

Ordering compare(const CostSpec& spec, const MatchScore& a, const MatchScore& b) {
  if (a.kind != spec.kind || b.kind != spec.kind) fail(Err::WrongKind, "score kind mismatch");
  if (a.unmatched != b.unmatched) return a.unmatched < b.unmatched ? Ordering::less : Ordering::greater;
  switch (spec.kind) {
    case Kind::finite:
      if (nearly_equal(a.cost, b.cost)) return Ordering::equal;
      return a.cost < b.cost ? Ordering::less : Ordering::greater;
    case Kind::neg_inf:
    case Kind::pos_inf: {
      // lexicographic; the shorter sequence is padded with -inf at the end
      size_t n = std::max(a.lengths.size(), b.lengths.size());
      constexpr double pad = -std::numeric_limits<double>::infinity();
      for (size_t i = 0; i < n; ++i) {
        double x = i < a.lengths.size() ? a.lengths[i] : pad;
        double y = i < b.lengths.size() ? b.lengths[i] : pad;
        if (std::isinf(x) || std::isinf(y)) {
          if (x == y) continue;
          return x < y ? Ordering::less : Ordering::greater;
        }
        if (!nearly_equal(x, y)) return x < y ? Ordering::less : Ordering::greater;
      }
      return Ordering::equal;
    }
    case Kind::one_minus:
    case Kind::one_plus: {
      if (!nearly_equal(a.cost, b.cost))
        return a.cost < b.cost ? Ordering::less : Ordering::greater;
      if (a.violation != b.violation) return a.violation ? Ordering::greater : Ordering::less;
      return Ordering::equal;
    }
  }
  return Ordering::equal;
}

ArrangementResult arrangement(double e_a, double e_b, double f_a, double f_b) {
  std::array<double, 4> pts{e_a, e_b, f_a, f_b};
  for (int i = 0; i < 4; ++i)
    for (int j = i + 1; j < 4; ++j)
      if (pts[static_cast<size_t>(i)] == pts[static_cast<size_t>(j)])
        fail(Err::InvalidPair, "edges share an endpoint");
  double elo = std::min(e_a, e_b), ehi = std::max(e_a, e_b);
  double flo = std::min(f_a, f_b), fhi = std::max(f_a, f_b);
  auto inside = [](double x, double lo, double hi) { return lo < x && x < hi; };
  int f_in_e = (inside(flo, elo, ehi) ? 1 : 0) + (inside(fhi, elo, ehi) ? 1 : 0);
  if (f_in_e == 2) return {Arrangement::straddling, 0};
  int e_in_f = (inside(elo, flo, fhi) ? 1 : 0) + (inside(ehi, flo, fhi) ? 1 : 0);
  if (e_in_f == 2) return {Arrangement::straddling, 1};
  if (f_in_e == 1) return {Arrangement::entwined, -1};
  return {Arrangement::separate, -1};
}

bool pair_legal(const CostSpec& spec, Mode mode, const std::string& colours, Arrangement arr,
                double a, double b, double c) {
  if (!(a > 0 && b > 0 && c > 0)) fail(Err::InvalidParameter, "gaps must be > 0");
  if (colours.size() != 4) fail(Err::InvalidParameter, "colour pattern needs 4 entries");
  std::array<double, 4> x{0.0, a, a + b, a + b + c};
  std::array<bool, 4> red{};
  int nred = 0;
  for (int i = 0; i < 4; ++i) {
    char ch = colours[static_cast<size_t>(i)];
    if (ch != 'r' && ch != 'b') fail(Err::InvalidParameter, "colour pattern uses r/b only");
    red[static_cast<size_t>(i)] = (ch == 'r') || mode == Mode::one_colour;
    if (red[static_cast<size_t>(i)]) ++nred;
  }
  if (mode == Mode::two_colour && nred != 2)
    fail(Err::InvalidParameter, "two-colour pattern needs two of each colour");

  // the three pairings of {0,1,2,3} and their arrangements
  struct Cand {
    std::array<int, 4> pair;  // {a1,b1,a2,b2}
    Arrangement arr;
  };
  const std::array<Cand, 3> cands{{{{0, 1, 2, 3}, Arrangement::separate},
                                   {{0, 2, 1, 3}, Arrangement::entwined},
                                   {{0, 3, 1, 2}, Arrangement::straddling}}};
  auto colour_legal = [&](const Cand& cd) {
    if (mode == Mode::one_colour) return true;
    return red[static_cast<size_t>(cd.pair[0])] != red[static_cast<size_t>(cd.pair[1])] &&
           red[static_cast<size_t>(cd.pair[2])] != red[static_cast<size_t>(cd.pair[3])];
  };

  // build a 4-point config matching the pattern and score each pairing
  PointConfig cfg;
  cfg.dim = 1;
  cfg.mode = mode;
  cfg.window = {{-1.0, a + b + c + 1.0}};
  std::vector<int> idx_of(4);
  if (mode == Mode::one_colour) {
    for (int i = 0; i < 4; ++i) cfg.red.push_back(x[static_cast<size_t>(i)]);
    for (int i = 0; i < 4; ++i) idx_of[static_cast<size_t>(i)] = i;
  } else {
    for (int i = 0; i < 4; ++i)
      if (red[static_cast<size_t>(i)]) {
        idx_of[static_cast<size_t>(i)] = static_cast<int>(cfg.red.size());
        cfg.red.push_back(x[static_cast<size_t>(i)]);
      }
    for (int i = 0; i < 4; ++i)
      if (!red[static_cast<size_t>(i)]) {
        idx_of[static_cast<size_t>(i)] = static_cast<int>(cfg.blue.size());
        cfg.blue.push_back(x[static_cast<size_t>(i)]);
      }
  }
  auto make_matching = [&](const Cand& cd) {
    Matching m;
    m.mode = mode;
    auto add = [&](int p, int q) {
      if (mode == Mode::two_colour && !red[static_cast<size_t>(p)]) std::swap(p, q);
      m.edges.emplace_back(idx_of[static_cast<size_t>(p)], idx_of[static_cast<size_t>(q)]);
    };
    add(cd.pair[0], cd.pair[1]);
    add(cd.pair[2], cd.pair[3]);
    canonicalize(cfg, m);
    return m;
  };

  bool found_query = false;
  MatchScore query_score;
  std::vector<MatchScore> rivals;
  for (const auto& cd : cands) {
    if (!colour_legal(cd)) continue;
    MatchScore s = score(spec, cfg, make_matching(cd));
    if (cd.arr == arr) {
      found_query = true;
      query_score = s;
    } else {
      rivals.push_back(s);
    }
  }
  if (!found_query) return false;  // colour pattern cannot form that arrangement
  for (const auto& r : rivals)
    if (compare(spec, r, query_score) == Ordering::less) return false;
  return true;
}

}  // namespace matchlab
