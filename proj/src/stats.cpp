#include "matchlab/stats.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <thread>

#include "json.hpp"

namespace matchlab {

namespace {

std::string fmt(double x) {
  char buf[64];
  auto [p, ec] = std::to_chars(buf, buf + sizeof(buf), x);
  return std::string(buf, p);
}

// run fn(sample_index) across jobs threads; per-sample RNG comes from
// substreams, so the outcome is independent of the thread count
template <class Fn>
void parallel_samples(std::uint64_t n, int jobs, Fn&& fn) {
  jobs = std::max(1, jobs);
  if (jobs == 1) {
    for (std::uint64_t i = 0; i < n; ++i) fn(i);
    return;
  }
  std::vector<std::thread> pool;
  std::uint64_t chunk = (n + static_cast<std::uint64_t>(jobs) - 1) / static_cast<std::uint64_t>(jobs);
  for (int t = 0; t < jobs; ++t) {
    std::uint64_t lo = static_cast<std::uint64_t>(t) * chunk;
    std::uint64_t hi = std::min(n, lo + chunk);
    if (lo >= hi) break;
    pool.emplace_back([lo, hi, &fn]() {
      for (std::uint64_t i = lo; i < hi; ++i) fn(i);
    });
  }
  for (auto& th : pool) th.join();
}

// ---------------------------------------------------------------------------
// lazy one-sided walk in superposition form: gaps Exp(2), colour fair coin
// ---------------------------------------------------------------------------

// first position > 0 where the walk value hits `target`, starting from
// `start`; negative result = censored at window w
double first_passage(Rng& rng, int start, int target, double w) {
  double x = 0.0;
  int v = start;
  for (;;) {
    x += rng.exponential(2.0);
    if (x > w) return -1.0;
    v += rng.coin() ? 1 : -1;
    if (v == target) return x;
  }
}

// Palm finitary machine: two-sided stored walk around a red point at the
// origin, certificate search on the (3a)^n grid, partner from the certified
// level segment.
struct FinitaryMachine {
  const CostSpec spec;
  const int max_n;
  const double kap, a;

  FinitaryMachine(const CostSpec& s, int mn) : spec(s), max_n(mn), kap(kappa(s)), a(2 * kap + 1) {}

  std::vector<double> rpos, lpos;  // lpos holds magnitudes of negative positions
  std::vector<int> rval, lval;     // rval: value right of jump; lval: value left of jump
  Rng rng{0, 0};

  void reset(Rng r) {
    rng = r;
    rpos.clear();
    rval.clear();
    lpos.clear();
    lval.clear();
  }
  void extend_right(double upto) {
    double x = rpos.empty() ? 0.0 : rpos.back();
    int v = rval.empty() ? 1 : rval.back();  // origin red point: W jumps to 1 at 0
    while (x <= upto) {
      x += rng.exponential(2.0);
      v += rng.coin() ? 1 : -1;
      rpos.push_back(x);
      rval.push_back(v);
    }
  }
  void extend_left(double upto) {
    double x = lpos.empty() ? 0.0 : lpos.back();
    int v = lval.empty() ? 0 : lval.back();  // W(0-) = 0
    while (x <= upto) {
      x += rng.exponential(2.0);
      v -= rng.coin() ? 1 : -1;  // subtract the jump when crossing leftwards
      lpos.push_back(x);
      lval.push_back(v);
    }
  }

  // W > 0 on [y, a*y] (right of origin)
  bool right_positive(double y) {
    extend_right(a * y);
    auto lo = std::upper_bound(rpos.begin(), rpos.end(), y);
    int at = lo == rpos.begin() ? 1 : rval[static_cast<size_t>(lo - rpos.begin() - 1)];
    if (at <= 0) return false;
    auto hi = std::upper_bound(rpos.begin(), rpos.end(), a * y);
    for (auto it = lo; it != hi; ++it)
      if (rval[static_cast<size_t>(it - rpos.begin())] <= 0) return false;
    return true;
  }
  // W > 0 on [-a*y, -y]
  bool left_positive(double y) {
    extend_left(a * y);
    // value on the segment left of jump i is lval[i]; the segment (-m_0, 0)
    // has value 0.  W(-t) for t in (m_i, m_{i+1}) equals lval[i].
    auto i1 = std::lower_bound(lpos.begin(), lpos.end(), y);      // first m >= y
    auto i2 = std::lower_bound(lpos.begin(), lpos.end(), a * y);  // first m >= a*y
    // needed segment values: lval[k] for k in [i1-1, i2-1]; lval[-1] = 0
    if (i1 == lpos.begin()) return false;  // the 0-valued segment reaches -y
    for (auto it = i1 - 1; it != i2; ++it)
      if (lval[static_cast<size_t>(it - lpos.begin())] <= 0) return false;
    return true;
  }

  FinitaryPalmSample draw(Rng r, bool capture_points) {
    reset(r);
    FinitaryPalmSample out;
    for (int n = 0; n <= max_n; ++n) {
      double y = std::pow(3.0 * a, n);
      if (!right_positive(y)) continue;
      if (!left_positive(y)) continue;
      out.certified = true;
      out.n = n;
      out.Y = y;
      out.L = a * y;
      break;
    }
    if (capture_points) {
      int prev = 1;
      for (size_t i = 0; i < rpos.size(); ++i) {
        (rval[i] > prev ? out.red_pts : out.blue_pts).push_back(rpos[i]);
        prev = rval[i];
      }
      int right_of = 0;
      for (size_t i = 0; i < lpos.size(); ++i) {
        // crossing leftwards subtracts the jump, so a smaller left value
        // means a red point
        (lval[i] < right_of ? out.red_pts : out.blue_pts).push_back(-lpos[i]);
        right_of = lval[i];
      }
      std::sort(out.red_pts.begin(), out.red_pts.end());
      std::sort(out.blue_pts.begin(), out.blue_pts.end());
    }
    if (!out.certified) return out;

    // level-0 points in (-Y, Y), plus the origin point itself
    PointConfig sub;
    sub.dim = 1;
    sub.mode = Mode::two_colour;
    sub.window = {{-out.L - 1.0, out.L + 1.0}};
    std::vector<double> reds{0.0}, blues;
    {
      int prev = 1;  // value just right of the origin jump
      for (size_t i = 0; i < rpos.size() && rpos[i] < out.Y; ++i) {
        int cur = rval[i];
        if ((prev == 0 && cur == 1) || (prev == 1 && cur == 0))
          (cur > prev ? reds : blues).push_back(rpos[i]);
        prev = cur;
      }
      int right_of = 0;  // value just right of the next left point
      for (size_t i = 0; i < lpos.size() && lpos[i] < out.Y; ++i) {
        int left_of = lval[i];
        if ((left_of == 0 && right_of == 1) || (left_of == 1 && right_of == 0))
          (right_of > left_of ? reds : blues).push_back(-lpos[i]);
        right_of = left_of;
      }
    }
    out.h_size = static_cast<int>(reds.size() + blues.size());
    out.h_balanced = reds.size() == blues.size();
    if (!out.h_balanced) return out;  // contract violation; caller asserts
    std::sort(reds.begin(), reds.end());
    std::sort(blues.begin(), blues.end());
    sub.red = reds;
    sub.blue = blues;
    Matching m = solve_min(spec, sub);
    int origin_idx = static_cast<int>(std::lower_bound(reds.begin(), reds.end(), 0.0) -
                                      reds.begin());
    for (auto& e : m.edges)
      if (e.first == origin_idx) {
        out.X = std::fabs(blues[static_cast<size_t>(e.second)]);
        break;
      }
    return out;
  }
};

}  // namespace

std::vector<double> log_thresholds(double lo, double hi, int count) {
  if (!(lo > 0 && hi > lo && count >= 2)) fail(Err::InvalidParameter, "bad threshold range");
  std::vector<double> t(static_cast<size_t>(count));
  for (int i = 0; i < count; ++i)
    t[static_cast<size_t>(i)] =
        std::exp(std::log(lo) + (std::log(hi) - std::log(lo)) * i / (count - 1));
  return t;
}

double fit_loglog_slope(const std::vector<double>& thresholds, const std::vector<double>& ccdf) {
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  int n = 0;
  for (size_t i = 0; i < thresholds.size(); ++i) {
    if (!(ccdf[i] > 0)) continue;
    double x = std::log(thresholds[i]), y = std::log(ccdf[i]);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
    ++n;
  }
  if (n < 2) return std::numeric_limits<double>::quiet_NaN();
  double denom = n * sxx - sx * sx;
  return (n * sxy - sx * sy) / denom;
}

TailEstimate make_tail_estimate(const std::vector<double>& values, std::uint64_t n_censored,
                                const std::vector<double>& thresholds, Seed seed) {
  TailEstimate est;
  est.n_samples = values.size() + n_censored;
  est.n_censored = n_censored;
  est.thresholds = thresholds;
  est.unreliable = est.censoring_fraction() > 0.01;
  std::vector<double> sorted(values);
  std::sort(sorted.begin(), sorted.end());
  auto ccdf_of = [&](const std::vector<double>& sorted_vals, double t) {
    if (sorted_vals.empty()) return 0.0;
    auto it = std::upper_bound(sorted_vals.begin(), sorted_vals.end(), t);
    return static_cast<double>(sorted_vals.end() - it) / static_cast<double>(sorted_vals.size());
  };
  est.ccdf.resize(thresholds.size());
  for (size_t i = 0; i < thresholds.size(); ++i) est.ccdf[i] = ccdf_of(sorted, thresholds[i]);
  est.slope = fit_loglog_slope(thresholds, est.ccdf);

  constexpr int kBoot = 200;
  Rng rng(seed);
  std::vector<double> slopes;
  std::vector<std::vector<double>> boot_ccdf(thresholds.size());
  std::vector<double> resample(sorted.size());
  for (int b = 0; b < kBoot; ++b) {
    Rng r = rng.substream(static_cast<std::uint64_t>(b) + 1);
    for (size_t i = 0; i < sorted.size(); ++i)
      resample[i] = sorted[static_cast<size_t>(r.below(sorted.size()))];
    std::sort(resample.begin(), resample.end());
    std::vector<double> cc(thresholds.size());
    for (size_t i = 0; i < thresholds.size(); ++i) {
      cc[i] = ccdf_of(resample, thresholds[i]);
      boot_ccdf[i].push_back(cc[i]);
    }
    double s = fit_loglog_slope(thresholds, cc);
    if (std::isfinite(s)) slopes.push_back(s);
  }
  auto pctl = [](std::vector<double>& v, double q) {
    if (v.empty()) return std::numeric_limits<double>::quiet_NaN();
    std::sort(v.begin(), v.end());
    double pos = q * (static_cast<double>(v.size()) - 1);
    size_t i = static_cast<size_t>(pos);
    double frac = pos - static_cast<double>(i);
    return i + 1 < v.size() ? v[i] * (1 - frac) + v[i + 1] * frac : v[i];
  };
  est.slope_ci_lo = pctl(slopes, 0.025);
  est.slope_ci_hi = pctl(slopes, 0.975);
  est.ci_lo.resize(thresholds.size());
  est.ci_hi.resize(thresholds.size());
  for (size_t i = 0; i < thresholds.size(); ++i) {
    est.ci_lo[i] = pctl(boot_ccdf[i], 0.025);
    est.ci_hi[i] = pctl(boot_ccdf[i], 0.975);
  }
  return est;
}

const char* scheme_name(Scheme s) {
  switch (s) {
    case Scheme::alternating_mixture: return "alternating-mixture";
    case Scheme::meshalkin: return "meshalkin";
    case Scheme::level_k: return "level-k";
    case Scheme::finitary: return "finitary";
    case Scheme::stable_one_colour: return "stable-1colour";
  }
  return "?";
}

Scheme parse_scheme(const std::string& s) {
  for (Scheme sc : {Scheme::alternating_mixture, Scheme::meshalkin, Scheme::level_k,
                    Scheme::finitary, Scheme::stable_one_colour})
    if (s == scheme_name(sc)) return sc;
  fail(Err::InvalidParameter, "unknown scheme '" + s + "'");
}

std::vector<double> sample_X(Scheme scheme, const SchemeParams& params,
                             double window_half_width, std::uint64_t n_samples, Seed seed,
                             int jobs) {
  std::vector<double> xs(n_samples, -1.0);
  Rng base(seed);
  double w = window_half_width;
  switch (scheme) {
    case Scheme::alternating_mixture:
      // Palm origin point, indexing x_{-1} < 0 <= x_0 = 0: M+ pairs the
      // origin with its left neighbour, M- with its right neighbour; a
      // fair coin realizes the unique invariant mixture.
      parallel_samples(n_samples, jobs, [&](std::uint64_t i) {
        Rng r = base.substream(i);
        bool plus = r.coin();
        double gl = r.exponential(1.0), gr = r.exponential(1.0);
        double x = plus ? gl : gr;
        xs[i] = x <= w ? x : -1.0;
      });
      break;
    case Scheme::meshalkin:
      // partner of the origin = first return of the Palm walk to 0
      parallel_samples(n_samples, jobs, [&](std::uint64_t i) {
        Rng r = base.substream(i);
        xs[i] = first_passage(r, 1, 0, w);
      });
      break;
    case Scheme::level_k:
      parallel_samples(n_samples, jobs, [&](std::uint64_t i) {
        Rng r = base.substream(i);
        if (params.k <= 0) {
          // origin level 0 matched rightward: same partner as meshalkin
          xs[i] = first_passage(r, 1, 0, w);
        } else {
          // matched leftward: first level-0 point left of the origin
          double x = 0.0;
          int right_of = 0;
          for (;;) {
            x += r.exponential(2.0);
            if (x > w) {
              xs[i] = -1.0;
              break;
            }
            bool red = r.coin();
            int left_of = right_of - (red ? 1 : -1);
            if ((left_of == 0 && right_of == 1) || (left_of == 1 && right_of == 0)) {
              xs[i] = x;
              break;
            }
            right_of = left_of;
          }
        }
      });
      break;
    case Scheme::finitary: {
      auto samples = run_finitary_palm(params.spec, params.max_n, n_samples, seed, jobs);
      for (std::uint64_t i = 0; i < n_samples; ++i)
        xs[i] = samples[i].certified ? samples[i].X : -1.0;
      break;
    }
    case Scheme::stable_one_colour:
      parallel_samples(n_samples, jobs, [&](std::uint64_t i) {
        Rng r = base.substream(i);
        Seed sub{r.u64(), r.u64()};
        PointConfig cfg = palm_augment(
            sample_poisson({{-w, w}}, 1.0, Mode::one_colour, sub));
        auto partner_of_origin = [&](const PointConfig& c) -> double {
          Matching m = solve_stable(c);
          int o = static_cast<int>(std::lower_bound(c.red.begin(), c.red.end(), 0.0) -
                                   c.red.begin());
          for (auto& e : m.edges) {
            if (e.first == o) return std::fabs(c.red1(e.second));
            if (e.second == o) return std::fabs(c.red1(e.first));
          }
          return -1.0;
        };
        double x_full = partner_of_origin(cfg);
        // window-doubling certificate: accept only when the half window
        // already determines the same partner
        PointConfig half;
        half.dim = 1;
        half.mode = Mode::one_colour;
        half.window = {{-w / 2, w / 2}};
        for (double p : cfg.red)
          if (std::fabs(p) <= w / 2) half.red.push_back(p);
        double x_half = partner_of_origin(half);
        xs[i] = (x_full >= 0 && x_half >= 0 && nearly_equal(x_full, x_half)) ? x_full : -1.0;
      });
      break;
  }
  return xs;
}

TailEstimate estimate_X(Scheme scheme, const SchemeParams& params, double window_half_width,
                        std::uint64_t n_samples, Seed seed,
                        const std::vector<double>& thresholds, int jobs) {
  auto xs = sample_X(scheme, params, window_half_width, n_samples, seed, jobs);
  std::vector<double> vals;
  vals.reserve(xs.size());
  std::uint64_t censored = 0;
  for (double x : xs) (x >= 0 ? static_cast<void>(vals.push_back(x)) : static_cast<void>(++censored));
  Rng r(seed);
  return make_tail_estimate(vals, censored, thresholds, Seed{r.u64(), 0xb00f});
}

TailEstimate estimate_T(double window_half_width, std::uint64_t n_samples, Seed seed,
                        const std::vector<double>& thresholds, int jobs) {
  std::vector<double> ts(n_samples, -1.0);
  Rng base(seed);
  parallel_samples(n_samples, jobs, [&](std::uint64_t i) {
    Rng r = base.substream(i);
    ts[i] = first_passage(r, 0, 1, window_half_width);
  });
  std::vector<double> vals;
  std::uint64_t censored = 0;
  for (double t : ts) (t >= 0 ? static_cast<void>(vals.push_back(t)) : static_cast<void>(++censored));
  Rng r(seed);
  return make_tail_estimate(vals, censored, thresholds, Seed{r.u64(), 0xb00f});
}

std::vector<FinitaryPalmSample> run_finitary_palm(const CostSpec& spec, int max_n,
                                                  std::uint64_t n_samples, Seed seed,
                                                  int jobs, bool capture_points) {
  std::vector<FinitaryPalmSample> out(n_samples);
  Rng base(seed);
  jobs = std::max(1, jobs);
  std::vector<std::thread> pool;
  std::uint64_t chunk = (n_samples + static_cast<std::uint64_t>(jobs) - 1) /
                        static_cast<std::uint64_t>(jobs);
  auto work = [&](std::uint64_t lo, std::uint64_t hi) {
    FinitaryMachine machine(spec, max_n);  // per-thread buffers
    for (std::uint64_t i = lo; i < hi; ++i)
      out[i] = machine.draw(base.substream(i), capture_points);
  };
  if (jobs == 1) {
    work(0, n_samples);
  } else {
    for (int t = 0; t < jobs; ++t) {
      std::uint64_t lo = static_cast<std::uint64_t>(t) * chunk;
      std::uint64_t hi = std::min<std::uint64_t>(n_samples, lo + chunk);
      if (lo < hi) pool.emplace_back(work, lo, hi);
    }
    for (auto& th : pool) th.join();
  }
  return out;
}

TailEstimate estimate_L(const CostSpec& spec, int max_n, std::uint64_t n_samples, Seed seed,
                        const std::vector<double>& thresholds, int jobs) {
  auto samples = run_finitary_palm(spec, max_n, n_samples, seed, jobs);
  std::vector<double> vals;
  std::uint64_t censored = 0;
  for (auto& s : samples) {
    if (s.certified) {
      vals.push_back(s.L);
    } else {
      ++censored;
    }
  }
  Rng r(seed);
  return make_tail_estimate(vals, censored, thresholds, Seed{r.u64(), 0xb00f});
}

AlternationStats orientation_alternation_rate(const CostSpec& spec, int n_windows,
                                              int queries_per_window,
                                              double window_half_width, int max_n, Seed seed) {
  AlternationStats stats;
  Rng base(seed);
  double reach = (2 * kappa(spec) + 1) * std::pow(3.0 * (2 * kappa(spec) + 1), max_n);
  for (int wnd = 0; wnd < n_windows; ++wnd) {
    Rng r = base.substream(static_cast<std::uint64_t>(wnd));
    Seed sub{r.u64(), r.u64()};
    double w = window_half_width + reach + 1.0;
    PointConfig cfg = sample_poisson({{-w, w}}, 1.0, Mode::two_colour, sub);
    Walk walk = build_walk(cfg);
    LevelAssignment lv = assign_levels(walk, cfg);
    for (int q = 0; q < queries_per_window; ++q) {
      double query = r.uniform(-window_half_width, window_half_width);
      auto cert = finitary_partner(cfg, walk, lv, spec, query, max_n);
      if (!cert) continue;
      ++stats.certificates;
      // matching of the certified set: pair each H point with its partner
      std::vector<int> red_ids, blue_ids;
      PointConfig subc;
      subc.dim = 1;
      subc.mode = Mode::two_colour;
      subc.window = cfg.window;
      for (int idx : cert->H) {
        if (cfg.is_red_index(idx)) {
          red_ids.push_back(idx);
          subc.red.push_back(cfg.red1(idx));
        } else {
          blue_ids.push_back(idx);
          subc.blue.push_back(cfg.blue1(idx - cfg.n_red()));
        }
      }
      Matching m = solve_min(spec, subc);
      // nested-edge orientation audit: sort intervals, find immediate nesting
      struct Iv {
        double lo, hi;
        bool right;  // red endpoint on the left
      };
      std::vector<Iv> ivs;
      for (auto& e : m.edges) {
        double rp = subc.red1(e.first), bp = subc.blue1(e.second);
        ivs.push_back({std::min(rp, bp), std::max(rp, bp), rp < bp});
      }
      std::sort(ivs.begin(), ivs.end(), [](const Iv& a, const Iv& b) { return a.lo < b.lo; });
      for (size_t i = 0; i < ivs.size(); ++i) {
        // the immediate parent of edge i: tightest interval containing it
        int parent = -1;
        double best_span = std::numeric_limits<double>::infinity();
        for (size_t j = 0; j < ivs.size(); ++j) {
          if (i == j) continue;
          if (ivs[j].lo < ivs[i].lo && ivs[i].hi < ivs[j].hi &&
              ivs[j].hi - ivs[j].lo < best_span) {
            best_span = ivs[j].hi - ivs[j].lo;
            parent = static_cast<int>(j);
          }
        }
        if (parent >= 0) {
          ++stats.nested_pairs;
          if (ivs[static_cast<size_t>(parent)].right != ivs[i].right) ++stats.alternating;
        }
      }
    }
  }
  return stats;
}

std::string TailEstimate::to_csv() const {
  std::string out = "threshold,ccdf,ci_lo,ci_hi\n";
  for (size_t i = 0; i < thresholds.size(); ++i) {
    out += fmt(thresholds[i]) + "," + fmt(ccdf[i]) + "," + fmt(ci_lo[i]) + "," + fmt(ci_hi[i]) +
           "\n";
  }
  return out;
}

std::string TailEstimate::to_json() const {
  nlohmann::json j;
  j["n_samples"] = n_samples;
  j["n_censored"] = n_censored;
  j["censoring_fraction"] = censoring_fraction();
  j["unreliable"] = unreliable;
  j["slope"] = slope;
  j["slope_ci"] = {slope_ci_lo, slope_ci_hi};
  j["thresholds"] = thresholds;
  j["ccdf"] = ccdf;
  return j.dump(2);
}

}  // namespace matchlab
