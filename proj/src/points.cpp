#include "matchlab/points.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <numeric>

#include "json.hpp"

namespace matchlab {

namespace {

using json = nlohmann::json;

void check_window(const std::vector<std::pair<double, double>>& window, int dim) {
  if (dim < 1) fail(Err::InvalidParameter, "dim must be >= 1");
  if (static_cast<int>(window.size()) != dim)
    fail(Err::InvalidWindow, "window must have one [lo,hi] pair per axis");
  for (auto& [lo, hi] : window) {
    if (!(lo < hi) || !std::isfinite(lo) || !std::isfinite(hi))
      fail(Err::InvalidWindow, "window degenerate or non-finite");
  }
}

// lexicographic sort of dim-strided flat coordinates
void sort_points(std::vector<double>& pts, int dim) {
  int n = static_cast<int>(pts.size()) / dim;
  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](int a, int b) {
    return std::lexicographical_compare(pts.begin() + a * dim, pts.begin() + (a + 1) * dim,
                                        pts.begin() + b * dim, pts.begin() + (b + 1) * dim);
  });
  std::vector<double> out(pts.size());
  for (int i = 0; i < n; ++i)
    std::copy_n(pts.begin() + order[i] * dim, dim, out.begin() + i * dim);
  pts.swap(out);
}

double dist(const double* a, const double* b, int dim) {
  double s = 0;
  for (int k = 0; k < dim; ++k) s += (a[k] - b[k]) * (a[k] - b[k]);
  return std::sqrt(s);
}

// all pairwise distances among red+blue distinct to kEpsTie; O(n^2 log n)
bool distances_distinct(const PointConfig& c) {
  int n = c.n_total();
  std::vector<double> d;
  d.reserve(static_cast<size_t>(n) * (n - 1) / 2);
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) d.push_back(point_distance(c, i, j));
  std::sort(d.begin(), d.end());
  for (size_t i = 0; i + 1 < d.size(); ++i)
    if (nearly_equal(d[i], d[i + 1])) return false;
  return true;
}

void fill_uniform(std::vector<double>& pts, int count, int dim,
                  const std::vector<std::pair<double, double>>& window, Rng& rng) {
  pts.resize(static_cast<size_t>(count) * dim);
  for (int i = 0; i < count; ++i)
    for (int k = 0; k < dim; ++k)
      pts[static_cast<size_t>(i) * dim + k] = rng.uniform(window[k].first, window[k].second);
  sort_points(pts, dim);
}

PointConfig sample_once(const std::vector<std::pair<double, double>>& window, double intensity,
                        Mode mode, Rng& rng) {
  PointConfig c;
  c.dim = static_cast<int>(window.size());
  c.mode = mode;
  c.window = window;
  double vol = c.volume();
  if (c.dim == 1) {
    // gap walk: exact Poisson process, sorted for free
    auto gen = [&](std::vector<double>& out) {
      double x = window[0].first;
      out.clear();
      for (;;) {
        x += rng.exponential(intensity);
        if (x >= window[0].second) break;
        out.push_back(x);
      }
    };
    gen(c.red);
    if (mode == Mode::two_colour) gen(c.blue);
  } else {
    auto nr = static_cast<int>(rng.poisson(intensity * vol));
    fill_uniform(c.red, nr, c.dim, window, rng);
    if (mode == Mode::two_colour) {
      auto nb = static_cast<int>(rng.poisson(intensity * vol));
      fill_uniform(c.blue, nb, c.dim, window, rng);
    }
  }
  return c;
}

}  // namespace

const char* mode_name(Mode m) { return m == Mode::one_colour ? "one-colour" : "two-colour"; }

Mode parse_mode(const std::string& s) {
  if (s == "one-colour" || s == "1") return Mode::one_colour;
  if (s == "two-colour" || s == "2") return Mode::two_colour;
  fail(Err::InvalidParameter, "unknown mode '" + s + "'");
}

double PointConfig::volume() const {
  double v = 1.0;
  for (auto& [lo, hi] : window) v *= hi - lo;
  return v;
}

bool PointConfig::contains_origin() const {
  for (auto& [lo, hi] : window)
    if (lo > 0.0 || hi < 0.0) return false;
  return true;
}

double point_distance(const PointConfig& c, int idx_a, int idx_b) {
  return dist(c.point_at(idx_a), c.point_at(idx_b), c.dim);
}

PointConfig sample_poisson(const std::vector<std::pair<double, double>>& window,
                           double intensity, Mode mode, Seed seed) {
  check_window(window, static_cast<int>(window.size()));
  if (!(intensity > 0)) fail(Err::InvalidParameter, "intensity must be > 0");
  Rng base(seed);
  for (int attempt = 0;; ++attempt) {
    Rng rng = base.substream(static_cast<std::uint64_t>(attempt));
    PointConfig c = sample_once(window, intensity, mode, rng);
    if (c.n_total() > 200 || distances_distinct(c)) return c;
    if (attempt > 128) fail(Err::DegenerateDistances, "re-sampling failed to separate distances");
  }
}

PointConfig equal_count_pair(const std::vector<std::pair<double, double>>& window, int n,
                             Seed seed) {
  check_window(window, static_cast<int>(window.size()));
  if (n < 1) fail(Err::InvalidParameter, "n must be >= 1");
  Rng base(seed);
  for (int attempt = 0;; ++attempt) {
    Rng rng = base.substream(static_cast<std::uint64_t>(attempt));
    PointConfig c;
    c.dim = static_cast<int>(window.size());
    c.mode = Mode::two_colour;
    c.window = window;
    fill_uniform(c.red, n, c.dim, window, rng);
    fill_uniform(c.blue, n, c.dim, window, rng);
    if (c.n_total() > 200 || distances_distinct(c)) return c;
    if (attempt > 128) fail(Err::DegenerateDistances, "re-sampling failed to separate distances");
  }
}

PointConfig palm_augment(const PointConfig& config) {
  if (!config.contains_origin()) fail(Err::InvalidWindow, "window must contain the origin");
  std::vector<double> origin(config.dim, 0.0);
  auto occupied = [&](const std::vector<double>& pts) {
    int n = static_cast<int>(pts.size()) / config.dim;
    for (int i = 0; i < n; ++i) {
      bool all0 = true;
      for (int k = 0; k < config.dim; ++k)
        if (pts[static_cast<size_t>(i) * config.dim + k] != 0.0) all0 = false;
      if (all0) return true;
    }
    return false;
  };
  if (occupied(config.red) || occupied(config.blue))
    fail(Err::OriginOccupied, "a point already sits at the origin");
  PointConfig c = config;
  c.red.insert(c.red.end(), origin.begin(), origin.end());
  sort_points(c.red, c.dim);
  return c;
}

PointConfig swap_colours(const PointConfig& config) {
  if (config.mode != Mode::two_colour) fail(Err::InvalidInput, "swap_colours needs two colours");
  PointConfig c = config;
  std::swap(c.red, c.blue);
  return c;
}

void validate_config(const PointConfig& config) {
  check_window(config.window, config.dim);
  if (config.mode == Mode::one_colour && !config.blue.empty())
    fail(Err::InvalidInput, "one-colour config must not carry blue points");
  auto check_pts = [&](const std::vector<double>& pts, const char* colour) {
    if (pts.size() % config.dim != 0) fail(Err::InvalidInput, "ragged coordinate array");
    int n = static_cast<int>(pts.size()) / config.dim;
    for (int i = 0; i < n; ++i)
      for (int k = 0; k < config.dim; ++k) {
        double x = pts[static_cast<size_t>(i) * config.dim + k];
        if (!(x >= config.window[k].first && x <= config.window[k].second))
          fail(Err::InvalidInput, std::string(colour) + " point outside window");
      }
    for (int i = 0; i + 1 < n; ++i) {
      bool lt = std::lexicographical_compare(pts.begin() + i * config.dim,
                                             pts.begin() + (i + 1) * config.dim,
                                             pts.begin() + (i + 1) * config.dim,
                                             pts.begin() + (i + 2) * config.dim);
      if (!lt) fail(Err::InvalidInput, std::string(colour) + " points not strictly sorted");
    }
  };
  check_pts(config.red, "red");
  check_pts(config.blue, "blue");
  for (int i = 0; i < config.n_red(); ++i)
    for (int j = 0; j < config.n_blue(); ++j)
      if (point_distance(config, i, config.n_red() + j) == 0.0)
        fail(Err::InvalidInput, "red point equals blue point");
  if (config.n_total() <= 200 && !distances_distinct(config))
    fail(Err::DegenerateDistances, "pairwise distances not distinct to eps_tie");
}

std::string config_to_json(const PointConfig& config) {
  json j;
  j["dim"] = config.dim;
  j["mode"] = mode_name(config.mode);
  if (config.dim == 1) {
    j["window"] = {config.window[0].first, config.window[0].second};
    j["red"] = config.red;
    j["blue"] = config.blue;
  } else {
    json w = json::array();
    for (auto& [lo, hi] : config.window) w.push_back({lo, hi});
    j["window"] = w;
    auto pts = [&](const std::vector<double>& v) {
      json arr = json::array();
      int n = static_cast<int>(v.size()) / config.dim;
      for (int i = 0; i < n; ++i) {
        json p = json::array();
        for (int k = 0; k < config.dim; ++k) p.push_back(v[static_cast<size_t>(i) * config.dim + k]);
        arr.push_back(p);
      }
      return arr;
    };
    j["red"] = pts(config.red);
    j["blue"] = pts(config.blue);
  }
  return j.dump(2);
}

PointConfig config_from_json(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const std::exception& e) {
    fail(Err::InvalidInput, std::string("bad JSON: ") + e.what());
  }
  PointConfig c;
  try {
    c.dim = j.value("dim", 1);
    c.mode = parse_mode(j.value("mode", std::string("two-colour")));
    auto w = j.at("window");
    if (c.dim == 1 && w.size() == 2 && w[0].is_number()) {
      c.window = {{w[0].get<double>(), w[1].get<double>()}};
    } else {
      for (auto& p : w) c.window.emplace_back(p[0].get<double>(), p[1].get<double>());
    }
    auto pts = [&](const char* key) {
      std::vector<double> v;
      if (!j.contains(key)) return v;
      for (auto& p : j.at(key)) {
        if (p.is_number()) {
          v.push_back(p.get<double>());
        } else {
          for (auto& x : p) v.push_back(x.get<double>());
        }
      }
      return v;
    };
    c.red = pts("red");
    c.blue = pts("blue");
  } catch (const Error&) {
    throw;
  } catch (const std::exception& e) {
    fail(Err::InvalidInput, std::string("bad config JSON: ") + e.what());
  }
  validate_config(c);
  return c;
}

}  // namespace matchlab
