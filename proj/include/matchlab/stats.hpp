#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "matchlab/line_constructions.hpp"
#include "matchlab/rng.hpp"

namespace matchlab {

// Empirical survival function of a Palm functional with a log-log slope fit
// over the given thresholds and a 200-resample bootstrap CI.  Censored
// samples (partner or certificate not determined inside the window) never
// contribute to a CCDF value; censoring above 1% flags the estimate.
struct TailEstimate {
  std::uint64_t n_samples = 0;
  std::uint64_t n_censored = 0;
  std::vector<double> thresholds;
  std::vector<double> ccdf;
  std::vector<double> ci_lo;
  std::vector<double> ci_hi;
  double slope = 0.0;
  double slope_ci_lo = 0.0;
  double slope_ci_hi = 0.0;
  bool unreliable = false;

  double censoring_fraction() const {
    return n_samples ? static_cast<double>(n_censored) / static_cast<double>(n_samples) : 0.0;
  }
  std::string to_csv() const;
  std::string to_json() const;
};

std::vector<double> log_thresholds(double lo, double hi, int count);
double fit_loglog_slope(const std::vector<double>& thresholds, const std::vector<double>& ccdf);
TailEstimate make_tail_estimate(const std::vector<double>& values, std::uint64_t n_censored,
                                const std::vector<double>& thresholds, Seed seed);

enum class Scheme { alternating_mixture, meshalkin, level_k, finitary, stable_one_colour };
const char* scheme_name(Scheme s);
Scheme parse_scheme(const std::string& s);

struct SchemeParams {
  CostSpec spec = CostSpec::finite(0.0);  // finitary cost kind (gamma < 1 or -inf)
  int k = 0;                              // level_k threshold
  int max_n = 3;                          // finitary certificate grid cap
};

// Matching distance X = |partner of the Palm origin point| under the given
// construction; censored samples are returned as negative entries.
std::vector<double> sample_X(Scheme scheme, const SchemeParams& params,
                             double window_half_width, std::uint64_t n_samples, Seed seed,
                             int jobs = 1);

TailEstimate estimate_X(Scheme scheme, const SchemeParams& params, double window_half_width,
                        std::uint64_t n_samples, Seed seed,
                        const std::vector<double>& thresholds, int jobs = 1);

// hitting time T = first position > 0 with W = 1 (no Palm point)
TailEstimate estimate_T(double window_half_width, std::uint64_t n_samples, Seed seed,
                        const std::vector<double>& thresholds, int jobs = 1);

// one Palm draw of the finitary certificate at the origin
struct FinitaryPalmSample {
  bool certified = false;
  int n = -1;
  double Y = 0.0;
  double X = 0.0;  // matching distance from the certified set
  double L = 0.0;  // coding radius a*Y
  int h_size = 0;
  bool h_balanced = false;
  // generated points (origin excluded), filled only on request
  std::vector<double> red_pts;
  std::vector<double> blue_pts;
};

std::vector<FinitaryPalmSample> run_finitary_palm(const CostSpec& spec, int max_n,
                                                  std::uint64_t n_samples, Seed seed,
                                                  int jobs = 1, bool capture_points = false);

TailEstimate estimate_L(const CostSpec& spec, int max_n, std::uint64_t n_samples, Seed seed,
                        const std::vector<double>& thresholds, int jobs = 1);

// Fraction of immediately nested certified edge pairs (within one level)
// with alternating orientations; expected 1.
struct AlternationStats {
  long long nested_pairs = 0;
  long long alternating = 0;
  std::uint64_t certificates = 0;
  std::optional<double> rate() const {
    if (nested_pairs == 0) return std::nullopt;
    return static_cast<double>(alternating) / static_cast<double>(nested_pairs);
  }
};

AlternationStats orientation_alternation_rate(const CostSpec& spec, int n_windows,
                                              int queries_per_window,
                                              double window_half_width, int max_n, Seed seed);

}  // namespace matchlab
