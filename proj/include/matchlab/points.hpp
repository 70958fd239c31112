#pragma once

#include <string>
#include <utility>
#include <vector>

#include "matchlab/common.hpp"
#include "matchlab/rng.hpp"

namespace matchlab {

enum class Mode { one_colour, two_colour };

const char* mode_name(Mode m);
Mode parse_mode(const std::string& s);

// Colour-tagged point set on an axis-aligned window.  Coordinates are stored
// flat with stride dim; within each colour the points are sorted
// (lexicographically for dim >= 2).  In one-colour mode `blue` is empty and
// all points live in `red`.
struct PointConfig {
  int dim = 1;
  Mode mode = Mode::two_colour;
  std::vector<std::pair<double, double>> window;  // per-axis [lo, hi]
  std::vector<double> red;
  std::vector<double> blue;

  int n_red() const { return static_cast<int>(red.size()) / dim; }
  int n_blue() const { return static_cast<int>(blue.size()) / dim; }
  int n_total() const { return n_red() + n_blue(); }

  // d=1 accessors
  double red1(int i) const { return red[static_cast<size_t>(i)]; }
  double blue1(int i) const { return blue[static_cast<size_t>(i)]; }

  const double* red_at(int i) const { return red.data() + static_cast<size_t>(i) * dim; }
  const double* blue_at(int i) const { return blue.data() + static_cast<size_t>(i) * dim; }

  // Position of a point by concatenated index (red first, then blue).
  const double* point_at(int idx) const {
    return idx < n_red() ? red_at(idx) : blue_at(idx - n_red());
  }
  bool is_red_index(int idx) const { return idx < n_red(); }

  double volume() const;
  bool contains_origin() const;
};

double point_distance(const PointConfig& c, int idx_a, int idx_b);

// Independent homogeneous Poisson processes of the given intensity per
// colour (one process in one-colour mode); counts Poisson(intensity*volume),
// locations i.i.d. uniform.  Configurations with <= 200 points are re-sampled
// until all pairwise distances are distinct to kEpsTie.
PointConfig sample_poisson(const std::vector<std::pair<double, double>>& window,
                           double intensity, Mode mode, Seed seed);

// Exactly n red and n blue i.i.d. uniform points.
PointConfig equal_count_pair(const std::vector<std::pair<double, double>>& window, int n,
                             Seed seed);

// Palm coupling: insert one red point at the origin (first colour in
// one-colour mode).
PointConfig palm_augment(const PointConfig& config);

PointConfig swap_colours(const PointConfig& config);

// Validate invariants of an externally supplied configuration.  Distinctness
// of pairwise distances is checked only up to 200 points (documented cap).
void validate_config(const PointConfig& config);

std::string config_to_json(const PointConfig& config);
PointConfig config_from_json(const std::string& text);

}  // namespace matchlab
