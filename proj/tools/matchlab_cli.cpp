// matchlab: sample, solve, build, verify, measure and render gamma-minimal
// matchings of coloured point configurations on the line.
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include "CLI11.hpp"
#include "matchlab/io.hpp"
#include "matchlab/render.hpp"
#include "matchlab/stats.hpp"
#include "matchlab/verify.hpp"

using namespace matchlab;

namespace {

std::string slurp(const std::string& path) {
  if (path == "-") {
    std::ostringstream ss;
    ss << std::cin.rdbuf();
    return ss.str();
  }
  std::ifstream in(path);
  if (!in) fail(Err::InvalidInput, "cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void emit(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    if (!text.empty() && text.back() != '\n') std::cout << "\n";
    return;
  }
  std::ofstream out(path);
  if (!out) fail(Err::InvalidInput, "cannot write '" + path + "'");
  out << text;
}

std::uint64_t env_seed() {
  const char* s = std::getenv("MATCHLAB_SEED");
  if (!s) return 0;
  return std::strtoull(s, nullptr, 10);
}

// interval-union selector "0.5:1.5,2:3" -> predicate on gap length
std::function<bool(double)> parse_selector(const std::string& text) {
  if (text == "all") return [](double) { return true; };
  if (text == "none" || text.empty()) return [](double) { return false; };
  std::vector<std::pair<double, double>> ivs;
  std::stringstream ss(text);
  std::string part;
  while (std::getline(ss, part, ',')) {
    auto colon = part.find(':');
    if (colon == std::string::npos) fail(Err::InvalidParameter, "selector wants lo:hi[,lo:hi]");
    ivs.emplace_back(std::stod(part.substr(0, colon)), std::stod(part.substr(colon + 1)));
  }
  return [ivs](double x) {
    for (auto& [lo, hi] : ivs)
      if (x >= lo && x < hi) return true;
    return false;
  };
}

struct TailFlags {
  std::string stat = "X";
  std::string scheme;
  std::string gamma = "0";
  int k = 0;
  int max_n = 3;
  std::uint64_t samples = 10000;
  double window = 1e4;
  double thr_lo = 10.0, thr_hi = 1000.0;
  int thr_count = 12;
  int jobs = 1;
  std::string out_csv, out_json;
};

int run_tails(const TailFlags& f, Seed seed) {
  auto thresholds = log_thresholds(f.thr_lo, f.thr_hi, f.thr_count);
  TailEstimate est;
  if (f.stat == "T") {
    est = estimate_T(f.window, f.samples, seed, thresholds, f.jobs);
  } else if (f.stat == "X") {
    if (f.scheme.empty()) fail(Err::InvalidParameter, "--stat X needs --scheme");
    SchemeParams params;
    params.spec = costspec_parse(f.gamma);
    params.k = f.k;
    params.max_n = f.max_n;
    est = estimate_X(parse_scheme(f.scheme), params, f.window, f.samples, seed, thresholds,
                     f.jobs);
  } else if (f.stat == "L") {
    est = estimate_L(costspec_parse(f.gamma), f.max_n, f.samples, seed, thresholds, f.jobs);
  } else if (f.stat == "alternation") {
    auto stats = orientation_alternation_rate(costspec_parse(f.gamma),
                                              static_cast<int>(f.samples), 50, f.window,
                                              f.max_n, seed);
    std::ostringstream out;
    out << "{\n  \"nested_pairs\": " << stats.nested_pairs
        << ",\n  \"alternating\": " << stats.alternating
        << ",\n  \"certificates\": " << stats.certificates << ",\n  \"rate\": ";
    if (stats.rate()) {
      out << *stats.rate();
    } else {
      out << "null";
    }
    out << "\n}\n";
    emit(f.out_json, out.str());
    return 0;
  } else {
    fail(Err::InvalidParameter, "unknown stat '" + f.stat + "'");
  }
  if (!f.out_csv.empty()) emit(f.out_csv, est.to_csv());
  emit(f.out_json, est.to_json());
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"gamma-minimal matchings of coloured point processes on the line"};
  app.require_subcommand(1);
  app.fallthrough();

  std::uint64_t seed_value = env_seed(), stream = 0;
  app.add_option("--seed", seed_value, "RNG seed (default: MATCHLAB_SEED or 0)");
  app.add_option("--stream", stream, "RNG substream index");

  // sample
  auto* sample = app.add_subcommand("sample", "draw a Poisson or equal-count configuration");
  sample->fallthrough();
  int dim = 1;
  std::vector<double> window_flat{-100.0, 100.0};
  double intensity = 1.0;
  std::string mode_str = "two-colour";
  int equal_n = 0;
  std::string out_path;
  sample->add_option("--dim", dim);
  sample->add_option("--window", window_flat, "lo hi per axis")->expected(-2);
  sample->add_option("--intensity", intensity);
  sample->add_option("--mode", mode_str, "one-colour | two-colour");
  sample->add_option("--equal-n", equal_n, "exactly n red and n blue points");
  sample->add_option("--out", out_path);

  // solve
  auto* solve = app.add_subcommand("solve", "exact gamma-minimal matching of a finite config");
  solve->fallthrough();
  std::string gamma_str = "1";
  std::string in_path;
  bool oracle = false;
  double tile_size = 0.0;
  std::vector<double> offset;
  solve->add_option("--gamma", gamma_str, "real | -inf | +inf | 1- | 1+");
  solve->add_option("--in", in_path)->required();
  solve->add_flag("--oracle", oracle, "cross-check against the enumeration oracle");
  solve->add_option("--tile", tile_size, "solve per tile of this size");
  solve->add_option("--offset", offset, "tile offset per axis");
  solve->add_option("--out", out_path);

  // build
  auto* build = app.add_subcommand("build", "windowed infinite-volume constructions");
  build->fallthrough();
  std::string construction;
  int k = 0, max_n = 3;
  double query = 0.0;
  std::string selector = "none";
  bool swap = false;
  build->add_option("--construction", construction,
                    "alternating+ | alternating- | order-k | meshalkin | level-k | one-swap | "
                    "finitary")
      ->required();
  build->add_option("--k", k);
  build->add_option("--gamma", gamma_str);
  build->add_option("--query", query);
  build->add_option("--max-n", max_n);
  build->add_option("--selector", selector, "gap-length intervals lo:hi[,lo:hi] | all | none");
  build->add_flag("--swap-colours", swap, "exchange red and blue first (meshalkin -> M_inf)");
  build->add_option("--in", in_path)->required();
  build->add_option("--out", out_path);

  // verify
  auto* verify = app.add_subcommand("verify", "structural and minimality predicates");
  verify->fallthrough();
  std::string predicate = "stable";
  std::string matching_path;
  double kappa_opt = 0.0;
  int cap = 6;
  int vsamples = 200;
  verify->add_option("--predicate", predicate, "stable | quasistable | local-min");
  verify->add_option("--in", in_path, "points file (defaults to the embedded config)");
  verify->add_option("--matching", matching_path)->required();
  verify->add_option("--kappa", kappa_opt, "quasistability constant (default kappa(gamma))");
  verify->add_option("--gamma", gamma_str);
  verify->add_option("--cap", cap, "subset size cap for local minimality");
  verify->add_option("--samples", vsamples, "random subsets beyond the exhaustive pairs");

  // tails
  auto* tails = app.add_subcommand("tails", "Palm-measure Monte Carlo tail estimates");
  tails->fallthrough();
  TailFlags tf;
  tails->add_option("--stat", tf.stat, "X | L | T | alternation");
  tails->add_option("--scheme", tf.scheme,
                    "alternating-mixture | meshalkin | level-k | finitary | stable-1colour");
  tails->add_option("--gamma", tf.gamma);
  tails->add_option("--k", tf.k);
  tails->add_option("--max-n", tf.max_n, "finitary certificate grid cap");
  tails->add_option("--samples", tf.samples);
  tails->add_option("--window", tf.window, "window half-width / censoring horizon");
  tails->add_option("--thr-lo", tf.thr_lo);
  tails->add_option("--thr-hi", tf.thr_hi);
  tails->add_option("--thr-count", tf.thr_count);
  tails->add_option("--jobs", tf.jobs, "parallel sampling threads");
  tails->add_option("--out-csv", tf.out_csv);
  tails->add_option("--out-json", tf.out_json);

  // render
  auto* render = app.add_subcommand("render", "SVG arc diagram of a matching");
  render->fallthrough();
  std::string points_path;
  render->add_option("--in", in_path)->required();
  render->add_option("--points", points_path, "points file when the matching has no config");
  render->add_option("--out", out_path)->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  Seed seed{seed_value, stream};
  try {
    if (*sample) {
      if (static_cast<int>(window_flat.size()) != 2 * dim)
        fail(Err::InvalidWindow, "--window wants lo hi per axis");
      std::vector<std::pair<double, double>> window;
      for (int i = 0; i < dim; ++i)
        window.emplace_back(window_flat[2 * i], window_flat[2 * i + 1]);
      PointConfig c = equal_n > 0 ? equal_count_pair(window, equal_n, seed)
                                  : sample_poisson(window, intensity, parse_mode(mode_str), seed);
      emit(out_path, config_to_json(c));
      return 0;
    }
    if (*solve) {
      PointConfig c = config_from_json(slurp(in_path));
      CostSpec spec = costspec_parse(gamma_str);
      Matching m;
      if (tile_size > 0) {
        std::vector<double> off = offset.empty() ? std::vector<double>(c.dim, 0.0) : offset;
        m = tile_match(spec, c, tile_size, off);
      } else {
        m = solve_min(spec, c);
      }
      emit(out_path, matching_to_json(c, m, spec));
      if (oracle) {
        auto set = oracle_min(spec, c);
        auto got = score(spec, c, m);
        auto want = score(spec, c, set.front());
        if (compare(spec, got, want) != Ordering::equal) {
          std::cerr << "oracle mismatch\n";
          return 1;
        }
      }
      return 0;
    }
    if (*build) {
      PointConfig c = config_from_json(slurp(in_path));
      if (swap) c = swap_colours(c);
      WindowMatching wm;
      std::optional<CostSpec> spec;
      if (construction == "alternating+") {
        wm = alternating(c, Phase::plus);
      } else if (construction == "alternating-") {
        wm = alternating(c, Phase::minus);
      } else if (construction == "order-k") {
        wm = order_matching_k(c, k);
      } else if (construction == "meshalkin") {
        wm = meshalkin(c);
      } else if (construction == "level-k") {
        auto walk = build_walk(c);
        auto lv = assign_levels(walk, c);
        wm = level_matching(c, lv, KThreshold::at(k));
      } else if (construction == "one-swap") {
        wm = one_swap_variant(c, meshalkin(c), parse_selector(selector));
      } else if (construction == "finitary") {
        spec = costspec_parse(gamma_str);
        auto cert = finitary_partner(c, *spec, query, max_n);
        if (!cert) {
          std::cerr << "no certificate up to max_n=" << max_n << "\n";
          return 1;
        }
        emit(out_path, certificate_to_json(c, *cert));
        return 0;
      } else {
        fail(Err::InvalidParameter, "unknown construction '" + construction + "'");
      }
      emit(out_path, window_matching_to_json(c, wm, spec));
      return 0;
    }
    if (*verify) {
      PointConfig c;
      WindowMatching wm;
      std::string mtext = slurp(matching_path);
      if (!in_path.empty()) {
        c = config_from_json(slurp(in_path));
        wm = matching_from_json(mtext, c);
      } else {
        std::tie(c, wm) = matching_with_config_from_json(mtext);
      }
      VerifyReport rep;
      if (predicate == "stable") {
        rep = is_stable(c, wm.match);
      } else if (predicate == "quasistable") {
        double kap = kappa_opt > 0 ? kappa_opt : kappa(costspec_parse(gamma_str));
        rep = is_quasistable(c, wm.match, kap);
      } else if (predicate == "local-min") {
        rep = is_gamma_minimal_local(costspec_parse(gamma_str), c, wm.match, cap, vsamples,
                                     seed);
      } else {
        fail(Err::InvalidParameter, "unknown predicate '" + predicate + "'");
      }
      emit(out_path, rep.to_json(predicate));
      return rep.ok ? 0 : 1;
    }
    if (*tails) return run_tails(tf, seed);
    if (*render) {
      std::string mtext = slurp(in_path);
      PointConfig c;
      WindowMatching wm;
      if (!points_path.empty()) {
        c = config_from_json(slurp(points_path));
        wm = matching_from_json(mtext, c);
      } else {
        std::tie(c, wm) = matching_with_config_from_json(mtext);
      }
      emit(out_path, render_svg(c, wm));
      return 0;
    }
  } catch (const Error& e) {
    std::cerr << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
