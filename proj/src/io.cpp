#include "matchlab/io.hpp"

#include "json.hpp"

namespace matchlab {

namespace {

using json = nlohmann::json;

json score_json(const CostSpec& spec, const PointConfig& config, const Matching& m) {
  MatchScore s = score(spec, config, m);
  json j;
  j["unmatched"] = s.unmatched;
  switch (spec.kind) {
    case Kind::finite:
      j["cost"] = s.cost;
      break;
    case Kind::neg_inf:
    case Kind::pos_inf:
      j["lengths"] = s.lengths;
      break;
    case Kind::one_minus:
    case Kind::one_plus:
      j["cost"] = s.cost;
      j["violation"] = s.violation;
      break;
  }
  return j;
}

json matching_json(const PointConfig& config, const Matching& m,
                   const std::optional<CostSpec>& spec) {
  json j;
  json edges = json::array();
  for (auto& e : m.edges) edges.push_back({e.first, e.second});
  j["edges"] = edges;
  j["unmatched"] = m.unmatched;
  j["tie"] = m.tie;
  if (spec) {
    j["score"] = score_json(*spec, config, m);
    j["gamma"] = costspec_to_string(*spec);
  }
  j["config"] = json::parse(config_to_json(config));
  return j;
}

}  // namespace

std::string matching_to_json(const PointConfig& config, const Matching& m,
                             const std::optional<CostSpec>& spec) {
  return matching_json(config, m, spec).dump(2);
}

std::string window_matching_to_json(const PointConfig& config, const WindowMatching& wm,
                                    const std::optional<CostSpec>& spec) {
  json j = matching_json(config, wm.match, spec);
  j["boundary"] = wm.boundary;
  return j.dump(2);
}

WindowMatching matching_from_json(const std::string& text, const PointConfig& config) {
  json j;
  try {
    j = json::parse(text);
  } catch (const std::exception& e) {
    fail(Err::InvalidInput, std::string("bad JSON: ") + e.what());
  }
  WindowMatching wm;
  wm.match.mode = config.mode;
  try {
    for (auto& e : j.at("edges")) wm.match.edges.emplace_back(e[0].get<int>(), e[1].get<int>());
    if (j.contains("tie")) wm.match.tie = j["tie"].get<bool>();
    if (j.contains("boundary")) wm.boundary = j["boundary"].get<std::vector<int>>();
  } catch (const std::exception& e) {
    fail(Err::InvalidInput, std::string("bad matching JSON: ") + e.what());
  }
  canonicalize(config, wm.match);
  check_matching(config, wm.match);
  return wm;
}

std::pair<PointConfig, WindowMatching> matching_with_config_from_json(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const std::exception& e) {
    fail(Err::InvalidInput, std::string("bad JSON: ") + e.what());
  }
  if (!j.contains("config"))
    fail(Err::InvalidInput, "matching file carries no embedded config; pass the points file");
  PointConfig config = config_from_json(j["config"].dump());
  return {config, matching_from_json(text, config)};
}

std::string certificate_to_json(const PointConfig& config, const FinitaryCertificate& cert) {
  json j;
  j["query"] = cert.query;
  j["V"] = cert.V;
  j["V_position"] = *config.point_at(cert.V);
  j["level"] = cert.level;
  j["kappa"] = cert.kappa_value;
  j["a"] = cert.a;
  j["Y"] = cert.Y;
  j["H"] = cert.H;
  j["partner"] = cert.partner;
  j["partner_position"] = *config.point_at(cert.partner);
  j["coding_radius"] = coding_radius(cert);
  return j.dump(2);
}

}  // namespace matchlab
