#pragma once

#include <optional>
#include <string>

#include "matchlab/costs.hpp"
#include "matchlab/line_constructions.hpp"

namespace matchlab {

// Matching JSON: {"edges":[[i,j],...],"unmatched":[...],"score":{...},
// "tie":bool}.  Two-colour edges index the sorted red/blue arrays; unmatched
// (and boundary) entries use concatenated indexing, blue offset by n_red.
// An embedded copy of the config makes the file self-contained.
std::string matching_to_json(const PointConfig& config, const Matching& m,
                             const std::optional<CostSpec>& spec);

std::string window_matching_to_json(const PointConfig& config, const WindowMatching& wm,
                                    const std::optional<CostSpec>& spec);

// reads either form; boundary defaults to empty
WindowMatching matching_from_json(const std::string& text, const PointConfig& config);

// reads a matching file with its embedded config
std::pair<PointConfig, WindowMatching> matching_with_config_from_json(const std::string& text);

std::string certificate_to_json(const PointConfig& config, const FinitaryCertificate& cert);

}  // namespace matchlab
