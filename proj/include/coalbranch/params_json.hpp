#pragma once

#include <string>

#include <json.hpp>

#include "coalbranch/duality.hpp"
#include "coalbranch/params.hpp"

namespace coalbranch {

// Parameter file schemas (field names are part of the interface):
//   branching:  {"d": int, "B": [[..]], "c": [..],
//                "mu": [[{"point": [..], "weight": x}, ..], ..]}
//   coalescent: {"d": int, "rho": [[..]],
//                "Q":  [[{"point": [..], "weight": x}, ..], ..]}

nlohmann::json branching_to_json(const BranchingParams& p);
BranchingParams branching_from_json(const nlohmann::json& j);

nlohmann::json coalescent_to_json(const CoalescentParams& p);
CoalescentParams coalescent_from_json(const nlohmann::json& j);

enum class ParamsKind { kBranching, kCoalescent };

// Distinguishes the two schemas by the presence of "B" vs "rho".
ParamsKind detect_params_kind(const nlohmann::json& j);

nlohmann::json report_to_json(const ValidationReport& report);
nlohmann::json report_to_json(const DualityReport& report);

// Parses the file, throwing std::runtime_error with the path and the parser
// diagnostic on failure.
nlohmann::json load_json_file(const std::string& path);

}  // namespace coalbranch
