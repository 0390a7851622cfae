#pragma once

#include <json.hpp>

#include "espent/analysis.hpp"

namespace espent::detail {

nlohmann::json report_json(const AnalysisReport& report);

}  // namespace espent::detail
