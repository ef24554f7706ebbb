#pragma once

// JSON helpers shared by the metric and fibration readers. Private to the library.

#include <json.hpp>
#include <string>
#include <vector>

#include "hsclab/metric.hpp"

namespace hsclab::json_detail {

using nlohmann::json;

CoordDomain domain_from_json(const json& j);
json domain_to_json(const CoordDomain& d);
ChartBox box_from_json(const json& j, int n);
json box_to_json(const ChartBox& box);
std::vector<std::vector<std::string>> string_matrix(const json& j);
json expr_matrix_to_json(const std::vector<std::vector<Expr>>& m);
std::string read_file(const std::string& path);

}  // namespace hsclab::json_detail
