#include "hsclab/error.hpp"
#include "hsclab/warp.hpp"
#include "json_detail.hpp"

namespace hsclab {

FibrationSpec fibration_from_json(std::string_view text) {
  using namespace json_detail;
  try {
    const json j = json::parse(text);
    const int s = j.at("s").get<int>();
    const int m = j.at("m").get<int>();
    std::vector<std::vector<std::string>> coupling;
    if (j.contains("coupling")) coupling = string_matrix(j.at("coupling"));
    return make_fibration(j.value("name", std::string("fibration")), s, m, string_matrix(j.at("fiber_entries")),
                          string_matrix(j.at("base_entries")), coupling, j.value("mu0", 0.0),
                          box_from_json(j.value("box", json()), s + m));
  } catch (const json::exception& e) {
    throw Error(ErrorCode::InvalidArgument, std::string("fibration file: ") + e.what());
  }
}

std::string fibration_to_json(const FibrationSpec& f) {
  using namespace json_detail;
  json j = json::object();
  j["name"] = f.name;
  j["s"] = f.s;
  j["m"] = f.m;
  j["fiber_entries"] = expr_matrix_to_json(f.fiber_entries);
  j["base_entries"] = expr_matrix_to_json(f.base_entries);
  if (f.coupled()) j["coupling"] = expr_matrix_to_json(f.coupling);
  j["mu0"] = f.mu0;
  j["box"] = box_to_json(f.box);
  return j.dump(2);
}

FibrationSpec load_fibration_file(const std::string& path) {
  return fibration_from_json(json_detail::read_file(path));
}

}  // namespace hsclab
