#include <fstream>
#include <sstream>

#include "hsclab/error.hpp"
#include "hsclab/metric.hpp"
#include "json_detail.hpp"

namespace hsclab {

namespace json_detail {

CoordDomain domain_from_json(const json& j) {
  CoordDomain d;
  if (j.contains("re")) {
    d.re_min = j.at("re").at(0).get<double>();
    d.re_max = j.at("re").at(1).get<double>();
  }
  if (j.contains("im")) {
    d.im_min = j.at("im").at(0).get<double>();
    d.im_max = j.at("im").at(1).get<double>();
  }
  if (j.contains("radius")) {
    d.radius = j.at("radius").get<double>();
    if (!j.contains("re")) d.re_min = -*d.radius, d.re_max = *d.radius;
    if (!j.contains("im")) d.im_min = -*d.radius, d.im_max = *d.radius;
  }
  if (!(d.re_min <= d.re_max && d.im_min <= d.im_max)) {
    throw Error(ErrorCode::InvalidArgument, "box interval has min > max");
  }
  return d;
}

json domain_to_json(const CoordDomain& d) {
  json j = json::object();
  j["re"] = {d.re_min, d.re_max};
  j["im"] = {d.im_min, d.im_max};
  if (d.radius) j["radius"] = *d.radius;
  return j;
}

ChartBox box_from_json(const json& j, int n) {
  ChartBox box;
  if (j.is_null()) return ChartBox::polydisk(n);
  for (const auto& d : j) box.coords.push_back(domain_from_json(d));
  return box;
}

json box_to_json(const ChartBox& box) {
  json j = json::array();
  for (const auto& d : box.coords) j.push_back(domain_to_json(d));
  return j;
}

std::vector<std::vector<std::string>> string_matrix(const json& j) {
  std::vector<std::vector<std::string>> out;
  for (const auto& row : j) {
    std::vector<std::string> r;
    for (const auto& e : row) {
      // Numeric literals are accepted as shorthand for their DSL spelling.
      if (e.is_number()) {
        std::ostringstream os;
        os.precision(17);
        os << e.get<double>();
        r.push_back(os.str());
      } else {
        r.push_back(e.get<std::string>());
      }
    }
    out.push_back(std::move(r));
  }
  return out;
}

json expr_matrix_to_json(const std::vector<std::vector<Expr>>& m) {
  json j = json::array();
  for (const auto& row : m) {
    json r = json::array();
    for (const auto& e : row) r.push_back(to_string(e));
    j.push_back(std::move(r));
  }
  return j;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::Io, "cannot open '" + path + "'");
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

}  // namespace json_detail

MetricSpec metric_from_json(std::string_view text) {
  using namespace json_detail;
  json j;
  try {
    j = json::parse(text);
    const int n = j.at("n").get<int>();
    const std::string name = j.value("name", std::string("metric"));
    return make_metric(name, n, string_matrix(j.at("entries")),
                       box_from_json(j.value("box", json()), n));
  } catch (const json::exception& e) {
    throw Error(ErrorCode::InvalidArgument, std::string("metric file: ") + e.what());
  }
}

std::string metric_to_json(const MetricSpec& spec) {
  using namespace json_detail;
  json j = json::object();
  j["name"] = spec.name;
  j["n"] = spec.n;
  j["entries"] = expr_matrix_to_json(spec.entries);
  j["box"] = box_to_json(spec.box);
  return j.dump(2);
}

MetricSpec load_metric_file(const std::string& path) {
  return metric_from_json(json_detail::read_file(path));
}

}  // namespace hsclab
