#include "report.hpp"

#include <cmath>
#include <fstream>
#include <iostream>

#include "hsclab/error.hpp"
#include "hsclab/expr.hpp"
#include "hsclab/version.hpp"

namespace hsclab::cli {

namespace {

/// JSON has no NaN/inf; they become null.
json real(double v) { return std::isfinite(v) ? json(v) : json(nullptr); }

}  // namespace

json envelope(const std::string& command, std::uint64_t seed, json config) {
  json j = json::object();
  j["schema"] = 1;
  j["tool"] = "hsc-lab";
  j["version"] = kVersion;
  j["command"] = command;
  j["seed"] = seed;
  j["config"] = std::move(config);
  return j;
}

json to_json(cplx z) { return json::array({real(z.real()), real(z.imag())}); }

json to_json(const CVec& v) {
  json j = json::array();
  for (const cplx& z : v) j.push_back(to_json(z));
  return j;
}

json to_json(const Matrix& m) {
  json j = json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (Eigen::Index k = 0; k < m.cols(); ++k) row.push_back(to_json(cplx(m(i, k))));
    j.push_back(std::move(row));
  }
  return j;
}

json to_json(const CurvatureTensor& R) {
  const int n = R.dim();
  json j = json::array();
  for (int i = 0; i < n; ++i) {
    json a = json::array();
    for (int k = 0; k < n; ++k) {
      json b = json::array();
      for (int p = 0; p < n; ++p) {
        json c = json::array();
        for (int q = 0; q < n; ++q) c.push_back(to_json(R(i, k, p, q)));
        b.push_back(std::move(c));
      }
      a.push_back(std::move(b));
    }
    j.push_back(std::move(a));
  }
  return j;
}

json to_json(const ScanReport& r, bool samples) {
  json j = {{"metric", r.metric},
            {"verdict", r.verdict()},
            {"min_hsc", real(r.min_hsc)},
            {"witness_point", to_json(r.witness_point)},
            {"witness_dir", to_json(r.witness_dir)},
            {"max_hsc", real(r.max_hsc)},
            {"margin", real(r.margin)},
            {"points_scanned", r.points_scanned},
            {"dirs_per_point", r.dirs_per_point},
            {"starts", r.starts},
            {"seed", r.seed}};
  if (samples) {
    json s = json::array();
    for (const auto& p : r.samples) s.push_back({{"point", to_json(p.point)}, {"min_hsc", real(p.min_hsc)}});
    j["samples"] = std::move(s);
  }
  return j;
}

json to_json(const NegativeWitness& w) {
  return {{"point", to_json(w.point)}, {"dir", to_json(w.dir)}, {"value", real(w.value)}, {"points_tried", w.points_tried}};
}

json to_json(const Lemma1Constants& c) {
  return {{"K0", c.K0}, {"K1", c.K1}, {"n", c.n}, {"s", c.s}, {"a", c.a}, {"b", c.b}, {"c", c.c}, {"d", c.d},
          {"a2", c.a * c.a}, {"b2", c.b * c.b}, {"c2", c.c * c.c}, {"d2", c.d * c.d}, {"Kcal", c.Kcal},
          {"K2_required", c.K2_required}, {"constraint_sum", c.constraint_sum()},
          {"constraint_bound", 0.5 * c.K0 / c.K1}};
}

json to_json(const IneqReport& r) {
  json j = {{"trials", r.trials},
            {"violations", r.violations},
            {"worst_slack", {real(r.worst_slack[0]), real(r.worst_slack[1]), real(r.worst_slack[2])}},
            {"ok", r.ok()}};
  if (r.witness) j["witness"] = *r.witness;
  return j;
}

json to_json(const HypothesisReport& r) {
  return {{"hyp1", r.hyp1}, {"hyp1_worst_slack", real(r.hyp1_worst_slack)},
          {"hyp2", r.hyp2}, {"max_mixed", real(r.max_mixed)},
          {"hyp2_literal", r.hyp2_literal}, {"max_fiber_touching", real(r.max_fiber_touching)},
          {"hyp3", r.hyp3}, {"hyp3_worst_slack", real(r.hyp3_worst_slack)}, {"ok", r.ok()}};
}

json to_json(const BoundReport& r) {
  json j = {{"trials", r.trials},           {"violations", r.violations},
            {"nonpositive", r.nonpositive}, {"worst_slack", real(r.worst_slack)},
            {"min_numerator", real(r.min_numerator)}, {"ok", r.ok()}};
  if (r.witness) j["witness"] = to_json(*r.witness);
  return j;
}

json pairs_json(const std::vector<std::pair<double, double>>& xy) {
  json j = json::array();
  for (const auto& [x, y] : xy) j.push_back({real(x), real(y)});
  return j;
}

json to_json(const ThresholdResult& r) {
  return {{"lambda_t", real(r.lambda_t)},
          {"persistent", r.persistent},
          {"persistence", pairs_json(r.persistence)},
          {"schedule_steps", r.history.size()}};
}

json to_json(const DecayReport& r) {
  return {{"KH", real(r.KH)}, {"values", pairs_json(r.values)}, {"limit_rel_error", real(r.limit_rel_error)},
          {"C", real(r.C)}, {"tail_slope", real(r.tail_slope)}, {"ok", r.ok}};
}

json to_json(const LambdaSearchResult& r) {
  return {{"lambda_star", real(r.lambda_star)},
          {"min_hsc_at_star", real(r.min_hsc_at_star)},
          {"history", pairs_json(r.history)},
          {"persistence", pairs_json(r.persistence)},
          {"persistent", r.persistent},
          {"base_min_hsc", real(r.base_min_hsc)},
          {"fiber_min_hsc", real(r.fiber_min_hsc)},
          {"seed", r.seed}};
}

json to_json(const Mu0Result& r) {
  return {{"mu0", r.mu0}, {"samples", r.samples}, {"history", pairs_json(r.history)}};
}

json to_json(const AsymptoticsReport& r) {
  json terms = json::array();
  for (const auto& t : r.terms) {
    terms.push_back({{"name", t.name},
                     {"predicted_slope", t.predicted_slope},
                     {"fitted_slope", real(t.fitted_slope)},
                     {"vanishes", t.vanishes},
                     {"errors", t.errors},
                     {"ok", t.ok}});
  }
  return {{"lambdas", r.lambdas}, {"terms", terms}, {"base_transform", to_json(r.base_transform)}, {"ok", r.ok()}};
}

json to_json(const GrowthReport& r) {
  return {{"values", pairs_json(r.values)}, {"slope", real(r.slope)}, {"ok", r.ok}};
}

json to_json(const Example1Report& r) {
  json entries = json::array();
  for (const auto& e : r.entries) {
    json x = {{"lambda", e.lambda},
              {"base_min_hsc", real(e.base_min_hsc)},
              {"fiber_min_hsc", real(e.fiber_min_hsc)},
              {"ok", e.ok}};
    x["witness"] = e.witness ? to_json(*e.witness) : json(nullptr);
    entries.push_back(std::move(x));
  }
  json fibers = json::array();
  for (const auto& t : r.fiber_points) fibers.push_back(to_json(t));
  return {{"fiber_origin_hsc", real(r.fiber_origin_hsc)},
          {"base_origin_hsc", real(r.base_origin_hsc)},
          {"fiber_points", fibers},
          {"entries", entries},
          {"ok", r.ok()}};
}

std::string csv_num(double v) { return format_real(v); }

void emit(const std::string& text, const std::string& path) {
  if (path.empty()) {
    std::cout << text << '\n';
    return;
  }
  std::ofstream out(path);
  if (!out) throw Error(ErrorCode::Io, "cannot write '" + path + "'");
  out << text << '\n';
}

}  // namespace hsclab::cli
