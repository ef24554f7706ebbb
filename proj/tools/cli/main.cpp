// hsc-lab: command-line front end of the hsclab library.

#include <CLI11.hpp>
#include <cmath>
#include <iostream>
#include <sstream>

#include "args.hpp"
#include "hsclab/hsclab.hpp"
#include "report.hpp"
#include "selftest.hpp"

namespace {

using namespace hsclab;
using namespace hsclab::cli;

constexpr int kExitOk = 0;
constexpr int kExitCheckFailed = 1;
constexpr int kExitUsage = 2;

struct Common {
  std::uint64_t seed = 0;
  std::string format = "json";
  std::string output;
};

struct MetricArgs {
  std::string catalog_name;
  std::string file;
  std::string box;

  void add(CLI::App* app) {
    app->add_option("--catalog", catalog_name, "catalog metric (" + catalog_list() + ")");
    app->add_option("--metric", file, "metric JSON file");
    app->add_option("--box", box, "chart box override: disk:R | rect:a:b:c:d, or one per coordinate joined by ';'");
  }
  [[nodiscard]] MetricSpec resolve() const {
    MetricSpec spec = resolve_metric(catalog_name, file);
    if (!box.empty()) spec.box = parse_box(box, spec.n);
    return spec;
  }
  static std::string catalog_list() {
    std::string s;
    for (const auto& n : catalog_names()) s += (s.empty() ? "" : ", ") + n;
    return s;
  }
};

struct ScanArgs {
  ScanParams p;

  void add(CLI::App* app) {
    app->add_option("--grid", p.grid_per_axis, "grid nodes per real axis")->capture_default_str();
    app->add_option("--random", p.random_points, "extra uniform random points")->capture_default_str();
    app->add_option("--dirs", p.search.dirs, "random directions per point")->capture_default_str();
    app->add_option("--starts", p.search.starts, "refined directions per point")->capture_default_str();
    app->add_option("--threads", p.threads, "worker threads (0: hardware)")->capture_default_str();
  }
  [[nodiscard]] json config() const {
    return {{"grid", p.grid_per_axis}, {"random_points", p.random_points}, {"dirs", p.search.dirs},
            {"starts", p.search.starts}};
  }
};

void require_format(const Common& c, bool csv_ok) {
  if (c.format != "json" && !(csv_ok && c.format == "csv")) {
    throw Error(ErrorCode::InvalidArgument, "format '" + c.format + "' not available for this command");
  }
}

std::string csv_point(const CVec& v) {
  std::string s;
  for (const cplx& z : v) s += "," + csv_num(z.real()) + "," + csv_num(z.imag());
  return s;
}

std::string csv_header_point(const std::string& prefix, std::size_t n) {
  std::string s;
  for (std::size_t k = 1; k <= n; ++k) s += "," + prefix + "re_" + std::to_string(k) + "," + prefix + "im_" + std::to_string(k);
  return s;
}

// ---------------------------------------------------------------------------

struct CurvatureCmd {
  MetricArgs metric;
  std::string point;
  std::string dir;
  bool tensor = false;
  bool oracle = false;

  int run(const Common& c) const {
    require_format(c, false);
    const MetricSpec spec = metric.resolve();
    const CVec p = parse_point(point, spec.n);
    const MetricJet mj = metric_jet(spec, p);
    const CurvatureTensor R = curvature(mj);
    json cfg = {{"metric", spec.name}, {"point", to_json(p)}};
    json res = {{"g", to_json(mj.g)}};
    if (!dir.empty()) {
      const CVec xi = parse_point(dir, spec.dim());
      cfg["dir"] = to_json(xi);
      res["hsc"] = hsc(mj, R, xi);
    }
    const PointMinimum pm = min_hsc_at_point(spec, p, DirectionSearch{}, c.seed);
    res["min_hsc"] = pm.value;
    res["min_dir"] = to_json(pm.dir);
    res["max_sampled_hsc"] = pm.max_sampled;
    res["pair_symmetry_defect"] = R.pair_symmetry_defect();
    if (tensor) res["tensor"] = to_json(R);
    if (oracle) {
      const CurvatureTensor Rf = curvature(metric_jet_fd(spec, p));
      double diff = 0.0;
      for (std::size_t q = 0; q < R.data().size(); ++q) diff = std::max(diff, std::abs(R.data()[q] - Rf.data()[q]));
      res["fd_tensor_max_diff"] = diff;
    }
    json out = envelope("curvature", c.seed, cfg);
    out["result"] = res;
    emit(out.dump(2), c.output);
    return kExitOk;
  }
};

struct ScanCmd {
  MetricArgs metric;
  ScanArgs scan;
  bool samples = false;

  int run(const Common& c) {
    require_format(c, true);
    const MetricSpec spec = metric.resolve();
    scan.p.seed = c.seed;
    const ScanReport r = scan_chart(spec, scan.p);
    if (c.format == "csv") {
      std::string s = "point" + csv_header_point("", static_cast<std::size_t>(spec.n)) + ",min_hsc\n";
      for (std::size_t k = 0; k < r.samples.size(); ++k) {
        s += std::to_string(k) + csv_point(r.samples[k].point) + "," + csv_num(r.samples[k].min_hsc) + "\n";
      }
      s.pop_back();
      emit(s, c.output);
      return kExitOk;
    }
    json cfg = scan.config();
    cfg["metric"] = spec.name;
    json out = envelope("scan", c.seed, cfg);
    out["result"] = to_json(r, samples);
    emit(out.dump(2), c.output);
    return kExitOk;
  }
};

struct WitnessCmd {
  MetricArgs metric;
  int budget = 64;
  DirectionSearch search;

  int run(const Common& c) const {
    require_format(c, false);
    const MetricSpec spec = metric.resolve();
    const auto w = find_negative_witness(spec, spec.box, budget, c.seed, search);
    json out = envelope("witness", c.seed, {{"metric", spec.name}, {"budget", budget}, {"dirs", search.dirs},
                                            {"starts", search.starts}});
    out["result"] = {{"found", w.has_value()}, {"witness", w ? to_json(*w) : json(nullptr)}};
    emit(out.dump(2), c.output);
    return kExitOk;
  }
};

struct Lemma1Cmd {
  double k0 = 8.0;
  double k1 = 1.0;
  int n = 2;
  int s = 1;
  double k2 = 0.0;
  std::size_t trials = 10000;
  int tensors = 10;
  std::size_t ineq_trials = 100000;

  int run(const Common& c) const {
    require_format(c, false);
    const Lemma1Constants consts = lemma1_constants(k0, k1, n, s);
    const double K2 = k2 > 0.0 ? k2 : consts.K2_required;
    const IneqReport ineq = prod_ineq_check(consts.a, consts.b, consts.c, consts.d, ineq_trials, split_seed(c.seed, 1));
    bool ok = ineq.ok();
    json tens = json::array();
    for (int t = 0; t < tensors; ++t) {
      const HypothesisTensor ht = random_hypothesis_tensor(k0, k1, K2, n, s, split_seed(c.seed, 100 + t));
      const HypothesisReport hr = check_hypotheses(ht, trials, split_seed(c.seed, 200 + t));
      const BoundReport br = lemma1_bound_check(ht, consts, trials, split_seed(c.seed, 300 + t));
      ok = ok && hr.ok() && br.ok();
      tens.push_back({{"hypotheses", to_json(hr)}, {"bound", to_json(br)}});
    }
    json out = envelope("lemma1", c.seed, {{"K0", k0}, {"K1", k1}, {"n", n}, {"s", s}, {"K2", K2}, {"trials", trials},
                                           {"tensors", tensors}, {"ineq_trials", ineq_trials}});
    out["result"] = {{"constants", to_json(consts)}, {"Kcal", consts.Kcal}, {"inequalities", to_json(ineq)},
                     {"tensors", tens}, {"ok", ok}};
    emit(out.dump(2), c.output);
    return ok ? kExitOk : kExitCheckFailed;
  }
};

struct Lemma2Cmd {
  std::string g = "poincare";
  std::string h = "fs_affine";
  std::string g_file;
  std::string h_file;
  std::string point = "0";
  std::string lambdas = "0.1,1,10,100,1000,10000";
  double lambda_max = 1e6;

  int run(const Common& c) const {
    require_format(c, true);
    const MetricSpec gs = g_file.empty() ? catalog(g) : load_metric_file(g_file);
    const MetricSpec hs = h_file.empty() ? catalog(h) : load_metric_file(h_file);
    const CVec p = parse_point(point, gs.n);
    const std::vector<double> lams = parse_list(lambdas);
    const Lemma2Inputs in = lemma2_inputs(gs, hs, p);
    bool ok = true;
    json rows = json::array();
    std::string csv = "lambda,formula,direct\n";
    for (double lam : lams) {
      const double f = in.at(lam);
      const double d = hsc_at(summed_metric(gs, hs, lam), p, CVec{cplx(1.0)});
      ok = ok && std::abs(f - d) <= 1e-9;
      rows.push_back({{"lambda", lam}, {"formula", f}, {"direct", d}});
      csv += csv_num(lam) + "," + csv_num(f) + "," + csv_num(d) + "\n";
    }
    if (c.format == "csv") {
      csv.pop_back();
      emit(csv, c.output);
      return ok ? kExitOk : kExitCheckFailed;
    }
    json res = {{"KG", in.KG}, {"KH", in.KH}, {"values", rows}};
    if (in.KH > 0.0) {
      res["threshold"] = to_json(lemma2_threshold(gs, hs, p, lambda_max));
    } else {
      res["threshold"] = nullptr;
    }
    if (!lams.empty() && lams.back() >= 1e4 && std::is_sorted(lams.begin(), lams.end())) {
      const DecayReport dr = decay_check(gs, hs, p, lams);
      ok = ok && dr.ok;
      res["decay"] = to_json(dr);
    }
    res["ok"] = ok;
    json out = envelope("lemma2", c.seed, {{"g", gs.name}, {"h", hs.name}, {"point", to_json(p)}, {"lambdas", lams},
                                           {"lambda_max", lambda_max}});
    out["result"] = res;
    emit(out.dump(2), c.output);
    return ok ? kExitOk : kExitCheckFailed;
  }
};

struct WarpCmd {
  std::string fixture = "warp_demo";
  std::string file;
  std::string action = "lambda";
  double lambda = 1.0;
  double lambda_min = 1e-3;
  double lambda_max = 1073741824.0;
  std::string point;
  std::string lambdas = "geom:100:10000:5";
  std::string base_dir;
  int samples = 64;
  ScanArgs scan;

  int run(const Common& c) {
    require_format(c, action == "lambda");
    const FibrationSpec f = resolve_fibration(fixture, file);
    const CVec p = point.empty() ? f.box.center() : parse_point(point, f.n());
    json cfg = {{"fibration", f.name}, {"action", action}};
    json res;
    bool ok = true;
    if (action == "assemble") {
      const MetricSpec psi = assemble_psi(f, lambda, samples, c.seed);
      cfg["lambda"] = lambda;
      res = json::parse(metric_to_json(psi));
    } else if (action == "mu0") {
      cfg["samples"] = samples;
      res = to_json(mu0_search(f, samples, c.seed));
    } else if (action == "lambda") {
      scan.p.seed = c.seed;
      LambdaSearchOptions opts;
      opts.lambda_min = lambda_min;
      opts.lambda_max = lambda_max;
      cfg.update(scan.config());
      cfg["lambda_min"] = lambda_min;
      cfg["lambda_max"] = lambda_max;
      const LambdaSearchResult r = lambda_search(f, scan.p, opts);
      ok = r.persistent;
      if (c.format == "csv") {
        std::string s = "lambda,min_hsc";
        for (const auto& [l, v] : r.history) s += "\n" + csv_num(l) + "," + csv_num(v);
        emit(s, c.output);
        return ok ? kExitOk : kExitCheckFailed;
      }
      res = to_json(r);
    } else if (action == "asymptotics") {
      const std::vector<double> lams = parse_list(lambdas);
      cfg["point"] = to_json(p);
      cfg["lambdas"] = lams;
      const AsymptoticsReport r = block_inverse_asymptotics_check(f, p, lams);
      ok = r.ok();
      res = to_json(r);
    } else if (action == "growth") {
      const std::vector<double> lams = parse_list(lambdas);
      const CVec dir = base_dir.empty() ? CVec(static_cast<std::size_t>(f.m), cplx(1.0)) : parse_point(base_dir, f.m);
      cfg["point"] = to_json(p);
      cfg["lambdas"] = lams;
      cfg["base_dir"] = to_json(dir);
      const GrowthReport r = base_numerator_growth_check(f, p, dir, lams);
      ok = r.ok;
      res = to_json(r);
    } else {
      throw Error(ErrorCode::InvalidArgument, "unknown warp action '" + action + "'");
    }
    json out = envelope("warp", c.seed, cfg);
    out["result"] = res;
    emit(out.dump(2), c.output);
    return ok ? kExitOk : kExitCheckFailed;
  }
};

struct Example1Cmd {
  std::string lambdas = "0.5,1,5,50";
  int budget = 64;
  ScanArgs scan;

  int run(const Common& c) {
    require_format(c, true);
    scan.p.seed = c.seed;
    const std::vector<double> lams = parse_list(lambdas);
    const Example1Report r = example1_report(lams, scan.p, budget);
    if (c.format == "csv") {
      std::string s = "lambda,value" + csv_header_point("point_", 2) + csv_header_point("dir_", 2);
      for (const auto& e : r.entries) {
        s += "\n" + csv_num(e.lambda) + ",";
        if (e.witness) {
          s += csv_num(e.witness->value) + csv_point(e.witness->point) + csv_point(e.witness->dir);
        } else {
          s += ",,,,,,,,";
        }
      }
      emit(s, c.output);
      return r.ok() ? kExitOk : kExitCheckFailed;
    }
    json cfg = scan.config();
    cfg["lambdas"] = lams;
    cfg["budget"] = budget;
    json out = envelope("example1", c.seed, cfg);
    out["result"] = to_json(r);
    emit(out.dump(2), c.output);
    return r.ok() ? kExitOk : kExitCheckFailed;
  }
};

struct SelftestCmd {
  std::vector<std::string> only;

  int run(const Common& c) const {
    if (c.format != "json" && c.format != "text" && c.format != "csv") {
      throw Error(ErrorCode::InvalidArgument, "selftest formats: text, json, csv");
    }
    selftest::Config cfg;
    cfg.seed = c.seed;
    const auto results = selftest::run(cfg, only);
    int failed = 0;
    for (const auto& r : results) failed += r.pass ? 0 : 1;
    std::ostringstream lines;
    for (const auto& r : results) lines << selftest::format_line(r) << '\n';
    lines << (failed == 0 ? "ALL PASS" : "FAILED") << "  " << results.size() - failed << "/" << results.size();
    if (c.format == "csv") {
      std::string s = "id,pass,detail";
      for (const auto& r : results) s += "\n" + r.id + "," + (r.pass ? "1" : "0") + ",\"" + r.detail + "\"";
      emit(s, c.output);
    } else if (c.output.empty()) {
      std::cout << (c.format == "json" && c.output.empty() && explicit_json ? selftest::report_json(cfg, results)
                                                                           : lines.str())
                << '\n';
    } else {
      std::cout << lines.str() << '\n';
      emit(selftest::report_json(cfg, results), c.output);
    }
    return failed == 0 ? kExitOk : kExitCheckFailed;
  }

  bool explicit_json = false;
};

int exit_code_for(const Error& e) {
  switch (e.code()) {
    case ErrorCode::InvalidArgument:
    case ErrorCode::IndexOutOfRange:
    case ErrorCode::Syntax:
    case ErrorCode::UnknownIdentifier:
    case ErrorCode::VariableIndex:
    case ErrorCode::UnknownName:
    case ErrorCode::OutsideBox:
    case ErrorCode::Io:
      return kExitUsage;
    default:
      return kExitCheckFailed;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"hsc-lab: holomorphic sectional curvature workbench"};
  app.fallthrough(true);
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(kVersion));
  app.footer(
      "Exit status: 0 success, 1 check failed, 2 usage error.\n"
      "Points: comma-separated coordinates, each re:im or a literal like 0.5+0.1i;\n"
      "  a list of 2n plain numbers is read as re,im pairs.\n"
      "CSV columns: scan -> point,re_k,im_k,...,min_hsc; warp --action lambda -> lambda,min_hsc;\n"
      "  lemma2 -> lambda,formula,direct; example1 -> lambda,value,point_*,dir_*; selftest -> id,pass,detail.");

  Common common;
  app.add_option("--seed", common.seed, "RNG seed (recorded in every report)")->capture_default_str();
  app.add_option("--format", common.format, "json | csv (selftest: text | json | csv)");
  app.add_option("-o,--output", common.output, "write the report to this file");

  CurvatureCmd curv;
  auto* c_curv = app.add_subcommand("curvature", "metric, curvature tensor and HSC at a point");
  curv.metric.add(c_curv);
  c_curv->add_option("--point", curv.point, "point")->required();
  c_curv->add_option("--dir", curv.dir, "direction");
  c_curv->add_flag("--tensor", curv.tensor, "include all tensor entries");
  c_curv->add_flag("--fd", curv.oracle, "compare with the finite-difference tensor");

  ScanCmd scan;
  auto* c_scan = app.add_subcommand("scan", "sampled minimum of the HSC over the chart box");
  scan.metric.add(c_scan);
  scan.scan.add(c_scan);
  c_scan->add_flag("--samples", scan.samples, "include per-point minima in the JSON report");

  WitnessCmd wit;
  auto* c_wit = app.add_subcommand("witness", "search for a point and direction with negative HSC");
  wit.metric.add(c_wit);
  c_wit->add_option("--budget", wit.budget, "points to try")->capture_default_str();
  c_wit->add_option("--dirs", wit.search.dirs, "random directions per point")->capture_default_str();
  c_wit->add_option("--starts", wit.search.starts, "refined directions per point")->capture_default_str();

  Lemma1Cmd l1;
  auto* c_l1 = app.add_subcommand("lemma1", "splitting constants, inequalities and bound checks");
  c_l1->add_option("--k0", l1.k0, "fiber lower bound K0")->capture_default_str();
  c_l1->add_option("--k1", l1.k1, "mixed-entry bound K1")->capture_default_str();
  c_l1->add_option("--n", l1.n, "total dimension")->capture_default_str();
  c_l1->add_option("--s", l1.s, "fiber dimension")->capture_default_str();
  c_l1->add_option("--k2", l1.k2, "base lower bound K2 (default Kcal*K1)");
  c_l1->add_option("--trials", l1.trials, "directions per tensor")->capture_default_str();
  c_l1->add_option("--tensors", l1.tensors, "generated tensors")->capture_default_str();
  c_l1->add_option("--ineq-trials", l1.ineq_trials, "inequality trials")->capture_default_str();

  Lemma2Cmd l2;
  auto* c_l2 = app.add_subcommand("lemma2", "curvature of g + lambda h in one dimension: formula, threshold, decay");
  c_l2->add_option("--g-metric", l2.g, "catalog name of g")->capture_default_str();
  c_l2->add_option("--h-metric", l2.h, "catalog name of h")->capture_default_str();
  c_l2->add_option("--g-file", l2.g_file, "metric file for g");
  c_l2->add_option("--h-file", l2.h_file, "metric file for h");
  c_l2->add_option("--point", l2.point, "point")->capture_default_str();
  c_l2->add_option("--lambdas", l2.lambdas, "lambda list or geom:lo:hi:count")->capture_default_str();
  c_l2->add_option("--lambda-max", l2.lambda_max, "threshold search limit")->capture_default_str();

  WarpCmd warp;
  auto* c_warp = app.add_subcommand("warp", "warped metrics on fibrations");
  c_warp->add_option("--fixture", warp.fixture, "warp_demo | example1 | product | coupled")->capture_default_str();
  c_warp->add_option("--fibration", warp.file, "fibration JSON file");
  c_warp->add_option("--action", warp.action, "assemble | mu0 | lambda | asymptotics | growth")->capture_default_str();
  c_warp->add_option("--lambda", warp.lambda, "lambda for assemble")->capture_default_str();
  c_warp->add_option("--lambda-min", warp.lambda_min, "first lambda of the search")->capture_default_str();
  c_warp->add_option("--lambda-max", warp.lambda_max, "search limit")->capture_default_str();
  c_warp->add_option("--point", warp.point, "point (default: box center)");
  c_warp->add_option("--lambdas", warp.lambdas, "lambda list for asymptotics/growth")->capture_default_str();
  c_warp->add_option("--base-dir", warp.base_dir, "base direction for growth");
  c_warp->add_option("--samples", warp.samples, "validation / mu0 samples")->capture_default_str();
  warp.scan.add(c_warp);

  Example1Cmd ex1;
  auto* c_ex1 = app.add_subcommand("example1", "semi-positive fibers: negative witnesses for paper_G(lambda)");
  c_ex1->add_option("--lambdas", ex1.lambdas, "lambda list")->capture_default_str();
  c_ex1->add_option("--budget", ex1.budget, "witness points per lambda")->capture_default_str();
  ex1.scan.add(c_ex1);

  SelftestCmd st;
  auto* c_st = app.add_subcommand("selftest", "run the acceptance suite");
  c_st->add_option("--only", st.only, "criterion ids")->delimiter(',');

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : kExitUsage;
  }
  st.explicit_json = app.get_option("--format")->count() > 0;
  if (c_st->parsed() && !st.explicit_json) common.format = "text";

  try {
    if (c_curv->parsed()) return curv.run(common);
    if (c_scan->parsed()) return scan.run(common);
    if (c_wit->parsed()) return wit.run(common);
    if (c_l1->parsed()) return l1.run(common);
    if (c_l2->parsed()) return l2.run(common);
    if (c_warp->parsed()) return warp.run(common);
    if (c_ex1->parsed()) return ex1.run(common);
    if (c_st->parsed()) return st.run(common);
  } catch (const WitnessError& e) {
    std::cerr << "hsc-lab: " << to_string(e.code()) << ": " << e.what() << " at";
    for (const cplx& z : e.point()) std::cerr << ' ' << z.real() << ':' << z.imag();
    std::cerr << " (value " << e.value() << ")\n";
    return exit_code_for(e);
  } catch (const Error& e) {
    std::cerr << "hsc-lab: " << to_string(e.code()) << ": " << e.what() << '\n';
    return exit_code_for(e);
  } catch (const std::exception& e) {
    std::cerr << "hsc-lab: " << e.what() << '\n';
    return kExitCheckFailed;
  }
  return kExitUsage;
}
