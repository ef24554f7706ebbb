#include "selftest.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <json.hpp>
#include <numbers>

#include "hsclab/hsclab.hpp"
#include "random_expr.hpp"

namespace hsclab::selftest {

namespace {

std::string num(double v, int precision = 6) {
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::general, precision);
  return ec == std::errc{} ? std::string(buf, ptr) : std::string("nan");
}

constexpr double kUlp4 = 4.0 * std::numeric_limits<double>::epsilon();

MetricSpec scaled(const MetricSpec& spec, double c) {
  MetricSpec out = spec;
  out.entries[0][0] = scale(spec.entries[0][0], c);
  out.name = num(c) + "*" + spec.name;
  return out;
}

const std::vector<std::string>& one_dim_pool() {
  static const std::vector<std::string> pool{"flat(1)", "poincare", "fs_affine", "paper_base"};
  return pool;
}

std::vector<double> half_decades(double lo_exp, double hi_exp) {
  std::vector<double> out;
  for (double e = lo_exp; e <= hi_exp + 1e-12; e += 0.5) out.push_back(std::pow(10.0, e));
  return out;
}

// ---------------------------------------------------------------------------

Result constant_curvature(const Config& cfg) {
  Rng rng(split_seed(cfg.seed, 1));
  const MetricSpec poincare = catalog("poincare");
  const MetricSpec fs = catalog("fs_affine");
  const CoordDomain disk = CoordDomain::disk(0.95);
  double err_p = 0.0;
  double err_f = 0.0;
  for (int k = 0; k < 100; ++k) {
    const CVec p{disk.sample(rng)};
    const CVec xi = random_unit_vector(1, rng);
    err_p = std::max(err_p, std::abs(hsc_at(poincare, p, xi) + 4.0));
    err_f = std::max(err_f, std::abs(hsc_at(fs, p, xi) - 4.0));
  }
  return {"", "", err_p <= 1e-8 && err_f <= 1e-8,
          "max |K+4| poincare " + num(err_p) + ", max |K-4| fs_affine " + num(err_f)};
}

Result base_metric_values(const Config& cfg) {
  Rng rng(split_seed(cfg.seed, 2));
  const MetricSpec base = catalog("paper_base");
  double err = 0.0;
  for (int k = 0; k < 100; ++k) {
    const CVec p{base.box.coords[0].sample(rng)};
    err = std::max(err, std::abs(hsc_at(base, p, CVec{cplx(1.0)}) - 2.0 / (1.0 + std::norm(p[0]))));
  }
  const ScanReport scan = scan_chart(base, cfg.scan);
  return {"", "", err <= 1e-8 && scan.min_hsc > 0.0,
          "max |K - 2/(1+|z|^2)| " + num(err) + ", scan min " + num(scan.min_hsc) + " over " +
              std::to_string(scan.points_scanned) + " points"};
}

Result example1(const Config& cfg) {
  const std::vector<double> lambdas{0.5, 1.0, 5.0, 50.0};
  const Example1Report rep = example1_report(lambdas, cfg.scan);
  std::string d = "fiber origin K " + num(rep.fiber_origin_hsc) + "; fiber min " +
                  num(rep.entries.front().fiber_min_hsc) + "; base min " + num(rep.entries.front().base_min_hsc) +
                  "; witnesses";
  for (const auto& e : rep.entries) {
    d += " " + num(e.lambda) + ":" + (e.witness ? num(e.witness->value) : std::string("none"));
  }
  return {"", "", rep.ok(), d};
}

Result ad_vs_fd(const Config& cfg) {
  Rng rng(split_seed(cfg.seed, 4));
  double worst_expr = 0.0;
  std::string worst_src;
  for (int t = 0; t < 1000; ++t) {
    const int n = 1 + t % 3;
    const Expr e = testing::random_expression(rng, n, 3);
    const CVec p = ChartBox::polydisk(n, 0.9).sample(rng);
    const double err = testing::jet_relative_error(evaluate_jet(e, p, n), testing::expression_fd_jet(e, p));
    if (!(err <= worst_expr)) {
      worst_expr = err;
      worst_src = to_string(e);
    }
  }
  double worst_tensor = 0.0;
  std::string worst_metric;
  for (const std::string& name : catalog_names()) {
    const MetricSpec spec = catalog(name);
    for (int k = 0; k < 5; ++k) {
      const CVec p = spec.box.sample(rng);
      const CurvatureTensor ra = curvature(metric_jet(spec, p));
      const CurvatureTensor rf = curvature(metric_jet_fd(spec, p));
      double scale = 1.0;
      double diff = 0.0;
      for (std::size_t q = 0; q < ra.data().size(); ++q) {
        scale = std::max(scale, std::abs(ra.data()[q]));
        diff = std::max(diff, std::abs(ra.data()[q] - rf.data()[q]));
      }
      if (!(diff / scale <= worst_tensor)) {
        worst_tensor = diff / scale;
        worst_metric = name;
      }
    }
  }
  return {"", "", worst_expr <= 1e-6 && worst_tensor <= 1e-6,
          "expressions max rel err " + num(worst_expr) + ", tensors max rel err " + num(worst_tensor) + " (" +
              worst_metric + ")"};
}

Result gaussian_equivalence(const Config& cfg) {
  Rng rng(split_seed(cfg.seed, 5));
  double worst = 0.0;
  int metrics = 0;
  for (const std::string& name : catalog_names()) {
    const MetricSpec spec = catalog(name);
    if (spec.dim() != 1) continue;
    ++metrics;
    for (int k = 0; k < 100; ++k) {
      const CVec p = spec.box.sample(rng);
      worst = std::max(worst, std::abs(gaussian_curvature_1d(spec, p) - hsc_at(spec, p, CVec{cplx(1.0)})));
    }
  }
  return {"", "", worst <= 1e-9, std::to_string(metrics) + " metrics, max diff " + num(worst)};
}

Result lemma1_inequalities(const Config& cfg) {
  Rng rng(split_seed(cfg.seed, 6));
  std::size_t violations = 0;
  std::size_t trials = 0;
  double worst = std::numeric_limits<double>::infinity();
  for (int w = 0; w < 100; ++w) {
    const double a = std::exp(uniform(rng, -2.0, 2.0));
    const double b = std::exp(uniform(rng, -2.0, 2.0));
    const double c = std::exp(uniform(rng, -2.0, 2.0));
    const double d = std::exp(uniform(rng, -2.0, 2.0));
    const IneqReport rep = prod_ineq_check(a, b, c, d, 1000, split_seed(cfg.seed, 600 + w));
    violations += rep.violations[0] + rep.violations[1] + rep.violations[2];
    trials += rep.trials;
    worst = std::min({worst, rep.worst_slack[0], rep.worst_slack[1], rep.worst_slack[2]});
  }
  return {"", "", violations == 0,
          std::to_string(trials) + " trials, " + std::to_string(violations) + " violations, worst slack " + num(worst)};
}

Result lemma1_constant_invariants(const Config& cfg) {
  Rng rng(split_seed(cfg.seed, 7));
  struct Case {
    double K0, K1;
    int n, s;
  };
  std::vector<Case> cases{{8, 1, 2, 1}, {8, 1, 3, 1}, {1, 1, 2, 1}, {0.3, 2, 5, 2}, {100, 0.1, 7, 3}};
  for (int k = 0; k < 20; ++k) {
    const int n = 2 + static_cast<int>(uniform(rng, 0.0, 6.0));
    const int s = 1 + static_cast<int>(uniform(rng, 0.0, n - 1.0));
    cases.push_back({std::exp(uniform(rng, -3.0, 3.0)), std::exp(uniform(rng, -3.0, 3.0)), n, std::min(s, n - 1)});
  }
  double worst_sum = 0.0;
  double worst_term = 0.0;
  double worst_kcal = 0.0;
  double worst_scale = 0.0;
  for (const Case& c : cases) {
    const Lemma1Constants k = lemma1_constants(c.K0, c.K1, c.n, c.s);
    const double half = 0.5 * c.K0 / c.K1;
    worst_sum = std::max(worst_sum, std::abs(k.constraint_sum() - half) / half);
    for (double t : k.constraint_terms()) worst_term = std::max(worst_term, std::abs(t - half / 4.0) / (half / 4.0));
    worst_kcal = std::max(worst_kcal, std::abs(k.kcal_formula() - k.Kcal) / k.Kcal);
    if (k.K2_required != k.Kcal * c.K1) worst_kcal = std::max(worst_kcal, 1.0);
    for (int r = 0; r < 20; ++r) {
      const double t = std::exp(uniform(rng, -5.0, 5.0));
      const Lemma1Constants kt = lemma1_constants(t * c.K0, t * c.K1, c.n, c.s);
      worst_scale = std::max(worst_scale, std::abs(kt.Kcal - k.Kcal) / k.Kcal);
    }
  }
  const bool pass = worst_sum <= kUlp4 && worst_term <= kUlp4 && worst_kcal <= kUlp4 && worst_scale <= kUlp4;
  return {"", "", pass,
          std::to_string(cases.size()) + " cases; rel dev: sum " + num(worst_sum) + ", terms " + num(worst_term) +
              ", Kcal " + num(worst_kcal) + ", scaling " + num(worst_scale)};
}

Result lemma1_kcal(const Config&) {
  const Lemma1Constants k = lemma1_constants(8.0, 1.0, 2, 1);
  const bool squares = std::abs(k.a * k.a - 0.25) <= 1e-15 && std::abs(k.b * k.b - 1.0 / 6.0) <= 1e-15 &&
                       std::abs(k.c * k.c - 0.25) <= 1e-15 && std::abs(k.d * k.d - 1.0 / 16.0) <= 1e-15;
  return {"", "", k.Kcal == 312.0 && squares,
          "Kcal " + num(k.Kcal, 17) + ", a^2 " + num(k.a * k.a) + ", b^2 " + num(k.b * k.b) + ", c^2 " +
              num(k.c * k.c) + ", d^2 " + num(k.d * k.d)};
}

Result lemma1_bound(const Config& cfg) {
  Rng rng(split_seed(cfg.seed, 8));
  std::size_t violations = 0;
  std::size_t nonpositive = 0;
  std::size_t hyp_fail = 0;
  double worst = std::numeric_limits<double>::infinity();
  for (int k = 0; k < 100; ++k) {
    const int n = 2 + k % 3;
    const int s = 1 + (k / 3) % (n - 1);
    const double K0 = std::exp(uniform(rng, std::log(0.5), std::log(10.0)));
    const double K1 = std::exp(uniform(rng, std::log(0.5), std::log(2.0)));
    const Lemma1Constants consts = lemma1_constants(K0, K1, n, s);
    const HypothesisTensor t =
        random_hypothesis_tensor(K0, K1, consts.Kcal * K1, n, s, split_seed(cfg.seed, 800 + k));
    if (!check_hypotheses(t, 10000, split_seed(cfg.seed, 900 + k)).ok()) ++hyp_fail;
    const BoundReport rep = lemma1_bound_check(t, consts, 10000, split_seed(cfg.seed, 1000 + k));
    violations += rep.violations;
    nonpositive += rep.nonpositive;
    worst = std::min(worst, rep.worst_slack);
  }
  return {"", "", violations == 0 && nonpositive == 0 && hyp_fail == 0,
          "100 tensors x 10000 directions: " + std::to_string(violations) + " violations, " +
              std::to_string(nonpositive) + " nonpositive, " + std::to_string(hyp_fail) +
              " hypothesis failures, worst slack " + num(worst)};
}

Result lemma2_formula(const Config& cfg) {
  Rng rng(split_seed(cfg.seed, 9));
  const auto& pool = one_dim_pool();
  const std::vector<double> lambdas{0.1, 1.0, 10.0, 100.0};
  double worst = 0.0;
  for (int pair = 0; pair < 50; ++pair) {
    const auto pick = [&] { return pool[static_cast<std::size_t>(uniform(rng, 0.0, 1.0) * pool.size()) % pool.size()]; };
    const MetricSpec g = scaled(catalog(pick()), uniform(rng, 0.5, 2.0));
    const MetricSpec h = scaled(catalog(pick()), uniform(rng, 0.5, 2.0));
    for (int k = 0; k < 5; ++k) {
      const CVec p{CoordDomain::disk(0.9).sample(rng)};
      const Lemma2Inputs in = lemma2_inputs(g, h, p);
      for (double lam : lambdas) {
        const double direct = hsc_at(summed_metric(g, h, lam), p, CVec{cplx(1.0)});
        worst = std::max(worst, std::abs(in.at(lam) - direct));
      }
    }
  }
  return {"", "", worst <= 1e-9, "1000 evaluations, max |formula - direct| " + num(worst)};
}

Result lemma2_threshold_value(const Config&) {
  const ThresholdResult r = lemma2_threshold(catalog("poincare"), catalog("fs_affine"), CVec{cplx{}}, 1e6);
  const double expected = std::numbers::sqrt2 - 1.0;
  const double err = std::abs(r.lambda_t - expected);
  return {"", "", err <= 1e-6,
          "lambda_t " + num(r.lambda_t, 10) + " vs " + num(expected, 10) + ", |diff| " + num(err) +
              ", persistent " + (r.persistent ? "yes" : "no")};
}

Result lemma2_decay(const Config&) {
  const std::vector<double> lambdas{10.0, 100.0, 1e3, 1e4};
  const CVec origin{cplx{}};
  const MetricSpec fs = catalog("fs_affine");
  const DecayReport a = decay_check(catalog("poincare"), fs, origin, lambdas);
  const DecayReport b = decay_check(catalog("flat(1)"), fs, origin, lambdas);
  const DecayReport c = decay_check(catalog("poincare"), scaled(fs, 2.0), origin, lambdas);
  const bool halves = std::abs(c.KH - 2.0) <= 1e-12;
  return {"", "", a.ok && b.ok && c.ok && halves,
          "rel err at 1e4: poincare+fs " + num(a.limit_rel_error) + " (slope " + num(a.tail_slope) + "), flat+fs " +
              num(b.limit_rel_error) + ", poincare+2fs " + num(c.limit_rel_error) + " (KH " + num(c.KH) + ")"};
}

Result block_det(const Config& cfg) {
  Rng rng(split_seed(cfg.seed, 12));
  double worst = 0.0;
  for (int t = 0; t < 1000; ++t) {
    const int n = 2 + static_cast<int>(uniform(rng, 0.0, 7.0));
    const int p = 1 + static_cast<int>(uniform(rng, 0.0, n - 1.0));
    const Matrix M = random_pd_matrix(n, rng);
    const cplx full = M.partialPivLu().determinant();
    worst = std::max(worst, std::abs(block_determinant(M, std::min(p, n - 1)) - full) / std::abs(full));
  }
  return {"", "", worst <= 1e-9, "1000 matrices, max rel diff " + num(worst)};
}

Result inverse_asymptotics(const Config&) {
  const std::vector<double> lambdas = half_decades(2.0, 4.0);
  std::string d;
  bool pass = true;
  auto add = [&](const std::string& label, const AsymptoticsReport& rep) {
    pass = pass && rep.ok();
    d += (d.empty() ? "" : "; ") + label + ":";
    for (const auto& t : rep.terms) {
      d += " " + t.name + "=" + (t.vanishes ? std::string("0") : num(t.fitted_slope, 4)) + "/" + num(t.predicted_slope);
    }
  };
  add("warp_demo", block_inverse_asymptotics_check(warp_demo_fibration(), CVec{cplx(0.3), cplx(0.2, 0.1)}, lambdas));
  add("coupled", block_inverse_asymptotics_check(coupled_fibration(),
                                                 CVec{cplx(0.1), cplx(0.0, 0.2), cplx(0.3), cplx(-0.2, 0.1)},
                                                 lambdas));
  const FibrationSpec two = make_fibration("2x2", 1, 1, {{"2"}}, {{"1"}}, {{"1"}}, 0.0, ChartBox::polydisk(2));
  add("[[2,1],[1,l]]", block_inverse_asymptotics_check(two, CVec{cplx{}, cplx{}}, lambdas));
  // Closed form at lambda = 1000: h^11 = l/(2l-1), l h^22 = 2l/(2l-1).
  const Matrix h = evaluate_matrix(assemble_psi(two, 1000.0, 0), CVec{cplx{}, cplx{}}).inverse();
  const double e11 = std::abs(h(0, 0).real() - 1000.0 / 1999.0);
  const double e22 = std::abs(1000.0 * h(1, 1).real() - 2000.0 / 1999.0);
  pass = pass && e11 <= 1e-12 && e22 <= 1e-12;
  d += "; closed form dev " + num(std::max(e11, e22));
  return {"", "", pass, d};
}

Result decreasing(const Config& cfg) {
  std::string d;
  bool pass = true;
  auto add = [&](const std::string& label, const DecreasingReport& r) {
    pass = pass && r.ok();
    d += (d.empty() ? "" : "; ") + label + " " + std::to_string(r.violations) + "/" + std::to_string(r.trials) +
         " (worst gap " + num(r.worst_gap) + ")";
  };
  const std::vector<int> z2{1};
  add("paper_G(1) z1=0.5", submanifold_decreasing_check(catalog("paper_G(1)"), z2, 1000, split_seed(cfg.seed, 14),
                                                        {{0, cplx(0.5)}}));
  add("warp_demo psi(10)", submanifold_decreasing_check(assemble_psi(warp_demo_fibration(), 10.0), z2, 1000,
                                                        split_seed(cfg.seed, 15)));
  const std::vector<int> base{2, 3};
  add("coupled psi(5)", submanifold_decreasing_check(assemble_psi(coupled_fibration(), 5.0), base, 1000,
                                                     split_seed(cfg.seed, 16)));
  return {"", "", pass, d};
}

Result growth(const Config&) {
  const std::vector<double> lambdas = half_decades(2.0, 4.0);
  const GrowthReport a =
      base_numerator_growth_check(warp_demo_fibration(), CVec{cplx(0.3), cplx(0.2, 0.1)}, CVec{cplx(1.0)}, lambdas);
  const GrowthReport b = base_numerator_growth_check(
      coupled_fibration(), CVec{cplx(0.1), cplx(0.0, 0.2), cplx(0.3), cplx(-0.2, 0.1)},
      CVec{cplx(1.0), cplx(0.0, 0.5)}, lambdas);
  return {"", "", a.ok && b.ok, "slopes warp_demo " + num(a.slope, 4) + ", coupled " + num(b.slope, 4)};
}

Result lambda_star(const Config& cfg) {
  const FibrationSpec f = warp_demo_fibration();
  const LambdaSearchResult r = lambda_search(f, cfg.scan);
  const Mu0Result mu = mu0_search(f, 64, cfg.seed);
  const auto& first = r.history.front();
  const bool small_negative = first.first == 1e-3 && first.second < 0.0;
  const bool pass = std::isfinite(r.lambda_star) && r.min_hsc_at_star > 0.0 && small_negative && r.persistent;
  std::string d = "lambda* " + num(r.lambda_star) + " (min " + num(r.min_hsc_at_star) + "), min at 1e-3 " +
                  num(first.second) + ", 2x/4x mins " + num(r.persistence[0].second) + "/" +
                  num(r.persistence[1].second) + ", " + std::to_string(r.history.size()) + " scans, mu0 " +
                  num(mu.mu0);
  return {"", "", pass, d};
}

std::string scan_fingerprint(const ScanReport& r) {
  std::string s = num(r.min_hsc, 17) + "|" + num(r.max_hsc, 17);
  for (const cplx& z : r.witness_point) s += "|" + num(z.real(), 17) + "," + num(z.imag(), 17);
  for (const cplx& z : r.witness_dir) s += "|" + num(z.real(), 17) + "," + num(z.imag(), 17);
  for (const auto& p : r.samples) s += ";" + num(p.min_hsc, 17);
  return s;
}

Result determinism(const Config& cfg) {
  ScanParams one = cfg.scan;
  one.threads = 1;
  ScanParams many = cfg.scan;
  many.threads = 3;
  const MetricSpec psi = catalog("warp_demo(1)");
  const std::string a = scan_fingerprint(scan_chart(psi, one));
  const std::string b = scan_fingerprint(scan_chart(psi, many));
  const std::string c = scan_fingerprint(scan_chart(psi, one));
  const auto w1 = find_negative_witness(catalog("paper_G(1)"), ChartBox::polydisk(2), 16, cfg.seed);
  const auto w2 = find_negative_witness(catalog("paper_G(1)"), ChartBox::polydisk(2), 16, cfg.seed);
  const bool witness_same = w1.has_value() == w2.has_value() && (!w1 || (w1->value == w2->value && w1->point == w2->point));
  const HypothesisTensor t1 = random_hypothesis_tensor(2, 1, 5, 3, 1, cfg.seed);
  const HypothesisTensor t2 = random_hypothesis_tensor(2, 1, 5, 3, 1, cfg.seed);
  const bool tensor_same = t1.R.data() == t2.R.data();
  return {"", "", a == b && a == c && witness_same && tensor_same,
          std::string("scan 1 vs 3 threads ") + (a == b ? "identical" : "DIFFERENT") + ", rerun " +
              (a == c ? "identical" : "DIFFERENT") + ", witness " + (witness_same ? "identical" : "DIFFERENT") +
              ", tensor " + (tensor_same ? "identical" : "DIFFERENT")};
}

}  // namespace

const std::vector<Criterion>& criteria() {
  static const std::vector<Criterion> list{
      {"constant-curvature", "HSC(poincare) = -4 and HSC(fs_affine) = +4 at 100 random points/directions, |err| <= 1e-8",
       constant_curvature},
      {"base-metric", "HSC of 1/(1+|z|^2) = 2/(1+|z|^2) at 100 points, |err| <= 1e-8; sampled chart minimum > 0",
       base_metric_values},
      {"semi-positive-fibers",
       "paper_G(l), l in {0.5,1,5,50}: negative witness < -1e-8; 20 fibers sampled HSC >= -1e-8; fiber origin |K| <= 1e-9",
       example1},
      {"ad-vs-fd", "AD jets vs finite differences on 1000 random expressions and catalog tensors, rel err <= 1e-6",
       ad_vs_fd},
      {"gaussian-equivalence", "Gaussian curvature = HSC on all 1-D catalog metrics, 100 points, |diff| <= 1e-9",
       gaussian_equivalence},
      {"lemma1-inequalities", "product-sum inequalities: 0 violations in 1e5 trials over 100 weight tuples",
       lemma1_inequalities},
      {"lemma1-constants", "equalized constants: constraint terms, constraint sum, Kcal and scaling exact to 4 ulp",
       lemma1_constant_invariants},
      {"lemma1-kcal", "Kcal(K0=8, K1=1, n=2, s=1) = 312 with a^2=1/4, b^2=1/6, c^2=1/4, d^2=1/16", lemma1_kcal},
      {"lemma1-bound", "bound check: 0 violations over 100 generated tensors x 1e4 directions at K2 = Kcal*K1",
       lemma1_bound},
      {"lemma2-formula", "summed 1-D curvature formula vs direct curvature, 50 pairs x 5 points x 4 lambdas, <= 1e-9",
       lemma2_formula},
      {"lemma2-threshold", "threshold for (poincare, fs_affine) at 0 equals sqrt(2)-1 within 1e-6",
       lemma2_threshold_value},
      {"lemma2-decay", "lambda*K(g+lambda h) -> K(h) within 1% at lambda = 1e4; tail slope -1 +- 0.2", lemma2_decay},
      {"block-determinant", "det(M) = det(P) det(S - R P^-1 Q) on 1000 random block matrices, rel <= 1e-9", block_det},
      {"inverse-asymptotics", "warped inverse coefficients: log-log slopes within 0.2 of -1, -1, -1, -2",
       inverse_asymptotics},
      {"submanifold-decreasing", "restricted HSC <= ambient HSC + 1e-9: 0 violations in 1000 trials per metric",
       decreasing},
      {"base-numerator-growth", "base-direction curvature numerator grows with log-log slope >= 0.8 on [1e2, 1e4]",
       growth},
      {"warp-lambda-search",
       "warp_demo: finite lambda* with positive sampled min, negative min at lambda = 1e-3, positive at 2x and 4x",
       lambda_star},
      {"determinism", "scans, witnesses and generated tensors are identical across reruns and thread counts",
       determinism},
  };
  return list;
}

std::vector<Result> run(const Config& cfg, const std::vector<std::string>& only) {
  for (const auto& id : only) {
    const auto& all = criteria();
    if (std::none_of(all.begin(), all.end(), [&](const Criterion& c) { return c.id == id; })) {
      throw Error(ErrorCode::InvalidArgument, "unknown criterion '" + id + "'");
    }
  }
  std::vector<Result> out;
  for (const Criterion& c : criteria()) {
    if (!only.empty() && std::find(only.begin(), only.end(), c.id) == only.end()) continue;
    Result r;
    try {
      r = c.run(cfg);
    } catch (const std::exception& e) {
      r.pass = false;
      r.detail = std::string("error: ") + e.what();
    }
    r.id = c.id;
    r.criterion = c.criterion;
    out.push_back(std::move(r));
  }
  return out;
}

std::string format_line(const Result& r) {
  return std::string(r.pass ? "PASS" : "FAIL") + "  " + r.id + "  " + r.criterion + "  [" + r.detail + "]";
}

std::string report_json(const Config& cfg, const std::vector<Result>& results) {
  nlohmann::json j;
  j["schema"] = 1;
  j["tool"] = "hsc-lab";
  j["version"] = kVersion;
  j["command"] = "selftest";
  j["seed"] = cfg.seed;
  j["config"] = {{"grid", cfg.scan.grid_per_axis},
                 {"random_points", cfg.scan.random_points},
                 {"dirs", cfg.scan.search.dirs},
                 {"starts", cfg.scan.search.starts}};
  nlohmann::json arr = nlohmann::json::array();
  int failed = 0;
  for (const Result& r : results) {
    arr.push_back({{"id", r.id}, {"criterion", r.criterion}, {"pass", r.pass}, {"detail", r.detail}});
    failed += r.pass ? 0 : 1;
  }
  j["results"] = arr;
  j["passed"] = static_cast<int>(results.size()) - failed;
  j["failed"] = failed;
  return j.dump(2);
}

}  // namespace hsclab::selftest
