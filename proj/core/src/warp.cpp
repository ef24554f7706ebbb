#include "hsclab/warp.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include <Eigen/Dense>

#include "hsclab/curvature.hpp"
#include "hsclab/expr.hpp"
#include "hsclab/lemma.hpp"
#include "hsclab/random.hpp"

namespace hsclab {

namespace {

using ExprMatrix = std::vector<std::vector<Expr>>;

void check_matrix(const ExprMatrix& m, std::size_t rows, std::size_t cols, int n, const char* what) {
  if (m.size() != rows) throw Error(ErrorCode::InvalidArgument, std::string(what) + " has the wrong row count");
  for (const auto& row : m) {
    if (row.size() != cols) throw Error(ErrorCode::InvalidArgument, std::string(what) + " has a ragged row");
    for (const auto& e : row) {
      if (max_variable(e) >= n) throw Error(ErrorCode::VariableIndex, std::string(what) + " references z > n");
    }
  }
}

ExprMatrix parse_matrix(const std::vector<std::vector<std::string>>& src, int n) {
  ExprMatrix out;
  for (const auto& row : src) {
    std::vector<Expr> r;
    for (const auto& s : row) r.push_back(parse(s, n));
    out.push_back(std::move(r));
  }
  return out;
}

Matrix eval_block(const ExprMatrix& m, std::span<const cplx> point) {
  const auto rows = static_cast<Eigen::Index>(m.size());
  const auto cols = rows == 0 ? 0 : static_cast<Eigen::Index>(m[0].size());
  Matrix out(rows, cols);
  for (Eigen::Index i = 0; i < rows; ++i)
    for (Eigen::Index j = 0; j < cols; ++j)
      out(i, j) = evaluate(m[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)], point);
  return out;
}

MetricSpec assemble(const FibrationSpec& f, double base_weight, std::string name) {
  const auto s = static_cast<std::size_t>(f.s);
  const auto n = static_cast<std::size_t>(f.n());
  MetricSpec out;
  out.name = std::move(name);
  out.n = f.n();
  out.box = f.box;
  out.entries.assign(n, std::vector<Expr>(n));
  for (std::size_t i = 0; i < s; ++i)
    for (std::size_t j = 0; j < s; ++j) out.entries[i][j] = f.fiber_entries[i][j];
  for (std::size_t a = 0; a < n - s; ++a)
    for (std::size_t b = 0; b < n - s; ++b) out.entries[s + a][s + b] = scale(f.base_entries[a][b], base_weight);
  if (f.coupled()) {
    for (std::size_t i = 0; i < s; ++i)
      for (std::size_t a = 0; a < n - s; ++a) {
        out.entries[i][s + a] = f.coupling[i][a];
        out.entries[s + a][i] = Expr::conj(f.coupling[i][a]);
      }
  }
  return out;
}

ChartBox sub_box(const ChartBox& box, int lo, int hi) {
  ChartBox out;
  for (int k = lo; k < hi; ++k) out.coords.push_back(box.coords[static_cast<std::size_t>(k)]);
  return out;
}

}  // namespace

void check_fibration(const FibrationSpec& f) {
  if (f.s < 1 || f.m < 1) throw Error(ErrorCode::InvalidArgument, "fibration needs s >= 1 and m >= 1");
  const int n = f.n();
  const auto s = static_cast<std::size_t>(f.s);
  const auto m = static_cast<std::size_t>(f.m);
  check_matrix(f.fiber_entries, s, s, n, "fiber_entries");
  check_matrix(f.base_entries, m, m, n, "base_entries");
  if (f.coupled()) check_matrix(f.coupling, s, m, n, "coupling");
  for (const auto& row : f.base_entries)
    for (const auto& e : row)
      for (int k = 0; k < f.s; ++k) {
        if (references(e, k)) {
          throw Error(ErrorCode::VariableIndex, "base_entries may reference base coordinates only");
        }
      }
  if (!(f.mu0 >= 0.0)) throw Error(ErrorCode::InvalidArgument, "mu0 must be nonnegative");
  if (f.box.size() != n) throw Error(ErrorCode::InvalidArgument, "box must have one domain per coordinate");
}

FibrationSpec make_fibration(std::string name, int s, int m, const std::vector<std::vector<std::string>>& fiber,
                             const std::vector<std::vector<std::string>>& base,
                             const std::vector<std::vector<std::string>>& coupling, double mu0, ChartBox box) {
  FibrationSpec f;
  f.name = std::move(name);
  f.s = s;
  f.m = m;
  f.fiber_entries = parse_matrix(fiber, s + m);
  f.base_entries = parse_matrix(base, s + m);
  f.coupling = parse_matrix(coupling, s + m);
  f.mu0 = mu0;
  f.box = std::move(box);
  check_fibration(f);
  return f;
}

FibrationSpec warp_demo_fibration() {
  return make_fibration("warp_demo", 1, 1, {{formulas::kWarpDemoFiber}}, {{formulas::kPaperBaseZ2}}, {}, 0.0,
                        ChartBox::polydisk(2));
}

FibrationSpec example1_fibration() {
  return make_fibration("example1", 1, 1, {{formulas::kPaperFiber}}, {{formulas::kPaperBaseZ2}}, {}, 0.0,
                        ChartBox::polydisk(2));
}

FibrationSpec product_fibration() {
  return make_fibration("product", 1, 1, {{formulas::kFsAffine}}, {{formulas::kPaperBaseZ2}}, {}, 0.0,
                        ChartBox::polydisk(2));
}

FibrationSpec coupled_fibration() {
  return make_fibration("coupled", 2, 2,
                        {{"2+z1*conj(z1)+0.5*z3*conj(z3)", "0.5+0.25*i"}, {"0.5-0.25*i", "1+z2*conj(z2)"}},
                        {{"1/(1+z3*conj(z3))", "0"}, {"0", "1/(1+z4*conj(z4))"}}, {{"0.3", "0.1*i"}, {"0.2", "0.4"}},
                        0.5, ChartBox::polydisk(4));
}

MetricSpec assemble_psi(const FibrationSpec& f, double lambda, int validate_samples, std::uint64_t seed) {
  check_fibration(f);
  if (!(lambda > 0.0)) throw Error(ErrorCode::InvalidArgument, "lambda must be positive");
  MetricSpec out = assemble(f, f.mu0 + lambda, f.name + "[lambda=" + format_real(lambda) + "]");
  check_shape(out);
  if (validate_samples > 0) (void)validate(out, validate_samples, seed);
  return out;
}

MetricSpec base_metric(const FibrationSpec& f) {
  check_fibration(f);
  std::vector<int> renumber(static_cast<std::size_t>(f.n()), -1);
  for (int a = 0; a < f.m; ++a) renumber[static_cast<std::size_t>(f.s + a)] = a;
  MetricSpec out;
  out.name = f.name + ":base";
  out.n = f.m;
  for (const auto& row : f.base_entries) {
    std::vector<Expr> r;
    for (const auto& e : row) r.push_back(rename_variables(e, renumber));
    out.entries.push_back(std::move(r));
  }
  out.box = sub_box(f.box, f.s, f.n());
  check_shape(out);
  return out;
}

MetricSpec fiber_family(const FibrationSpec& f) {
  check_fibration(f);
  MetricSpec out;
  out.name = f.name + ":fiber";
  out.n = f.n();
  out.entries = f.fiber_entries;
  out.box = f.box;
  check_shape(out);
  return out;
}

MetricSpec fiber_at(const FibrationSpec& f, std::span<const cplx> t) {
  if (static_cast<int>(t.size()) != f.m) throw Error(ErrorCode::InvalidArgument, "base point has the wrong size");
  std::map<int, cplx> fixed;
  for (int a = 0; a < f.m; ++a) fixed[f.s + a] = t[static_cast<std::size_t>(a)];
  return restrict(fiber_family(f), fixed);
}

Mu0Result mu0_search(const FibrationSpec& f, int samples, std::uint64_t seed) {
  check_fibration(f);
  const std::vector<CVec> pts = scan_points(f.box, 3, samples, seed);
  struct Blocks {
    Matrix A, B, C;
  };
  std::vector<Blocks> blocks;
  blocks.reserve(pts.size());
  for (const CVec& p : pts) {
    Blocks b{eval_block(f.fiber_entries, p), eval_block(f.base_entries, p), Matrix::Zero(f.s, f.m)};
    if (f.coupled()) b.C = eval_block(f.coupling, p);
    const double fa = min_hermitian_eigenvalue(b.A);
    if (!(fa > kPositivityTolerance)) {
      throw WitnessError(ErrorCode::NotPositiveDefinite, "fiber family degenerates", p, fa);
    }
    const double fb = min_hermitian_eigenvalue(b.B);
    if (!(fb > kPositivityTolerance)) {
      throw WitnessError(ErrorCode::NotPositiveDefinite, "base metric degenerates", p, fb);
    }
    blocks.push_back(std::move(b));
  }
  Mu0Result res;
  res.samples = pts.size();
  for (int k = kMu0MinExponent; k <= kMu0MaxExponent; ++k) {
    const double mu = std::ldexp(1.0, k);
    double worst = std::numeric_limits<double>::infinity();
    for (const Blocks& b : blocks) {
      Matrix M(f.n(), f.n());
      M << b.A, b.C, b.C.adjoint(), mu * b.B;
      worst = std::min(worst, min_hermitian_eigenvalue(M));
    }
    res.history.emplace_back(mu, worst);
    if (worst > kPositivityTolerance) {
      res.mu0 = mu;
      return res;
    }
  }
  throw Error(ErrorCode::NotReached, "no mu0 up to 2^40 makes the form positive definite");
}

LambdaSearchResult lambda_search(const FibrationSpec& f, const ScanParams& params, const LambdaSearchOptions& opts) {
  check_fibration(f);
  if (!(opts.lambda_min > 0.0) || !(opts.lambda_max >= opts.lambda_min)) {
    throw Error(ErrorCode::InvalidArgument, "need 0 < lambda_min <= lambda_max");
  }
  LambdaSearchResult res;
  res.seed = params.seed;

  const ScanReport base = scan_chart(base_metric(f), params);
  res.base_min_hsc = base.min_hsc;
  if (!(base.min_hsc > kPositivityThreshold)) {
    throw WitnessError(ErrorCode::HypothesisViolation, "base metric: sampled HSC not positive",
                       base.witness_point, base.min_hsc);
  }
  const ChartBox base_box = sub_box(f.box, f.s, f.n());
  Rng rng(split_seed(params.seed, 0xF1BE));
  res.fiber_min_hsc = std::numeric_limits<double>::infinity();
  for (int k = 0; k < opts.hypothesis_fibers; ++k) {
    const CVec t = k == 0 ? base_box.center() : base_box.sample(rng);
    const ScanReport fib = scan_chart(fiber_at(f, t), params);
    res.fiber_min_hsc = std::min(res.fiber_min_hsc, fib.min_hsc);
    if (!(fib.min_hsc > kPositivityThreshold)) {
      CVec p = fib.witness_point;
      p.insert(p.end(), t.begin(), t.end());
      throw WitnessError(ErrorCode::HypothesisViolation, "fiber metric: sampled HSC not positive", p, fib.min_hsc);
    }
  }

  auto min_at = [&](double lam) {
    const double v = scan_chart(assemble_psi(f, lam, 16, params.seed), params).min_hsc;
    res.history.emplace_back(lam, v);
    return v;
  };

  double lam = opts.lambda_min;
  double lo = 0.0;
  double hi_min = 0.0;
  for (;;) {
    if (lam > opts.lambda_max) {
      throw LambdaSearchExhausted("no positive scan up to lambda_max", res.history);
    }
    hi_min = min_at(lam);
    if (hi_min > 0.0) break;
    lo = lam;
    lam *= 2.0;
  }
  double hi = lam;
  if (lo > 0.0) {
    for (int step = 0; step < opts.max_bisections && hi / lo > 1.0 + opts.rel_tol; ++step) {
      const double mid = std::sqrt(lo * hi);
      const double v = min_at(mid);
      if (v > 0.0) {
        hi = mid;
        hi_min = v;
      } else {
        lo = mid;
      }
    }
  }
  res.lambda_star = hi;
  res.min_hsc_at_star = hi_min;
  res.persistent = true;
  for (const double factor : {2.0, 4.0}) {
    const double lp = factor * hi;
    const double v = scan_chart(assemble_psi(f, lp, 16, params.seed), params).min_hsc;
    res.persistence.emplace_back(lp, v);
    if (!(v > 0.0)) res.persistent = false;
  }
  return res;
}

// ---------------------------------------------------------------------------

cplx block_determinant(const Matrix& M, int p) {
  const auto n = M.rows();
  if (M.cols() != n || p <= 0 || p >= n) throw Error(ErrorCode::InvalidArgument, "need square M and 0 < p < n");
  const Matrix P = M.topLeftCorner(p, p);
  const Matrix Q = M.topRightCorner(p, n - p);
  const Matrix R = M.bottomLeftCorner(n - p, p);
  const Matrix S = M.bottomRightCorner(n - p, n - p);
  const Eigen::PartialPivLU<Matrix> lu(P);
  const Matrix schur = S - R * lu.solve(Q);
  return lu.determinant() * schur.partialPivLu().determinant();
}

Matrix random_pd_matrix(int n, Rng& rng) {
  Matrix Z(n, n);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < n; ++j) Z(i, j) = complex_gaussian(rng);
  const Matrix U = Eigen::HouseholderQR<Matrix>(Z).householderQ();
  Eigen::VectorXcd d(n);
  for (Eigen::Index i = 0; i < n; ++i) d(i) = uniform(rng, 0.5, 2.5);
  Matrix M = U * d.asDiagonal() * U.adjoint();
  return 0.5 * (M + M.adjoint());
}

bool AsymptoticsReport::ok() const {
  return std::all_of(terms.begin(), terms.end(), [](const AsymptoticsTerm& t) { return t.ok; });
}

AsymptoticsReport block_inverse_asymptotics_check(const FibrationSpec& f, std::span<const cplx> point,
                                                  std::span<const double> lambdas) {
  check_fibration(f);
  if (lambdas.size() < 2 || lambdas.back() < 1e4 || !(lambdas.front() > 0.0) ||
      !std::is_sorted(lambdas.begin(), lambdas.end())) {
    throw Error(ErrorCode::InvalidArgument, "need at least two increasing positive lambdas ending at >= 1e4");
  }
  const int s = f.s;
  const int m = f.m;
  const int n = f.n();
  const Matrix B = eval_block(f.base_entries, point);
  const Eigen::LLT<Matrix> llt(0.5 * (B + B.adjoint()));
  if (llt.info() != Eigen::Success) {
    throw WitnessError(ErrorCode::NotPositiveDefinite, "base metric not positive definite", CVec(point.begin(), point.end()), 0.0);
  }
  const Matrix Linv = llt.matrixL().solve(Matrix::Identity(m, m));
  AsymptoticsReport rep;
  rep.base_transform = Linv.transpose();
  Matrix S = Matrix::Identity(n, n);
  S.bottomRightCorner(m, m) = rep.base_transform;

  auto term = [](std::string name, double slope) {
    AsymptoticsTerm t;
    t.name = std::move(name);
    t.predicted_slope = slope;
    return t;
  };
  AsymptoticsTerm fiber = term("h^{ab} - (A^-1)_{ab}", -1.0);
  AsymptoticsTerm diag = term("lambda h^{xx} - 1", -1.0);
  AsymptoticsTerm mixed = term("h^{a x}", -1.0);
  AsymptoticsTerm off = term("h^{x y}, x != y", -2.0);
  for (const double lam : lambdas) {
    rep.lambdas.push_back(lam);
    const Matrix H0 = evaluate_matrix(assemble_psi(f, lam, 0), point);
    const Matrix H = S.transpose() * H0 * S.conjugate();
    const Matrix inv = metric_inverse(0.5 * (H + H.adjoint()));
    const Matrix Ainv = H.topLeftCorner(s, s).inverse();
    fiber.errors.push_back((inv.topLeftCorner(s, s) - Ainv).cwiseAbs().maxCoeff());
    double d = 0.0;
    for (int x = s; x < n; ++x) d = std::max(d, std::abs(lam * inv(x, x) - 1.0));
    diag.errors.push_back(d);
    mixed.errors.push_back(std::max(inv.topRightCorner(s, m).cwiseAbs().maxCoeff(),
                                    inv.bottomLeftCorner(m, s).cwiseAbs().maxCoeff()));
    double o = 0.0;
    for (int x = s; x < n; ++x)
      for (int y = s; y < n; ++y)
        if (x != y) o = std::max(o, std::abs(inv(x, y)));
    off.errors.push_back(o);
  }
  std::vector<AsymptoticsTerm> terms{fiber, diag, mixed};
  if (m >= 2) terms.push_back(off);
  for (AsymptoticsTerm& t : terms) {
    const double worst = *std::max_element(t.errors.begin(), t.errors.end());
    t.vanishes = worst <= 1e-12;
    std::vector<std::pair<double, double>> xy;
    for (std::size_t k = 0; k < t.errors.size(); ++k) xy.emplace_back(rep.lambdas[k], t.errors[k]);
    t.fitted_slope = t.vanishes ? std::numeric_limits<double>::quiet_NaN() : loglog_slope(xy);
    t.ok = t.vanishes || std::abs(t.fitted_slope - t.predicted_slope) <= kSlopeTolerance;
  }
  rep.terms = std::move(terms);
  return rep;
}

DecreasingReport submanifold_decreasing_check(const MetricSpec& spec, std::span<const int> slice,
                                              std::size_t trials, std::uint64_t seed,
                                              const std::map<int, cplx>& pinned) {
  std::vector<int> keep(slice.begin(), slice.end());
  std::sort(keep.begin(), keep.end());
  if (keep.empty() || std::adjacent_find(keep.begin(), keep.end()) != keep.end() ||
      static_cast<int>(keep.size()) >= spec.dim() || keep.front() < 0 || keep.back() >= spec.dim()) {
    throw Error(ErrorCode::InvalidArgument, "slice must be a proper nonempty subset of the metric coordinates");
  }
  for (const auto& [k, v] : pinned) {
    if (std::binary_search(keep.begin(), keep.end(), k)) {
      throw Error(ErrorCode::InvalidArgument, "pinned coordinate lies in the slice");
    }
  }
  Rng rng(seed);
  DecreasingReport rep;
  rep.trials = trials;
  rep.worst_gap = -std::numeric_limits<double>::infinity();
  for (std::size_t t = 0; t < trials; ++t) {
    CVec p = spec.box.sample(rng);
    std::map<int, cplx> fixed;
    CVec ps;
    for (int k = 0; k < spec.n; ++k) {
      if (auto it = pinned.find(k); it != pinned.end()) p[static_cast<std::size_t>(k)] = it->second;
      if (std::binary_search(keep.begin(), keep.end(), k)) {
        ps.push_back(p[static_cast<std::size_t>(k)]);
      } else {
        fixed[k] = p[static_cast<std::size_t>(k)];
      }
    }
    const CVec v = random_unit_vector(static_cast<int>(keep.size()), rng);
    CVec xi(static_cast<std::size_t>(spec.dim()), cplx{});
    for (std::size_t j = 0; j < keep.size(); ++j) xi[static_cast<std::size_t>(keep[j])] = v[j];
    const double ks = hsc_at(restrict(spec, fixed), ps, v);
    const double ka = hsc_at(spec, p, xi);
    const double gap = ks - ka;
    rep.worst_gap = std::max(rep.worst_gap, gap);
    rep.max_abs_diff = std::max(rep.max_abs_diff, std::abs(gap));
    if (gap > kDecreasingTolerance) {
      ++rep.violations;
      if (!rep.witness_point) {
        rep.witness_point = p;
        rep.witness_dir = xi;
      }
    }
  }
  return rep;
}

GrowthReport base_numerator_growth_check(const FibrationSpec& f, std::span<const cplx> point,
                                         std::span<const cplx> base_dir, std::span<const double> lambdas) {
  check_fibration(f);
  if (static_cast<int>(base_dir.size()) != f.m) throw Error(ErrorCode::InvalidArgument, "base direction size");
  double norm = 0.0;
  for (const cplx& v : base_dir) norm += std::norm(v);
  if (norm == 0.0) throw Error(ErrorCode::ZeroVector, "zero base direction");
  CVec xi(static_cast<std::size_t>(f.n()), cplx{});
  for (int a = 0; a < f.m; ++a) xi[static_cast<std::size_t>(f.s + a)] = base_dir[static_cast<std::size_t>(a)] / std::sqrt(norm);
  GrowthReport rep;
  bool positive = true;
  for (const double lam : lambdas) {
    const MetricJet mj = metric_jet(assemble_psi(f, lam, 0), point);
    const double num = curvature(mj).quartic(xi).real();
    rep.values.emplace_back(lam, num);
    positive = positive && num > 0.0;
  }
  rep.slope = loglog_slope(rep.values);
  rep.ok = positive && rep.slope >= kGrowthMinSlope;
  return rep;
}

// ---------------------------------------------------------------------------

bool Example1Report::ok() const {
  return std::abs(fiber_origin_hsc) <= 1e-9 &&
         std::all_of(entries.begin(), entries.end(), [](const Example1Entry& e) { return e.ok; });
}

Example1Report example1_report(std::span<const double> lambdas, const ScanParams& params, int witness_budget) {
  if (lambdas.empty()) throw Error(ErrorCode::InvalidArgument, "need at least one lambda");
  const FibrationSpec fib = example1_fibration();
  Example1Report rep;
  const CVec origin{cplx{}};
  const CVec unit{cplx(1.0)};
  const MetricSpec base = base_metric(fib);
  rep.base_origin_hsc = hsc_at(base, origin, unit);
  rep.fiber_origin_hsc = hsc_at(fiber_at(fib, origin), origin, unit);
  const double base_min = scan_chart(base, params).min_hsc;

  const ChartBox base_box = sub_box(fib.box, fib.s, fib.n());
  Rng rng(split_seed(params.seed, 0xE1));
  double fiber_min = std::numeric_limits<double>::infinity();
  for (int k = 0; k < kExample1Fibers; ++k) {
    const CVec t = k == 0 ? base_box.center() : base_box.sample(rng);
    rep.fiber_points.push_back(t);
    fiber_min = std::min(fiber_min, scan_chart(fiber_at(fib, t), params).min_hsc);
  }

  for (const double lam : lambdas) {
    if (!(lam > 0.0)) throw Error(ErrorCode::InvalidArgument, "lambda must be positive");
    Example1Entry e;
    e.lambda = lam;
    e.base_min_hsc = base_min;
    e.fiber_min_hsc = fiber_min;
    const MetricSpec psi = catalog("paper_G(" + format_real(lam) + ")");
    e.witness = find_negative_witness(psi, psi.box, witness_budget, params.seed, params.search);
    e.ok = base_min > kPositivityThreshold && fiber_min >= kNegativityThreshold && e.witness &&
           e.witness->value < kNegativityThreshold;
    rep.entries.push_back(std::move(e));
  }
  return rep;
}

}  // namespace hsclab
