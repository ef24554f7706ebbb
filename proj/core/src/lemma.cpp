#include "hsclab/lemma.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "hsclab/error.hpp"
#include "hsclab/expr.hpp"
#include "hsclab/random.hpp"

namespace hsclab {

std::array<double, 4> Lemma1Constants::constraint_terms() const {
  const double ns = n - s;
  return {4.0 * a * a * ns * ns * ns, 6.0 * b * b * ns * ns, 4.0 * c * c * s * ns,
          4.0 * d * d / (c * c) * s * s * ns};
}

double Lemma1Constants::constraint_sum() const {
  const auto t = constraint_terms();
  return t[0] + t[1] + t[2] + t[3];
}

double Lemma1Constants::kcal_formula() const {
  const double ns = n - s;
  const double ss = s;
  return 4.0 / (a * a) * ss * ns * ns + 4.0 * ss * ns + 6.0 / (b * b) * ss * ss +
         4.0 / (c * c * d * d) * ss * ss * ss;
}

Lemma1Constants lemma1_constants(double K0, double K1, int n, int s) {
  if (!(K0 > 0.0) || !(K1 > 0.0)) throw Error(ErrorCode::InvalidArgument, "K0 and K1 must be positive");
  if (s <= 0 || s >= n) throw Error(ErrorCode::InvalidArgument, "need 0 < s < n");
  // Extended precision so that only the final rounding to double remains;
  // this is what makes Kcal(tK0, tK1) = Kcal(K0, K1) hold to the last bit or so.
  using LD = long double;
  const LD T = static_cast<LD>(K0) / (8.0L * static_cast<LD>(K1));
  const LD ns = n - s;
  const LD ss = s;
  Lemma1Constants out;
  out.K0 = K0;
  out.K1 = K1;
  out.n = n;
  out.s = s;
  const LD a2 = T / (4.0L * ns * ns * ns);
  const LD b2 = T / (6.0L * ns * ns);
  const LD c2 = T / (4.0L * ss * ns);
  const LD d2 = T * c2 / (4.0L * ss * ss * ns);
  out.a = static_cast<double>(std::sqrt(a2));
  out.b = static_cast<double>(std::sqrt(b2));
  out.c = static_cast<double>(std::sqrt(c2));
  out.d = static_cast<double>(std::sqrt(d2));
  // From the squares directly; the square roots only serve the report.
  out.Kcal = static_cast<double>(4.0L / a2 * ss * ns * ns + 4.0L * ss * ns + 6.0L / b2 * ss * ss +
                                 4.0L / (c2 * d2) * ss * ss * ss);
  out.K2_required = out.Kcal * K1;
  return out;
}

std::array<double, 3> prod_ineq_slacks(double a, double b, double c, double d, const std::array<double, 4>& m) {
  const auto [x, y, z, w] = m;
  const double lhs = x * y * z * w;
  const double a2 = a * a;
  const double b2 = b * b;
  const double c2 = c * c;
  const double d2 = d * d;
  return {a2 * x * x * x * x + y * y * y * y / a2 + z * z * w * w - lhs,
          b2 * x * x * y * y + z * z * w * w / b2 - lhs,
          c2 * x * x * y * y + d2 / c2 * z * z * z * z + w * w * w * w / (c2 * d2) - lhs};
}

IneqReport prod_ineq_check(double a, double b, double c, double d, std::size_t trials, std::uint64_t seed) {
  if (!(a > 0.0 && b > 0.0 && c > 0.0 && d > 0.0)) {
    throw Error(ErrorCode::InvalidArgument, "inequality weights must be positive");
  }
  Rng rng(seed);
  IneqReport rep;
  rep.trials = trials;
  rep.worst_slack.fill(std::numeric_limits<double>::infinity());
  for (std::size_t t = 0; t < trials; ++t) {
    std::array<double, 4> m{};
    for (double& v : m) {
      // Log-uniform over six decades, with occasional exact zeros.
      v = uniform(rng, 0.0, 1.0) < 0.05 ? 0.0 : std::exp(uniform(rng, -7.0, 7.0));
    }
    const auto sl = prod_ineq_slacks(a, b, c, d, m);
    const double lhs = m[0] * m[1] * m[2] * m[3];
    for (int k = 0; k < 3; ++k) {
      rep.worst_slack[k] = std::min(rep.worst_slack[k], sl[k]);
      const double rhs = sl[k] + lhs;
      if (sl[k] < -1e-12 * (std::abs(rhs) + lhs)) {
        ++rep.violations[k];
        if (!rep.witness) rep.witness = m;
      }
    }
  }
  return rep;
}

namespace {

bool is_fiber(int i, int s) { return i < s; }

bool is_mixed(int i, int j, int k, int l, int s) {
  const int fib = is_fiber(i, s) + is_fiber(j, s) + is_fiber(k, s) + is_fiber(l, s);
  return fib > 0 && fib < 4;
}

double model_entry(int i, int j, int k, int l, double K) {
  return K * (static_cast<double>(i == j && k == l) + static_cast<double>(i == l && k == j)) / 2.0;
}

/// Euclidean-unit vector supported on [lo, hi).
CVec block_vector(int n, int lo, int hi, Rng& rng) {
  CVec xi(static_cast<std::size_t>(n), cplx{});
  double s = 0.0;
  for (int i = lo; i < hi; ++i) {
    xi[static_cast<std::size_t>(i)] = complex_gaussian(rng);
    s += std::norm(xi[static_cast<std::size_t>(i)]);
  }
  for (cplx& v : xi) v /= std::sqrt(s);
  return xi;
}

double block_norm2(std::span<const cplx> xi, int lo, int hi) {
  double s = 0.0;
  for (int i = lo; i < hi; ++i) s += std::norm(xi[static_cast<std::size_t>(i)]);
  return s;
}

}  // namespace

HypothesisTensor random_hypothesis_tensor(double K0, double K1, double K2, int n, int s, std::uint64_t seed,
                                          double noise_scale) {
  if (!(K0 > 0.0 && K1 > 0.0 && K2 > 0.0)) throw Error(ErrorCode::InvalidArgument, "bounds must be positive");
  if (s <= 0 || s >= n) throw Error(ErrorCode::InvalidArgument, "need 0 < s < n");
  if (!(noise_scale >= 0.0 && noise_scale <= 1.0)) {
    throw Error(ErrorCode::InvalidArgument, "noise_scale must lie in [0, 1]");
  }
  HypothesisTensor t{n, s, CurvatureTensor(n), K0, K1, K2};
  Rng rng(seed);
  const double radius = 0.9 * K1 * noise_scale;
  std::vector<char> done(static_cast<std::size_t>(n) * n * n * n, 0);
  auto flat = [n](int i, int j, int k, int l) {
    return static_cast<std::size_t>(((i * n + j) * n + k) * n + l);
  };
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k)
        for (int l = 0; l < n; ++l) {
          if (done[flat(i, j, k, l)]) continue;
          cplx v;
          if (!is_mixed(i, j, k, l, s)) {
            v = model_entry(i, j, k, l, is_fiber(i, s) ? K0 : K2);
          } else if (i == j && k == l) {
            v = uniform(rng, -radius, radius);
          } else {
            // uniform in the disk
            const double r = radius * std::sqrt(uniform(rng, 0.0, 1.0));
            const double th = uniform(rng, 0.0, 2.0 * std::numbers::pi);
            v = std::polar(r, th);
          }
          t.R(i, j, k, l) = v;
          t.R(j, i, l, k) = std::conj(v);
          done[flat(i, j, k, l)] = 1;
          done[flat(j, i, l, k)] = 1;
        }
  return t;
}

HypothesisReport check_hypotheses(const HypothesisTensor& t, std::size_t trials, std::uint64_t seed) {
  HypothesisReport rep;
  const int n = t.n;
  const int s = t.s;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k)
        for (int l = 0; l < n; ++l) {
          const double m = std::abs(t.R(i, j, k, l));
          if (std::min({i, j, k, l}) < s) rep.max_fiber_touching = std::max(rep.max_fiber_touching, m);
          if (is_mixed(i, j, k, l, s)) rep.max_mixed = std::max(rep.max_mixed, m);
        }
  rep.hyp2 = rep.max_mixed < t.K1;
  rep.hyp2_literal = rep.max_fiber_touching < t.K1;

  Rng rng(seed);
  rep.hyp1_worst_slack = std::numeric_limits<double>::infinity();
  rep.hyp3_worst_slack = std::numeric_limits<double>::infinity();
  for (std::size_t trial = 0; trial < trials; ++trial) {
    const CVec f = block_vector(n, 0, s, rng);
    rep.hyp1_worst_slack = std::min(rep.hyp1_worst_slack, t.R.quartic(f).real() - t.K0);
    const CVec b = block_vector(n, s, n, rng);
    rep.hyp3_worst_slack = std::min(rep.hyp3_worst_slack, t.R.quartic(b).real() - t.K2);
  }
  // The model blocks meet (1) and (3) with equality; allow roundoff only.
  rep.hyp1 = rep.hyp1_worst_slack >= -1e-12 * t.K0;
  rep.hyp3 = rep.hyp3_worst_slack >= -1e-12 * t.K2;
  return rep;
}

BoundReport lemma1_bound_check(const HypothesisTensor& t, const Lemma1Constants& consts, std::size_t trials,
                               std::uint64_t seed) {
  if (consts.n != t.n || consts.s != t.s) throw Error(ErrorCode::InvalidArgument, "dimension mismatch");
  if (t.K2 < consts.Kcal * t.K1 * (1.0 - 1e-14)) {
    throw Error(ErrorCode::HypothesisViolation, "K2 below Kcal * K1");
  }
  const int n = t.n;
  const int s = t.s;
  Rng rng(seed);
  BoundReport rep;
  rep.trials = trials;
  rep.worst_slack = std::numeric_limits<double>::infinity();
  rep.min_numerator = std::numeric_limits<double>::infinity();
  for (std::size_t trial = 0; trial < trials; ++trial) {
    // Random balance between the fiber and base parts so both ends of the
    // bound get exercised.
    CVec xi(static_cast<std::size_t>(n));
    const double tilt = std::exp(uniform(rng, -4.0, 4.0));
    for (int i = 0; i < n; ++i) {
      xi[static_cast<std::size_t>(i)] = complex_gaussian(rng) * (is_fiber(i, s) ? tilt : 1.0);
    }
    const double norm = std::sqrt(block_norm2(xi, 0, n));
    for (cplx& v : xi) v /= norm;
    const double F = std::pow(block_norm2(xi, 0, s), 2);
    const double B = std::pow(block_norm2(xi, s, n), 2);
    const double num = t.R.quartic(xi).real();
    const double bound = 0.5 * t.K0 * F + (t.K2 - t.K1 * consts.Kcal) * B;
    const double slack = num - bound;
    rep.worst_slack = std::min(rep.worst_slack, slack);
    rep.min_numerator = std::min(rep.min_numerator, num);
    const bool bad = slack < -kBoundTolerance;
    if (bad) ++rep.violations;
    if (num <= 0.0) ++rep.nonpositive;
    if ((bad || num <= 0.0) && !rep.witness) rep.witness = xi;
  }
  return rep;
}

// ---------------------------------------------------------------------------

namespace {

void require_1d(const MetricJet& mj, const char* what) {
  if (mj.dim != 1) throw Error(ErrorCode::InvalidArgument, std::string(what) + " must be one-dimensional");
}

}  // namespace

double lemma2_curvature(const MetricJet& gjet, const MetricJet& hjet, double KG, double KH, double lambda) {
  require_1d(gjet, "g");
  require_1d(hjet, "h");
  const double g = gjet.g(0, 0).real();
  const double h = hjet.g(0, 0).real();
  if (!(g > 0.0) || !(h > 0.0)) throw Error(ErrorCode::NotPositiveDefinite, "metric values must be positive");
  if (!(lambda > 0.0)) throw Error(ErrorCode::InvalidArgument, "lambda must be positive");
  const cplx gz = gjet.dg[0](0, 0);
  const cplx gzb = gjet.dbarg[0](0, 0);
  const double gzzb = gjet.ddbar(0, 0)(0, 0).real();
  const cplx hz = hjet.dg[0](0, 0);
  const cplx hzb = hjet.dbarg[0](0, 0);
  const double hzzb = hjet.ddbar(0, 0)(0, 0).real();
  const double cross = -h * gzzb - g * hzzb + (gz * hzb + hz * gzb).real();
  const double f = g + lambda * h;
  return (g * g * g * KG + lambda * lambda * h * h * h * KH + 2.0 * lambda * cross) / (f * f * f);
}

Lemma2Inputs lemma2_inputs(const MetricSpec& g, const MetricSpec& h, std::span<const cplx> point) {
  if (g.dim() != 1 || h.dim() != 1) throw Error(ErrorCode::InvalidArgument, "g and h must be one-dimensional");
  Lemma2Inputs in;
  in.gjet = metric_jet(g, point);
  in.hjet = metric_jet(h, point);
  const CVec one{cplx(1.0)};
  in.KG = hsc(in.gjet, curvature(in.gjet), one);
  in.KH = hsc(in.hjet, curvature(in.hjet), one);
  return in;
}

MetricSpec summed_metric(const MetricSpec& g, const MetricSpec& h, double lambda) {
  if (g.dim() != 1 || h.dim() != 1 || g.n != h.n) {
    throw Error(ErrorCode::InvalidArgument, "summed_metric needs two 1-D specs on the same coordinates");
  }
  MetricSpec out;
  out.name = g.name + "+" + format_real(lambda) + "*" + h.name;
  out.n = g.n;
  out.entries = {{Expr::add(g.entries[0][0], scale(h.entries[0][0], lambda))}};
  out.box = g.box;
  return out;
}

ThresholdResult lemma2_threshold(const MetricSpec& g, const MetricSpec& h, std::span<const cplx> point,
                                 double lambda_max) {
  const Lemma2Inputs in = lemma2_inputs(g, h, point);
  if (!(in.KH > 0.0)) {
    throw Error(ErrorCode::HypothesisViolation, "curvature of h at the point is not positive");
  }
  ThresholdResult res;
  double lam = kThresholdStart;
  double lo = 0.0;
  for (;;) {
    if (lam > lambda_max) throw Error(ErrorCode::NotReached, "no positive curvature up to lambda_max");
    const double k = in.at(lam);
    res.history.emplace_back(lam, k);
    if (k > 0.0) break;
    lo = lam;
    lam *= 2.0;
  }
  double hi = lam;
  if (lo > 0.0) {
    for (int step = 0; step < kThresholdBisections; ++step) {
      const double mid = 0.5 * (lo + hi);
      const double k = in.at(mid);
      res.history.emplace_back(mid, k);
      (k > 0.0 ? hi : lo) = mid;
    }
  }
  res.lambda_t = hi;
  res.persistent = true;
  const double top = std::max(lambda_max, 2.0 * hi);
  for (int j = 1; j <= 10; ++j) {
    const double lp = hi * std::pow(top / hi, j / 10.0);
    const double k = in.at(lp);
    res.persistence.emplace_back(lp, k);
    if (!(k > 0.0)) res.persistent = false;
  }
  return res;
}

double loglog_slope(std::span<const std::pair<double, double>> xy) {
  double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
  int cnt = 0;
  for (const auto& [x, y] : xy) {
    if (y == 0.0 || !(x > 0.0)) continue;
    const double lx = std::log(x);
    const double ly = std::log(std::abs(y));
    sx += lx;
    sy += ly;
    sxx += lx * lx;
    sxy += lx * ly;
    ++cnt;
  }
  if (cnt < 2) return std::numeric_limits<double>::quiet_NaN();
  const double den = cnt * sxx - sx * sx;
  return den == 0.0 ? std::numeric_limits<double>::quiet_NaN() : (cnt * sxy - sx * sy) / den;
}

DecayReport decay_check(const MetricSpec& g, const MetricSpec& h, std::span<const cplx> point,
                        std::span<const double> lambdas) {
  if (lambdas.empty() || lambdas.back() < 1e4) {
    throw Error(ErrorCode::InvalidArgument, "lambda list must end at 1e4 or beyond");
  }
  if (!std::is_sorted(lambdas.begin(), lambdas.end()) || !(lambdas.front() > 0.0)) {
    throw Error(ErrorCode::InvalidArgument, "lambda list must be positive and increasing");
  }
  const Lemma2Inputs in = lemma2_inputs(g, h, point);
  DecayReport rep;
  rep.KH = in.KH;
  std::vector<std::pair<double, double>> tail;
  for (double lam : lambdas) {
    const double k = in.at(lam);
    rep.values.emplace_back(lam, k);
    rep.C = std::max(rep.C, lam * std::abs(k));
    if (lam >= lambdas.back() / 10.0) tail.emplace_back(lam, k);
  }
  const double last = lambdas.back() * rep.values.back().second;
  rep.limit_rel_error = std::abs(last - in.KH) / std::abs(in.KH);
  // A single lambda in the last decade leaves the slope unmeasured (NaN).
  rep.tail_slope = loglog_slope(tail);
  const bool slope_ok = std::isnan(rep.tail_slope) ? tail.size() < 2 : std::abs(rep.tail_slope + 1.0) <= 0.2;
  rep.ok = rep.limit_rel_error <= 0.01 && rep.C > 0.0 && slope_ok;
  return rep;
}

}  // namespace hsclab
