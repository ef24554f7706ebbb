#include "hsclab/positivity.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <limits>
#include <numeric>
#include <thread>

#include "hsclab/error.hpp"
#include "hsclab/random.hpp"

namespace hsclab {

DirectionalHsc::DirectionalHsc(const MetricJet& mj, CurvatureTensor R)
    : g_(0.5 * (mj.g + mj.g.adjoint())), R_(std::move(R)) {
  Eigen::LLT<Matrix> llt(g_);
  if (llt.info() != Eigen::Success) {
    throw WitnessError(ErrorCode::NotPositiveDefinite, "metric not positive definite", mj.point, 0.0);
  }
  lower_ = llt.matrixL();
}

CVec DirectionalHsc::direction(std::span<const cplx> u) const {
  // sum g_{i jbar} xi_i conj(xi_j) = eta^* g eta with eta = conj(xi); with
  // g = L L^*, eta = L^{-*} u has g-length |u|.
  Eigen::VectorXcd rhs(static_cast<Eigen::Index>(u.size()));
  for (std::size_t k = 0; k < u.size(); ++k) rhs(static_cast<Eigen::Index>(k)) = u[k];
  const Eigen::VectorXcd eta = lower_.adjoint().triangularView<Eigen::Upper>().solve(rhs);
  CVec xi(u.size());
  for (std::size_t k = 0; k < u.size(); ++k) xi[k] = std::conj(eta(static_cast<Eigen::Index>(k)));
  return xi;
}

double DirectionalHsc::value(std::span<const cplx> u) const {
  const CVec xi = direction(u);
  const double q = gnorm2(g_, xi);
  return 2.0 * R_.quartic(xi).real() / (q * q);
}

namespace {

void normalize(CVec& v) {
  double s = 0.0;
  for (const cplx& x : v) s += std::norm(x);
  const double inv = 1.0 / std::sqrt(s);
  for (cplx& x : v) x *= inv;
}

/// Coordinate-wise pattern search on the unit sphere of the whitened space.
double refine_direction(const DirectionalHsc& f, CVec& u, const DirectionSearch& search) {
  double best = f.value(u);
  double step = 0.25;
  const int axes = 2 * f.dim();
  CVec trial;
  for (int iter = 0; iter < search.max_iters; ++iter) {
    bool improved = false;
    for (int a = 0; a < axes; ++a) {
      for (const double sign : {1.0, -1.0}) {
        trial = u;
        const cplx delta = (a % 2 == 0) ? cplx(sign * step, 0.0) : cplx(0.0, sign * step);
        trial[static_cast<std::size_t>(a / 2)] += delta;
        normalize(trial);
        const double v = f.value(trial);
        if (v < best) {
          best = v;
          u = trial;
          improved = true;
          break;
        }
      }
    }
    if (!improved) {
      step *= 0.5;
      if (step < search.min_step) break;
    }
  }
  return best;
}

CVec g_unit(const Matrix& g, CVec xi) {
  const double s = std::sqrt(gnorm2(g, xi));
  for (cplx& x : xi) x /= s;
  return xi;
}

bool lex_less(const CVec& a, const CVec& b) {
  for (std::size_t k = 0; k < std::min(a.size(), b.size()); ++k) {
    if (a[k].real() != b[k].real()) return a[k].real() < b[k].real();
    if (a[k].imag() != b[k].imag()) return a[k].imag() < b[k].imag();
  }
  return a.size() < b.size();
}

}  // namespace

PointMinimum min_hsc_directional(const DirectionalHsc& f, const DirectionSearch& search,
                                 std::uint64_t seed) {
  if (search.starts < 1 || search.dirs < 1) {
    throw Error(ErrorCode::InvalidArgument, "direction search needs starts >= 1 and dirs >= 1");
  }
  Rng rng(seed);
  const int total = std::max(search.dirs, search.starts);
  PointMinimum out;
  out.value = std::numeric_limits<double>::infinity();
  out.max_sampled = -std::numeric_limits<double>::infinity();
  CVec best_u;
  for (int s = 0; s < total; ++s) {
    CVec u = random_unit_vector(f.dim(), rng);
    double v = f.value(u);
    if (s < search.dirs) out.max_sampled = std::max(out.max_sampled, v);
    if (s < search.starts) v = refine_direction(f, u, search);
    if (v < out.value) {
      out.value = v;
      best_u = u;
    }
  }
  // value stays the search value (not recomputed) so the prefix-nesting
  // guarantee holds bit for bit.
  out.dir = g_unit(f.g(), f.direction(best_u));
  return out;
}

PointMinimum min_hsc_at_point(const MetricSpec& spec, std::span<const cplx> point,
                              const DirectionSearch& search, std::uint64_t seed) {
  const MetricJet mj = metric_jet(spec, point);
  const DirectionalHsc f(mj, curvature(mj));
  return min_hsc_directional(f, search, seed);
}

std::string ScanReport::verdict() const {
  if (min_hsc > kPositivityThreshold) return "positive";
  if (min_hsc < kNegativityThreshold) return "negative";
  return "indeterminate";
}

std::vector<CVec> scan_points(const ChartBox& box, int grid_per_axis, int random_points,
                              std::uint64_t seed) {
  if (grid_per_axis < 1) throw Error(ErrorCode::InvalidArgument, "grid_per_axis must be >= 1");
  std::vector<CVec> pts{CVec{}};
  for (const auto& d : box.coords) {
    const CVec axis = d.grid(grid_per_axis);
    std::vector<CVec> next;
    next.reserve(pts.size() * axis.size());
    for (const auto& p : pts) {
      for (const cplx& z : axis) {
        CVec q = p;
        q.push_back(z);
        next.push_back(std::move(q));
      }
    }
    pts = std::move(next);
  }
  Rng rng(split_seed(seed, 0x5CA9));
  for (int r = 0; r < random_points; ++r) pts.push_back(box.sample(rng));
  return pts;
}

ScanReport scan_chart(const MetricSpec& spec, const ChartBox& box, const ScanParams& params) {
  if (params.grid_per_axis < 2) throw Error(ErrorCode::InvalidArgument, "grid_per_axis must be >= 2");
  const std::vector<CVec> pts = scan_points(box, params.grid_per_axis, params.random_points, params.seed);
  std::vector<PointMinimum> results(pts.size());
  std::vector<std::exception_ptr> errors(pts.size());

  auto work = [&](std::size_t begin, std::size_t end) {
    for (std::size_t i = begin; i < end; ++i) {
      try {
        results[i] = min_hsc_at_point(spec, pts[i], params.search, split_seed(params.seed, i));
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };

  unsigned threads = params.threads > 0 ? static_cast<unsigned>(params.threads)
                                        : std::max(1u, std::thread::hardware_concurrency());
  threads = std::min<unsigned>(threads, static_cast<unsigned>(std::max<std::size_t>(1, pts.size() / 16)));
  if (threads <= 1) {
    work(0, pts.size());
  } else {
    std::vector<std::jthread> pool;
    const std::size_t chunk = (pts.size() + threads - 1) / threads;
    for (unsigned t = 0; t < threads; ++t) {
      const std::size_t b = t * chunk;
      const std::size_t e = std::min(pts.size(), b + chunk);
      if (b < e) pool.emplace_back(work, b, e);
    }
  }
  for (const auto& err : errors) {
    if (err) std::rethrow_exception(err);
  }

  ScanReport rep;
  rep.metric = spec.name;
  rep.points_scanned = pts.size();
  rep.dirs_per_point = params.search.dirs;
  rep.starts = params.search.starts;
  rep.seed = params.seed;
  rep.min_hsc = std::numeric_limits<double>::infinity();
  rep.max_hsc = -std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < pts.size(); ++i) {
    const PointMinimum& r = results[i];
    rep.samples.push_back({pts[i], r.value});
    rep.max_hsc = std::max({rep.max_hsc, r.max_sampled, r.value});
    if (r.value < rep.min_hsc || (r.value == rep.min_hsc && lex_less(pts[i], rep.witness_point))) {
      rep.min_hsc = r.value;
      rep.witness_point = pts[i];
      rep.witness_dir = r.dir;
    }
  }
  rep.margin = std::abs(rep.min_hsc);
  return rep;
}

ScanReport scan_chart(const MetricSpec& spec, const ScanParams& params) {
  return scan_chart(spec, spec.box, params);
}

namespace {

struct JointState {
  CVec point;
  CVec xi;
  double value;
};

/// Pattern search over point (kept inside the box) and direction jointly.
JointState refine_joint(const MetricSpec& spec, const ChartBox& box, JointState s, int sweeps) {
  auto eval = [&](const CVec& p, const CVec& xi) -> std::optional<double> {
    if (!box.contains(p) || !spec.box.contains(p)) return std::nullopt;
    try {
      return hsc_at(spec, p, xi);
    } catch (const Error&) {
      return std::nullopt;
    }
  };
  double width = 0.0;
  for (const auto& d : box.coords) width = std::max({width, d.re_max - d.re_min, d.im_max - d.im_min});
  double pstep = 0.05 * width;
  double dstep = 0.25;
  for (int it = 0; it < sweeps; ++it) {
    bool improved = false;
    const double xnorm = std::sqrt(std::accumulate(s.xi.begin(), s.xi.end(), 0.0,
                                                   [](double a, cplx x) { return a + std::norm(x); }));
    for (std::size_t a = 0; a < 2 * s.point.size() && !improved; ++a) {
      for (const double sign : {1.0, -1.0}) {
        CVec p = s.point;
        p[a / 2] += (a % 2 == 0) ? cplx(sign * pstep, 0.0) : cplx(0.0, sign * pstep);
        if (auto v = eval(p, s.xi); v && *v < s.value) {
          s.point = std::move(p);
          s.value = *v;
          improved = true;
          break;
        }
      }
    }
    for (std::size_t a = 0; a < 2 * s.xi.size() && !improved; ++a) {
      for (const double sign : {1.0, -1.0}) {
        CVec xi = s.xi;
        xi[a / 2] += (a % 2 == 0) ? cplx(sign * dstep * xnorm, 0.0) : cplx(0.0, sign * dstep * xnorm);
        if (auto v = eval(s.point, xi); v && *v < s.value) {
          s.xi = std::move(xi);
          s.value = *v;
          improved = true;
          break;
        }
      }
    }
    if (!improved) {
      pstep *= 0.5;
      dstep *= 0.5;
      if (dstep < 1e-8) break;
    }
  }
  return s;
}

}  // namespace

std::optional<NegativeWitness> find_negative_witness(const MetricSpec& spec, const ChartBox& box,
                                                     int budget, std::uint64_t seed,
                                                     const DirectionSearch& search) {
  if (budget < 1) throw Error(ErrorCode::InvalidArgument, "witness budget must be >= 1");
  Rng rng(split_seed(seed, 0x517E));
  for (int i = 0; i < budget; ++i) {
    const CVec p = (i == 0) ? box.center() : box.sample(rng);
    const PointMinimum pm = min_hsc_at_point(spec, p, search, split_seed(seed, static_cast<std::uint64_t>(i)));
    if (pm.value < kNegativityThreshold) {
      JointState s = refine_joint(spec, box, {p, pm.dir, pm.value}, 100);
      const MetricJet mj = metric_jet(spec, s.point);
      NegativeWitness w;
      w.point = s.point;
      w.dir = g_unit(mj.g, s.xi);
      w.value = hsc(mj, curvature(mj), w.dir);
      w.points_tried = static_cast<std::size_t>(i) + 1;
      return w;
    }
  }
  return std::nullopt;
}

}  // namespace hsclab
