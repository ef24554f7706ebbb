#include "hsclab/metric.hpp"

#include <Eigen/Eigenvalues>
#include <cmath>
#include <cstdlib>
#include <limits>
#include <sstream>

#include "hsclab/error.hpp"

namespace hsclab {

bool CoordDomain::contains(cplx z, double tol) const {
  if (z.real() < re_min - tol || z.real() > re_max + tol) return false;
  if (z.imag() < im_min - tol || z.imag() > im_max + tol) return false;
  if (radius && std::abs(z) > *radius + tol) return false;
  return true;
}

cplx CoordDomain::center() const {
  cplx c(0.5 * (re_min + re_max), 0.5 * (im_min + im_max));
  if (radius && std::abs(c) > *radius) c *= *radius / std::abs(c);
  return c;
}

cplx CoordDomain::sample(Rng& rng) const {
  for (int attempt = 0; attempt < 100000; ++attempt) {
    double lo_re = re_min, hi_re = re_max, lo_im = im_min, hi_im = im_max;
    if (radius) {
      lo_re = std::max(lo_re, -*radius);
      hi_re = std::min(hi_re, *radius);
      lo_im = std::max(lo_im, -*radius);
      hi_im = std::min(hi_im, *radius);
    }
    const cplx z(uniform(rng, lo_re, hi_re), uniform(rng, lo_im, hi_im));
    if (contains(z, 0.0)) return z;
  }
  throw Error(ErrorCode::InvalidArgument, "coordinate domain has no sampleable area");
}

CVec CoordDomain::grid(int per_axis) const {
  if (per_axis < 1) throw Error(ErrorCode::InvalidArgument, "grid needs at least one node");
  CVec out;
  if (per_axis == 1) {
    out.push_back(center());
    return out;
  }
  if (radius) {
    // Polar grid: per_axis radii (including 0 and the rim) times per_axis angles.
    for (int i = 0; i < per_axis; ++i) {
      const double r = *radius * i / (per_axis - 1);
      const int angles = (i == 0) ? 1 : per_axis;
      for (int j = 0; j < angles; ++j) {
        const double t = 2.0 * M_PI * j / per_axis;
        const cplx z = std::polar(r, t);
        if (contains(z)) out.push_back(z);
      }
    }
    return out;
  }
  for (int i = 0; i < per_axis; ++i) {
    const double x = re_min + (re_max - re_min) * i / (per_axis - 1);
    for (int j = 0; j < per_axis; ++j) {
      const double y = im_min + (im_max - im_min) * j / (per_axis - 1);
      out.emplace_back(x, y);
    }
  }
  return out;
}

ChartBox ChartBox::polydisk(int n, double r) {
  ChartBox box;
  box.coords.assign(static_cast<std::size_t>(n), CoordDomain::disk(r));
  return box;
}

bool ChartBox::contains(std::span<const cplx> point, double tol) const {
  if (point.size() != coords.size()) return false;
  for (std::size_t k = 0; k < coords.size(); ++k) {
    if (!coords[k].contains(point[k], tol)) return false;
  }
  return true;
}

CVec ChartBox::center() const {
  CVec c;
  for (const auto& d : coords) c.push_back(d.center());
  return c;
}

CVec ChartBox::sample(Rng& rng) const {
  CVec p;
  for (const auto& d : coords) p.push_back(d.sample(rng));
  return p;
}

// ---------------------------------------------------------------------------

void check_shape(const MetricSpec& spec) {
  const int dim = spec.dim();
  if (dim < 1 || dim > spec.n) {
    throw Error(ErrorCode::InvalidArgument, "metric '" + spec.name + "' has " +
                                                std::to_string(dim) + "x" + std::to_string(dim) +
                                                " entries for n = " + std::to_string(spec.n));
  }
  for (const auto& row : spec.entries) {
    if (static_cast<int>(row.size()) != dim) {
      throw Error(ErrorCode::InvalidArgument, "metric '" + spec.name + "' entry matrix not square");
    }
    for (const auto& e : row) {
      if (max_variable(e) >= spec.n) {
        throw Error(ErrorCode::VariableIndex, "metric '" + spec.name + "' references z" +
                                                  std::to_string(max_variable(e) + 1) +
                                                  " beyond n = " + std::to_string(spec.n));
      }
    }
  }
  if (spec.box.size() != spec.n) {
    throw Error(ErrorCode::InvalidArgument, "metric '" + spec.name + "' box has " +
                                                std::to_string(spec.box.size()) +
                                                " coordinates, expected " + std::to_string(spec.n));
  }
}

MetricSpec make_metric(std::string name, int n,
                       const std::vector<std::vector<std::string>>& entries, ChartBox box) {
  MetricSpec spec;
  spec.name = std::move(name);
  spec.n = n;
  spec.box = std::move(box);
  for (const auto& row : entries) {
    std::vector<Expr> parsed;
    for (const auto& src : row) parsed.push_back(parse(src, n));
    spec.entries.push_back(std::move(parsed));
  }
  check_shape(spec);
  return spec;
}

Matrix evaluate_matrix(const MetricSpec& spec, std::span<const cplx> point) {
  const int dim = spec.dim();
  Matrix m(dim, dim);
  for (int i = 0; i < dim; ++i) {
    for (int j = 0; j < dim; ++j) {
      m(i, j) = evaluate(spec.entries[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)],
                         point);
    }
  }
  return m;
}

double hermitian_defect(const Matrix& m) {
  double worst = 0.0;
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    for (Eigen::Index j = i; j < m.cols(); ++j) {
      worst = std::max(worst, std::abs(m(i, j) - std::conj(m(j, i))));
    }
  }
  return worst;
}

double min_hermitian_eigenvalue(const Matrix& m) {
  const Matrix h = 0.5 * (m + m.adjoint());
  Eigen::SelfAdjointEigenSolver<Matrix> es(h, Eigen::EigenvaluesOnly);
  return es.eigenvalues().minCoeff();
}

namespace {

std::string describe_point(const CVec& p) {
  std::ostringstream os;
  os << "(";
  for (std::size_t k = 0; k < p.size(); ++k) {
    if (k) os << ", ";
    os << p[k].real() << (p[k].imag() < 0 ? "-" : "+") << std::abs(p[k].imag()) << "i";
  }
  os << ")";
  return os.str();
}

}  // namespace

ValidationReport validate(const MetricSpec& spec, int samples, std::uint64_t seed) {
  if (samples < 1) throw Error(ErrorCode::InvalidArgument, "validate needs at least one sample");
  check_shape(spec);
  Rng rng(seed);
  ValidationReport rep;
  rep.samples = samples;
  rep.seed = seed;
  rep.min_eigenvalue = std::numeric_limits<double>::infinity();
  for (int s = 0; s < samples; ++s) {
    const CVec p = spec.box.sample(rng);
    const Matrix m = evaluate_matrix(spec, p);
    const double defect = hermitian_defect(m);
    if (defect > rep.worst_hermitian_defect || rep.defect_point.empty()) {
      rep.worst_hermitian_defect = defect;
      rep.defect_point = p;
    }
    if (defect > kHermitianTolerance) {
      std::ostringstream os;
      os << "metric '" << spec.name << "' is not Hermitian at " << describe_point(p)
         << " (defect " << defect << ")";
      throw WitnessError(ErrorCode::HermitianDefect, os.str(), p, defect);
    }
    const double ev = min_hermitian_eigenvalue(m);
    if (ev < rep.min_eigenvalue) {
      rep.min_eigenvalue = ev;
      rep.min_eigenvalue_point = p;
    }
    if (!(ev > kPositivityTolerance)) {
      std::ostringstream os;
      os << "metric '" << spec.name << "' is not positive definite at " << describe_point(p)
         << " (smallest eigenvalue " << ev << ")";
      throw WitnessError(ErrorCode::NotPositiveDefinite, os.str(), p, ev);
    }
  }
  return rep;
}

// ---------------------------------------------------------------------------
// Catalog

namespace {

struct NameArg {
  std::string base;
  std::optional<std::string> arg;
};

NameArg split_name(std::string_view name) {
  const auto open = name.find('(');
  if (open == std::string_view::npos) return {std::string(name), std::nullopt};
  if (name.back() != ')') {
    throw Error(ErrorCode::UnknownName, "malformed catalog name '" + std::string(name) + "'");
  }
  return {std::string(name.substr(0, open)),
          std::string(name.substr(open + 1, name.size() - open - 2))};
}

std::optional<double> as_number(const std::string& s) {
  char* end = nullptr;
  const double v = std::strtod(s.c_str(), &end);
  if (s.empty() || end != s.c_str() + s.size()) return std::nullopt;
  return v;
}

/// Warp factor: positive constant, or an expression in the base coordinate z2.
Expr warp_factor_times(const std::optional<std::string>& arg, double fallback, const Expr& base,
                       std::string& label) {
  if (!arg) {
    std::ostringstream os;
    os << fallback;
    label = os.str();
    return scale(base, fallback);
  }
  label = *arg;
  if (auto v = as_number(*arg)) {
    if (!(*v > 0.0)) throw Error(ErrorCode::InvalidArgument, "warp factor must be positive");
    return scale(base, *v);
  }
  const Expr lam = parse(*arg, 2);
  if (references(lam, 0)) throw Error(ErrorCode::VariableIndex, "warp factor may depend on z2 only");
  return Expr::mul(lam, base);
}

}  // namespace

MetricSpec catalog(std::string_view name) {
  const NameArg na = split_name(name);
  const std::string& b = na.base;
  if (b == "flat") {
    int n = 1;
    if (na.arg) {
      const auto v = as_number(*na.arg);
      if (!v || *v < 1 || *v != std::floor(*v)) {
        throw Error(ErrorCode::InvalidArgument, "flat(n) needs a positive integer n");
      }
      n = static_cast<int>(*v);
    }
    std::vector<std::vector<std::string>> e(static_cast<std::size_t>(n),
                                            std::vector<std::string>(static_cast<std::size_t>(n), "0"));
    for (std::size_t k = 0; k < e.size(); ++k) e[k][k] = "1";
    return make_metric("flat(" + std::to_string(n) + ")", n, e, ChartBox::polydisk(n));
  }
  if (na.arg && b != "paper_G" && b != "warp_demo") {
    throw Error(ErrorCode::UnknownName, "catalog metric '" + b + "' takes no argument");
  }
  if (b == "poincare") return make_metric("poincare", 1, {{formulas::kPoincare}}, ChartBox::polydisk(1));
  if (b == "fs_affine") return make_metric("fs_affine", 1, {{formulas::kFsAffine}}, ChartBox::polydisk(1));
  if (b == "paper_base") {
    return make_metric("paper_base", 1, {{formulas::kPaperBaseZ1}}, ChartBox::polydisk(1));
  }
  if (b == "paper_fiber") {
    return make_metric("paper_fiber", 2, {{formulas::kPaperFiber}}, ChartBox::polydisk(2));
  }
  if (b == "paper_G" || b == "warp_demo") {
    const bool paper = b == "paper_G";
    std::string label;
    const Expr base = parse(formulas::kPaperBaseZ2, 2);
    const Expr scaled = warp_factor_times(na.arg, paper ? 1.0 : 10.0, base, label);
    MetricSpec spec;
    spec.name = b + "(" + label + ")";
    spec.n = 2;
    spec.box = ChartBox::polydisk(2);
    spec.entries = {{parse(paper ? formulas::kPaperFiber : formulas::kWarpDemoFiber, 2), Expr()},
                    {Expr(), scaled}};
    check_shape(spec);
    return spec;
  }
  throw Error(ErrorCode::UnknownName, "unknown catalog metric '" + std::string(name) + "'");
}

std::vector<std::string> catalog_names() {
  return {"flat(1)",     "flat(2)",     "flat(3)",     "poincare",    "fs_affine",
          "paper_base",  "paper_fiber", "paper_G(1)",  "warp_demo(10)"};
}

}  // namespace hsclab
