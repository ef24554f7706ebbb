#include "hsclab/curvature.hpp"

#include <Eigen/Eigenvalues>
#include <cmath>
#include <sstream>

#include "hsclab/error.hpp"

namespace hsclab {

namespace {

MetricJet empty_jet(int dim, std::span<const cplx> point) {
  MetricJet mj;
  mj.dim = dim;
  mj.point.assign(point.begin(), point.end());
  mj.g = Matrix::Zero(dim, dim);
  mj.dg.assign(static_cast<std::size_t>(dim), Matrix::Zero(dim, dim));
  mj.dbarg.assign(static_cast<std::size_t>(dim), Matrix::Zero(dim, dim));
  mj.ddbarg.assign(static_cast<std::size_t>(dim * dim), Matrix::Zero(dim, dim));
  return mj;
}

void store(MetricJet& mj, int i, int j, const Jet2& jet) {
  const int dim = mj.dim;
  mj.g(i, j) = jet.value();
  for (int k = 0; k < dim; ++k) {
    mj.dg[static_cast<std::size_t>(k)](i, j) = jet.d(k);
    mj.dbarg[static_cast<std::size_t>(k)](i, j) = jet.dbar(k);
    for (int l = 0; l < dim; ++l) {
      mj.ddbarg[static_cast<std::size_t>(k * dim + l)](i, j) = jet.ddbar(k, l);
    }
  }
}

void require_in_box(const MetricSpec& spec, std::span<const cplx> point) {
  if (static_cast<int>(point.size()) != spec.n) {
    throw Error(ErrorCode::InvalidArgument, "point has " + std::to_string(point.size()) +
                                                " coordinates, metric '" + spec.name +
                                                "' expects " + std::to_string(spec.n));
  }
  if (!spec.box.contains(point)) {
    throw WitnessError(ErrorCode::OutsideBox,
                       "point outside the chart box of metric '" + spec.name + "'",
                       CVec(point.begin(), point.end()), 0.0);
  }
}

}  // namespace

MetricJet metric_jet(const MetricSpec& spec, std::span<const cplx> point) {
  require_in_box(spec, point);
  const int dim = spec.dim();
  MetricJet mj = empty_jet(dim, point);
  const auto coords = coordinate_jets(point, dim);
  for (int i = 0; i < dim; ++i) {
    for (int j = 0; j < dim; ++j) {
      const Expr& e = spec.entries[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
      store(mj, i, j, evaluate_jet(e, std::span<const Jet2>(coords), dim));
    }
  }
  return mj;
}

MetricJet metric_jet_fd(const MetricSpec& spec, std::span<const cplx> point, double h) {
  require_in_box(spec, point);
  const int dim = spec.dim();
  MetricJet mj = empty_jet(dim, point);
  const CVec params(point.begin() + dim, point.end());
  for (int i = 0; i < dim; ++i) {
    for (int j = 0; j < dim; ++j) {
      const Expr& e = spec.entries[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
      // Only the metric coordinates are differentiated; parameters stay fixed.
      PointFunction f = [&](std::span<const ExtComplex> z) {
        std::vector<ExtComplex> full(z.begin(), z.end());
        for (const cplx& p : params) full.emplace_back(p.real(), p.imag());
        return evaluate_ext(e, full);
      };
      store(mj, i, j, fd_jet(f, point.first(static_cast<std::size_t>(dim)), h));
    }
  }
  return mj;
}

double jet_symmetry_defect(const MetricJet& mj) {
  double worst = 0.0;
  for (int l = 0; l < mj.dim; ++l) {
    const Matrix& db = mj.dbarg[static_cast<std::size_t>(l)];
    const Matrix& d = mj.dg[static_cast<std::size_t>(l)];
    for (int i = 0; i < mj.dim; ++i) {
      for (int j = 0; j < mj.dim; ++j) {
        worst = std::max(worst, std::abs(db(i, j) - std::conj(d(j, i))));
      }
    }
  }
  return worst;
}

double CurvatureTensor::pair_symmetry_defect() const {
  double worst = 0.0;
  for (int i = 0; i < dim_; ++i)
    for (int j = 0; j < dim_; ++j)
      for (int k = 0; k < dim_; ++k)
        for (int l = 0; l < dim_; ++l)
          worst = std::max(worst, std::abs((*this)(i, j, k, l) - std::conj((*this)(j, i, l, k))));
  return worst;
}

cplx CurvatureTensor::quartic(std::span<const cplx> xi) const {
  // sum_{i,k} sum_{j,l} R(i,j,k,l) v_{ik} conj(v_{jl}) with v_{ik} = xi_i xi_k.
  const int n = dim_;
  cplx total = 0.0;
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      const cplx a = xi[static_cast<std::size_t>(i)] * std::conj(xi[static_cast<std::size_t>(j)]);
      for (int k = 0; k < n; ++k) {
        const cplx b = a * xi[static_cast<std::size_t>(k)];
        for (int l = 0; l < n; ++l) {
          total += (*this)(i, j, k, l) * b * std::conj(xi[static_cast<std::size_t>(l)]);
        }
      }
    }
  }
  return total;
}

double CurvatureTensor::quartic_scale(std::span<const cplx> xi) const {
  double s = 0.0;
  for (int i = 0; i < dim_; ++i)
    for (int j = 0; j < dim_; ++j)
      for (int k = 0; k < dim_; ++k)
        for (int l = 0; l < dim_; ++l)
          s += std::abs((*this)(i, j, k, l)) * std::abs(xi[static_cast<std::size_t>(i)]) *
               std::abs(xi[static_cast<std::size_t>(j)]) * std::abs(xi[static_cast<std::size_t>(k)]) *
               std::abs(xi[static_cast<std::size_t>(l)]);
  return s;
}

Matrix metric_inverse(const Matrix& g, double cond_limit) {
  const Matrix h = 0.5 * (g + g.adjoint());
  Eigen::SelfAdjointEigenSolver<Matrix> es(h, Eigen::EigenvaluesOnly);
  const double lo = es.eigenvalues().minCoeff();
  const double hi = es.eigenvalues().maxCoeff();
  if (!(lo > 0.0) || hi / lo > cond_limit) {
    std::ostringstream os;
    os << "metric matrix ill-conditioned (eigenvalues " << lo << " .. " << hi << ")";
    throw Error(ErrorCode::IllConditioned, os.str());
  }
  Eigen::LDLT<Matrix> ldlt(h);
  const auto n = g.rows();
  Matrix inv(n, n);
  for (Eigen::Index c = 0; c < n; ++c) {
    inv.col(c) = ldlt.solve(Matrix::Identity(n, n).col(c));
  }
  return inv;
}

CurvatureTensor curvature(const MetricJet& mj, double cond_limit) {
  const int n = mj.dim;
  const Matrix ginv = metric_inverse(mj.g, cond_limit);
  CurvatureTensor R(n);
  for (int k = 0; k < n; ++k) {
    const Matrix left = mj.dg[static_cast<std::size_t>(k)] * ginv;
    for (int l = 0; l < n; ++l) {
      const Matrix m = -mj.ddbar(k, l) + left * mj.dbarg[static_cast<std::size_t>(l)];
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) R(i, j, k, l) = m(i, j);
    }
  }
  return R;
}

double gnorm2(const Matrix& g, std::span<const cplx> xi) {
  cplx s = 0.0;
  for (Eigen::Index i = 0; i < g.rows(); ++i)
    for (Eigen::Index j = 0; j < g.cols(); ++j)
      s += g(i, j) * xi[static_cast<std::size_t>(i)] * std::conj(xi[static_cast<std::size_t>(j)]);
  return s.real();
}

double hsc(const Matrix& g, const CurvatureTensor& R, std::span<const cplx> xi) {
  if (static_cast<int>(xi.size()) != R.dim()) {
    throw Error(ErrorCode::InvalidArgument, "direction has wrong dimension");
  }
  double norm = 0.0;
  for (const cplx& x : xi) norm = std::max(norm, std::abs(x));
  if (norm == 0.0) throw Error(ErrorCode::ZeroVector, "holomorphic sectional curvature of zero vector");
  const double q = gnorm2(g, xi);
  if (!(q > 0.0)) throw Error(ErrorCode::NotPositiveDefinite, "direction has non-positive length");
  const cplx num = R.quartic(xi);
  const double scale = R.quartic_scale(xi);
  if (std::abs(num.imag()) > 1e-10 * std::max(scale, 1e-300) && std::abs(num.imag()) > 1e-300) {
    std::ostringstream os;
    os << "curvature numerator has imaginary part " << num.imag() << " (scale " << scale << ")";
    throw Error(ErrorCode::ImaginaryResidue, os.str());
  }
  return 2.0 * num.real() / (q * q);
}

double hsc(const MetricJet& mj, const CurvatureTensor& R, std::span<const cplx> xi) {
  return hsc(mj.g, R, xi);
}

double hsc_at(const MetricSpec& spec, std::span<const cplx> point, std::span<const cplx> xi) {
  const MetricJet mj = metric_jet(spec, point);
  return hsc(mj, curvature(mj), xi);
}

double gaussian_curvature_1d(const MetricSpec& spec, std::span<const cplx> point) {
  if (spec.dim() != 1) throw Error(ErrorCode::InvalidArgument, "Gaussian curvature needs a 1-D metric");
  require_in_box(spec, point);
  const Jet2 g = evaluate_jet(spec.entries[0][0], point, 1);
  if (!(g.value().real() > kPositivityTolerance)) {
    throw Error(ErrorCode::Singular, "metric value not positive");
  }
  const Jet2 lg = log(g);
  return -(2.0 / g.value().real()) * lg.ddbar(0, 0).real();
}

MetricSpec restrict(const MetricSpec& spec, const std::map<int, cplx>& fixed) {
  for (const auto& [k, v] : fixed) {
    if (k < 0 || k >= spec.n) throw Error(ErrorCode::IndexOutOfRange, "restricted coordinate out of range");
    if (!spec.box.coords[static_cast<std::size_t>(k)].contains(v)) {
      throw Error(ErrorCode::OutsideBox, "restriction value z" + std::to_string(k + 1) +
                                             " outside its box slice");
    }
  }
  std::vector<int> renumber(static_cast<std::size_t>(spec.n), -1);
  int next = 0;
  for (int k = 0; k < spec.n; ++k) {
    if (!fixed.count(k)) renumber[static_cast<std::size_t>(k)] = next++;
  }
  std::vector<int> kept_rows;
  for (int k = 0; k < spec.dim(); ++k) {
    if (!fixed.count(k)) kept_rows.push_back(k);
  }
  if (kept_rows.empty()) {
    throw Error(ErrorCode::InvalidArgument, "restriction fixes every metric coordinate");
  }
  MetricSpec out;
  out.n = next;
  std::ostringstream name;
  name << spec.name << "|";
  bool first = true;
  for (const auto& [k, v] : fixed) {
    name << (first ? "" : ",") << "z" << k + 1 << "=" << v.real()
         << (v.imag() < 0 ? "-" : "+") << std::abs(v.imag()) << "i";
    first = false;
  }
  out.name = name.str();
  for (int i : kept_rows) {
    std::vector<Expr> row;
    for (int j : kept_rows) {
      row.push_back(substitute(spec.entries[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)],
                               fixed, renumber));
    }
    out.entries.push_back(std::move(row));
  }
  for (int k = 0; k < spec.n; ++k) {
    if (!fixed.count(k)) out.box.coords.push_back(spec.box.coords[static_cast<std::size_t>(k)]);
  }
  check_shape(out);
  return out;
}

}  // namespace hsclab
