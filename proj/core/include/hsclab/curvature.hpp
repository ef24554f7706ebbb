#pragma once

#include <map>
#include <span>
#include <vector>

#include "hsclab/metric.hpp"
#include "hsclab/types.hpp"

namespace hsclab {

/// Metric values and Wirtinger derivatives at one point.
///
/// dg[k](i, j)        = d g_{i jbar} / d z_k
/// dbarg[l](i, j)     = d g_{i jbar} / d zbar_l
/// ddbarg[k*dim+l](i,j) = d^2 g_{i jbar} / d z_k d zbar_l
struct MetricJet {
  int dim = 0;
  CVec point;
  Matrix g;
  std::vector<Matrix> dg;
  std::vector<Matrix> dbarg;
  std::vector<Matrix> ddbarg;

  [[nodiscard]] const Matrix& ddbar(int k, int l) const {
    return ddbarg[static_cast<std::size_t>(k * dim + l)];
  }
};

/// Jets of every entry through automatic differentiation. Throws OutsideBox
/// when `point` is not in the (closed) chart box.
[[nodiscard]] MetricJet metric_jet(const MetricSpec& spec, std::span<const cplx> point);

/// Same slots from the finite-difference oracle (independent path).
[[nodiscard]] MetricJet metric_jet_fd(const MetricSpec& spec, std::span<const cplx> point,
                                      double h = kFdStep);

/// max over i,j,l of |dbarg[l](i,j) - conj(dg[l](j,i))|.
[[nodiscard]] double jet_symmetry_defect(const MetricJet& mj);

class CurvatureTensor {
 public:
  CurvatureTensor() = default;
  explicit CurvatureTensor(int dim)
      : dim_(dim), data_(static_cast<std::size_t>(dim) * dim * dim * dim) {}

  [[nodiscard]] int dim() const noexcept { return dim_; }
  [[nodiscard]] cplx operator()(int i, int j, int k, int l) const { return data_[offset(i, j, k, l)]; }
  cplx& operator()(int i, int j, int k, int l) { return data_[offset(i, j, k, l)]; }
  [[nodiscard]] const std::vector<cplx>& data() const noexcept { return data_; }

  /// max |R(i,j,k,l) - conj(R(j,i,l,k))|.
  [[nodiscard]] double pair_symmetry_defect() const;

  /// sum R_{i jbar k lbar} xi_i conj(xi_j) xi_k conj(xi_l).
  [[nodiscard]] cplx quartic(std::span<const cplx> xi) const;
  /// Sum of moduli of the terms of quartic(); the scale for roundoff checks.
  [[nodiscard]] double quartic_scale(std::span<const cplx> xi) const;

 private:
  [[nodiscard]] std::size_t offset(int i, int j, int k, int l) const {
    const auto n = static_cast<std::size_t>(dim_);
    return ((static_cast<std::size_t>(i) * n + static_cast<std::size_t>(j)) * n +
            static_cast<std::size_t>(k)) * n + static_cast<std::size_t>(l);
  }

  int dim_ = 0;
  std::vector<cplx> data_;
};

inline constexpr double kConditionLimit = 1e12;

/// Inverse of the metric matrix via one Hermitian solve per unit vector.
/// Throws IllConditioned above `cond_limit`.
[[nodiscard]] Matrix metric_inverse(const Matrix& g, double cond_limit = kConditionLimit);

/// R_{i jbar k lbar} = -d_k dbar_l g_{i jbar} + sum_{p,q} g^{p qbar} d_k g_{i pbar} dbar_l g_{q jbar}
/// with [g^{p qbar}] the inverse matrix of [g_{i jbar}]. No Kähler assumption.
[[nodiscard]] CurvatureTensor curvature(const MetricJet& mj, double cond_limit = kConditionLimit);

/// sum g_{i jbar} xi_i conj(xi_j); the squared length of xi.
[[nodiscard]] double gnorm2(const Matrix& g, std::span<const cplx> xi);

/// Holomorphic sectional curvature
///   K(xi) = 2 sum R xi conj(xi) xi conj(xi) / (sum g g xi conj(xi) xi conj(xi)).
/// The numerator's imaginary part must be roundoff (<= 1e-10 of its term
/// scale) and is then dropped; otherwise ImaginaryResidue is thrown.
[[nodiscard]] double hsc(const MetricJet& mj, const CurvatureTensor& R, std::span<const cplx> xi);
[[nodiscard]] double hsc(const Matrix& g, const CurvatureTensor& R, std::span<const cplx> xi);

/// Convenience: metric_jet + curvature + hsc.
[[nodiscard]] double hsc_at(const MetricSpec& spec, std::span<const cplx> point,
                            std::span<const cplx> xi);

/// -(2/g) d^2 log g / dz dzbar for a 1-D metric (Gaussian curvature).
[[nodiscard]] double gaussian_curvature_1d(const MetricSpec& spec, std::span<const cplx> point);

/// Freezes the coordinates in `fixed` (0-based index -> value) and returns the
/// spec on the remaining coordinates, renumbered in order.
[[nodiscard]] MetricSpec restrict(const MetricSpec& spec, const std::map<int, cplx>& fixed);

}  // namespace hsclab
