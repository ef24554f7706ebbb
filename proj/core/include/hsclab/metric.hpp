#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "hsclab/expr.hpp"
#include "hsclab/random.hpp"
#include "hsclab/types.hpp"

namespace hsclab {

using Matrix = Eigen::MatrixXcd;

/// Domain of one complex coordinate: a rectangle in the plane, optionally
/// intersected with the closed disk |z| <= radius.
struct CoordDomain {
  double re_min = -1.0;
  double re_max = 1.0;
  double im_min = -1.0;
  double im_max = 1.0;
  std::optional<double> radius;

  static CoordDomain disk(double r) { return {-r, r, -r, r, r}; }
  static CoordDomain rect(double re_lo, double re_hi, double im_lo, double im_hi) {
    return {re_lo, re_hi, im_lo, im_hi, std::nullopt};
  }

  [[nodiscard]] bool contains(cplx z, double tol = 1e-12) const;
  [[nodiscard]] cplx center() const;
  [[nodiscard]] cplx sample(Rng& rng) const;
  /// Deterministic grid with `per_axis` nodes per real axis (polar for disks).
  [[nodiscard]] CVec grid(int per_axis) const;

  friend bool operator==(const CoordDomain&, const CoordDomain&) = default;
};

/// Chart box: one domain per coordinate. Closed; boundary points belong to it.
struct ChartBox {
  std::vector<CoordDomain> coords;

  static ChartBox polydisk(int n, double r = 0.95);

  [[nodiscard]] int size() const { return static_cast<int>(coords.size()); }
  [[nodiscard]] bool contains(std::span<const cplx> point, double tol = 1e-12) const;
  [[nodiscard]] CVec center() const;
  [[nodiscard]] CVec sample(Rng& rng) const;

  friend bool operator==(const ChartBox&, const ChartBox&) = default;
};

/// Symbolic Hermitian metric g_{i jbar} on a chart.
///
/// `n` is the number of coordinates the entries may reference. The entry
/// matrix is dim x dim with dim <= n: the metric lives on z1..z_dim, and any
/// further coordinates are parameters (a family of metrics, e.g. the fiber
/// metrics of a fibration indexed by base coordinates).
struct MetricSpec {
  std::string name;
  int n = 0;
  std::vector<std::vector<Expr>> entries;
  ChartBox box;

  [[nodiscard]] int dim() const { return static_cast<int>(entries.size()); }
  [[nodiscard]] bool is_family() const { return dim() < n; }
};

/// Builds a spec from DSL strings; checks shapes and variable ranges.
[[nodiscard]] MetricSpec make_metric(std::string name, int n,
                                     const std::vector<std::vector<std::string>>& entries,
                                     ChartBox box);
/// Same checks for already-built expression matrices.
void check_shape(const MetricSpec& spec);

/// Evaluated matrix [g_{i jbar}(p)].
[[nodiscard]] Matrix evaluate_matrix(const MetricSpec& spec, std::span<const cplx> point);

/// Smallest eigenvalue of the Hermitian part of `m`.
[[nodiscard]] double min_hermitian_eigenvalue(const Matrix& m);
/// max |m_ij - conj(m_ji)|.
[[nodiscard]] double hermitian_defect(const Matrix& m);

inline constexpr double kHermitianTolerance = 1e-10;
inline constexpr double kPositivityTolerance = 1e-12;

struct ValidationReport {
  int samples = 0;
  std::uint64_t seed = 0;
  double worst_hermitian_defect = 0.0;
  CVec defect_point;
  double min_eigenvalue = 0.0;
  CVec min_eigenvalue_point;
};

/// Checks Hermitian symmetry and positive definiteness at `samples` uniform
/// random points of the box. Throws WitnessError (HermitianDefect or
/// NotPositiveDefinite) carrying the offending point.
ValidationReport validate(const MetricSpec& spec, int samples, std::uint64_t seed);

/// Named metrics:
///   flat(n), poincare, fs_affine, paper_base, paper_fiber, paper_G(lambda),
///   warp_demo(lambda)
/// `lambda` may be a positive number or a DSL expression in z2.
[[nodiscard]] MetricSpec catalog(std::string_view name);
[[nodiscard]] std::vector<std::string> catalog_names();

/// Source strings shared by the catalog and the fibration fixtures.
namespace formulas {
inline constexpr const char* kPoincare = "(1-z1*conj(z1))^-2";
inline constexpr const char* kFsAffine = "(1+z1*conj(z1))^-2";
inline constexpr const char* kPaperBaseZ1 = "1/(1+z1*conj(z1))";
inline constexpr const char* kPaperBaseZ2 = "1/(1+z2*conj(z2))";
inline constexpr const char* kPaperFiber =
    "exp(2*z2*conj(z2))/(1+(z1*conj(z1))^2*exp(4*z2*conj(z2)))";
inline constexpr const char* kWarpDemoFiber = "exp(z2*conj(z2))/(1+z1*conj(z1))^2";
}  // namespace formulas

// JSON metric files:
//   {"name": ..., "n": 2, "entries": [["...", "..."], ...],
//    "box": [{"re": [a, b], "im": [c, d], "radius": r?}, ...]}
[[nodiscard]] MetricSpec metric_from_json(std::string_view text);
[[nodiscard]] std::string metric_to_json(const MetricSpec& spec);
[[nodiscard]] MetricSpec load_metric_file(const std::string& path);

}  // namespace hsclab
