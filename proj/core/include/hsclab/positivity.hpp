#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "hsclab/curvature.hpp"
#include "hsclab/metric.hpp"

namespace hsclab {

/// HSC values below this count as genuinely negative; values in
/// [-1e-8, 1e-8] are treated as zero (roundoff around flat directions).
inline constexpr double kNegativityThreshold = -1e-8;
inline constexpr double kPositivityThreshold = 1e-8;

struct DirectionSearch {
  int dirs = 64;        // random g-unit directions sampled
  int starts = 8;       // of which the first `starts` are locally refined
  int max_iters = 200;  // refinement sweeps per start
  double min_step = 1e-9;
};

/// HSC at one point as a function of direction, with the metric whitened so
/// that g-unit directions are Euclidean-unit vectors u (xi = conj(L^{-*} u)
/// for g = L L^*).
class DirectionalHsc {
 public:
  DirectionalHsc(const MetricJet& mj, CurvatureTensor R);

  [[nodiscard]] int dim() const noexcept { return R_.dim(); }
  /// Direction in coordinates for a whitened vector u.
  [[nodiscard]] CVec direction(std::span<const cplx> u) const;
  /// HSC for whitened u (any nonzero length).
  [[nodiscard]] double value(std::span<const cplx> u) const;
  [[nodiscard]] const Matrix& g() const noexcept { return g_; }
  [[nodiscard]] const CurvatureTensor& tensor() const noexcept { return R_; }

 private:
  Matrix g_;
  Matrix lower_;  // Cholesky factor of g
  CurvatureTensor R_;
};

struct PointMinimum {
  double value = 0.0;
  CVec dir;                 // g-unit witness direction
  double max_sampled = 0.0;  // largest HSC among the raw sampled directions
};

/// Multi-start minimisation of xi -> K(xi) over the g-unit sphere at `point`.
/// Deterministic in `seed`. Direction streams are prefix-nested, so larger
/// `dirs`/`starts` never give a larger minimum.
[[nodiscard]] PointMinimum min_hsc_at_point(const MetricSpec& spec, std::span<const cplx> point,
                                            const DirectionSearch& search, std::uint64_t seed);
[[nodiscard]] PointMinimum min_hsc_directional(const DirectionalHsc& f,
                                               const DirectionSearch& search, std::uint64_t seed);

struct ScanParams {
  int grid_per_axis = 9;
  int random_points = 32;
  DirectionSearch search{};
  std::uint64_t seed = 0;
  int threads = 0;  // 0: hardware concurrency
};

struct PointSample {
  CVec point;
  double min_hsc = 0.0;
};

struct ScanReport {
  std::string metric;
  double min_hsc = 0.0;
  CVec witness_point;
  CVec witness_dir;
  double max_hsc = 0.0;
  std::size_t points_scanned = 0;
  int dirs_per_point = 0;
  int starts = 0;
  double margin = 0.0;  // |min_hsc|
  std::uint64_t seed = 0;
  std::vector<PointSample> samples;

  /// "positive", "negative" or "indeterminate"; always an empirical verdict.
  [[nodiscard]] std::string verdict() const;
};

/// Tensor-product grid of the per-coordinate grids, followed by
/// `random_points` uniform samples drawn from `seed`.
[[nodiscard]] std::vector<CVec> scan_points(const ChartBox& box, int grid_per_axis,
                                            int random_points, std::uint64_t seed);

/// Global sampled minimum of the HSC over the chart. Points are processed in
/// parallel with per-point RNG streams; ties break lexicographically on the
/// point coordinates, so the report is independent of scheduling.
[[nodiscard]] ScanReport scan_chart(const MetricSpec& spec, const ChartBox& box,
                                    const ScanParams& params);
[[nodiscard]] ScanReport scan_chart(const MetricSpec& spec, const ScanParams& params);

struct NegativeWitness {
  CVec point;
  CVec dir;
  double value = 0.0;
  std::size_t points_tried = 0;
};

/// First point (box center, then uniform samples) whose minimal HSC is below
/// kNegativityThreshold, refined by joint pattern search over point and
/// direction. Absence is not a proof of semi-positivity.
[[nodiscard]] std::optional<NegativeWitness> find_negative_witness(
    const MetricSpec& spec, const ChartBox& box, int budget, std::uint64_t seed,
    const DirectionSearch& search = {});

}  // namespace hsclab
