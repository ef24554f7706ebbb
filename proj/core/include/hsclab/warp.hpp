#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "hsclab/error.hpp"
#include "hsclab/metric.hpp"
#include "hsclab/positivity.hpp"

namespace hsclab {

/// Fibration over a product chart: coordinates z1..zs on the fiber and
/// z_{s+1}..z_n on the base, n = s + m.
///
/// The assembled metric is
///   [ fiber_entries          coupling              ]
///   [ coupling^*     (mu0 + lambda) base_entries   ]
/// `fiber_entries` may depend on all n coordinates (the fiber family, with
/// base coordinates as parameters); `base_entries` only on base coordinates,
/// referenced by their global names z_{s+1}..z_n. An empty coupling means zero.
struct FibrationSpec {
  std::string name = "fibration";
  int s = 0;
  int m = 0;
  std::vector<std::vector<Expr>> fiber_entries;
  std::vector<std::vector<Expr>> base_entries;
  std::vector<std::vector<Expr>> coupling;  // s x m or empty
  double mu0 = 0.0;
  ChartBox box;

  [[nodiscard]] int n() const { return s + m; }
  [[nodiscard]] bool coupled() const { return !coupling.empty(); }
};

/// Shape and variable-range checks. Throws InvalidArgument / VariableIndex.
void check_fibration(const FibrationSpec& f);

[[nodiscard]] FibrationSpec make_fibration(std::string name, int s, int m,
                                           const std::vector<std::vector<std::string>>& fiber,
                                           const std::vector<std::vector<std::string>>& base,
                                           const std::vector<std::vector<std::string>>& coupling,
                                           double mu0, ChartBox box);

/// Twisted fixture: fiber exp(|z2|^2)/(1+|z1|^2)^2 over the base 1/(1+|z2|^2).
[[nodiscard]] FibrationSpec warp_demo_fibration();
/// Semi-positive fiber family 1/(1+r^2)-type over the base 1/(1+|z2|^2).
[[nodiscard]] FibrationSpec example1_fibration();
/// fs_affine fiber over the base 1/(1+|z2|^2), no twist.
[[nodiscard]] FibrationSpec product_fibration();
/// Two-dimensional fiber over a two-dimensional base with a constant coupling
/// block and mu0 = 0.5; exercises every term of the inverse asymptotics.
[[nodiscard]] FibrationSpec coupled_fibration();

/// Warped metric with base weight mu0 + lambda. Checked at `validate_samples`
/// random points (0 skips the check).
[[nodiscard]] MetricSpec assemble_psi(const FibrationSpec& f, double lambda, int validate_samples = 64,
                                      std::uint64_t seed = 0);

/// Base metric on its own m coordinates (renumbered from z1).
[[nodiscard]] MetricSpec base_metric(const FibrationSpec& f);
/// Fiber family: s x s entries over all n coordinates.
[[nodiscard]] MetricSpec fiber_family(const FibrationSpec& f);
/// Fiber metric over the base point t (m values).
[[nodiscard]] MetricSpec fiber_at(const FibrationSpec& f, std::span<const cplx> t);

inline constexpr int kMu0MinExponent = -10;
inline constexpr int kMu0MaxExponent = 40;

struct Mu0Result {
  double mu0 = 0.0;
  std::vector<std::pair<double, double>> history;  // (mu, min eigenvalue over samples)
  std::size_t samples = 0;
};

/// Smallest mu = 2^k, k = -10..40, making the assembled form at lambda = 0
/// positive definite at every sample (a coarse grid plus `samples` random
/// points). Throws NotPositiveDefinite when the fiber or base block
/// degenerates at a sample and NotReached past 2^40.
[[nodiscard]] Mu0Result mu0_search(const FibrationSpec& f, int samples, std::uint64_t seed);

struct LambdaSearchOptions {
  double lambda_min = 1e-3;
  double lambda_max = 1073741824.0;  // 2^30
  double rel_tol = 1e-3;
  int max_bisections = 20;
  int hypothesis_fibers = 20;
};

struct LambdaSearchResult {
  double lambda_star = 0.0;
  double min_hsc_at_star = 0.0;
  std::vector<std::pair<double, double>> history;      // (lambda, min sampled HSC)
  std::vector<std::pair<double, double>> persistence;  // 2 lambda*, 4 lambda*
  bool persistent = false;
  double base_min_hsc = 0.0;
  double fiber_min_hsc = 0.0;
  std::uint64_t seed = 0;
};

/// Raised when lambda_max is passed without a positive scan; keeps the history.
class LambdaSearchExhausted : public Error {
 public:
  LambdaSearchExhausted(std::string msg, std::vector<std::pair<double, double>> history)
      : Error(ErrorCode::NotReached, std::move(msg)), history_(std::move(history)) {}
  [[nodiscard]] const std::vector<std::pair<double, double>>& history() const noexcept { return history_; }

 private:
  std::vector<std::pair<double, double>> history_;
};

/// Checks the hypotheses first (base scan and fiber scans over sampled base
/// points must be positive; WitnessError HypothesisViolation otherwise), then
/// doubles lambda from lambda_min until the scan minimum of the warped metric
/// is positive and bisects geometrically down to rel_tol.
[[nodiscard]] LambdaSearchResult lambda_search(const FibrationSpec& f, const ScanParams& params,
                                               const LambdaSearchOptions& opts = {});

// ---- block algebra ---------------------------------------------------------

/// det(P) det(S - R P^{-1} Q) for the split of `M` after row/column p.
[[nodiscard]] cplx block_determinant(const Matrix& M, int p);

/// Random Hermitian positive definite matrix with eigenvalues in [0.5, 2.5]
/// (unitary conjugation of a random diagonal).
[[nodiscard]] Matrix random_pd_matrix(int n, Rng& rng);

struct AsymptoticsTerm {
  std::string name;
  double predicted_slope = 0.0;
  double fitted_slope = 0.0;
  std::vector<double> errors;  // per lambda
  bool vanishes = false;       // identically zero up to roundoff
  bool ok = false;
};

struct AsymptoticsReport {
  std::vector<double> lambdas;
  std::vector<AsymptoticsTerm> terms;
  Matrix base_transform;  // T with T^T g(point) conj(T) = I on the base block

  [[nodiscard]] bool ok() const;
};

inline constexpr double kSlopeTolerance = 0.2;

/// Inverse-matrix asymptotics of the warped metric at `point`, after a
/// constant linear change of base coordinates that makes the base metric the
/// identity there:
///   h^{ab} - (A^{-1})_{ab} ~ 1/lambda, lambda h^{xx} - 1 ~ 1/lambda,
///   h^{a x} ~ 1/lambda, h^{x y} ~ 1/lambda^2 (x != y)
/// (a, b fiber; x, y base). Requires increasing lambdas ending at >= 1e4.
[[nodiscard]] AsymptoticsReport block_inverse_asymptotics_check(const FibrationSpec& f,
                                                                std::span<const cplx> point,
                                                                std::span<const double> lambdas);

struct DecreasingReport {
  std::size_t trials = 0;
  std::size_t violations = 0;
  double worst_gap = 0.0;      // max of K(slice) - K(ambient)
  double max_abs_diff = 0.0;   // max |K(slice) - K(ambient)|
  std::optional<CVec> witness_point;
  std::optional<CVec> witness_dir;

  [[nodiscard]] bool ok() const { return violations == 0; }
};

inline constexpr double kDecreasingTolerance = 1e-9;

/// Compares the HSC of the metric restricted to the coordinate slice with the
/// ambient HSC in the same (embedded) direction, at random points. Coordinates
/// outside the slice take the values in `pinned` when given, else random ones.
[[nodiscard]] DecreasingReport submanifold_decreasing_check(const MetricSpec& spec, std::span<const int> slice,
                                                            std::size_t trials, std::uint64_t seed,
                                                            const std::map<int, cplx>& pinned = {});

struct GrowthReport {
  std::vector<std::pair<double, double>> values;  // (lambda, numerator)
  double slope = 0.0;
  bool ok = false;
};

inline constexpr double kGrowthMinSlope = 0.8;

/// Curvature numerator sum R xi conj(xi) xi conj(xi) of the warped metric for
/// a fixed Euclidean-unit base direction `base_dir` (fiber part zero), over
/// the given lambdas; passes when every value is positive and the log-log
/// slope is at least 0.8.
[[nodiscard]] GrowthReport base_numerator_growth_check(const FibrationSpec& f, std::span<const cplx> point,
                                                       std::span<const cplx> base_dir,
                                                       std::span<const double> lambdas);

// ---- semi-positive fibers ---------------------------------------------------

struct Example1Entry {
  double lambda = 0.0;
  double base_min_hsc = 0.0;
  double fiber_min_hsc = 0.0;
  std::optional<NegativeWitness> witness;
  bool ok = false;
};

struct Example1Report {
  double fiber_origin_hsc = 0.0;  // fiber z2 = 0 at z1 = 0
  double base_origin_hsc = 0.0;
  std::vector<Example1Entry> entries;
  std::vector<CVec> fiber_points;  // base points of the sampled fibers

  [[nodiscard]] bool ok() const;
};

inline constexpr int kExample1Fibers = 20;

/// For each lambda: positive base scan, semi-positive scans of 20 sampled
/// fibers, and a negative witness for the warped metric paper_G(lambda).
[[nodiscard]] Example1Report example1_report(std::span<const double> lambdas, const ScanParams& params,
                                             int witness_budget = 64);

// ---- files -----------------------------------------------------------------

// {"name": ..., "s": 1, "m": 1, "fiber_entries": [[...]], "base_entries": [[...]],
//  "coupling": [[...]]?, "mu0": 0, "box": [...]?}
[[nodiscard]] FibrationSpec fibration_from_json(std::string_view text);
[[nodiscard]] std::string fibration_to_json(const FibrationSpec& f);
[[nodiscard]] FibrationSpec load_fibration_file(const std::string& path);

}  // namespace hsclab
