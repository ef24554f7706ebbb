#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "hsclab/curvature.hpp"
#include "hsclab/metric.hpp"

namespace hsclab {

// ---- splitting lemma -------------------------------------------------------
//
// Indices 0..s-1 are fiber directions, s..n-1 base directions.

struct Lemma1Constants {
  double K0 = 0.0;
  double K1 = 0.0;
  double K2_required = 0.0;  // Kcal * K1
  int n = 0;
  int s = 0;
  double a = 0.0;
  double b = 0.0;
  double c = 0.0;
  double d = 0.0;
  double Kcal = 0.0;

  /// 4a^2(n-s)^3 + 6b^2(n-s)^2 + 4c^2 s(n-s) + (4d^2/c^2) s^2(n-s).
  [[nodiscard]] double constraint_sum() const;
  /// The four summands of constraint_sum().
  [[nodiscard]] std::array<double, 4> constraint_terms() const;
  /// (4/a^2) s(n-s)^2 + 4s(n-s) + (6/b^2) s^2 + (4/(c^2 d^2)) s^3.
  [[nodiscard]] double kcal_formula() const;
};

/// Weights chosen so that each constraint term equals K0/(8 K1).
[[nodiscard]] Lemma1Constants lemma1_constants(double K0, double K1, int n, int s);

struct IneqReport {
  std::size_t trials = 0;
  std::array<std::size_t, 3> violations{};
  std::array<double, 3> worst_slack{};  // min of rhs - lhs
  std::optional<std::array<double, 4>> witness;

  [[nodiscard]] bool ok() const { return violations[0] + violations[1] + violations[2] == 0; }
};

/// The three product-sum inequalities at the moduli (x, y, z, w):
///   x y z w <= a^2 x^4 + y^4/a^2 + z^2 w^2
///   x y z w <= b^2 x^2 y^2 + z^2 w^2/b^2
///   x y z w <= c^2 x^2 y^2 + (d^2/c^2) z^4 + w^4/(c^2 d^2)
/// Returns rhs - lhs for each.
[[nodiscard]] std::array<double, 3> prod_ineq_slacks(double a, double b, double c, double d,
                                                     const std::array<double, 4>& m);
[[nodiscard]] IneqReport prod_ineq_check(double a, double b, double c, double d, std::size_t trials,
                                         std::uint64_t seed);

struct HypothesisTensor {
  int n = 0;
  int s = 0;
  CurvatureTensor R;
  double K0 = 0.0;
  double K1 = 0.0;
  double K2 = 0.0;
};

/// Fiber block K0 (d_ij d_kl + d_il d_kj)/2, base block the same with K2, and
/// mixed entries uniform in the disk of radius 0.9 K1 * noise_scale, pair
/// symmetric (entries equal to their own partner are real).
[[nodiscard]] HypothesisTensor random_hypothesis_tensor(double K0, double K1, double K2, int n, int s,
                                                        std::uint64_t seed, double noise_scale = 1.0);

struct HypothesisReport {
  double hyp1_worst_slack = 0.0;  // min of fiber quartic - K0 * (sum |xi_i|^2)^2 (unit xi)
  double hyp3_worst_slack = 0.0;
  double max_mixed = 0.0;         // max |R| over entries with fiber and base indices
  double max_fiber_touching = 0.0;  // max |R| over entries with at least one fiber index
  bool hyp1 = false;
  bool hyp2 = false;  // mixed entries only, which is all the bound uses
  bool hyp2_literal = false;
  bool hyp3 = false;

  [[nodiscard]] bool ok() const { return hyp1 && hyp2 && hyp3; }
};

[[nodiscard]] HypothesisReport check_hypotheses(const HypothesisTensor& t, std::size_t trials,
                                                std::uint64_t seed);

struct BoundReport {
  std::size_t trials = 0;
  std::size_t violations = 0;
  std::size_t nonpositive = 0;
  double worst_slack = 0.0;
  double min_numerator = 0.0;
  std::optional<CVec> witness;

  [[nodiscard]] bool ok() const { return violations == 0 && nonpositive == 0; }
};

inline constexpr double kBoundTolerance = 1e-9;

/// On Euclidean-unit xi checks
///   sum R xi conj(xi) xi conj(xi) >= (K0/2) F + (K2 - K1 Kcal) B - 1e-9
/// with F = (sum_fiber |xi|^2)^2 and B = (sum_base |xi|^2)^2, and that the
/// left side is strictly positive. Throws HypothesisViolation if
/// K2 < Kcal K1.
[[nodiscard]] BoundReport lemma1_bound_check(const HypothesisTensor& t, const Lemma1Constants& consts,
                                             std::size_t trials, std::uint64_t seed);

// ---- one-dimensional sums --------------------------------------------------

/// Curvature of the 1-D metric g + lambda h at a point from the jets of g and
/// h and their own curvatures KG and KH:
///   (g^3 KG + lambda^2 h^3 KH + 2 lambda (-h g_zzbar - g h_zzbar + g_z h_zbar + h_z g_zbar)) / (g + lambda h)^3
[[nodiscard]] double lemma2_curvature(const MetricJet& gjet, const MetricJet& hjet, double KG, double KH,
                                      double lambda);

struct Lemma2Inputs {
  MetricJet gjet;
  MetricJet hjet;
  double KG = 0.0;
  double KH = 0.0;

  [[nodiscard]] double at(double lambda) const { return lemma2_curvature(gjet, hjet, KG, KH, lambda); }
};

[[nodiscard]] Lemma2Inputs lemma2_inputs(const MetricSpec& g, const MetricSpec& h,
                                         std::span<const cplx> point);

/// The 1-D spec g + lambda h (both 1-D, same coordinate count).
[[nodiscard]] MetricSpec summed_metric(const MetricSpec& g, const MetricSpec& h, double lambda);

struct ThresholdResult {
  double lambda_t = 0.0;
  std::vector<std::pair<double, double>> history;      // (lambda, K) along the schedule
  std::vector<std::pair<double, double>> persistence;  // (lambda', K) for lambda' > lambda_t
  bool persistent = false;
};

inline constexpr double kThresholdStart = 1e-6;
inline constexpr int kThresholdBisections = 40;

/// Smallest lambda on the schedule (doubling from 1e-6, then 40 bisections)
/// with positive curvature of g + lambda h at the point. Throws
/// HypothesisViolation if K(h) <= 0 there and NotReached past lambda_max.
[[nodiscard]] ThresholdResult lemma2_threshold(const MetricSpec& g, const MetricSpec& h,
                                               std::span<const cplx> point, double lambda_max);

struct DecayReport {
  double KH = 0.0;
  std::vector<std::pair<double, double>> values;  // (lambda, K)
  double limit_rel_error = 0.0;                   // |lambda K - KH| / |KH| at the largest lambda
  double C = 0.0;                                 // max lambda |K|
  double tail_slope = 0.0;                        // log-log slope of |K| over the last decade
  bool ok = false;
};

/// Requires increasing lambdas with the last >= 1e4.
[[nodiscard]] DecayReport decay_check(const MetricSpec& g, const MetricSpec& h, std::span<const cplx> point,
                                      std::span<const double> lambdas);

/// Least-squares slope of log|y| against log x (pairs with y == 0 skipped).
[[nodiscard]] double loglog_slope(std::span<const std::pair<double, double>> xy);

}  // namespace hsclab
