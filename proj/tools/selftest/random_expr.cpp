#include "random_expr.hpp"

#include <algorithm>
#include <cmath>

namespace hsclab::testing {

namespace {

Expr random_literal(Rng& rng) {
  const double re = std::round(uniform(rng, -1.5, 1.5) * 100.0) / 100.0;
  if (uniform(rng, 0.0, 1.0) < 0.3) {
    const double im = std::round(uniform(rng, -1.0, 1.0) * 100.0) / 100.0;
    return Expr::literal(cplx(re, im));
  }
  return Expr::literal(re);
}

Expr random_leaf(Rng& rng, int n) {
  const double u = uniform(rng, 0.0, 1.0);
  const int k = static_cast<int>(uniform(rng, 0.0, n)) % n;
  if (u < 0.35) return Expr::var(k);
  if (u < 0.6) return Expr::conj(Expr::var(k));
  if (u < 0.7) return Expr::imag_unit();
  return random_literal(rng);
}

/// c + |z_k|^2 with c in [1, 2]: never below 1 anywhere.
Expr safe_denominator(Rng& rng, int n) {
  const int k = static_cast<int>(uniform(rng, 0.0, n)) % n;
  const double c = std::round(uniform(rng, 1.0, 2.0) * 100.0) / 100.0;
  Expr r2 = Expr::mul(Expr::var(k), Expr::conj(Expr::var(k)));
  if (uniform(rng, 0.0, 1.0) < 0.3) r2 = Expr::exp(Expr::mul(Expr::literal(0.5), r2));
  return Expr::add(Expr::literal(c), r2);
}

}  // namespace

Expr random_expression(Rng& rng, int n, int depth) {
  if (depth <= 0) return random_leaf(rng, n);
  const double u = uniform(rng, 0.0, 1.0);
  if (u < 0.1) return random_leaf(rng, n);
  if (u < 0.18) return Expr::neg(random_expression(rng, n, depth - 1));
  if (u < 0.26) return Expr::conj(random_expression(rng, n, depth - 1));
  if (u < 0.34) return Expr::exp(random_expression(rng, n, std::min(depth - 1, 1)));
  if (u < 0.5) return Expr::add(random_expression(rng, n, depth - 1), random_expression(rng, n, depth - 1));
  if (u < 0.6) return Expr::sub(random_expression(rng, n, depth - 1), random_expression(rng, n, depth - 1));
  if (u < 0.78) return Expr::mul(random_expression(rng, n, depth - 1), random_expression(rng, n, depth - 1));
  if (u < 0.9) return Expr::div(random_expression(rng, n, depth - 1), safe_denominator(rng, n));
  const int e = static_cast<int>(uniform(rng, 0.0, 1.0) * 6.0) - 2;  // -2..3
  if (e < 0) return Expr::pow(safe_denominator(rng, n), e);
  return Expr::pow(random_expression(rng, n, std::min(depth - 1, 1)), e);
}

double jet_relative_error(const Jet2& a, const Jet2& b) {
  const int n = a.dim();
  double scale = std::abs(a.value());
  double diff = std::abs(a.value() - b.value());
  for (int k = 0; k < n; ++k) {
    scale = std::max({scale, std::abs(a.d(k)), std::abs(a.dbar(k))});
    diff = std::max({diff, std::abs(a.d(k) - b.d(k)), std::abs(a.dbar(k) - b.dbar(k))});
    for (int l = 0; l < n; ++l) {
      scale = std::max(scale, std::abs(a.ddbar(k, l)));
      diff = std::max(diff, std::abs(a.ddbar(k, l) - b.ddbar(k, l)));
    }
  }
  return diff / std::max(1.0, scale);
}

Jet2 expression_fd_jet(const Expr& e, std::span<const cplx> point) {
  return fd_jet([&e](std::span<const ExtComplex> p) { return evaluate_ext(e, p); }, point);
}

}  // namespace hsclab::testing
