#pragma once

#include "hsclab/expr.hpp"
#include "hsclab/jet.hpp"
#include "hsclab/random.hpp"

namespace hsclab::testing {

/// Random DSL expression in z1..zn that is smooth and well scaled on the
/// polydisk of radius 1: divisions and negative powers only hit
/// denominators bounded away from zero, exp only wraps shallow arguments.
[[nodiscard]] Expr random_expression(Rng& rng, int n, int depth = 3);

/// max over value and all first/mixed derivatives of |a - b|, divided by
/// max(1, largest component of a).
[[nodiscard]] double jet_relative_error(const Jet2& a, const Jet2& b);

/// Finite-difference jet of `e` at `point` (extended precision evaluation).
[[nodiscard]] Jet2 expression_fd_jet(const Expr& e, std::span<const cplx> point);

}  // namespace hsclab::testing
