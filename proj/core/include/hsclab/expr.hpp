#pragma once

#include <map>
#include <memory>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "hsclab/error.hpp"
#include "hsclab/jet.hpp"
#include "hsclab/types.hpp"

namespace hsclab {

enum class ExprKind { Literal, ImagUnit, Var, Neg, Conj, Exp, Add, Sub, Mul, Div, Pow };

/// Immutable expression tree over the coordinates z_1..z_n and their conjugates.
///
/// Nodes are shared; copying an Expr is cheap. Variable indices are stored
/// 0-based (z1 is index 0).
class Expr {
 public:
  Expr();  // literal 0

  static Expr literal(cplx value);
  static Expr imag_unit();
  static Expr var(int index);
  static Expr neg(Expr a);
  static Expr conj(Expr a);
  static Expr exp(Expr a);
  static Expr add(Expr a, Expr b);
  static Expr sub(Expr a, Expr b);
  static Expr mul(Expr a, Expr b);
  static Expr div(Expr a, Expr b);
  static Expr pow(Expr base, int exponent);

  [[nodiscard]] ExprKind kind() const noexcept { return node_->kind; }
  [[nodiscard]] cplx literal_value() const noexcept { return node_->value; }
  [[nodiscard]] int var_index() const noexcept { return node_->index; }
  [[nodiscard]] int exponent() const noexcept { return node_->index; }
  /// Operand of unary nodes, base of Pow, left side of binary nodes.
  [[nodiscard]] const Expr& lhs() const { return node_->children[0]; }
  [[nodiscard]] const Expr& rhs() const { return node_->children[1]; }

  /// Structural equality.
  friend bool operator==(const Expr& a, const Expr& b);

 private:
  struct Node {
    ExprKind kind = ExprKind::Literal;
    cplx value{};
    int index = 0;  // variable index or exponent
    std::vector<Expr> children;
  };

  explicit Expr(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
  static Expr make(ExprKind kind, std::vector<Expr> children, cplx value = {}, int index = 0);

  std::shared_ptr<const Node> node_;
};

/// Parses a metric-component expression in z1..zn.
///
///   expr   := term (("+"|"-") term)*
///   term   := factor (("*"|"/") factor)*
///   factor := base ("^" integer)?
///   base   := number | "i" | "z" digits | ("conj"|"exp") "(" expr ")"
///           | "(" expr ")" | "-" base
///
/// The exponent may carry a sign ("z1^-2") or be parenthesised ("z1^(-2)").
[[nodiscard]] Expr parse(std::string_view source, int n);

/// Prints in the grammar above with minimal parentheses. For trees produced
/// by parse(), parse(to_string(e)) == e.
[[nodiscard]] std::string to_string(const Expr& e);

/// Largest 0-based variable index referenced, or -1.
[[nodiscard]] int max_variable(const Expr& e);

/// True when z_{index+1} occurs in `e`.
[[nodiscard]] bool references(const Expr& e, int index);

/// Replaces z_k by a literal for every k in `fixed`, then renames remaining
/// variables through `renumber` (old index -> new index).
[[nodiscard]] Expr substitute(const Expr& e, const std::map<int, cplx>& fixed,
                              std::span<const int> renumber);

/// Renames variables old -> renumber[old] without substituting anything.
[[nodiscard]] Expr rename_variables(const Expr& e, std::span<const int> renumber);

/// Shortest round-trip decimal form of v.
[[nodiscard]] std::string format_real(double v);

/// c * e, returning e itself when c == 1 so scaled entries stay AST-identical.
[[nodiscard]] Expr scale(const Expr& e, cplx c);

/// Evaluates `e` in any algebra that provides +, -, *, unary -, conj, exp,
/// divide and ipow (complex scalars, Jet2). `make_const` lifts a complex
/// literal into the algebra.
template <class T, class MakeConst>
T evaluate(const Expr& e, std::span<const T> vars, const MakeConst& make_const,
           double div_eps = kDivisionEpsilon) {
  switch (e.kind()) {
    case ExprKind::Literal: return make_const(e.literal_value());
    case ExprKind::ImagUnit: return make_const(cplx(0.0, 1.0));
    case ExprKind::Var: {
      const auto k = static_cast<std::size_t>(e.var_index());
      if (k >= vars.size()) {
        throw Error(ErrorCode::VariableIndex, "variable z" + std::to_string(k + 1) +
                                                  " not bound during evaluation");
      }
      return vars[k];
    }
    case ExprKind::Neg: return -evaluate(e.lhs(), vars, make_const, div_eps);
    case ExprKind::Conj: return conj(evaluate(e.lhs(), vars, make_const, div_eps));
    case ExprKind::Exp: return exp(evaluate(e.lhs(), vars, make_const, div_eps));
    case ExprKind::Add:
      return evaluate(e.lhs(), vars, make_const, div_eps) +
             evaluate(e.rhs(), vars, make_const, div_eps);
    case ExprKind::Sub:
      return evaluate(e.lhs(), vars, make_const, div_eps) -
             evaluate(e.rhs(), vars, make_const, div_eps);
    case ExprKind::Mul:
      return evaluate(e.lhs(), vars, make_const, div_eps) *
             evaluate(e.rhs(), vars, make_const, div_eps);
    case ExprKind::Div:
      return divide(evaluate(e.lhs(), vars, make_const, div_eps),
                    evaluate(e.rhs(), vars, make_const, div_eps), div_eps);
    case ExprKind::Pow:
      return ipow(evaluate(e.lhs(), vars, make_const, div_eps), e.exponent(), div_eps);
  }
  throw Error(ErrorCode::InvalidArgument, "corrupt expression node");
}

/// Pointwise value at `point`.
[[nodiscard]] cplx evaluate(const Expr& e, std::span<const cplx> point,
                            double div_eps = kDivisionEpsilon);

/// Pointwise value in extended precision (finite-difference oracle path).
[[nodiscard]] ExtComplex evaluate_ext(const Expr& e, std::span<const ExtComplex> point,
                                      double div_eps = kDivisionEpsilon);

/// Wirtinger jet with respect to the first `jet_dim` coordinates; remaining
/// coordinates enter as constants.
[[nodiscard]] Jet2 evaluate_jet(const Expr& e, std::span<const cplx> point, int jet_dim,
                                double div_eps = kDivisionEpsilon);

/// Jet built from seeded coordinate jets, reusable across entries of one point.
[[nodiscard]] std::vector<Jet2> coordinate_jets(std::span<const cplx> point, int jet_dim);
[[nodiscard]] Jet2 evaluate_jet(const Expr& e, std::span<const Jet2> coords, int jet_dim,
                                double div_eps = kDivisionEpsilon);

}  // namespace hsclab
