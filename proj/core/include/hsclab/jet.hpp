#pragma once

#include <complex>
#include <functional>
#include <span>
#include <vector>

#include "hsclab/types.hpp"

namespace hsclab {

/// Second-order Wirtinger jet of a function of n complex variables.
///
/// z_k and conj(z_k) are treated as independent variables. The jet carries the
/// value, the first derivatives d/dz_k and d/dzbar_l, and the mixed second
/// derivatives d^2/dz_k dzbar_l. Pure d^2/dz dz and d^2/dzbar dzbar slots are
/// not tracked: nothing downstream of the curvature formula consumes them.
class Jet2 {
 public:
  Jet2() = default;

  /// Jet of a constant function.
  Jet2(int n, cplx value);

  [[nodiscard]] int dim() const noexcept { return n_; }
  [[nodiscard]] cplx value() const noexcept { return value_; }
  [[nodiscard]] cplx d(int k) const { return d_[idx(k)]; }
  [[nodiscard]] cplx dbar(int l) const { return dbar_[idx(l)]; }
  [[nodiscard]] cplx ddbar(int k, int l) const { return ddbar_[idx(k) * idx(n_) + idx(l)]; }

  cplx& value_ref() noexcept { return value_; }
  cplx& d_ref(int k) { return d_[idx(k)]; }
  cplx& dbar_ref(int l) { return dbar_[idx(l)]; }
  cplx& ddbar_ref(int k, int l) { return ddbar_[idx(k) * idx(n_) + idx(l)]; }

  friend bool operator==(const Jet2&, const Jet2&) = default;

  Jet2& operator+=(const Jet2& o);
  Jet2& operator-=(const Jet2& o);
  Jet2& operator*=(cplx c);

 private:
  static std::size_t idx(int k) noexcept { return static_cast<std::size_t>(k); }

  int n_ = 0;
  cplx value_{};
  std::vector<cplx> d_;
  std::vector<cplx> dbar_;
  std::vector<cplx> ddbar_;  // row-major [k][l]
};

enum class Variable { z, zbar };

/// Jet of the coordinate function z_index (or its conjugate) at `point`.
[[nodiscard]] Jet2 seed(int n, std::span<const cplx> point, int index,
                        Variable which = Variable::z);

[[nodiscard]] Jet2 operator+(Jet2 a, const Jet2& b);
[[nodiscard]] Jet2 operator-(Jet2 a, const Jet2& b);
[[nodiscard]] Jet2 operator-(Jet2 a);
[[nodiscard]] Jet2 operator*(const Jet2& a, const Jet2& b);
[[nodiscard]] Jet2 operator*(cplx c, Jet2 a);

/// Quotient; throws Error(Singular) when |b.value()| < eps.
[[nodiscard]] Jet2 divide(const Jet2& a, const Jet2& b, double eps = kDivisionEpsilon);
[[nodiscard]] Jet2 operator/(const Jet2& a, const Jet2& b);

[[nodiscard]] Jet2 conj(const Jet2& a);
[[nodiscard]] Jet2 exp(const Jet2& a);
/// Principal-branch logarithm; only used for 1-D Gaussian curvature.
[[nodiscard]] Jet2 log(const Jet2& a, double eps = kDivisionEpsilon);

/// Integer power by repeated squaring; negative exponents go through divide().
[[nodiscard]] Jet2 ipow(const Jet2& a, int exponent, double eps = kDivisionEpsilon);

[[noreturn]] void throw_singular_division(double modulus);

/// Scalar counterparts so expression evaluation is generic over the algebra.
template <class T>
[[nodiscard]] std::complex<T> divide(const std::complex<T>& a, const std::complex<T>& b,
                                     double eps = kDivisionEpsilon);
template <class T>
[[nodiscard]] std::complex<T> ipow(const std::complex<T>& a, int exponent,
                                   double eps = kDivisionEpsilon);

using ExtComplex = std::complex<long double>;
using PointFunction = std::function<ExtComplex(std::span<const ExtComplex>)>;

/// Default step of the finite-difference oracle.
inline constexpr double kFdStep = 1e-4;

/// Central-difference estimate of every Jet2 slot of `f` at `point`.
///
/// Uses d/dz = (d/dx - i d/dy)/2 and d/dzbar = (d/dx + i d/dy)/2 on the
/// real/imaginary decomposition of each coordinate. Central stencils at h and
/// h/2 are Richardson-combined (O(h^4)). `f` is evaluated in extended precision so that the
/// 1/h^2 roundoff amplification stays below the truncation error.
[[nodiscard]] Jet2 fd_jet(const PointFunction& f, std::span<const cplx> point,
                          double h = kFdStep);

// ---------------------------------------------------------------------------

template <class T>
std::complex<T> divide(const std::complex<T>& a, const std::complex<T>& b, double eps) {
  if (std::abs(b) < static_cast<T>(eps)) {
    throw_singular_division(static_cast<double>(std::abs(b)));
  }
  return a / b;
}

template <class T>
std::complex<T> ipow(const std::complex<T>& a, int exponent, double eps) {
  if (exponent < 0) {
    return divide(std::complex<T>(1), ipow(a, -exponent, eps), eps);
  }
  std::complex<T> result(1);
  std::complex<T> base = a;
  unsigned e = static_cast<unsigned>(exponent);
  while (e != 0) {
    if (e & 1u) result *= base;
    e >>= 1u;
    if (e != 0) base *= base;
  }
  return result;
}

}  // namespace hsclab
