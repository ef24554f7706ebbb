#include "hsclab/jet.hpp"

#include <array>
#include <cmath>
#include <sstream>

#include "hsclab/error.hpp"

namespace hsclab {

Jet2::Jet2(int n, cplx value)
    : n_(n),
      value_(value),
      d_(idx(n)),
      dbar_(idx(n)),
      ddbar_(idx(n) * idx(n)) {
  if (n < 0) throw Error(ErrorCode::InvalidArgument, "negative jet dimension");
}

Jet2& Jet2::operator+=(const Jet2& o) {
  value_ += o.value_;
  for (std::size_t k = 0; k < d_.size(); ++k) {
    d_[k] += o.d_[k];
    dbar_[k] += o.dbar_[k];
  }
  for (std::size_t k = 0; k < ddbar_.size(); ++k) ddbar_[k] += o.ddbar_[k];
  return *this;
}

Jet2& Jet2::operator-=(const Jet2& o) {
  value_ -= o.value_;
  for (std::size_t k = 0; k < d_.size(); ++k) {
    d_[k] -= o.d_[k];
    dbar_[k] -= o.dbar_[k];
  }
  for (std::size_t k = 0; k < ddbar_.size(); ++k) ddbar_[k] -= o.ddbar_[k];
  return *this;
}

Jet2& Jet2::operator*=(cplx c) {
  value_ *= c;
  for (auto& x : d_) x *= c;
  for (auto& x : dbar_) x *= c;
  for (auto& x : ddbar_) x *= c;
  return *this;
}

namespace {

void require_same_dim(const Jet2& a, const Jet2& b) {
  if (a.dim() != b.dim()) {
    throw Error(ErrorCode::InvalidArgument, "jet dimension mismatch");
  }
}

// Composition with a holomorphic scalar function phi of the jet value:
// (phi o u)_k = phi' u_k, (phi o u)_lbar = phi' u_lbar,
// (phi o u)_{k lbar} = phi'' u_k u_lbar + phi' u_{k lbar}.
Jet2 compose(const Jet2& u, cplx phi, cplx phi1, cplx phi2) {
  const int n = u.dim();
  Jet2 r(n, phi);
  for (int k = 0; k < n; ++k) {
    r.d_ref(k) = phi1 * u.d(k);
    r.dbar_ref(k) = phi1 * u.dbar(k);
  }
  for (int k = 0; k < n; ++k) {
    for (int l = 0; l < n; ++l) {
      r.ddbar_ref(k, l) = phi2 * u.d(k) * u.dbar(l) + phi1 * u.ddbar(k, l);
    }
  }
  return r;
}

}  // namespace

void throw_singular_division(double modulus) {
  std::ostringstream os;
  os << "division by value of modulus " << modulus;
  throw Error(ErrorCode::Singular, os.str());
}

Jet2 seed(int n, std::span<const cplx> point, int index, Variable which) {
  if (index < 0 || index >= n) {
    throw Error(ErrorCode::IndexOutOfRange,
                "seed index " + std::to_string(index) + " outside [0, " +
                    std::to_string(n) + ")");
  }
  if (point.size() < static_cast<std::size_t>(n)) {
    throw Error(ErrorCode::InvalidArgument, "seed point shorter than jet dimension");
  }
  const cplx z = point[static_cast<std::size_t>(index)];
  if (which == Variable::z) {
    Jet2 j(n, z);
    j.d_ref(index) = 1.0;
    return j;
  }
  Jet2 j(n, std::conj(z));
  j.dbar_ref(index) = 1.0;
  return j;
}

Jet2 operator+(Jet2 a, const Jet2& b) {
  require_same_dim(a, b);
  a += b;
  return a;
}

Jet2 operator-(Jet2 a, const Jet2& b) {
  require_same_dim(a, b);
  a -= b;
  return a;
}

Jet2 operator-(Jet2 a) {
  a *= -1.0;
  return a;
}

Jet2 operator*(cplx c, Jet2 a) {
  a *= c;
  return a;
}

Jet2 operator*(const Jet2& f, const Jet2& g) {
  require_same_dim(f, g);
  const int n = f.dim();
  Jet2 r(n, f.value() * g.value());
  for (int k = 0; k < n; ++k) {
    r.d_ref(k) = f.d(k) * g.value() + f.value() * g.d(k);
    r.dbar_ref(k) = f.dbar(k) * g.value() + f.value() * g.dbar(k);
  }
  for (int k = 0; k < n; ++k) {
    for (int l = 0; l < n; ++l) {
      r.ddbar_ref(k, l) = f.ddbar(k, l) * g.value() + f.d(k) * g.dbar(l) +
                          f.dbar(l) * g.d(k) + f.value() * g.ddbar(k, l);
    }
  }
  return r;
}

Jet2 divide(const Jet2& a, const Jet2& b, double eps) {
  require_same_dim(a, b);
  const cplx v = b.value();
  if (std::abs(v) < eps) throw_singular_division(std::abs(v));
  const cplx inv = 1.0 / v;
  return a * compose(b, inv, -inv * inv, 2.0 * inv * inv * inv);
}

Jet2 operator/(const Jet2& a, const Jet2& b) { return divide(a, b); }

Jet2 conj(const Jet2& a) {
  const int n = a.dim();
  Jet2 r(n, std::conj(a.value()));
  for (int k = 0; k < n; ++k) {
    r.d_ref(k) = std::conj(a.dbar(k));
    r.dbar_ref(k) = std::conj(a.d(k));
  }
  for (int k = 0; k < n; ++k) {
    for (int l = 0; l < n; ++l) r.ddbar_ref(k, l) = std::conj(a.ddbar(l, k));
  }
  return r;
}

Jet2 exp(const Jet2& a) {
  const cplx e = std::exp(a.value());
  return compose(a, e, e, e);
}

Jet2 log(const Jet2& a, double eps) {
  const cplx v = a.value();
  if (std::abs(v) < eps) throw_singular_division(std::abs(v));
  const cplx inv = 1.0 / v;
  return compose(a, std::log(v), inv, -inv * inv);
}

Jet2 ipow(const Jet2& a, int exponent, double eps) {
  if (exponent < 0) return divide(Jet2(a.dim(), 1.0), ipow(a, -exponent, eps), eps);
  Jet2 result(a.dim(), 1.0);
  Jet2 base = a;
  unsigned e = static_cast<unsigned>(exponent);
  bool first = true;
  while (e != 0) {
    if (e & 1u) {
      result = first ? base : result * base;
      first = false;
    }
    e >>= 1u;
    if (e != 0) base = base * base;
  }
  return result;
}

Jet2 fd_jet(const PointFunction& f, std::span<const cplx> point, double h) {
  if (!(h > 0.0)) throw Error(ErrorCode::InvalidArgument, "fd step must be positive");
  const int n = static_cast<int>(point.size());
  const std::size_t axes = 2 * static_cast<std::size_t>(n);
  std::vector<ExtComplex> base(point.begin(), point.end());
  const long double step = h;

  // Real axis a maps to coordinate a/2, real part for even a, imaginary for odd.
  auto shifted = [&](std::initializer_list<std::pair<std::size_t, int>> moves, long double st) {
    std::vector<ExtComplex> p = base;
    for (auto [axis, sign] : moves) {
      const ExtComplex delta = (axis % 2 == 0) ? ExtComplex(sign * st, 0)
                                               : ExtComplex(0, sign * st);
      p[axis / 2] += delta;
    }
    return f(p);
  };

  const ExtComplex f0 = f(base);
  std::vector<ExtComplex> first(axes);
  std::vector<ExtComplex> second(axes * axes);
  // Central stencils at steps st and st/2 combined by one Richardson step,
  // which leaves an O(h^4) truncation error.
  auto stencils = [&](long double st, std::vector<ExtComplex>& d1, std::vector<ExtComplex>& d2) {
    d1.assign(axes, ExtComplex(0));
    d2.assign(axes * axes, ExtComplex(0));
    for (std::size_t a = 0; a < axes; ++a) {
      const ExtComplex fp = shifted({{a, +1}}, st);
      const ExtComplex fm = shifted({{a, -1}}, st);
      d1[a] = (fp - fm) / (2 * st);
      d2[a * axes + a] = (fp - 2.0L * f0 + fm) / (st * st);
    }
    for (std::size_t a = 0; a < axes; ++a) {
      for (std::size_t b = a + 1; b < axes; ++b) {
        const ExtComplex v = (shifted({{a, +1}, {b, +1}}, st) - shifted({{a, +1}, {b, -1}}, st) -
                              shifted({{a, -1}, {b, +1}}, st) + shifted({{a, -1}, {b, -1}}, st)) /
                             (4 * st * st);
        d2[a * axes + b] = v;
        d2[b * axes + a] = v;
      }
    }
  };
  std::vector<ExtComplex> coarse1, coarse2, fine1, fine2;
  stencils(step, coarse1, coarse2);
  stencils(step / 2, fine1, fine2);
  for (std::size_t q = 0; q < axes; ++q) first[q] = (4.0L * fine1[q] - coarse1[q]) / 3.0L;
  for (std::size_t q = 0; q < axes * axes; ++q) second[q] = (4.0L * fine2[q] - coarse2[q]) / 3.0L;

  const ExtComplex I(0, 1);
  auto to_cplx = [](ExtComplex v) {
    return cplx(static_cast<double>(v.real()), static_cast<double>(v.imag()));
  };
  Jet2 j(n, to_cplx(f0));
  for (int k = 0; k < n; ++k) {
    const ExtComplex fx = first[2 * static_cast<std::size_t>(k)];
    const ExtComplex fy = first[2 * static_cast<std::size_t>(k) + 1];
    j.d_ref(k) = to_cplx((fx - I * fy) / 2.0L);
    j.dbar_ref(k) = to_cplx((fx + I * fy) / 2.0L);
  }
  for (int k = 0; k < n; ++k) {
    for (int l = 0; l < n; ++l) {
      const std::size_t xk = 2 * static_cast<std::size_t>(k), yk = xk + 1;
      const std::size_t xl = 2 * static_cast<std::size_t>(l), yl = xl + 1;
      const ExtComplex v = second[xk * axes + xl] + second[yk * axes + yl] +
                           I * (second[xk * axes + yl] - second[yk * axes + xl]);
      j.ddbar_ref(k, l) = to_cplx(v / 4.0L);
    }
  }
  return j;
}

}  // namespace hsclab
