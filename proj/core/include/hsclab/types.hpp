#pragma once

#include <complex>
#include <vector>

namespace hsclab {

using cplx = std::complex<double>;
using CVec = std::vector<cplx>;

/// Default modulus below which a division is treated as singular.
inline constexpr double kDivisionEpsilon = 1e-12;

}  // namespace hsclab
