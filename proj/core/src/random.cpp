#include "hsclab/random.hpp"

#include <cmath>

namespace hsclab {

std::uint64_t split_seed(std::uint64_t seed, std::uint64_t stream) noexcept {
  std::uint64_t z = seed + 0x9E3779B97F4A7C15ULL * (stream + 1);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

double uniform(Rng& rng, double lo, double hi) {
  // Explicit mapping instead of uniform_real_distribution keeps streams
  // identical across standard library implementations.
  const double u = static_cast<double>(rng() >> 11) * 0x1.0p-53;
  return lo + (hi - lo) * u;
}

cplx complex_gaussian(Rng& rng) {
  // Box-Muller on our own uniforms, for the same reason as above.
  double u1 = uniform(rng, 0.0, 1.0);
  while (u1 <= 0.0) u1 = uniform(rng, 0.0, 1.0);
  const double u2 = uniform(rng, 0.0, 1.0);
  const double r = std::sqrt(-std::log(u1));
  const double t = 2.0 * M_PI * u2;
  return {r * std::cos(t), r * std::sin(t)};
}

CVec random_unit_vector(int n, Rng& rng) {
  CVec v(static_cast<std::size_t>(n));
  double norm2 = 0.0;
  do {
    norm2 = 0.0;
    for (auto& x : v) {
      x = complex_gaussian(rng);
      norm2 += std::norm(x);
    }
  } while (norm2 < 1e-300);
  const double inv = 1.0 / std::sqrt(norm2);
  for (auto& x : v) x *= inv;
  return v;
}

}  // namespace hsclab
