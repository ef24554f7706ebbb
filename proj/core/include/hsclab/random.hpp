#pragma once

#include <cstdint>
#include <random>

#include "hsclab/types.hpp"

namespace hsclab {

using Rng = std::mt19937_64;

/// Derives an independent 64-bit seed for sub-stream `stream` (splitmix64).
[[nodiscard]] std::uint64_t split_seed(std::uint64_t seed, std::uint64_t stream) noexcept;

[[nodiscard]] double uniform(Rng& rng, double lo, double hi);

/// Standard complex Gaussian: real and imaginary parts i.i.d. N(0, 1/2).
[[nodiscard]] cplx complex_gaussian(Rng& rng);

/// Uniform point on the Euclidean unit sphere of C^n.
[[nodiscard]] CVec random_unit_vector(int n, Rng& rng);

}  // namespace hsclab
