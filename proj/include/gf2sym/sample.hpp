#pragma once

#include <cstddef>

#include <gmpxx.h>

#include "gf2sym/canon.hpp"
#include "gf2sym/matrix.hpp"
#include "gf2sym/moves.hpp"
#include "gf2sym/rng.hpp"

namespace gf2sym {

using BigCount = mpz_class;

/// Number of free entries of B(2n, T): pairs (i, j) in T with j < n and
/// j+1 <= i <= 2n-1-j. |B(2n, T)| = 2^borel_dim(T).
std::size_t borel_dim(const TransitiveSet& t);

/// Uniform element of L(m, T) (off-diagonal support in T, unit diagonal).
Gf2Matrix random_lower(const TransitiveSet& t, Philox& rng);
/// Uniform element of B(2n, T); T must be transitive and reversal-closed.
Gf2Matrix random_borel(const TransitiveSet& t, Philox& rng);

/// Uniform integer in [0, bound), bound > 0.
mpz_class random_below(const mpz_class& bound, Philox& rng);

/// Uniform symplectic 2n x 2n matrix, returned with the canonical parameters
/// that produced it (decompose_symplectic of the product returns the same).
Quintuple sample_symplectic_params(std::size_t n, Philox& rng);
Gf2Matrix sample_symplectic(std::size_t n, Philox& rng);

/// Uniform m x 2n stabilizer parity check matrix of rank r.
Quintuple sample_stabilizer_pcm_params(std::size_t m, std::size_t n, std::size_t r, Philox& rng);
Gf2Matrix sample_stabilizer_pcm(std::size_t m, std::size_t n, std::size_t r, Philox& rng);

/// 2^{n^2} prod_{i=1..n} (4^i - 1).
BigCount count_symplectic(std::size_t n);
/// Number of m x 2n stabilizer parity check matrices of rank r.
BigCount count_stabilizer_pcm(std::size_t m, std::size_t n, std::size_t r);

}  // namespace gf2sym
