#pragma once

#include <cstddef>
#include <cstdint>

#include "fockmult/sparse.hpp"

namespace fockmult {

inline constexpr std::uint64_t kDefaultNormSeed = 0x5EED;

struct NormOptions {
  double tol = 1e-12;
  std::size_t max_iters = 100'000;
  std::uint64_t seed = kDefaultNormSeed;
};

/// Result of a spectral-norm estimate. `value` is always a lower bound up to
/// rounding (it is the square root of a Rayleigh quotient of A^H A); callers
/// must check `converged`.
struct NormEstimate {
  double value = 0.0;
  std::size_t iterations = 0;
  bool converged = true;
};

/// Largest singular value from the top eigenvalue of A^H A.
///
/// Starts from a seeded Gaussian unit vector and runs explicitly restarted
/// Lanczos cycles (a Krylov-accelerated power iteration; one step is one
/// product with A and one with A^H and counts as one iteration). It stops when
/// the Ritz residual is at most tol * max(1, theta). If that does not happen
/// within max_iters, it is restarted once from the start vector rotated by one
/// position (and by a phase), and the larger of the two estimates is reported.
/// The zero matrix gives 0, and matrices whose columns have disjoint supports
/// (isometries, weighted permutations) give their largest column norm exactly.
NormEstimate spectral_norm(const SparseMatrix& a, const NormOptions& options = {});

}  // namespace fockmult
