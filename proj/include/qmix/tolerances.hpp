#pragma once

namespace qmix::tol {

// Numeric tolerances used throughout the library. Double precision at the
// dimensions this library targets (dim <= 16) reaches these comfortably.

/// State and direction normalization residue.
inline constexpr double norm = 1e-12;

/// Hermiticity residue (max |A(i,j) - conj(A(j,i))| and imaginary parts of
/// quadratic forms).
inline constexpr double herm = 1e-10;

/// Eigendecomposition reconstruction and derived spectral quantities.
inline constexpr double eig = 1e-9;

/// Probability sums and density-operator traces.
inline constexpr double prob = 1e-9;

/// Piecewise-constant evolution consistency checks (two eigendecompositions
/// compose, so this is looser than `eig`).
inline constexpr double scenario = 1e-8;

}  // namespace qmix::tol
