#pragma once

#include <cstddef>
#include <vector>

#include "udisc/matrix.hpp"

namespace udisc {

// Default relative tolerance used across the library wherever a caller does
// not supply one (rank cuts, invertibility cuts, verdict thresholds).
inline constexpr double kDefaultTol = 1e-9;

// Hermiticity is enforced up to this relative slack; smaller asymmetries are
// treated as rounding noise and symmetrized away before decomposing.
inline constexpr double kHermTol = 1e-8;

struct HermitianEig {
  std::vector<double> eigenvalues;  // ascending
  CMatrix eigenvectors;             // column k pairs with eigenvalues[k]; orthonormal
};

// Full eigendecomposition of a Hermitian matrix by cyclic complex Jacobi
// rotations.  Guarantees on exit: eigenvalues ascending, eigenvector columns
// orthonormal to ~1e-14, and ||A V - V diag(lambda)||_max <= ~1e-14 ||A||_max.
// Throws EmptyMatrix / NonSquare / NotHermitian on bad input and
// NoConvergence if the sweep budget is exhausted (not observed in practice;
// cyclic Jacobi converges quadratically once off-diagonals are small).
HermitianEig eig_hermitian(const CMatrix& a);

struct RankNullspace {
  std::size_t rank = 0;
  // Orthonormal basis of the (right) nullspace, one column per vector;
  // cols() == a.cols() - rank.
  CMatrix nullspace;
  std::vector<double> singular_values;  // ascending
};

// Numerical rank and right nullspace of a general (possibly rectangular)
// complex matrix via one-sided Jacobi SVD.  Singular values below
// tol_rel * sigma_max count as zero.  The one-sided form works on A itself,
// never on A^dagger A, so singular values are resolved far below the default
// 1e-9 cut instead of drowning in the sqrt(eps) noise floor that squaring
// would introduce.
RankNullspace rank_and_nullspace(const CMatrix& a, double tol_rel = kDefaultTol);

// True when the Hermitian matrix a has lowest eigenvalue >= -tol_abs.  The
// default absolute tolerance is kDefaultTol * max(1, ||a||_max).
bool is_psd(const CMatrix& a, double tol_abs);
bool is_psd(const CMatrix& a);

}  // namespace udisc
