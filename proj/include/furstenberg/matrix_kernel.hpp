#pragma once

// Dense small-matrix decompositions over C (real inputs stay real) and the
// spectral calculus on Hermitian positive-definite matrices.

#include <complex>

#include <Eigen/Dense>

namespace furstenberg {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXd;

inline constexpr double kDefaultPivotRel = 1e-9;
inline constexpr double kDefaultCondMax = 1e12;

struct LuFactors {
  Matrix lower;  // unit lower triangular
  Matrix upper;  // upper triangular, nonzero diagonal
  /// Smallest ratio |pivot| / max|active submatrix| met during elimination.
  double margin = 0.0;
};

/// Doolittle elimination without row exchanges, M = L * U.
/// Throws PivotBreakdown (carrying the offending ratio as margin) when a
/// pivot falls to rel_pivot_tol times the largest entry of the active
/// submatrix.
LuFactors lu_unit_lower(const Matrix& m, double rel_pivot_tol = kDefaultPivotRel);

/// Runs the same elimination but never throws: returns the smallest pivot
/// ratio, stopping at the first pivot at or below rel_pivot_tol.
double lu_pivot_margin(const Matrix& m, double rel_pivot_tol = kDefaultPivotRel);

struct TriangularUnitary {
  Matrix triangular;  // upper triangular, strictly positive real diagonal
  Matrix unitary;
};

/// M = T * Q with T upper triangular (positive diagonal) and Q unitary.
/// Computed as a Householder QR of M^* with columns reversed, then phase
/// corrected. Throws NumericallySingular when the Frobenius condition
/// estimate ||M|| * ||T^{-1}|| exceeds cond_max.
TriangularUnitary triangular_unitary_split(const Matrix& m,
                                           double cond_max = kDefaultCondMax);

/// exp(lam * log X) for Hermitian positive-definite X.
/// Throws NotPositiveDefinite when the smallest eigenvalue is not positive
/// relative to the largest (ratio <= pd_rel).
Matrix herm_pd_power(const Matrix& x, double lam, double pd_rel = 1e-14);

Matrix herm_pd_log(const Matrix& x, double pd_rel = 1e-14);

/// exp of a Hermitian matrix.
Matrix herm_exp(const Matrix& h);

/// (M + M^*) / 2.
Matrix hermitian_part(const Matrix& m);

/// Relative Frobenius distance ||a - b|| / max(||b||, tiny).
double relative_difference(const Matrix& a, const Matrix& b);

}  // namespace furstenberg
