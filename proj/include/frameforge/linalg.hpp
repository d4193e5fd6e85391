#pragma once

#include <cstddef>
#include <vector>

#include "frameforge/matrix.hpp"

namespace frameforge {

enum class ScalarMode { Float, Exact };

/// Numerical cuts for the float path.
///   rank_rel: singular values at or below rank_rel * sigma_max * max(rows, cols) count as zero.
///   eig_abs:  absolute slack on eigenvalue comparisons.
/// Both must lie in (0, 1e-3).
struct Tolerance {
  double rank_rel = 1e-9;
  double eig_abs = 1e-9;

  void validate() const;
};

/// Tolerance plus the arithmetic used for rank decisions. Spectral quantities
/// are always computed in floating point.
struct Numerics {
  Tolerance tol{};
  ScalarMode mode = ScalarMode::Float;
};

std::size_t rank(const MatrixD& m, const Tolerance& tol);
/// Exact rank by fraction-free (Bareiss) elimination over the integers.
std::size_t rank(const MatrixQ& m);

/// Singular values in descending order (one-sided Jacobi).
std::vector<double> singular_values(const MatrixD& m);

struct SymmetricEigen {
  std::vector<double> values;  // ascending
  MatrixD vectors;             // columns, matching `values`
};

/// Cyclic Jacobi diagonalization of the symmetrization (m + m^T) / 2.
/// Throws NotSymmetric when max |m - m^T| exceeds tol.eig_abs.
SymmetricEigen eigen_sym(const MatrixD& m, const Tolerance& tol);

/// Largest eigenvalue of a symmetric matrix; 0 for the empty matrix.
double top_eigenvalue_sym(const MatrixD& m, const Tolerance& tol);

/// Largest singular value; 0 for empty or zero input.
double spectral_norm(const MatrixD& m, const Tolerance& tol);

/// Orthogonal projector (N x N) onto the row span of `span_of`, where N is
/// `span_of.cols()`. An input with no rows yields the zero matrix of size `dim`.
MatrixD orthoprojector(const MatrixD& span_of, const Tolerance& tol, std::size_t dim = 0);

/// Orthonormal basis (as rows) of the row span of `m`.
MatrixD row_space_basis(const MatrixD& m, const Tolerance& tol);

/// Minimum-norm least-squares coefficients x with x^T * rows ~ target.
std::vector<double> least_squares_combination(const MatrixD& rows, std::span<const double> target,
                                              const Tolerance& tol);

/// True when p is symmetric and idempotent within 10 * eig_abs (max-entry norm).
bool is_projector(const MatrixD& p, const Tolerance& tol);

}  // namespace frameforge
