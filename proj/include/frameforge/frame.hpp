#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "frameforge/linalg.hpp"

namespace frameforge {

/// Sorted, duplicate-free list of frame indices.
using IndexSet = std::vector<std::size_t>;

/// Indices 0..m-1 not in `b` (which must be sorted).
IndexSet complement(const IndexSet& b, std::size_t m);
IndexSet all_indices(std::size_t m);

/// Ordered family of M vectors in R^N. Vectors are the rows of an M x N
/// matrix. A frame built from rational entries keeps them for exact-mode
/// rank decisions; otherwise exact mode uses the exact binary value of each
/// stored double.
class Frame {
 public:
  explicit Frame(MatrixD vectors, std::vector<std::string> labels = {});
  explicit Frame(MatrixQ vectors, std::vector<std::string> labels = {});

  std::size_t dim() const noexcept { return values_.cols(); }
  std::size_t size() const noexcept { return values_.rows(); }

  const MatrixD& vectors() const noexcept { return values_; }
  std::span<const double> vector(std::size_t i) const { return values_.row(i); }

  bool has_exact() const noexcept { return rational_source_; }
  /// Rational entries if the frame was built from them, else the exact
  /// values of the stored doubles.
  const MatrixQ& exact_vectors() const noexcept { return exact_; }

  const std::vector<std::string>& labels() const noexcept { return labels_; }

  double norm_sq(std::size_t i) const;
  double max_norm_sq() const;

  /// Same frame with every vector multiplied by `factor` (float entries only).
  Frame scaled(double factor) const;

 private:
  MatrixD values_;
  MatrixQ exact_;
  bool rational_source_ = false;
  std::vector<std::string> labels_;
};

/// dim span {f_i : i in subset} under the chosen arithmetic.
std::size_t subset_rank(const Frame& f, std::span<const std::size_t> subset, const Numerics& num);

/// Optimal frame bounds: extreme eigenvalues of S = sum f_i f_i^T.
struct FrameBounds {
  double lower = 0;
  double upper = 0;
};

/// Throws NotAFrame unless lambda_min(S) > eig_abs.
FrameBounds validate_frame(const Frame& f, const Tolerance& tol);

MatrixD frame_operator(const Frame& f);

/// Gram matrix G(i, j) = <f_i, f_j>.
MatrixD gram(const Frame& f);

/// G^2 = G and S = I checked independently; throws CriterionMismatch if the
/// two disagree.
bool is_parseval(const Frame& f, const Tolerance& tol);

/// G = R + Q for R built from {P f_i} and Q from {(I - P) f_i}.
struct GramSplit {
  MatrixD g;
  MatrixD r;
  MatrixD q;
};

GramSplit gram_split(const Frame& f, const MatrixD& projector, const Tolerance& tol);

struct SpanningEvidence {
  bool spans = false;
  std::size_t rank = 0;
  /// Top eigenvalue of the Gram matrix compressed to the complement of the
  /// subset. Present only for Parseval input.
  std::optional<double> compressed_top_eigenvalue;
};

/// Does {f_i : i in b} span R^N? Decided by rank and, for Parseval frames,
/// independently by whether 1 is an eigenvalue of D_{b^c} G D_{b^c}
/// (values above 1 - eig_abs count as 1). Throws CriterionMismatch if the two
/// routes disagree.
SpanningEvidence spans_subset(const Frame& f, const IndexSet& b, const Numerics& num);

/// Same as above with the Parseval test and Gram matrix supplied by the
/// caller; `g == nullptr` serves the rank route only.
SpanningEvidence spans_subset(const Frame& f, const MatrixD* g, const IndexSet& b, const Numerics& num);

struct Complementarity {
  bool spans = false;        // {P e_j : j in b} spans P(R^N)
  bool independent = false;  // {(I - P) e_j : j not in b} is independent
};

/// Both sides of the spanning/independence duality for a projector; throws
/// CriterionMismatch if they disagree and NotProjector for bad input.
Complementarity complementarity_check(std::size_t n, const MatrixD& projector, const IndexSet& b,
                                      const Numerics& num);

// Generators ----------------------------------------------------------------

/// Real harmonic frame: n orthonormal columns of the m-point real Fourier
/// basis, lowest frequencies first. Equal norms n/m, Parseval.
Frame harmonic_frame(std::size_t n, std::size_t m);

/// Rows of an m x n matrix with orthonormal columns obtained from seeded
/// Gaussian entries.
Frame random_parseval(std::size_t n, std::size_t m, std::uint64_t seed);

/// r copies of the standard basis of R^n, each scaled by 1/sqrt(r).
Frame scaled_union_of_bases(std::size_t n, std::size_t r);

Frame standard_basis(std::size_t n);

}  // namespace frameforge
