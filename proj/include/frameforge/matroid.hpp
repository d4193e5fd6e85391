#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <variant>
#include <vector>

#include "frameforge/frame.hpp"

namespace frameforge {

enum class MatroidKind { Linear, Cospanning };

/// Assignment of a ground set {0..n-1} to parts 0..part_count-1. Part 0 plays
/// the role of the distinguished first set wherever a theorem singles one out.
struct IndexPartition {
  std::size_t part_count = 0;
  std::vector<std::size_t> assignment;

  std::size_t ground_size() const noexcept { return assignment.size(); }
  IndexSet part(std::size_t p) const;
  std::vector<IndexSet> parts() const;

  static IndexPartition from_parts(std::size_t ground_size, const std::vector<IndexSet>& parts);
  friend bool operator==(const IndexPartition&, const IndexPartition&) = default;
};

/// Rank oracle over a frame.
///
/// The linear kind is the matroid of {f_i} restricted to a ground subset and
/// contracted by the span of a set of frame indices:
///   rank(E) = dim span(F_E u F_C) - dim span(F_C).
/// With an empty contraction this is dim span F_E. Ground elements are local
/// indices 0..ground_size()-1; `frame_index` maps them back.
///
/// The cospanning kind has E independent iff {f_j : j not in E} spans R^N,
/// with rank(E) = |E| + dim span(F_{E^c}) - N.
///
/// The oracle holds a reference to the frame, which must outlive it.
class MatroidOracle {
 public:
  static MatroidOracle linear(const Frame& f, const Numerics& num);
  static MatroidOracle linear(const Frame& f, const Numerics& num, IndexSet ground, IndexSet contraction);
  /// Throws NotAFrame if the frame does not span.
  static MatroidOracle cospanning(const Frame& f, const Numerics& num);

  MatroidKind kind() const noexcept { return kind_; }
  const Frame& frame() const noexcept { return *frame_; }
  const Numerics& numerics() const noexcept { return num_; }
  std::size_t ground_size() const noexcept { return ground_.size(); }
  std::size_t frame_index(std::size_t local) const { return ground_[local]; }
  const IndexSet& ground() const noexcept { return ground_; }
  const IndexSet& contraction() const noexcept { return contraction_; }

  /// Rank of the whole ground set.
  std::size_t full_rank() const { return full_rank_; }

  std::size_t rank(std::span<const std::size_t> local) const;
  bool independent(std::span<const std::size_t> local) const { return rank(local) == local.size(); }
  /// e lies in the closure of `set`.
  bool in_span(std::size_t e, std::span<const std::size_t> set) const;

  /// Ground vector `local` projected off the contraction span (float), for
  /// least-squares witnesses.
  std::vector<double> projected_vector(std::size_t local) const;

 private:
  MatroidOracle(const Frame& f, const Numerics& num, MatroidKind kind, IndexSet ground, IndexSet contraction);

  const Frame* frame_;
  Numerics num_;
  MatroidKind kind_;
  IndexSet ground_;
  IndexSet contraction_;
  std::size_t contraction_rank_ = 0;
  std::size_t full_rank_ = 0;
  MatrixD contraction_basis_;  // orthonormal rows
};

std::size_t linear_rank(const Frame& f, const IndexSet& e, const Numerics& num);

/// rank*(E) = |E| + dim span{f_j : j not in E} - N. Throws NotAFrame.
std::size_t cospanning_rank(const Frame& f, const IndexSet& e, const Numerics& num);

/// A set E with |E| > parts * rank(E); certifies that no partition into
/// `parts` independent sets exists.
struct InfeasibleWitness {
  IndexSet set;
  std::size_t rank = 0;
  std::size_t parts = 0;
};

using PartitionOutcome = std::variant<IndexPartition, InfeasibleWitness>;

/// Partition of the oracle's ground set into `m_parts` independent sets, or a
/// witness that none exists. Elements are inserted in ascending order, each
/// through a shortest augmenting path in the exchange graph (BFS, parts and
/// elements scanned in ascending order).
PartitionOutcome matroid_partition(const MatroidOracle& oracle, std::size_t m_parts);

/// Inserts `pending` elements one at a time into `parts` (each independent on
/// entry) through shortest augmenting paths. Part sizes never shrink, so a
/// part that starts as a basis stays one. Returns nullopt and fills
/// `failure_set` with the reached elements if some insertion fails.
std::optional<IndexPartition> extend_partition(const MatroidOracle& oracle, std::vector<IndexSet> parts,
                                               const IndexSet& pending, IndexSet* failure_set = nullptr);

/// Partition with the (MD) maximality property: the sum of span dimensions
/// over parts is maximal, leftovers sit in part 0 and parts 1.. are
/// independent.
IndexPartition md_partition(const MatroidOracle& oracle, std::size_t m_parts);
IndexPartition md_partition(const Frame& f, std::size_t m_parts, const Numerics& num);

/// Elements of `part` that are combinations of the other elements of `part`.
IndexSet dependent_elements(const MatroidOracle& oracle, const IndexSet& part);

struct ChainLink {
  std::size_t index = 0;
  std::size_t part = 0;
  /// Coefficient on the previous link's vector (unused for the first link).
  double alpha = 0;
  /// Least-squares coefficients on the remaining vectors of `part`.
  std::vector<std::pair<std::size_t, double>> coefficients;
};

struct Chain {
  std::vector<ChainLink> links;
  std::size_t end() const { return links.back().index; }
};

struct ChainClosure {
  IndexSet reachable;
  /// One minimal-length chain per reachable index, ordered by index.
  std::vector<Chain> chains;
};

/// Breadth-first closure of the chain relation from `l_start`. Requires parts
/// 1.. of the partition to be independent (PreconditionViolated otherwise)
/// and every start to be dependent within its own part.
ChainClosure find_chains(const MatroidOracle& oracle, const IndexPartition& partition, const IndexSet& l_start);
ChainClosure find_chains(const Frame& f, const IndexPartition& partition, const IndexSet& l_start,
                         const Numerics& num);

/// Re-derives every link of `chain` from ranks and its stored coefficients.
bool verify_chain(const MatroidOracle& oracle, const IndexPartition& partition, const Chain& chain);

struct T2Witness {
  IndexPartition partition;
  /// Indices whose vectors span the subspace S.
  IndexSet subspace_generators;
  /// Orthonormal rows spanning S (after removing the contraction span).
  MatrixD subspace_basis;
  std::size_t subspace_dim = 0;
  /// J = {i : f_i in S}.
  IndexSet violating_set;
  std::size_t parts = 0;

  /// |J| / dim S, absent when S = {0}.
  std::optional<Rational> ratio() const;
};

/// Failure witness for partitioning into `m_parts` independent sets, built
/// from an (MD) partition and the chain closure of the dependent elements of
/// its first part. Throws FeasibleInput if a partition exists.
T2Witness t2_witness(const MatroidOracle& oracle, std::size_t m_parts);
T2Witness t2_witness(const Frame& f, std::size_t m_parts, const Numerics& num);

struct T2Checks {
  bool subspace_spanned_by_each_part = false;  // (a)
  bool ratio_exceeds_parts = false;            // (b)
  bool remainder_independent = false;          // (c), also modulo S
  bool all() const { return subspace_spanned_by_each_part && ratio_exceeds_parts && remainder_independent; }
};

/// Recomputes (a), (b), (c) from the witness fields by rank computations.
T2Checks check_t2_witness(const MatroidOracle& oracle, const T2Witness& w);

}  // namespace frameforge
