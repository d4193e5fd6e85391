#pragma once

#include <optional>

#include "frameforge/certificate.hpp"
#include "frameforge/matroid.hpp"

namespace frameforge {

struct PartitionResult {
  IndexPartition partition;
  PartitionCertificate certificate;
};

/// One of the two preconditions of independent_spanning_partition failed.
/// `witness` is an infeasibility certificate when one is available.
class HypothesisError : public Error {
 public:
  HypothesisError(int hypothesis, std::optional<InfeasibleWitness> witness, const std::string& what)
      : Error(ErrorKind::HypothesisFailed, what), hypothesis_(hypothesis), witness_(std::move(witness)) {}
  int hypothesis() const noexcept { return hypothesis_; }
  const std::optional<InfeasibleWitness>& witness() const noexcept { return witness_; }

 private:
  int hypothesis_;
  std::optional<InfeasibleWitness> witness_;
};

/// Parseval f with ||f_i||^2 <= 1 - delta: R parts whose complements all span.
/// Default R is the least integer with R * delta' >= 1, where
/// delta' = max(delta, 1 - max ||f_i||^2).
PartitionResult spanning_complement_partition(const Frame& f, double delta, std::optional<std::size_t> r_parts,
                                              const Numerics& num);

/// Equal-norm Parseval f with M = rN + k: r + 1 independent parts, or for
/// k = 0 exactly r bases.
PartitionResult equal_norm_independent_partition(const Frame& f, const Numerics& num);

/// Frame with lower bound A and ||f_i||^2 <= 1: floor(A / max ||f_i||^2)
/// spanning parts, i.e. floor(A) once the largest vector has unit norm.
/// With `parts` given, requires parts * max ||f_i||^2 <= A instead and
/// returns that many spanning parts.
PartitionResult spanning_partition(const Frame& f, const Numerics& num, std::optional<std::size_t> parts = {});

/// Part 0 independent, parts 1..r bases. Throws HypothesisError(1) if no
/// partition into r + 1 independent sets exists and HypothesisError(2) if no
/// r disjoint bases were found.
PartitionResult independent_spanning_partition(const Frame& f, std::size_t r, const Numerics& num);

/// Largest ground size for which the exhaustive fallback of
/// independent_spanning_partition runs.
inline constexpr std::size_t kExhaustiveLimit = 14;

/// Exhaustive search for part 0 independent plus r bases; nullopt if none.
std::optional<IndexPartition> exhaustive_independent_spanning(const Frame& f, std::size_t r, const Numerics& num);

}  // namespace frameforge
