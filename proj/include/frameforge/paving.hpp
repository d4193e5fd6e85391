#pragma once

#include <cstdint>
#include <optional>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "frameforge/certificate.hpp"

namespace frameforge {

enum class PavingMethod { Exhaustive, Annealing };

std::string_view to_string(PavingMethod m);
PavingMethod parse_paving_method(std::string_view s);

/// Geometric cooling T <- cooling * T starting at t0; one move reassigns one
/// index. `budget` counts proposed moves.
struct AnnealingConfig {
  std::uint64_t seed = 0;
  std::size_t budget = 20000;
  double t0 = 0.25;
  double cooling = 0.9995;
};

/// Largest matrix order the exhaustive search accepts.
inline constexpr std::size_t kExhaustivePavingLimit = 14;

struct PavingResult {
  IndexPartition partition;
  /// max_k ||D_{A_k} H D_{A_k}||, recomputed from the partition.
  double achieved = 0;
  std::vector<double> part_norms;
  double h_norm = 0;
  /// Relative target s (absent when the search was given an absolute bound
  /// and ||H|| = 0).
  std::optional<double> target_s;
  /// Absolute bound the search had to meet.
  double target = 0;
  PavingMethod method = PavingMethod::Exhaustive;
  bool success = false;
  /// Annealing ran out of moves without meeting the target.
  bool budget_exhausted = false;
  /// Compression norms computed; not serialized since the shared pruning
  /// bound makes it depend on scheduling.
  std::size_t evaluations = 0;
};

/// G minus its diagonal. Throws NotParseval.
MatrixD hollow_gram(const Frame& f, const Tolerance& tol);

/// ||D_A H D_A|| for symmetric H.
double compression_norm(const MatrixD& h, const IndexSet& a, const Tolerance& tol);

/// Searches for an r-part partition with every compression norm at most
/// s * ||h||. Success iff achieved <= s * ||h|| + eig_abs. The exhaustive
/// search returns the lexicographically first optimal assignment; the worker
/// count (hardware concurrency, or FRAMEFORGE_THREADS up to 64) does not
/// affect the result.
PavingResult pave(const MatrixD& h, std::size_t r, double s, PavingMethod method, const AnnealingConfig& cfg,
                  const Tolerance& tol);

/// Same search against an absolute bound.
PavingResult pave_absolute(const MatrixD& h, std::size_t r, double bound, PavingMethod method,
                           const AnnealingConfig& cfg, const Tolerance& tol);

class PavingNotFound : public Error {
 public:
  PavingNotFound(PavingResult best, const std::string& what)
      : Error(ErrorKind::PavingNotFound, what), best_(std::move(best)) {}
  const PavingResult& best() const noexcept { return best_; }

 private:
  PavingResult best_;
};

struct PavingPipelineResult {
  PavingResult paving;
  /// ||D_{A_k} G D_{A_k}|| per part.
  std::vector<double> gram_norms;
  PartitionCertificate certificate;
};

/// Parseval f with ||f_i||^2 <= 1 - delta: paves the hollow Gram matrix so
/// every compression norm is at most delta / 2, then checks each
/// ||D_A G D_A|| <= 1 - delta / 2 and that each complement spans. Throws
/// PavingNotFound if the search fails at this r and NormBoundViolated.
PavingPipelineResult paving_spanning_pipeline(const Frame& f, double delta, std::size_t r, const Numerics& num,
                                              PavingMethod method = PavingMethod::Exhaustive,
                                              const AnnealingConfig& cfg = {});

nlohmann::ordered_json to_json(const PavingResult& p);
/// Certificate envelope with theorem "paving" and a "paving" section.
nlohmann::ordered_json to_json(const PavingPipelineResult& p);

}  // namespace frameforge
