#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>

#include "frameforge/certificate.hpp"
#include "frameforge/paving.hpp"

namespace frameforge {

enum class Command { Gen, Check, Partition, Pave, Witness };

struct GeneratorSpec {
  enum class Kind { Harmonic, Random, Union, Basis };
  Kind kind = Kind::Basis;
  std::size_t n = 0;
  /// M for harmonic/random, copies r for union, unused for basis.
  std::size_t m = 0;
};

struct RunConfig {
  Command command = Command::Check;
  std::optional<std::string> input_path;
  std::optional<GeneratorSpec> generator;
  std::optional<TheoremTag> theorem;
  /// Decimal or p/q.
  std::optional<std::string> delta;
  std::optional<std::size_t> r;
  std::optional<std::size_t> sweep_r;
  std::optional<std::uint64_t> seed;
  PavingMethod method = PavingMethod::Exhaustive;
  std::optional<std::size_t> budget;
  std::optional<double> tol_rank;
  std::optional<double> tol_eig;
  bool exact = false;
  std::optional<std::string> output_path;

  /// Throws InvalidArgument when the frame source or required parameters
  /// are missing or inconsistent.
  void validate() const;
};

/// Exit codes returned by run.
inline constexpr int kExitOk = 0;
inline constexpr int kExitInputError = 1;
inline constexpr int kExitInfeasible = 2;
inline constexpr int kExitSearchFailed = 3;

/// Executes one command. Artifacts go to the output path, or to `out` when
/// none is set; diagnostics go to `err`.
int run(const RunConfig& config, std::ostream& out, std::ostream& err);

}  // namespace frameforge
