#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "frameforge/frame.hpp"
#include "frameforge/matroid.hpp"

namespace frameforge {

/// Which conclusion a certificate claims. Short names: none, t1, p5, p6,
/// cor5, paving.
enum class TheoremTag { None, SpanningComplements, EqualNormIndependent, SpanningParts, IndependentSpanning, Paving };

std::string_view to_string(TheoremTag t);
/// Accepts t1, p5, p6, cor5, paving, none.
TheoremTag parse_theorem_tag(std::string_view s);

/// Scalars attached to a claim. Absent fields are omitted from JSON.
struct CertificateParams {
  std::optional<double> delta;
  std::optional<std::size_t> R;
  std::optional<std::size_t> r;
  std::optional<std::size_t> k;
  std::optional<double> norms_max;
  std::optional<double> lower_bound;
  std::optional<double> rescale;
};

struct PartEvidence {
  IndexSet indices;
  std::size_t size = 0;
  std::size_t dim = 0;
  bool independent = false;
  bool spans = false;
  std::size_t complement_dim = 0;
  bool complement_spans = false;
  /// Top eigenvalue of D_A G D_A; absent unless the frame is Parseval.
  std::optional<double> eigenvalue;
};

struct PartitionCertificate {
  TheoremTag theorem = TheoremTag::None;
  CertificateParams params;
  std::vector<PartEvidence> parts;
  Tolerance tol;
  ScalarMode mode = ScalarMode::Float;
  /// Whether the evidence satisfies the conclusion of `theorem`.
  bool claims_hold = false;
};

/// Recomputes every per-part quantity from the frame. Complement spanning is
/// decided by rank and, for Parseval frames, by the compressed Gram route as
/// well (CriterionMismatch if they disagree).
PartitionCertificate verify_partition(const Frame& f, const IndexPartition& p, TheoremTag claims,
                                      const CertificateParams& params, const Numerics& num);

/// Does the evidence satisfy the conclusion of `claims`?
bool claims_hold(TheoremTag claims, const CertificateParams& params, const std::vector<PartEvidence>& parts,
                 std::size_t dim);

inline constexpr const char* kSchemaVersion = "1";

nlohmann::ordered_json to_json(const PartitionCertificate& c);
std::string format_json(const nlohmann::ordered_json& j);

}  // namespace frameforge
