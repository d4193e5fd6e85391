#include "frameforge/certificate.hpp"

#include <algorithm>

namespace frameforge {

std::string_view to_string(TheoremTag t) {
  switch (t) {
    case TheoremTag::None: return "none";
    case TheoremTag::SpanningComplements: return "t1";
    case TheoremTag::EqualNormIndependent: return "p5";
    case TheoremTag::SpanningParts: return "p6";
    case TheoremTag::IndependentSpanning: return "cor5";
    case TheoremTag::Paving: return "paving";
  }
  return "none";
}

TheoremTag parse_theorem_tag(std::string_view s) {
  for (auto t : {TheoremTag::None, TheoremTag::SpanningComplements, TheoremTag::EqualNormIndependent,
                 TheoremTag::SpanningParts, TheoremTag::IndependentSpanning, TheoremTag::Paving})
    if (to_string(t) == s) return t;
  fail(ErrorKind::InvalidArgument, "unknown theorem '" + std::string(s) + "'");
}

bool claims_hold(TheoremTag claims, const CertificateParams& params, const std::vector<PartEvidence>& parts,
                 std::size_t dim) {
  auto every = [&](auto pred, std::size_t from = 0) {
    return std::all_of(parts.begin() + static_cast<std::ptrdiff_t>(std::min(from, parts.size())), parts.end(), pred);
  };
  switch (claims) {
    case TheoremTag::None: return true;
    case TheoremTag::SpanningComplements:
    case TheoremTag::Paving: return every([](const PartEvidence& e) { return e.complement_spans; });
    case TheoremTag::EqualNormIndependent:
      if (!every([](const PartEvidence& e) { return e.independent; })) return false;
      if (params.k && *params.k == 0)
        return every([dim](const PartEvidence& e) { return e.spans && e.size == dim; });
      return true;
    case TheoremTag::SpanningParts: return every([](const PartEvidence& e) { return e.spans; });
    case TheoremTag::IndependentSpanning:
      if (parts.empty() || !parts.front().independent) return false;
      return every([dim](const PartEvidence& e) { return e.independent && e.spans && e.size == dim; }, 1);
  }
  return false;
}

PartitionCertificate verify_partition(const Frame& f, const IndexPartition& p, TheoremTag claims,
                                      const CertificateParams& params, const Numerics& num) {
  if (p.ground_size() != f.size()) fail(ErrorKind::InvalidArgument, "partition does not cover the frame");
  PartitionCertificate c;
  c.theorem = claims;
  c.params = params;
  c.tol = num.tol;
  c.mode = num.mode;

  const bool parseval = is_parseval(f, num.tol);
  const MatrixD g = parseval ? gram(f) : MatrixD();
  const MatrixD* gp = parseval ? &g : nullptr;

  for (const IndexSet& part : p.parts()) {
    PartEvidence e;
    e.indices = part;
    e.size = part.size();
    e.dim = subset_rank(f, part, num);
    e.independent = e.dim == e.size;
    e.spans = e.dim == f.dim();
    const auto comp = spans_subset(f, gp, complement(part, f.size()), num);
    e.complement_dim = comp.rank;
    e.complement_spans = comp.spans;
    if (parseval) e.eigenvalue = part.empty() ? 0.0 : top_eigenvalue_sym(g.principal(part), num.tol);
    c.parts.push_back(std::move(e));
  }
  c.claims_hold = claims_hold(claims, params, c.parts, f.dim());
  return c;
}

nlohmann::ordered_json to_json(const PartitionCertificate& c) {
  using nlohmann::ordered_json;
  ordered_json params = ordered_json::object();
  if (c.params.delta) params["delta"] = *c.params.delta;
  if (c.params.R) params["R"] = *c.params.R;
  if (c.params.r) params["r"] = *c.params.r;
  if (c.params.k) params["k"] = *c.params.k;
  if (c.params.norms_max) params["norms_max"] = *c.params.norms_max;
  if (c.params.lower_bound) params["lower_bound"] = *c.params.lower_bound;
  if (c.params.rescale) params["rescale"] = *c.params.rescale;

  ordered_json parts = ordered_json::array();
  for (const auto& e : c.parts) {
    ordered_json j;
    j["indices"] = e.indices;
    j["size"] = e.size;
    j["dim"] = e.dim;
    j["independent"] = e.independent;
    j["spans"] = e.spans;
    j["complement_dim"] = e.complement_dim;
    j["complement_spans"] = e.complement_spans;
    j["eigenvalue"] = e.eigenvalue ? ordered_json(*e.eigenvalue) : ordered_json(nullptr);
    parts.push_back(std::move(j));
  }

  ordered_json out;
  out["schema_version"] = kSchemaVersion;
  out["theorem"] = std::string(to_string(c.theorem));
  out["params"] = std::move(params);
  out["parts"] = std::move(parts);
  out["tolerances"] = {{"rank_rel", c.tol.rank_rel}, {"eig_abs", c.tol.eig_abs}};
  out["scalar_mode"] = c.mode == ScalarMode::Exact ? "exact" : "float";
  out["claims_hold"] = c.claims_hold;
  return out;
}

std::string format_json(const nlohmann::ordered_json& j) { return j.dump(2) + "\n"; }

}  // namespace frameforge
