#include "frameforge/partitioners.hpp"

#include <algorithm>
#include <cmath>

namespace frameforge {

namespace {

IndexSet to_frame(const MatroidOracle& o, const IndexSet& local) {
  IndexSet out;
  out.reserve(local.size());
  for (std::size_t l : local) out.push_back(o.frame_index(l));
  std::sort(out.begin(), out.end());
  return out;
}

IndexSet merged(IndexSet a, const IndexSet& b) {
  a.insert(a.end(), b.begin(), b.end());
  std::sort(a.begin(), a.end());
  a.erase(std::unique(a.begin(), a.end()), a.end());
  return a;
}

PartitionResult certified(const Frame& f, IndexPartition p, TheoremTag tag, const CertificateParams& params,
                          const Numerics& num, const char* what) {
  PartitionResult out{std::move(p), {}};
  out.certificate = verify_partition(f, out.partition, tag, params, num);
  if (!out.certificate.claims_hold) fail(ErrorKind::InternalContractViolation, what);
  return out;
}

// Greedy basis of `set` in ascending order; the rest goes to `surplus`.
IndexSet greedy_independent(const MatroidOracle& o, const IndexSet& set, IndexSet* surplus) {
  IndexSet kept;
  for (std::size_t i : set) {
    kept.push_back(i);
    if (!o.independent(kept)) {
      kept.pop_back();
      if (surplus) surplus->push_back(i);
    }
  }
  return kept;
}

// Spanning partition of the oracle's ground set into r parts (frame
// indices); the quotient by the contraction is the ambient space.
std::vector<IndexSet> spanning_parts(const Frame& f, const Numerics& num, const IndexSet& ground,
                                     const IndexSet& contraction, std::size_t r) {
  const MatroidOracle o = MatroidOracle::linear(f, num, ground, contraction);
  const std::size_t d = o.full_rank();
  std::vector<IndexSet> out(r);
  if (d == 0) {
    out[0] = ground;
    return out;
  }

  auto outcome = matroid_partition(o, r);
  if (auto* p = std::get_if<IndexPartition>(&outcome)) {
    for (std::size_t j = 0; j < r; ++j) {
      const IndexSet part = p->part(j);
      if (o.rank(part) != d) fail(ErrorKind::InternalContractViolation, "independent part fails to span");
      out[j] = to_frame(o, part);
    }
    return out;
  }

  const T2Witness w = t2_witness(o, r);
  const auto parts = w.partition.parts();
  for (std::size_t j = 0; j < r; ++j) out[j] = to_frame(o, parts[j]);
  if (w.subspace_dim == d) return out;

  // Quotient by S: the remaining indices, contracted by the generators of S.
  IndexSet rest_local = complement(w.violating_set, o.ground_size());
  const IndexSet rest = to_frame(o, rest_local);
  const IndexSet next_contraction = merged(contraction, to_frame(o, w.subspace_generators));
  const auto sub = spanning_parts(f, num, rest, next_contraction, r);

  const MatroidOracle q = MatroidOracle::linear(f, num, rest, next_contraction);
  auto local_in_q = [&](const IndexSet& frame_idx) {
    IndexSet l;
    for (std::size_t i : frame_idx)
      l.push_back(static_cast<std::size_t>(std::lower_bound(rest.begin(), rest.end(), i) - rest.begin()));
    return l;
  };
  for (std::size_t j = 0; j < r; ++j) {
    if (q.rank(local_in_q(sub[j])) != q.full_rank())
      fail(ErrorKind::InternalContractViolation, "quotient partition does not span");
    IndexSet remainder;
    for (std::size_t i : out[j])
      if (std::binary_search(rest.begin(), rest.end(), i)) remainder.push_back(i);
    const IndexSet rl = local_in_q(remainder);
    if (!q.independent(rl) || q.rank(rl) != q.full_rank())
      fail(ErrorKind::InternalContractViolation, "part remainder does not span the quotient");
  }
  return out;
}

}  // namespace

PartitionResult spanning_complement_partition(const Frame& f, double delta, std::optional<std::size_t> r_parts,
                                              const Numerics& num) {
  num.tol.validate();
  if (!(delta > 0 && delta < 1)) fail(ErrorKind::InvalidArgument, "delta must lie in (0, 1)");
  if (!is_parseval(f, num.tol)) fail(ErrorKind::NotParseval, "spanning complements need a Parseval frame");
  const double norms_max = f.max_norm_sq();
  if (norms_max > 1 - delta + num.tol.eig_abs)
    fail(ErrorKind::NormBoundViolated, "max ||f_i||^2 = " + format_double(norms_max) + " exceeds 1 - delta");

  const double effective = std::max(delta, 1 - norms_max);
  const double least = 1 / effective - 1e-9;
  const auto r_min = static_cast<std::size_t>(std::ceil(least));
  const std::size_t r = r_parts.value_or(r_min);
  if (static_cast<double>(r) < least) fail(ErrorKind::InvalidArgument, "R must satisfy R >= 1/delta");

  auto outcome = matroid_partition(MatroidOracle::cospanning(f, num), r);
  auto* p = std::get_if<IndexPartition>(&outcome);
  if (p == nullptr) fail(ErrorKind::InternalContractViolation, "cospanning partition failed under the norm bound");

  CertificateParams params;
  params.delta = delta;
  params.R = r;
  params.norms_max = norms_max;
  return certified(f, std::move(*p), TheoremTag::SpanningComplements, params, num, "a complement fails to span");
}

PartitionResult equal_norm_independent_partition(const Frame& f, const Numerics& num) {
  num.tol.validate();
  if (!is_parseval(f, num.tol)) fail(ErrorKind::NotParseval, "equal-norm partition needs a Parseval frame");
  double lo = f.norm_sq(0), hi = lo;
  for (std::size_t i = 1; i < f.size(); ++i) {
    lo = std::min(lo, f.norm_sq(i));
    hi = std::max(hi, f.norm_sq(i));
  }
  if (hi - lo > 1e-9) fail(ErrorKind::NotEqualNorm, "norms differ by " + format_double(hi - lo));

  const std::size_t n = f.dim(), m = f.size();
  const std::size_t r = m / n, k = m % n;
  const std::size_t count = k > 0 ? r + 1 : r;
  auto outcome = matroid_partition(MatroidOracle::linear(f, num), count);
  auto* p = std::get_if<IndexPartition>(&outcome);
  if (p == nullptr) fail(ErrorKind::InternalContractViolation, "independent partition failed for an equal-norm frame");

  CertificateParams params;
  params.r = r;
  params.k = k;
  params.norms_max = hi;
  return certified(f, std::move(*p), TheoremTag::EqualNormIndependent, params, num,
                   "equal-norm partition violates its conclusion");
}

PartitionResult spanning_partition(const Frame& f, const Numerics& num, std::optional<std::size_t> parts) {
  num.tol.validate();
  const FrameBounds bounds = validate_frame(f, num.tol);
  const double norms_max = f.max_norm_sq();
  std::size_t r;
  double rescale;
  if (parts) {
    r = *parts;
    if (r < 1) fail(ErrorKind::InvalidArgument, "need at least one part");
    if (static_cast<double>(r) * norms_max > bounds.lower + num.tol.eig_abs)
      fail(ErrorKind::NormBoundViolated, "r * max ||f_i||^2 exceeds the lower frame bound");
    rescale = 1 / std::sqrt(bounds.lower);
  } else {
    if (norms_max > 1 + num.tol.eig_abs) fail(ErrorKind::NormBoundViolated, "some ||f_i||^2 exceeds 1");
    // Normalized to max norm 1 the lower bound is A / max ||f_i||^2.
    const double a = bounds.lower / norms_max;
    r = static_cast<std::size_t>(std::floor(a + num.tol.eig_abs));
    if (r < 1) fail(ErrorKind::PreconditionViolated, "lower frame bound is below 1");
    rescale = 1 / std::sqrt(norms_max * static_cast<double>(r));
  }

  // Spans are invariant under the rescaling, so the recursion runs on f itself.
  const auto found = spanning_parts(f, num, all_indices(f.size()), {}, r);
  CertificateParams params;
  params.r = r;
  params.norms_max = norms_max;
  params.lower_bound = bounds.lower;
  params.rescale = rescale;
  return certified(f, IndexPartition::from_parts(f.size(), found), TheoremTag::SpanningParts, params, num,
                   "a part fails to span");
}

std::optional<IndexPartition> exhaustive_independent_spanning(const Frame& f, std::size_t r, const Numerics& num) {
  const MatroidOracle o = MatroidOracle::linear(f, num);
  const std::size_t m = f.size(), n = f.dim();
  std::vector<IndexSet> parts(r + 1);

  auto search = [&](auto&& self, std::size_t i) -> bool {
    std::size_t missing = 0;
    for (std::size_t p = 1; p <= r; ++p) missing += n - parts[p].size();
    if (missing > m - i) return false;
    if (i == m) return true;
    bool opened_empty = false;
    for (std::size_t p = 0; p <= r; ++p) {
      if (p > 0 && parts[p].size() == n) continue;
      // Bases are interchangeable: try at most one empty basis slot.
      if (p > 0 && parts[p].empty()) {
        if (opened_empty) continue;
        opened_empty = true;
      }
      parts[p].push_back(i);
      if (o.independent(parts[p]) && self(self, i + 1)) return true;
      parts[p].pop_back();
    }
    return false;
  };
  if (!search(search, 0)) return std::nullopt;
  return IndexPartition::from_parts(m, parts);
}

PartitionResult independent_spanning_partition(const Frame& f, std::size_t r, const Numerics& num) {
  num.tol.validate();
  if (r < 1) fail(ErrorKind::InvalidArgument, "need r >= 1");
  const MatroidOracle o = MatroidOracle::linear(f, num);
  const std::size_t n = f.dim();

  auto first = matroid_partition(o, r + 1);
  if (auto* w = std::get_if<InfeasibleWitness>(&first))
    throw HypothesisError(1, *w, "no partition into r + 1 independent sets");

  // Hypothesis (2): r spanning parts, trimmed to bases.
  std::vector<IndexSet> spanning;
  try {
    const auto sp = spanning_partition(f, num, r);
    spanning = sp.partition.parts();
  } catch (const Error& e) {
    if (e.kind() != ErrorKind::NormBoundViolated && e.kind() != ErrorKind::NotAFrame) throw;
    const IndexPartition md = md_partition(o, r);
    spanning = md.parts();
  }
  std::vector<IndexSet> parts(r + 1);
  IndexSet surplus;
  for (std::size_t j = 0; j < r; ++j) {
    parts[j + 1] = greedy_independent(o, spanning[j], &surplus);
    if (parts[j + 1].size() != n) throw HypothesisError(2, std::nullopt, "no r disjoint bases found");
  }
  std::sort(surplus.begin(), surplus.end());
  IndexSet pending;
  parts[0] = greedy_independent(o, surplus, &pending);

  std::optional<IndexPartition> result = extend_partition(o, parts, pending);
  if (!result) {
    if (f.size() > kExhaustiveLimit)
      fail(ErrorKind::SearchExhausted, "augmentation stalled and M exceeds the exhaustive limit");
    result = exhaustive_independent_spanning(f, r, num);
    if (!result) fail(ErrorKind::SearchExhausted, "no partition into an independent set and r bases");
  }

  CertificateParams params;
  params.r = r;
  params.k = f.size() >= r * n ? f.size() - r * n : 0;
  params.norms_max = f.max_norm_sq();
  return certified(f, std::move(*result), TheoremTag::IndependentSpanning, params, num,
                   "independent-plus-bases partition violates its conclusion");
}

}  // namespace frameforge
