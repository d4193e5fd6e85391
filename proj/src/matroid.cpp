#include "frameforge/matroid.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <limits>

namespace frameforge {

namespace {

constexpr std::size_t kNone = std::numeric_limits<std::size_t>::max();

IndexSet without(const IndexSet& s, std::size_t drop) {
  IndexSet out;
  out.reserve(s.size());
  for (std::size_t z : s)
    if (z != drop) out.push_back(z);
  return out;
}

IndexSet with(IndexSet s, std::size_t add) {
  s.insert(std::lower_bound(s.begin(), s.end(), add), add);
  return s;
}

}  // namespace

// IndexPartition ------------------------------------------------------------

IndexSet IndexPartition::part(std::size_t p) const {
  IndexSet out;
  for (std::size_t i = 0; i < assignment.size(); ++i)
    if (assignment[i] == p) out.push_back(i);
  return out;
}

std::vector<IndexSet> IndexPartition::parts() const {
  std::vector<IndexSet> out(part_count);
  for (std::size_t i = 0; i < assignment.size(); ++i) out.at(assignment[i]).push_back(i);
  return out;
}

IndexPartition IndexPartition::from_parts(std::size_t ground_size, const std::vector<IndexSet>& parts) {
  IndexPartition out{parts.size(), std::vector<std::size_t>(ground_size, kNone)};
  for (std::size_t p = 0; p < parts.size(); ++p)
    for (std::size_t i : parts[p]) {
      if (i >= ground_size || out.assignment[i] != kNone)
        fail(ErrorKind::InvalidArgument, "parts must be disjoint subsets of the ground set");
      out.assignment[i] = p;
    }
  if (std::find(out.assignment.begin(), out.assignment.end(), kNone) != out.assignment.end())
    fail(ErrorKind::InvalidArgument, "parts must cover the ground set");
  return out;
}

// MatroidOracle -------------------------------------------------------------

MatroidOracle::MatroidOracle(const Frame& f, const Numerics& num, MatroidKind kind, IndexSet ground,
                             IndexSet contraction)
    : frame_(&f), num_(num), kind_(kind), ground_(std::move(ground)), contraction_(std::move(contraction)) {
  num_.tol.validate();
  for (std::size_t i : ground_)
    if (i >= f.size()) fail(ErrorKind::InvalidArgument, "ground index out of range");
  for (std::size_t i : contraction_)
    if (i >= f.size()) fail(ErrorKind::InvalidArgument, "contraction index out of range");
  contraction_rank_ = subset_rank(f, contraction_, num_);
  if (!contraction_.empty()) contraction_basis_ = row_space_basis(f.vectors().select_rows(contraction_), num_.tol);
  if (kind_ == MatroidKind::Cospanning && subset_rank(f, all_indices(f.size()), num_) != f.dim())
    fail(ErrorKind::NotAFrame, "cospanning matroid needs a spanning family");
  full_rank_ = rank(all_indices(ground_.size()));
}

MatroidOracle MatroidOracle::linear(const Frame& f, const Numerics& num) {
  return MatroidOracle(f, num, MatroidKind::Linear, all_indices(f.size()), {});
}

MatroidOracle MatroidOracle::linear(const Frame& f, const Numerics& num, IndexSet ground, IndexSet contraction) {
  return MatroidOracle(f, num, MatroidKind::Linear, std::move(ground), std::move(contraction));
}

MatroidOracle MatroidOracle::cospanning(const Frame& f, const Numerics& num) {
  return MatroidOracle(f, num, MatroidKind::Cospanning, all_indices(f.size()), {});
}

std::size_t MatroidOracle::rank(std::span<const std::size_t> local) const {
  if (kind_ == MatroidKind::Cospanning) {
    IndexSet e(local.begin(), local.end());
    std::sort(e.begin(), e.end());
    e.erase(std::unique(e.begin(), e.end()), e.end());
    const std::size_t rest = subset_rank(*frame_, complement(e, frame_->size()), num_);
    return e.size() + rest - frame_->dim();
  }
  if (local.empty()) return 0;
  IndexSet rows = contraction_;
  for (std::size_t e : local) rows.push_back(ground_.at(e));
  return subset_rank(*frame_, rows, num_) - contraction_rank_;
}

bool MatroidOracle::in_span(std::size_t e, std::span<const std::size_t> set) const {
  IndexSet s(set.begin(), set.end());
  const std::size_t base = rank(s);
  s.push_back(e);
  return rank(s) == base;
}

std::vector<double> MatroidOracle::projected_vector(std::size_t local) const {
  auto src = frame_->vector(ground_.at(local));
  std::vector<double> v(src.begin(), src.end());
  for (std::size_t k = 0; k < contraction_basis_.rows(); ++k) {
    double dot = 0;
    for (std::size_t i = 0; i < v.size(); ++i) dot += contraction_basis_(k, i) * v[i];
    for (std::size_t i = 0; i < v.size(); ++i) v[i] -= dot * contraction_basis_(k, i);
  }
  return v;
}

std::size_t linear_rank(const Frame& f, const IndexSet& e, const Numerics& num) { return subset_rank(f, e, num); }

std::size_t cospanning_rank(const Frame& f, const IndexSet& e, const Numerics& num) {
  return MatroidOracle::cospanning(f, num).rank(e);
}

// Partition augmentation ----------------------------------------------------

namespace {

class Augmenter {
 public:
  Augmenter(const MatroidOracle& oracle, std::size_t parts)
      : oracle_(oracle), parts_(parts), where_(oracle.ground_size(), kNone) {}

  Augmenter(const MatroidOracle& oracle, std::vector<IndexSet> parts)
      : oracle_(oracle), parts_(std::move(parts)), where_(oracle.ground_size(), kNone) {
    for (std::size_t p = 0; p < parts_.size(); ++p) {
      std::sort(parts_[p].begin(), parts_[p].end());
      for (std::size_t i : parts_[p]) {
        if (i >= where_.size() || where_[i] != kNone) fail(ErrorKind::InvalidArgument, "parts must be disjoint");
        where_[i] = p;
      }
      if (!oracle_.independent(parts_[p])) fail(ErrorKind::PreconditionViolated, "initial part is dependent");
    }
  }

  /// Inserts x along a shortest augmenting path. On failure returns false and
  /// stores the elements reached from x.
  bool insert(std::size_t x, IndexSet& reached) {
    const std::size_t n = where_.size();
    std::vector<std::size_t> parent(n, kNone), parent_part(n, kNone);
    std::vector<char> seen(n, 0);
    std::deque<std::size_t> queue{x};
    seen[x] = 1;
    while (!queue.empty()) {
      const std::size_t y = queue.front();
      queue.pop_front();
      for (std::size_t p = 0; p < parts_.size(); ++p) {
        if (where_[y] == p) continue;
        if (oracle_.independent(with(parts_[p], y))) {
          apply(x, y, p, parent, parent_part);
          return true;
        }
      }
      for (std::size_t p = 0; p < parts_.size(); ++p) {
        if (where_[y] == p) continue;
        for (std::size_t z : parts_[p]) {
          if (seen[z]) continue;
          if (oracle_.independent(with(without(parts_[p], z), y))) {
            seen[z] = 1;
            parent[z] = y;
            parent_part[z] = p;
            queue.push_back(z);
          }
        }
      }
    }
    reached.clear();
    for (std::size_t i = 0; i < n; ++i)
      if (seen[i]) reached.push_back(i);
    return false;
  }

  IndexPartition partition(std::size_t leftover_part) const {
    IndexPartition out{parts_.size(), where_};
    for (auto& a : out.assignment)
      if (a == kNone) a = leftover_part;
    return out;
  }

 private:
  void apply(std::size_t x, std::size_t y, std::size_t p, const std::vector<std::size_t>& parent,
             const std::vector<std::size_t>& parent_part) {
    std::size_t cur = y, target = p;
    while (true) {
      const std::size_t old = where_[cur];
      if (old != kNone) parts_[old] = without(parts_[old], cur);
      parts_[target] = with(parts_[target], cur);
      where_[cur] = target;
      if (cur == x) break;
      target = parent_part[cur];
      cur = parent[cur];
    }
  }

  const MatroidOracle& oracle_;
  std::vector<IndexSet> parts_;
  std::vector<std::size_t> where_;
};

}  // namespace

PartitionOutcome matroid_partition(const MatroidOracle& oracle, std::size_t m_parts) {
  if (m_parts < 1) fail(ErrorKind::InvalidArgument, "need at least one part");
  Augmenter aug(oracle, m_parts);
  IndexSet reached;
  for (std::size_t x = 0; x < oracle.ground_size(); ++x) {
    if (aug.insert(x, reached)) continue;
    InfeasibleWitness w{reached, oracle.rank(reached), m_parts};
    if (w.set.size() <= m_parts * w.rank)
      fail(ErrorKind::InternalContractViolation, "augmentation failure set does not violate the rank bound");
    return w;
  }
  return aug.partition(0);
}

std::optional<IndexPartition> extend_partition(const MatroidOracle& oracle, std::vector<IndexSet> parts,
                                               const IndexSet& pending, IndexSet* failure_set) {
  if (parts.empty()) fail(ErrorKind::InvalidArgument, "need at least one part");
  Augmenter aug(oracle, std::move(parts));
  IndexSet reached;
  for (std::size_t x : pending) {
    if (aug.insert(x, reached)) continue;
    if (failure_set) *failure_set = reached;
    return std::nullopt;
  }
  auto out = aug.partition(kNone);
  if (std::find(out.assignment.begin(), out.assignment.end(), kNone) != out.assignment.end())
    fail(ErrorKind::InvalidArgument, "initial parts and pending elements must cover the ground set");
  return out;
}

IndexSet dependent_elements(const MatroidOracle& oracle, const IndexSet& part) {
  IndexSet out;
  for (std::size_t i : part)
    if (oracle.in_span(i, without(part, i))) out.push_back(i);
  return out;
}

IndexPartition md_partition(const MatroidOracle& oracle, std::size_t m_parts) {
  if (m_parts < 1) fail(ErrorKind::InvalidArgument, "need at least one part");
  Augmenter aug(oracle, m_parts);
  IndexSet reached;
  std::size_t placed = 0;
  for (std::size_t x = 0; x < oracle.ground_size(); ++x)
    if (aug.insert(x, reached)) ++placed;
  IndexPartition out = aug.partition(0);

  // Move dependents of parts 1.. into part 0 until those parts are independent.
  for (std::size_t p = 1; p < m_parts; ++p) {
    while (true) {
      const IndexSet dep = dependent_elements(oracle, out.part(p));
      if (dep.empty()) break;
      out.assignment[dep.front()] = 0;
    }
  }

  std::size_t dim_sum = 0;
  const auto parts = out.parts();
  for (std::size_t p = 0; p < parts.size(); ++p) {
    const std::size_t d = oracle.rank(parts[p]);
    if (p > 0 && d != parts[p].size())
      fail(ErrorKind::InternalContractViolation, "md_partition left a dependent part beyond the first");
    dim_sum += d;
  }
  if (dim_sum != placed) fail(ErrorKind::InternalContractViolation, "md_partition dimension sum is not maximal");
  return out;
}

IndexPartition md_partition(const Frame& f, std::size_t m_parts, const Numerics& num) {
  return md_partition(MatroidOracle::linear(f, num), m_parts);
}

// Chains --------------------------------------------------------------------

namespace {

double dot(std::span<const double> a, std::span<const double> b) {
  double s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

// f_v = alpha f_u + sum_{j in part(v), j != v} alpha_j f_j with alpha != 0,
// decided by ranks: rank(W + v) = rank(W + u) = rank(W + u + v), W = part(v) \ v.
bool link_valid(const MatroidOracle& o, const std::vector<IndexSet>& parts, const IndexPartition& partition,
                std::size_t u, std::size_t v) {
  if (u == v) return false;
  const IndexSet w = without(parts[partition.assignment[v]], v);
  const std::size_t r_wv = o.rank(with(w, v));
  IndexSet wu = std::binary_search(w.begin(), w.end(), u) ? w : with(w, u);
  const std::size_t r_wu = o.rank(wu);
  if (r_wv != r_wu) return false;
  return o.rank(with(wu, v)) == r_wu;
}

ChainLink make_link(const MatroidOracle& o, const std::vector<IndexSet>& parts, const IndexPartition& partition,
                    std::size_t prev, std::size_t v) {
  const std::size_t b = partition.assignment[v];
  ChainLink link{v, b, 0.0, {}};
  IndexSet w = without(parts[b], v);
  std::vector<double> target = o.projected_vector(v);
  const std::size_t dim = target.size();

  std::vector<std::size_t> cols;
  if (prev != kNone) {
    if (o.in_span(prev, w)) {
      link.alpha = 1.0;
      const auto fu = o.projected_vector(prev);
      for (std::size_t i = 0; i < dim; ++i) target[i] -= fu[i];
    } else {
      cols.push_back(prev);
    }
  }
  cols.insert(cols.end(), w.begin(), w.end());
  MatrixD rows(cols.size(), dim);
  for (std::size_t k = 0; k < cols.size(); ++k) {
    const auto vec = o.projected_vector(cols[k]);
    std::copy(vec.begin(), vec.end(), rows.row(k).begin());
  }
  const auto coef = least_squares_combination(rows, target, o.numerics().tol);
  std::size_t k = 0;
  if (prev != kNone && link.alpha == 0.0) link.alpha = coef[k++];
  for (; k < cols.size(); ++k) link.coefficients.emplace_back(o.frame_index(cols[k]), coef[k]);
  return link;
}

void check_chain_preconditions(const MatroidOracle& o, const IndexPartition& partition,
                               const std::vector<IndexSet>& parts, const IndexSet& l_start) {
  if (partition.ground_size() != o.ground_size())
    fail(ErrorKind::InvalidArgument, "partition does not match the ground set");
  for (std::size_t p = 1; p < parts.size(); ++p)
    if (!o.independent(parts[p]))
      fail(ErrorKind::PreconditionViolated, "part " + std::to_string(p) + " is linearly dependent");
  for (std::size_t a : l_start) {
    if (a >= o.ground_size()) fail(ErrorKind::InvalidArgument, "chain start out of range");
    if (!o.in_span(a, without(parts[partition.assignment[a]], a)))
      fail(ErrorKind::PreconditionViolated, "chain start " + std::to_string(a) + " is independent in its part");
  }
}

}  // namespace

ChainClosure find_chains(const MatroidOracle& oracle, const IndexPartition& partition, const IndexSet& l_start) {
  const auto parts = partition.parts();
  check_chain_preconditions(oracle, partition, parts, l_start);
  const std::size_t n = oracle.ground_size();
  std::vector<std::size_t> parent(n, kNone);
  std::vector<char> seen(n, 0);
  std::deque<std::size_t> queue;
  for (std::size_t a : l_start)
    if (!seen[a]) {
      seen[a] = 1;
      queue.push_back(a);
    }
  while (!queue.empty()) {
    const std::size_t u = queue.front();
    queue.pop_front();
    for (std::size_t v = 0; v < n; ++v) {
      if (seen[v] || !link_valid(oracle, parts, partition, u, v)) continue;
      seen[v] = 1;
      parent[v] = u;
      queue.push_back(v);
    }
  }

  ChainClosure out;
  for (std::size_t v = 0; v < n; ++v) {
    if (!seen[v]) continue;
    out.reachable.push_back(v);
    std::vector<std::size_t> path;
    for (std::size_t c = v; c != kNone; c = parent[c]) path.push_back(c);
    std::reverse(path.begin(), path.end());
    Chain chain;
    for (std::size_t k = 0; k < path.size(); ++k)
      chain.links.push_back(make_link(oracle, parts, partition, k == 0 ? kNone : path[k - 1], path[k]));
    out.chains.push_back(std::move(chain));
  }
  return out;
}

ChainClosure find_chains(const Frame& f, const IndexPartition& partition, const IndexSet& l_start,
                         const Numerics& num) {
  return find_chains(MatroidOracle::linear(f, num), partition, l_start);
}

bool verify_chain(const MatroidOracle& o, const IndexPartition& partition, const Chain& chain) {
  if (chain.links.empty()) return false;
  const auto parts = partition.parts();
  const double alpha_floor = o.numerics().tol.eig_abs;

  // Map frame indices in the coefficient log back to local ground indices.
  auto local_of = [&](std::size_t frame_idx) -> std::size_t {
    auto it = std::find(o.ground().begin(), o.ground().end(), frame_idx);
    return it == o.ground().end() ? kNone : static_cast<std::size_t>(it - o.ground().begin());
  };

  IndexSet used;
  for (std::size_t k = 0; k < chain.links.size(); ++k) {
    const ChainLink& link = chain.links[k];
    if (link.index >= o.ground_size() || partition.assignment[link.index] != link.part) return false;
    if (std::find(used.begin(), used.end(), link.index) != used.end()) return false;
    used.push_back(link.index);
    if (k == 0) {
      if (!o.in_span(link.index, without(parts[link.part], link.index))) return false;
    } else {
      if (!link_valid(o, parts, partition, chain.links[k - 1].index, link.index)) return false;
      if (!(std::abs(link.alpha) > alpha_floor)) return false;
    }
    // Residual of the stored combination.
    auto r = o.projected_vector(link.index);
    const double scale = std::max(1.0, std::sqrt(dot(r, r)));
    if (k > 0) {
      const auto prev = o.projected_vector(chain.links[k - 1].index);
      for (std::size_t i = 0; i < r.size(); ++i) r[i] -= link.alpha * prev[i];
    }
    for (const auto& [idx, c] : link.coefficients) {
      const std::size_t l = local_of(idx);
      if (l == kNone || partition.assignment[l] != link.part || l == link.index) return false;
      const auto fj = o.projected_vector(l);
      for (std::size_t i = 0; i < r.size(); ++i) r[i] -= c * fj[i];
    }
    if (std::sqrt(dot(r, r)) > 1e-7 * scale) return false;
  }
  return true;
}

// Failure witness -----------------------------------------------------------

std::optional<Rational> T2Witness::ratio() const {
  if (subspace_dim == 0) return std::nullopt;
  Rational q(mpz_class(static_cast<unsigned long>(violating_set.size())),
             mpz_class(static_cast<unsigned long>(subspace_dim)));
  q.canonicalize();
  return q;
}

T2Checks check_t2_witness(const MatroidOracle& o, const T2Witness& w) {
  T2Checks out;
  const IndexSet& gen = w.subspace_generators;
  const std::size_t d = o.rank(gen);
  IndexSet in_s;
  for (std::size_t i = 0; i < o.ground_size(); ++i)
    if (o.in_span(i, gen)) in_s.push_back(i);
  if (d != w.subspace_dim || in_s != w.violating_set || w.partition.ground_size() != o.ground_size())
    return out;

  const auto parts = w.partition.parts();
  out.subspace_spanned_by_each_part = true;
  out.remainder_independent = true;
  for (const IndexSet& part : parts) {
    IndexSet inside, outside;
    for (std::size_t i : part) (std::binary_search(in_s.begin(), in_s.end(), i) ? inside : outside).push_back(i);
    if (o.rank(inside) != d) out.subspace_spanned_by_each_part = false;
    IndexSet joined = gen;
    joined.insert(joined.end(), outside.begin(), outside.end());
    if (!o.independent(outside) || o.rank(joined) != d + outside.size()) out.remainder_independent = false;
  }
  out.ratio_exceeds_parts = in_s.size() > w.parts * o.rank(in_s);
  return out;
}

T2Witness t2_witness(const MatroidOracle& oracle, std::size_t m_parts) {
  if (std::holds_alternative<IndexPartition>(matroid_partition(oracle, m_parts)))
    fail(ErrorKind::FeasibleInput, "a partition into " + std::to_string(m_parts) + " independent sets exists");

  T2Witness w;
  w.parts = m_parts;
  w.partition = md_partition(oracle, m_parts);
  const IndexSet l = dependent_elements(oracle, w.partition.part(0));
  const ChainClosure closure = find_chains(oracle, w.partition, l);
  w.subspace_generators = closure.reachable;
  w.subspace_dim = oracle.rank(w.subspace_generators);
  for (std::size_t i = 0; i < oracle.ground_size(); ++i)
    if (oracle.in_span(i, w.subspace_generators)) w.violating_set.push_back(i);

  const std::size_t dim = oracle.frame().dim();
  MatrixD gens(w.subspace_generators.size(), dim);
  for (std::size_t k = 0; k < w.subspace_generators.size(); ++k) {
    const auto v = oracle.projected_vector(w.subspace_generators[k]);
    std::copy(v.begin(), v.end(), gens.row(k).begin());
  }
  w.subspace_basis = row_space_basis(gens, oracle.numerics().tol);

  if (!check_t2_witness(oracle, w).all())
    fail(ErrorKind::InternalContractViolation, "constructed failure witness fails its own checks");
  return w;
}

T2Witness t2_witness(const Frame& f, std::size_t m_parts, const Numerics& num) {
  return t2_witness(MatroidOracle::linear(f, num), m_parts);
}

}  // namespace frameforge
