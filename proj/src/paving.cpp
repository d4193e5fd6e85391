#include "frameforge/paving.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <limits>
#include <random>
#include <thread>

namespace frameforge {

std::string_view to_string(PavingMethod m) { return m == PavingMethod::Exhaustive ? "exhaustive" : "annealing"; }

PavingMethod parse_paving_method(std::string_view s) {
  if (s == "exhaustive") return PavingMethod::Exhaustive;
  if (s == "annealing") return PavingMethod::Annealing;
  fail(ErrorKind::InvalidArgument, "unknown paving method '" + std::string(s) + "'");
}

MatrixD hollow_gram(const Frame& f, const Tolerance& tol) {
  if (!is_parseval(f, tol)) fail(ErrorKind::NotParseval, "hollow_gram needs a Parseval frame");
  MatrixD h = gram(f);
  for (std::size_t i = 0; i < h.rows(); ++i) h(i, i) = 0;
  if (spectral_norm(h, tol) > 1 + tol.eig_abs)
    fail(ErrorKind::InternalContractViolation, "hollow Gram norm exceeds 1");
  return h;
}

double compression_norm(const MatrixD& h, const IndexSet& a, const Tolerance& tol) {
  if (a.empty()) return 0;
  if (a.size() == 1) return std::abs(h(a[0], a[0]));
  const auto e = eigen_sym(h.principal(a), tol);
  return std::max(std::abs(e.values.front()), std::abs(e.values.back()));
}

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

std::size_t worker_count() {
  std::size_t n = std::max(1u, std::thread::hardware_concurrency());
  if (const char* env = std::getenv("FRAMEFORGE_THREADS")) {
    const long v = std::strtol(env, nullptr, 10);
    if (v >= 1) n = std::min<std::size_t>(static_cast<std::size_t>(v), 64);
  }
  return n;
}

void atomic_min(std::atomic<double>& a, double v) {
  double cur = a.load();
  while (v < cur && !a.compare_exchange_weak(cur, v)) {
  }
}

// Depth-first search over restricted-growth strings below one prefix. Norms
// are compared as whole multiples of eig_abs (floor), so values that differ
// only by rounding tie and the lexicographically first one wins. Local
// pruning is strict; the shared bound only cuts branches strictly worse than
// some complete assignment.
class PrefixSearch {
 public:
  PrefixSearch(const MatrixD& h, std::size_t r, const Tolerance& tol, std::atomic<double>& shared)
      : h_(h), m_(h.rows()), r_(r), tol_(tol), shared_(shared), assign_(m_), blocks_(r), norms_(r, 0.0) {}

  void run(const std::vector<std::size_t>& prefix) {
    std::size_t used = 0;
    for (std::size_t i = 0; i < prefix.size(); ++i) {
      assign_[i] = prefix[i];
      blocks_[prefix[i]].push_back(i);
      used = std::max(used, prefix[i] + 1);
    }
    double cur = 0;
    for (std::size_t p = 0; p < r_; ++p) {
      norms_[p] = level(compression_norm(h_, blocks_[p], tol_));
      cur = std::max(cur, norms_[p]);
    }
    if (cur <= shared_.load()) dfs(prefix.size(), used, cur);
  }

  double best() const { return best_; }
  const std::vector<std::size_t>& best_assignment() const { return best_assign_; }
  std::size_t evaluations() const { return evals_; }

 private:
  void dfs(std::size_t i, std::size_t used, double cur) {
    if (i == m_) {
      if (cur < best_) {
        best_ = cur;
        best_assign_ = assign_;
        atomic_min(shared_, cur);
      }
      return;
    }
    const std::size_t limit = std::min(used + 1, r_);
    for (std::size_t p = 0; p < limit; ++p) {
      blocks_[p].push_back(i);
      const double nn = level(compression_norm(h_, blocks_[p], tol_));
      ++evals_;
      const double next = std::max(cur, nn);
      if (next < best_ && next <= shared_.load()) {
        const double old = norms_[p];
        norms_[p] = nn;
        assign_[i] = p;
        dfs(i + 1, std::max(used, p + 1), next);
        norms_[p] = old;
      }
      blocks_[p].pop_back();
    }
  }

  double level(double v) const { return std::floor(v / tol_.eig_abs); }

  const MatrixD& h_;
  std::size_t m_, r_;
  Tolerance tol_;
  std::atomic<double>& shared_;
  std::vector<std::size_t> assign_;
  std::vector<IndexSet> blocks_;
  std::vector<double> norms_;
  double best_ = kInf;
  std::vector<std::size_t> best_assign_;
  std::size_t evals_ = 0;
};

void prefixes(std::size_t depth, std::size_t r, std::vector<std::size_t>& cur, std::size_t used,
              std::vector<std::vector<std::size_t>>& out) {
  if (cur.size() == depth) {
    out.push_back(cur);
    return;
  }
  for (std::size_t p = 0; p < std::min(used + 1, r); ++p) {
    cur.push_back(p);
    prefixes(depth, r, cur, std::max(used, p + 1), out);
    cur.pop_back();
  }
}

std::vector<std::size_t> exhaustive(const MatrixD& h, std::size_t r, const Tolerance& tol, std::size_t& evals) {
  const std::size_t m = h.rows();
  std::vector<std::vector<std::size_t>> work;
  std::vector<std::size_t> cur;
  prefixes(std::min<std::size_t>(m, 4), r, cur, 0, work);

  struct Slot {
    double best = kInf;
    std::vector<std::size_t> assign;
    std::size_t evals = 0;
  };
  std::vector<Slot> slots(work.size());
  std::atomic<double> shared{kInf};
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t k = next++; k < work.size(); k = next++) {
      PrefixSearch s(h, r, tol, shared);
      s.run(work[k]);
      slots[k] = {s.best(), s.best_assignment(), s.evaluations()};
    }
  };
  const std::size_t threads = std::min(worker_count(), work.size());
  if (threads <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (std::size_t t = 0; t < threads; ++t) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }

  double best = kInf;
  std::vector<std::size_t> out;
  evals = 0;
  for (const Slot& s : slots) {
    evals += s.evals;
    if (s.best < best) {
      best = s.best;
      out = s.assign;
    }
  }
  return out;
}

std::vector<std::size_t> anneal(const MatrixD& h, std::size_t r, double target, const AnnealingConfig& cfg,
                                const Tolerance& tol, double h_norm, std::size_t& evals, bool& exhausted) {
  const std::size_t m = h.rows();
  std::mt19937_64 gen(cfg.seed);
  auto uniform = [&gen] { return (static_cast<double>(gen() >> 11) + 0.5) * 0x1.0p-53; };
  auto below = [&gen](std::size_t n) { return static_cast<std::size_t>(gen() % n); };

  std::vector<std::size_t> assign(m);
  for (auto& a : assign) a = below(r);
  std::vector<IndexSet> blocks(r);
  for (std::size_t i = 0; i < m; ++i) blocks[assign[i]].push_back(i);
  std::vector<double> norms(r);
  for (std::size_t p = 0; p < r; ++p) norms[p] = compression_norm(h, blocks[p], tol);
  evals = r;
  auto max_of = [](const std::vector<double>& v) { return *std::max_element(v.begin(), v.end()); };

  double cur = max_of(norms), best = cur;
  std::vector<std::size_t> best_assign = assign;
  double temp = cfg.t0 * std::max(h_norm, 1e-12);
  std::size_t step = 0;
  for (; step < cfg.budget && best > target && r > 1; ++step) {
    const std::size_t i = below(m);
    std::size_t to = below(r - 1);
    const std::size_t from = assign[i];
    if (to >= from) ++to;

    IndexSet src, dst = blocks[to];
    for (std::size_t j : blocks[from])
      if (j != i) src.push_back(j);
    dst.insert(std::lower_bound(dst.begin(), dst.end(), i), i);
    const double ns = compression_norm(h, src, tol), nd = compression_norm(h, dst, tol);
    evals += 2;
    double cand = std::max(ns, nd);
    for (std::size_t p = 0; p < r; ++p)
      if (p != from && p != to) cand = std::max(cand, norms[p]);

    const double delta = cand - cur;
    const double u = uniform();
    if (delta <= 0 || u < std::exp(-delta / temp)) {
      blocks[from] = std::move(src);
      blocks[to] = std::move(dst);
      norms[from] = ns;
      norms[to] = nd;
      assign[i] = to;
      cur = cand;
      if (cur < best) {
        best = cur;
        best_assign = assign;
      }
    }
    temp *= cfg.cooling;
  }
  exhausted = best > target && step >= cfg.budget;
  return best_assign;
}

PavingResult search(const MatrixD& h, std::size_t r, double bound, std::optional<double> s, PavingMethod method,
                    const AnnealingConfig& cfg, const Tolerance& tol) {
  tol.validate();
  if (!h.is_square()) fail(ErrorKind::InvalidShape, "paving needs a square matrix");
  if (h.rows() == 0) fail(ErrorKind::InvalidShape, "paving needs a non-empty matrix");
  for (std::size_t i = 0; i < h.rows(); ++i)
    if (std::abs(h(i, i)) > tol.eig_abs) fail(ErrorKind::NonzeroDiagonal, "diagonal entry " + std::to_string(i));
  if (r < 1) fail(ErrorKind::InvalidArgument, "need r >= 1");
  if (method == PavingMethod::Exhaustive && h.rows() > kExhaustivePavingLimit)
    fail(ErrorKind::InvalidArgument, "exhaustive paving is limited to " + std::to_string(kExhaustivePavingLimit) +
                                         " indices");
  const MatrixD sym = (h + h.transpose()) * 0.5;

  PavingResult out;
  out.method = method;
  out.h_norm = spectral_norm(h, tol);
  out.target_s = s;
  out.target = bound;
  std::vector<std::size_t> assign;
  if (method == PavingMethod::Exhaustive)
    assign = exhaustive(sym, r, tol, out.evaluations);
  else
    assign = anneal(sym, r, bound, cfg, tol, out.h_norm, out.evaluations, out.budget_exhausted);

  out.partition = IndexPartition{r, assign};
  for (const IndexSet& part : out.partition.parts()) {
    out.part_norms.push_back(compression_norm(sym, part, tol));
    out.achieved = std::max(out.achieved, out.part_norms.back());
  }
  out.success = out.achieved <= bound + tol.eig_abs;
  if (out.success) out.budget_exhausted = false;
  return out;
}

}  // namespace

PavingResult pave(const MatrixD& h, std::size_t r, double s, PavingMethod method, const AnnealingConfig& cfg,
                  const Tolerance& tol) {
  if (!(s > 0 && s < 1)) fail(ErrorKind::InvalidArgument, "s must lie in (0, 1)");
  return search(h, r, s * spectral_norm(h, tol), s, method, cfg, tol);
}

PavingResult pave_absolute(const MatrixD& h, std::size_t r, double bound, PavingMethod method,
                           const AnnealingConfig& cfg, const Tolerance& tol) {
  if (!(bound >= 0)) fail(ErrorKind::InvalidArgument, "paving bound must be non-negative");
  const double hn = spectral_norm(h, tol);
  std::optional<double> s;
  if (hn > 0) s = bound / hn;
  return search(h, r, bound, s, method, cfg, tol);
}

PavingPipelineResult paving_spanning_pipeline(const Frame& f, double delta, std::size_t r, const Numerics& num,
                                              PavingMethod method, const AnnealingConfig& cfg) {
  num.tol.validate();
  if (!(delta > 0 && delta < 1)) fail(ErrorKind::InvalidArgument, "delta must lie in (0, 1)");
  const MatrixD h = hollow_gram(f, num.tol);
  const double norms_max = f.max_norm_sq();
  if (norms_max > 1 - delta + num.tol.eig_abs)
    fail(ErrorKind::NormBoundViolated, "max ||f_i||^2 = " + format_double(norms_max) + " exceeds 1 - delta");

  PavingPipelineResult out;
  out.paving = pave_absolute(h, r, delta / 2, method, cfg, num.tol);
  if (!out.paving.success)
    throw PavingNotFound(out.paving, "no paving with r = " + std::to_string(r) + " met delta/2 (best " +
                                         format_double(out.paving.achieved) + ")");

  const MatrixD g = gram(f);
  for (const IndexSet& part : out.paving.partition.parts()) {
    const double v = part.empty() ? 0.0 : top_eigenvalue_sym(g.principal(part), num.tol);
    out.gram_norms.push_back(v);
    if (v > 1 - delta / 2 + num.tol.eig_abs)
      fail(ErrorKind::InternalContractViolation, "compressed Gram norm exceeds 1 - delta/2");
  }

  CertificateParams params;
  params.delta = delta;
  params.r = r;
  params.norms_max = norms_max;
  out.certificate = verify_partition(f, out.paving.partition, TheoremTag::Paving, params, num);
  if (!out.certificate.claims_hold) fail(ErrorKind::InternalContractViolation, "a paving complement fails to span");
  return out;
}

nlohmann::ordered_json to_json(const PavingResult& p) {
  using nlohmann::ordered_json;
  ordered_json j;
  j["method"] = std::string(to_string(p.method));
  j["assignment"] = p.partition.assignment;
  j["achieved"] = p.achieved;
  j["part_norms"] = p.part_norms;
  j["h_norm"] = p.h_norm;
  j["target_s"] = p.target_s ? ordered_json(*p.target_s) : ordered_json(nullptr);
  j["target"] = p.target;
  j["success"] = p.success;
  j["budget_exhausted"] = p.budget_exhausted;
  return j;
}

nlohmann::ordered_json to_json(const PavingPipelineResult& p) {
  auto j = to_json(p.certificate);
  auto pv = to_json(p.paving);
  pv["gram_norms"] = p.gram_norms;
  j["paving"] = std::move(pv);
  return j;
}

}  // namespace frameforge
