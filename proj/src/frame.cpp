#include "frameforge/frame.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

namespace frameforge {

IndexSet complement(const IndexSet& b, std::size_t m) {
  IndexSet out;
  out.reserve(m > b.size() ? m - b.size() : 0);
  std::size_t k = 0;
  for (std::size_t i = 0; i < m; ++i) {
    while (k < b.size() && b[k] < i) ++k;
    if (k < b.size() && b[k] == i) continue;
    out.push_back(i);
  }
  return out;
}

IndexSet all_indices(std::size_t m) {
  IndexSet out(m);
  for (std::size_t i = 0; i < m; ++i) out[i] = i;
  return out;
}

namespace {

void check_shape(std::size_t rows, std::size_t cols, const std::vector<std::string>& labels) {
  if (rows == 0 || cols == 0) fail(ErrorKind::InvalidShape, "a frame needs M >= 1 vectors in dimension N >= 1");
  if (!labels.empty() && labels.size() != rows) fail(ErrorKind::InvalidShape, "one label per vector required");
}

}  // namespace

Frame::Frame(MatrixD vectors, std::vector<std::string> labels)
    : values_(std::move(vectors)), exact_(to_exact(values_)), labels_(std::move(labels)) {
  check_shape(values_.rows(), values_.cols(), labels_);
}

Frame::Frame(MatrixQ vectors, std::vector<std::string> labels)
    : values_(to_double(vectors)), exact_(std::move(vectors)), rational_source_(true), labels_(std::move(labels)) {
  check_shape(values_.rows(), values_.cols(), labels_);
}

double Frame::norm_sq(std::size_t i) const {
  double s = 0;
  for (double x : vector(i)) s += x * x;
  return s;
}

double Frame::max_norm_sq() const {
  double out = 0;
  for (std::size_t i = 0; i < size(); ++i) out = std::max(out, norm_sq(i));
  return out;
}

Frame Frame::scaled(double factor) const { return Frame(values_ * factor, labels_); }

std::size_t subset_rank(const Frame& f, std::span<const std::size_t> subset, const Numerics& num) {
  if (subset.empty()) return 0;
  if (num.mode == ScalarMode::Exact) return rank(f.exact_vectors().select_rows(subset));
  return rank(f.vectors().select_rows(subset), num.tol);
}

MatrixD frame_operator(const Frame& f) { return f.vectors().transpose() * f.vectors(); }

MatrixD gram(const Frame& f) { return f.vectors() * f.vectors().transpose(); }

FrameBounds validate_frame(const Frame& f, const Tolerance& tol) {
  const auto eig = eigen_sym(frame_operator(f), tol);
  FrameBounds b{eig.values.front(), eig.values.back()};
  if (!(b.lower > tol.eig_abs)) fail(ErrorKind::NotAFrame, "vectors do not span R^" + std::to_string(f.dim()));
  return b;
}

bool is_parseval(const Frame& f, const Tolerance& tol) {
  const double slack = 10 * tol.eig_abs;
  const MatrixD g = gram(f);
  // Idempotent Gram means Parseval for the span; spanning must hold as well.
  const bool gram_route = spectral_norm(g * g - g, tol) <= slack && rank(f.vectors(), tol) == f.dim();
  const bool operator_route = spectral_norm(frame_operator(f) - MatrixD::identity(f.dim()), tol) <= slack;
  if (gram_route != operator_route)
    fail(ErrorKind::CriterionMismatch, "Gram idempotency and frame-operator tests disagree on Parseval");
  return gram_route;
}

GramSplit gram_split(const Frame& f, const MatrixD& projector, const Tolerance& tol) {
  if (!is_parseval(f, tol)) fail(ErrorKind::NotParseval, "gram_split needs a Parseval frame");
  if (projector.rows() != f.dim() || !is_projector(projector, tol))
    fail(ErrorKind::NotProjector, "gram_split needs an orthogonal projector on R^N");
  const MatrixD pf = f.vectors() * projector;  // rows P f_i (P symmetric)
  const MatrixD qf = f.vectors() - pf;
  GramSplit out{gram(f), pf * pf.transpose(), qf * qf.transpose()};
  if (max_abs(out.g - out.r - out.q) > 1e-10)
    fail(ErrorKind::InternalContractViolation, "G != R + Q");
  for (const MatrixD* m : {&out.g, &out.r, &out.q})
    if (!is_projector(*m, tol)) fail(ErrorKind::InternalContractViolation, "Gram component is not a projection");
  return out;
}

SpanningEvidence spans_subset(const Frame& f, const MatrixD* g, const IndexSet& b, const Numerics& num) {
  SpanningEvidence ev;
  ev.rank = subset_rank(f, b, num);
  ev.spans = ev.rank == f.dim();
  if (g == nullptr) return ev;
  const IndexSet rest = complement(b, f.size());
  const double top = rest.empty() ? 0.0 : top_eigenvalue_sym(g->principal(rest), num.tol);
  ev.compressed_top_eigenvalue = top;
  const bool eig_spans = top <= 1 - num.tol.eig_abs;
  if (eig_spans != ev.spans)
    fail(ErrorKind::CriterionMismatch, "rank and compressed-Gram spanning verdicts disagree (top eigenvalue " +
                                           format_double(top) + ", rank " + std::to_string(ev.rank) + ")");
  return ev;
}

SpanningEvidence spans_subset(const Frame& f, const IndexSet& b, const Numerics& num) {
  if (!is_parseval(f, num.tol)) return spans_subset(f, nullptr, b, num);
  const MatrixD g = gram(f);
  return spans_subset(f, &g, b, num);
}

Complementarity complementarity_check(std::size_t n, const MatrixD& projector, const IndexSet& b,
                                      const Numerics& num) {
  if (projector.rows() != n || !is_projector(projector, num.tol))
    fail(ErrorKind::NotProjector, "complementarity_check needs an N x N orthogonal projector");
  const MatrixD residual = MatrixD::identity(n) - projector;
  const IndexSet rest = complement(b, n);

  auto rank_of = [&](const MatrixD& m, std::span<const std::size_t> rows) -> std::size_t {
    if (rows.empty()) return 0;
    if (num.mode == ScalarMode::Exact) return rank(to_exact(m).select_rows(rows));
    // Cut against unit scale, not the selection's own sigma_max.
    const auto s = singular_values(m.select_rows(rows));
    const double cut = num.tol.rank_rel * static_cast<double>(std::max(rows.size(), n));
    return static_cast<std::size_t>(std::count_if(s.begin(), s.end(), [cut](double x) { return x > cut; }));
  };
  const IndexSet every = all_indices(n);
  // Column j of a symmetric projector equals row j.
  Complementarity out;
  out.spans = rank_of(projector, b) == rank_of(projector, every);
  out.independent = rank_of(residual, rest) == rest.size();
  if (out.spans != out.independent)
    fail(ErrorKind::CriterionMismatch, "spanning of {P e_j} and independence of {(I-P) e_j} disagree");
  return out;
}

Frame harmonic_frame(std::size_t n, std::size_t m) {
  if (n < 1 || m < n) fail(ErrorKind::InvalidShape, "harmonic_frame needs m >= n >= 1");
  const std::size_t pairs_available = (m - 1) / 2;
  const double md = static_cast<double>(m);
  const double two_pi = 2 * std::numbers::pi;

  std::vector<std::size_t> freqs;  // cos/sin pairs
  bool constant = false, alternating = false;
  if (n % 2 == 1) {
    constant = true;
    for (std::size_t j = 1; j <= (n - 1) / 2; ++j) freqs.push_back(j);
  } else if (n / 2 <= pairs_available) {
    for (std::size_t j = 1; j <= n / 2; ++j) freqs.push_back(j);
  } else {
    // n == m, m even: the full real Fourier basis.
    constant = alternating = true;
    for (std::size_t j = 1; j <= pairs_available; ++j) freqs.push_back(j);
  }

  MatrixD v(m, n);
  for (std::size_t k = 0; k < m; ++k) {
    std::size_t c = 0;
    if (constant) v(k, c++) = 1 / std::sqrt(md);
    for (std::size_t j : freqs) {
      const double angle = two_pi * static_cast<double>((j * k) % m) / md;
      v(k, c++) = std::sqrt(2 / md) * std::cos(angle);
      v(k, c++) = std::sqrt(2 / md) * std::sin(angle);
    }
    if (alternating) v(k, c++) = (k % 2 == 0 ? 1.0 : -1.0) / std::sqrt(md);
  }
  return Frame(std::move(v));
}

Frame random_parseval(std::size_t n, std::size_t m, std::uint64_t seed) {
  if (n < 1 || m < n) fail(ErrorKind::InvalidShape, "random_parseval needs m >= n >= 1");
  std::mt19937_64 gen(seed);
  // Bit-level uniform in (0, 1) so the stream is identical across standard libraries.
  auto uniform = [&gen] { return (static_cast<double>(gen() >> 11) + 0.5) * 0x1.0p-53; };
  auto normal = [&] {
    const double u1 = uniform(), u2 = uniform();
    return std::sqrt(-2 * std::log(u1)) * std::cos(2 * std::numbers::pi * u2);
  };
  MatrixD a(m, n);
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < n; ++j) a(i, j) = normal();

  // Modified Gram-Schmidt on the columns, applied twice.
  for (int pass = 0; pass < 2; ++pass) {
    for (std::size_t j = 0; j < n; ++j) {
      for (std::size_t p = 0; p < j; ++p) {
        double dot = 0;
        for (std::size_t i = 0; i < m; ++i) dot += a(i, p) * a(i, j);
        for (std::size_t i = 0; i < m; ++i) a(i, j) -= dot * a(i, p);
      }
      double norm = 0;
      for (std::size_t i = 0; i < m; ++i) norm += a(i, j) * a(i, j);
      norm = std::sqrt(norm);
      if (norm < 1e-8) fail(ErrorKind::InternalContractViolation, "degenerate random draw");
      for (std::size_t i = 0; i < m; ++i) a(i, j) /= norm;
    }
  }
  return Frame(std::move(a));
}

Frame scaled_union_of_bases(std::size_t n, std::size_t r) {
  if (n < 1 || r < 1) fail(ErrorKind::InvalidShape, "scaled_union_of_bases needs n, r >= 1");
  const auto root = static_cast<std::size_t>(std::llround(std::sqrt(static_cast<double>(r))));
  if (root * root == r) {
    MatrixQ v(n * r, n);
    for (std::size_t c = 0; c < r; ++c)
      for (std::size_t i = 0; i < n; ++i) v(c * n + i, i) = Rational(mpz_class(1), mpz_class(static_cast<unsigned long>(root)));
    return Frame(std::move(v));
  }
  MatrixD v(n * r, n);
  const double s = 1 / std::sqrt(static_cast<double>(r));
  for (std::size_t c = 0; c < r; ++c)
    for (std::size_t i = 0; i < n; ++i) v(c * n + i, i) = s;
  return Frame(std::move(v));
}

Frame standard_basis(std::size_t n) { return Frame(MatrixQ::identity(n)); }

}  // namespace frameforge
