#include "frameforge/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace frameforge {

MatrixQ to_exact(const MatrixD& m) {
  std::vector<Rational> data;
  data.reserve(m.data().size());
  for (double x : m.data()) {
    if (!std::isfinite(x)) fail(ErrorKind::InvalidArgument, "non-finite entry has no exact value");
    data.emplace_back(x);
  }
  return MatrixQ(m.rows(), m.cols(), std::move(data));
}

MatrixD to_double(const MatrixQ& m) {
  std::vector<double> data;
  data.reserve(m.data().size());
  for (const auto& q : m.data()) data.push_back(q.get_d());
  return MatrixD(m.rows(), m.cols(), std::move(data));
}

double max_abs(const MatrixD& m) {
  double out = 0;
  for (double x : m.data()) out = std::max(out, std::abs(x));
  return out;
}

void Tolerance::validate() const {
  auto ok = [](double v) { return v > 0 && v < 1e-3; };
  if (!ok(rank_rel) || !ok(eig_abs))
    fail(ErrorKind::InvalidArgument, "tolerances must lie in (0, 1e-3)");
}

namespace {

constexpr int kMaxSweeps = 100;

// One-sided Jacobi (Hestenes) on the columns of `a`. On return the columns of
// `a` are mutually orthogonal and `v` holds the accumulated rotations, so that
// a_in * v = a_out.
void hestenes(MatrixD& a, MatrixD& v) {
  const std::size_t m = a.rows();
  const std::size_t n = a.cols();
  v = MatrixD::identity(n);
  for (int sweep = 0; sweep < kMaxSweeps; ++sweep) {
    bool rotated = false;
    for (std::size_t p = 0; p + 1 < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        double alpha = 0, beta = 0, gamma = 0;
        for (std::size_t i = 0; i < m; ++i) {
          alpha += a(i, p) * a(i, p);
          beta += a(i, q) * a(i, q);
          gamma += a(i, p) * a(i, q);
        }
        if (alpha == 0 || beta == 0) continue;
        if (std::abs(gamma) <= 1e-15 * std::sqrt(alpha * beta)) continue;
        rotated = true;
        const double zeta = (beta - alpha) / (2 * gamma);
        const double t = std::copysign(1.0, zeta) / (std::abs(zeta) + std::sqrt(1 + zeta * zeta));
        const double c = 1 / std::sqrt(1 + t * t);
        const double s = c * t;
        for (std::size_t i = 0; i < m; ++i) {
          const double ap = a(i, p), aq = a(i, q);
          a(i, p) = c * ap - s * aq;
          a(i, q) = s * ap + c * aq;
        }
        for (std::size_t i = 0; i < n; ++i) {
          const double vp = v(i, p), vq = v(i, q);
          v(i, p) = c * vp - s * vq;
          v(i, q) = s * vp + c * vq;
        }
      }
    }
    if (!rotated) break;
  }
}

std::vector<double> column_norms(const MatrixD& a) {
  std::vector<double> out(a.cols(), 0.0);
  for (std::size_t j = 0; j < a.cols(); ++j) {
    double s = 0;
    for (std::size_t i = 0; i < a.rows(); ++i) s += a(i, j) * a(i, j);
    out[j] = std::sqrt(s);
  }
  return out;
}

double rank_cut(double sigma_max, std::size_t rows, std::size_t cols, const Tolerance& tol) {
  return tol.rank_rel * sigma_max * static_cast<double>(std::max(rows, cols));
}

}  // namespace

std::vector<double> singular_values(const MatrixD& m) {
  if (m.empty()) return {};
  MatrixD a = m.cols() <= m.rows() ? m : m.transpose();
  MatrixD v;
  hestenes(a, v);
  auto s = column_norms(a);
  std::sort(s.begin(), s.end(), std::greater<>());
  return s;
}

std::size_t rank(const MatrixD& m, const Tolerance& tol) {
  auto s = singular_values(m);
  if (s.empty() || s.front() == 0) return 0;
  const double cut = rank_cut(s.front(), m.rows(), m.cols(), tol);
  return static_cast<std::size_t>(std::count_if(s.begin(), s.end(), [cut](double x) { return x > cut; }));
}

std::size_t rank(const MatrixQ& m) {
  const std::size_t rows = m.rows(), cols = m.cols();
  if (rows == 0 || cols == 0) return 0;
  // Clear denominators row by row; row scaling does not change rank.
  std::vector<std::vector<mpz_class>> a(rows, std::vector<mpz_class>(cols));
  for (std::size_t i = 0; i < rows; ++i) {
    mpz_class l = 1;
    for (std::size_t j = 0; j < cols; ++j) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), m(i, j).get_den_mpz_t());
    for (std::size_t j = 0; j < cols; ++j) a[i][j] = m(i, j).get_num() * (l / m(i, j).get_den());
  }
  std::size_t r = 0;
  mpz_class prev = 1;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    std::size_t pivot = r;
    while (pivot < rows && a[pivot][c] == 0) ++pivot;
    if (pivot == rows) continue;
    std::swap(a[pivot], a[r]);
    for (std::size_t i = r + 1; i < rows; ++i) {
      for (std::size_t j = c + 1; j < cols; ++j) {
        mpz_class t = a[r][c] * a[i][j] - a[i][c] * a[r][j];
        mpz_divexact(a[i][j].get_mpz_t(), t.get_mpz_t(), prev.get_mpz_t());
      }
      a[i][c] = 0;
    }
    prev = a[r][c];
    ++r;
  }
  return r;
}

SymmetricEigen eigen_sym(const MatrixD& m, const Tolerance& tol) {
  if (!m.is_square()) fail(ErrorKind::InvalidShape, "eigen_sym needs a square matrix");
  const std::size_t n = m.rows();
  MatrixD a(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      if (std::abs(m(i, j) - m(j, i)) > tol.eig_abs)
        fail(ErrorKind::NotSymmetric, "asymmetry exceeds eig_abs");
      a(i, j) = 0.5 * (m(i, j) + m(j, i));
    }
  MatrixD v = MatrixD::identity(n);

  for (int sweep = 0; sweep < kMaxSweeps; ++sweep) {
    double off = 0, total = 0;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) {
        total += a(i, j) * a(i, j);
        if (i != j) off += a(i, j) * a(i, j);
      }
    if (off == 0 || off <= 1e-30 * total) break;
    for (std::size_t p = 0; p + 1 < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        const double apq = a(p, q);
        if (apq == 0) continue;
        const double theta = (a(q, q) - a(p, p)) / (2 * apq);
        const double t = std::copysign(1.0, theta) / (std::abs(theta) + std::sqrt(theta * theta + 1));
        const double c = 1 / std::sqrt(t * t + 1);
        const double s = t * c;
        for (std::size_t k = 0; k < n; ++k) {
          const double akp = a(k, p), akq = a(k, q);
          a(k, p) = c * akp - s * akq;
          a(k, q) = s * akp + c * akq;
        }
        for (std::size_t k = 0; k < n; ++k) {
          const double apk = a(p, k), aqk = a(q, k);
          a(p, k) = c * apk - s * aqk;
          a(q, k) = s * apk + c * aqk;
        }
        for (std::size_t k = 0; k < n; ++k) {
          const double vkp = v(k, p), vkq = v(k, q);
          v(k, p) = c * vkp - s * vkq;
          v(k, q) = s * vkp + c * vkq;
        }
      }
    }
  }

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) { return a(x, x) < a(y, y); });
  SymmetricEigen out;
  out.values.reserve(n);
  out.vectors = MatrixD(n, n);
  for (std::size_t k = 0; k < n; ++k) {
    out.values.push_back(a(order[k], order[k]));
    for (std::size_t i = 0; i < n; ++i) out.vectors(i, k) = v(i, order[k]);
  }
  return out;
}

double top_eigenvalue_sym(const MatrixD& m, const Tolerance& tol) {
  if (m.empty()) return 0.0;
  return eigen_sym(m, tol).values.back();
}

double spectral_norm(const MatrixD& m, const Tolerance&) {
  auto s = singular_values(m);
  return s.empty() ? 0.0 : s.front();
}

MatrixD row_space_basis(const MatrixD& m, const Tolerance& tol) {
  const std::size_t dim = m.cols();
  if (m.rows() == 0 || dim == 0) return MatrixD(0, dim);
  MatrixD a = m.transpose();  // columns are the input rows
  MatrixD v;
  hestenes(a, v);
  auto norms = column_norms(a);
  const double smax = *std::max_element(norms.begin(), norms.end());
  if (smax == 0) return MatrixD(0, dim);
  const double cut = rank_cut(smax, m.rows(), m.cols(), tol);
  std::vector<std::size_t> keep;
  for (std::size_t j = 0; j < norms.size(); ++j)
    if (norms[j] > cut) keep.push_back(j);
  std::sort(keep.begin(), keep.end(), [&](std::size_t x, std::size_t y) { return norms[x] > norms[y]; });
  MatrixD basis(keep.size(), dim);
  for (std::size_t k = 0; k < keep.size(); ++k)
    for (std::size_t i = 0; i < dim; ++i) basis(k, i) = a(i, keep[k]) / norms[keep[k]];
  return basis;
}

MatrixD orthoprojector(const MatrixD& span_of, const Tolerance& tol, std::size_t dim) {
  const std::size_t n = span_of.rows() == 0 && span_of.cols() == 0 ? dim : span_of.cols();
  if (span_of.rows() == 0) return MatrixD(n, n);
  const MatrixD q = row_space_basis(span_of, tol);
  return q.transpose() * q;
}

std::vector<double> least_squares_combination(const MatrixD& rows, std::span<const double> target,
                                              const Tolerance& tol) {
  const std::size_t k = rows.rows();
  const std::size_t dim = rows.cols();
  if (target.size() != dim) fail(ErrorKind::InvalidShape, "least squares target length mismatch");
  std::vector<double> x(k, 0.0);
  if (k == 0) return x;
  MatrixD a = rows.transpose();  // dim x k, a = U S V^T after rotation
  MatrixD v;
  hestenes(a, v);
  auto norms = column_norms(a);
  const double smax = *std::max_element(norms.begin(), norms.end());
  if (smax == 0) return x;
  const double cut = rank_cut(smax, k, dim, tol);
  for (std::size_t j = 0; j < k; ++j) {
    if (norms[j] <= cut) continue;
    double proj = 0;
    for (std::size_t i = 0; i < dim; ++i) proj += a(i, j) * target[i];
    const double coef = proj / (norms[j] * norms[j]);
    for (std::size_t i = 0; i < k; ++i) x[i] += v(i, j) * coef;
  }
  return x;
}

bool is_projector(const MatrixD& p, const Tolerance& tol) {
  if (!p.is_square()) return false;
  const double slack = 10 * tol.eig_abs;
  if (spectral_norm(p - p.transpose(), tol) > slack) return false;
  return spectral_norm(p * p - p, tol) <= slack;
}

}  // namespace frameforge
