#include <doctest.h>

#include <cmath>
#include <random>

#include "fixtures.hpp"
#include "frameforge/linalg.hpp"
#include "oracles.hpp"

using namespace frameforge;

namespace {

const Tolerance kTol{};

template <class F>
void fill(MatrixD& m, F draw) {
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) m(i, j) = draw();
}

Rational ratio(long p, long q) {
  Rational r{mpz_class(p), mpz_class(q)};
  r.canonicalize();
  return r;
}

}  // namespace

TEST_CASE("rank: identity, dependent third row, Mercedes-Benz") {
  CHECK(rank(MatrixD::identity(2), kTol) == 2);
  CHECK(rank(MatrixQ::identity(2)) == 2);
  const MatrixD m{{1, 0}, {0, 1}, {1, 1}};
  CHECK(rank(m, kTol) == 2);
  CHECK(rank(to_exact(m)) == 2);
  const Frame mb = fixtures::mercedes_benz();
  CHECK(rank(mb.vectors(), kTol) == 2);
  CHECK(rank(mb.exact_vectors()) == oracle::exact_rank(mb, all_indices(3)));
  CHECK(rank(MatrixD(0, 0), kTol) == 0);
  CHECK(rank(MatrixD(3, 2), kTol) == 0);
}

TEST_CASE("rank: float and exact agree on small rational matrices") {
  std::mt19937_64 g(11);
  for (int t = 0; t < 300; ++t) {
    const std::size_t rows = 1 + g() % 6, cols = 1 + g() % 6;
    // Low-rank products make dependent rows common.
    const std::size_t inner = 1 + g() % std::min(rows, cols);
    MatrixQ a(rows, inner), b(inner, cols);
    for (std::size_t i = 0; i < rows; ++i)
      for (std::size_t k = 0; k < inner; ++k)
        a(i, k) = ratio(static_cast<long>(g() % 2001) - 1000, 1 + static_cast<long>(g() % 1000));
    for (std::size_t k = 0; k < inner; ++k)
      for (std::size_t j = 0; j < cols; ++j)
        b(k, j) = ratio(static_cast<long>(g() % 21) - 10, 1 + static_cast<long>(g() % 9));
    const MatrixQ q = a * b;
    const std::size_t exact = rank(q);
    CHECK(exact <= std::min(rows, cols));
    std::vector<std::vector<mpq_class>> rowsq;
    for (std::size_t i = 0; i < rows; ++i) rowsq.emplace_back(q.row(i).begin(), q.row(i).end());
    CHECK(exact == oracle::exact_rank(rowsq));
    CHECK(rank(to_double(q), kTol) == exact);
  }
}

TEST_CASE("top_eigenvalue_sym examples") {
  CHECK(top_eigenvalue_sym(MatrixD::identity(2), kTol) == doctest::Approx(1.0).epsilon(1e-12));
  const std::vector<double> d{0.4, 0.9};
  CHECK(top_eigenvalue_sym(MatrixD::diagonal(d), kTol) == doctest::Approx(0.9).epsilon(1e-12));
  const MatrixD h{{0, -1.0 / 3}, {-1.0 / 3, 0}};
  // Characteristic polynomial x^2 - 1/9 has roots +-1/3.
  CHECK(std::abs(top_eigenvalue_sym(h, kTol) - 1.0 / 3) < 1e-12);
  CHECK(top_eigenvalue_sym(MatrixD(0, 0), kTol) == 0.0);
}

TEST_CASE("eigen_sym rejects asymmetric input") {
  const MatrixD m{{1, 0.5}, {0.4, 1}};
  CHECK_THROWS_AS(eigen_sym(m, kTol), Error);
  try {
    eigen_sym(m, kTol);
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::NotSymmetric);
  }
}

TEST_CASE("eigen_sym matches Eigen on random symmetric matrices, including repeated eigenvalues") {
  std::mt19937_64 g(5);
  for (int t = 0; t < 100; ++t) {
    const std::size_t n = 1 + g() % 7;
    MatrixD m(n, n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i; j < n; ++j) m(i, j) = m(j, i) = static_cast<double>(g() % 2001) / 1000.0 - 1.0;
    if (t % 3 == 0) m = MatrixD::identity(n) + MatrixD::identity(n);  // full multiplicity
    Eigen::MatrixXd e(n, n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) e(i, j) = m(i, j);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(e);
    const auto ours = eigen_sym(m, kTol);
    for (std::size_t k = 0; k < n; ++k) CHECK(std::abs(ours.values[k] - es.eigenvalues()(k)) < 1e-9);
    // A v = lambda v for each returned pair.
    for (std::size_t k = 0; k < n; ++k)
      for (std::size_t i = 0; i < n; ++i) {
        double av = 0;
        for (std::size_t j = 0; j < n; ++j) av += m(i, j) * ours.vectors(j, k);
        CHECK(std::abs(av - ours.values[k] * ours.vectors(i, k)) < 1e-9);
      }
  }
}

TEST_CASE("spectral_norm examples and the A^T A cross-check") {
  CHECK(spectral_norm(MatrixD(3, 3), kTol) == 0.0);
  const Frame mb = fixtures::mercedes_benz();
  MatrixD h = gram(mb);
  for (std::size_t i = 0; i < 3; ++i) h(i, i) -= 2.0 / 3;
  CHECK(std::abs(spectral_norm(h, kTol) - 2.0 / 3) < 1e-12);
  const std::vector<double> d{-2, 1};
  CHECK(std::abs(spectral_norm(MatrixD::diagonal(d), kTol) - 2) < 1e-12);

  std::mt19937_64 g(9);
  for (int t = 0; t < 100; ++t) {
    const std::size_t r = 1 + g() % 6, c = 1 + g() % 6;
    MatrixD a(r, c);
    fill(a, [&] { return static_cast<double>(g() % 2001) / 500.0 - 2.0; });
    const double via_ata = std::sqrt(std::max(0.0, top_eigenvalue_sym(a.transpose() * a, kTol)));
    CHECK(std::abs(spectral_norm(a, kTol) - via_ata) <= 10 * kTol.eig_abs);
  }
}

TEST_CASE("orthoprojector examples") {
  const MatrixD p1 = orthoprojector(MatrixD{{1, 0}}, kTol);
  CHECK(max_abs(p1 - MatrixD{{1, 0}, {0, 0}}) < 1e-12);
  const MatrixD p2 = orthoprojector(MatrixD{{1, 0}, {0, 1}}, kTol);
  CHECK(max_abs(p2 - MatrixD::identity(2)) < 1e-12);
  const MatrixD p3 = orthoprojector(MatrixD{{1, 1}}, kTol);
  CHECK(max_abs(p3 - MatrixD{{0.5, 0.5}, {0.5, 0.5}}) < 1e-12);
  const MatrixD p0 = orthoprojector(MatrixD(0, 0), kTol, 3);
  CHECK(p0.rows() == 3);
  CHECK(max_abs(p0) == 0.0);
}

TEST_CASE("every computed projector is symmetric, idempotent, with eigenvalues in {0, 1}") {
  std::mt19937_64 g(21);
  for (int t = 0; t < 200; ++t) {
    const std::size_t n = 1 + g() % 6, k = 1 + g() % 6;
    MatrixD a(k, n);
    fill(a, [&] { return static_cast<double>(g() % 7) - 3.0; });
    const MatrixD p = orthoprojector(a, kTol);
    CHECK(spectral_norm(p * p - p, kTol) <= 10 * kTol.eig_abs);
    CHECK(spectral_norm(p - p.transpose(), kTol) <= 10 * kTol.eig_abs);
    CHECK(rank(p, kTol) == rank(a, kTol));
    const double top = top_eigenvalue_sym(p, kTol);
    CHECK((std::abs(top) <= 10 * kTol.eig_abs || std::abs(top - 1) <= 10 * kTol.eig_abs));
    CHECK(is_projector(p, kTol));
  }
}

TEST_CASE("least_squares_combination reproduces vectors in the span") {
  const MatrixD rows{{1, 0, 0}, {0, 1, 0}, {1, 1, 0}};
  const std::vector<double> target{2, 3, 0};
  const auto x = least_squares_combination(rows, target, kTol);
  for (std::size_t j = 0; j < 3; ++j) {
    double v = 0;
    for (std::size_t i = 0; i < 3; ++i) v += x[i] * rows(i, j);
    CHECK(std::abs(v - target[j]) < 1e-12);
  }
}

TEST_CASE("Tolerance validation") {
  CHECK_NOTHROW(Tolerance{}.validate());
  CHECK_THROWS_AS((Tolerance{0, 1e-9}.validate()), Error);
  CHECK_THROWS_AS((Tolerance{1e-9, 1e-3}.validate()), Error);
  CHECK_THROWS_AS((Tolerance{-1e-9, 1e-9}.validate()), Error);
}

TEST_CASE("rational parsing and formatting") {
  CHECK(parse_rational("3/6") == ratio(1, 2));
  CHECK(parse_rational("-0.125") == ratio(-1, 8));
  CHECK(parse_rational("3e-2") == ratio(3, 100));
  CHECK(parse_rational("7") == Rational(7));
  CHECK(format_rational(ratio(-2, 4)) == "-1/2");
  CHECK(format_rational(ratio(4, 2)) == "2");
  CHECK(is_rational_literal("1/3"));
  CHECK_FALSE(is_rational_literal("0.5"));
  CHECK_THROWS_AS(parse_rational("1/0"), Error);
  CHECK_THROWS_AS(parse_rational("abc"), Error);
  for (double x : {0.1, 1.0 / 3, -2.5e-300, 123456.789})
    CHECK(parse_double(format_double(x)) == x);
}
