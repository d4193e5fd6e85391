#pragma once

#include <cmath>
#include <cstdint>
#include <initializer_list>
#include <numbers>
#include <optional>
#include <random>
#include <vector>

#include "frameforge/error.hpp"
#include "frameforge/frame.hpp"

namespace fixtures {

using frameforge::Frame;
using frameforge::MatrixD;
using frameforge::MatrixQ;
using frameforge::Rational;

inline Frame rows(std::initializer_list<std::initializer_list<long>> r) {
  const std::size_t m = r.size(), n = r.begin()->size();
  MatrixQ q(m, n);
  std::size_t i = 0;
  for (const auto& row : r) {
    std::size_t j = 0;
    for (long v : row) q(i, j++) = Rational(v);
    ++i;
  }
  return Frame(std::move(q));
}

inline Frame float_rows(std::initializer_list<std::initializer_list<double>> r) {
  const std::size_t m = r.size(), n = r.begin()->size();
  MatrixD d(m, n);
  std::size_t i = 0;
  for (const auto& row : r) {
    std::size_t j = 0;
    for (double v : row) d(i, j++) = v;
    ++i;
  }
  return Frame(std::move(d));
}

/// sqrt(2/3) (cos 2 pi k / 3, sin 2 pi k / 3), k = 0, 1, 2.
inline Frame mercedes_benz() {
  MatrixD d(3, 2);
  const double s = std::sqrt(2.0 / 3.0);
  for (int k = 0; k < 3; ++k) {
    d(k, 0) = s * std::cos(2 * std::numbers::pi * k / 3);
    d(k, 1) = s * std::sin(2 * std::numbers::pi * k / 3);
  }
  return Frame(std::move(d));
}

/// Kind of the frameforge::Error thrown by fn, or nullopt if it returns.
template <class F>
std::optional<frameforge::ErrorKind> error_kind(F&& fn) {
  try {
    fn();
  } catch (const frameforge::Error& e) {
    return e.kind();
  }
  return std::nullopt;
}

inline std::uint64_t draw(std::mt19937_64& g, std::uint64_t n) { return g() % n; }

/// (I - K)(I + K)^{-1} for a random small-integer skew K; exactly orthogonal.
inline MatrixQ cayley_orthogonal(std::size_t m, std::mt19937_64& g) {
  MatrixQ k(m, m);
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = i + 1; j < m; ++j) {
      const long v = static_cast<long>(draw(g, 5)) - 2;
      k(i, j) = Rational(v);
      k(j, i) = Rational(-v);
    }
  // Gauss-Jordan inverse of I + K (always invertible for skew K).
  MatrixQ a = MatrixQ::identity(m) + k;
  MatrixQ inv = MatrixQ::identity(m);
  for (std::size_t c = 0; c < m; ++c) {
    std::size_t p = c;
    while (sgn(a(p, c)) == 0) ++p;
    for (std::size_t j = 0; j < m; ++j) {
      std::swap(a(p, j), a(c, j));
      std::swap(inv(p, j), inv(c, j));
    }
    const Rational piv = a(c, c);
    for (std::size_t j = 0; j < m; ++j) {
      a(c, j) /= piv;
      inv(c, j) /= piv;
    }
    for (std::size_t i = 0; i < m; ++i) {
      if (i == c || sgn(a(i, c)) == 0) continue;
      const Rational f = a(i, c);
      for (std::size_t j = 0; j < m; ++j) {
        a(i, j) -= f * a(c, j);
        inv(i, j) -= f * inv(c, j);
      }
    }
  }
  return (MatrixQ::identity(m) - k) * inv;
}

/// Rows of the first n columns of a rational orthogonal m x m matrix: an
/// exactly Parseval frame of m vectors with rational entries.
inline Frame rational_parseval(std::size_t n, std::size_t m, std::uint64_t seed) {
  std::mt19937_64 g(seed);
  const MatrixQ q = cayley_orthogonal(m, g);
  MatrixQ out(m, n);
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < n; ++j) out(i, j) = q(i, j);
  return Frame(std::move(out));
}

/// Union of `copies` rational orthonormal bases of R^n scaled by 1/root,
/// copies = root^2: exactly Parseval with norms 1/copies.
inline Frame rational_union(std::size_t n, std::size_t root, std::uint64_t seed) {
  std::mt19937_64 g(seed);
  const std::size_t copies = root * root;
  MatrixQ out(copies * n, n);
  const Rational s(mpz_class(1), mpz_class(static_cast<unsigned long>(root)));
  for (std::size_t c = 0; c < copies; ++c) {
    const MatrixQ q = cayley_orthogonal(n, g);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) out(c * n + i, j) = s * q(i, j);
  }
  return Frame(std::move(out));
}

/// m random vectors in R^n with entries in {-lim..lim}.
inline Frame integer_family(std::size_t n, std::size_t m, long lim, std::mt19937_64& g) {
  MatrixQ q(m, n);
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < n; ++j)
      q(i, j) = Rational(static_cast<long>(draw(g, static_cast<std::uint64_t>(2 * lim + 1))) - lim);
  return Frame(std::move(q));
}

/// m vectors drawn from a pool of `pool` random integer vectors, so repeats
/// are common.
inline Frame duplicated_family(std::size_t n, std::size_t m, std::size_t pool, std::mt19937_64& g) {
  const Frame base = integer_family(n, pool, 2, g);
  MatrixQ q(m, n);
  for (std::size_t i = 0; i < m; ++i) {
    const std::size_t src = draw(g, pool);
    for (std::size_t j = 0; j < n; ++j) q(i, j) = base.exact_vectors()(src, j);
  }
  return Frame(std::move(q));
}

/// random_parseval(n, m, seed') for the first seed' >= seed whose norms are
/// all at most `bound`; gives up after 500 tries.
inline std::optional<Frame> bounded_random_parseval(std::size_t n, std::size_t m, double bound,
                                                    std::uint64_t seed) {
  for (std::uint64_t s = seed; s < seed + 500; ++s) {
    Frame f = frameforge::random_parseval(n, m, s);
    if (f.max_norm_sq() <= bound) return f;
  }
  return std::nullopt;
}

}  // namespace fixtures
