#pragma once

// Dense linear solves used for group-ring inversion: Gaussian elimination
// over a prime field (word-sized or multi-precision) and fraction-free
// Bareiss elimination over the integers.

#include <gmpxx.h>

#include <cstddef>
#include <optional>
#include <utility>
#include <vector>

#include "grpkc/modarith.hpp"

namespace grpkc::linalg {

/// Square row-major matrix.
template <class T>
struct Matrix {
  std::size_t n = 0;
  std::vector<T> entries;

  Matrix() = default;
  explicit Matrix(std::size_t size) : n(size), entries(size * size) {}

  T& at(std::size_t row, std::size_t col) { return entries[row * n + col]; }
  const T& at(std::size_t row, std::size_t col) const { return entries[row * n + col]; }

  friend bool operator==(const Matrix&, const Matrix&) = default;
};

struct WordField {
  std::uint64_t p;
  using value_type = std::uint64_t;
  bool is_zero(value_type x) const { return x == 0; }
  value_type mul(value_type a, value_type b) const { return modarith::mulmod(a, b, p); }
  value_type sub(value_type a, value_type b) const { return modarith::submod(a, b, p); }
  std::optional<value_type> inv(value_type a) const { return modarith::inverse(a, p); }
};

struct BigField {
  mpz_class p;
  using value_type = mpz_class;
  bool is_zero(const value_type& x) const { return x == 0; }
  value_type mul(const value_type& a, const value_type& b) const {
    value_type r = a * b;
    mpz_fdiv_r(r.get_mpz_t(), r.get_mpz_t(), p.get_mpz_t());
    return r;
  }
  value_type sub(const value_type& a, const value_type& b) const {
    value_type r = a - b;
    mpz_fdiv_r(r.get_mpz_t(), r.get_mpz_t(), p.get_mpz_t());
    return r;
  }
  std::optional<value_type> inv(const value_type& a) const {
    value_type r;
    if (mpz_invert(r.get_mpz_t(), a.get_mpz_t(), p.get_mpz_t()) == 0) return std::nullopt;
    return r;
  }
};

enum class SolveStatus { ok, singular, zero_divisor };

/// Solves m x = rhs over a field by Gauss-Jordan elimination with row
/// pivoting. `zero_divisor` reports a nonzero pivot without an inverse,
/// which only happens when the modulus is not actually prime.
template <class Field>
std::pair<SolveStatus, std::vector<typename Field::value_type>> solve_field(
    const Field& f, Matrix<typename Field::value_type> m, std::vector<typename Field::value_type> rhs) {
  using V = typename Field::value_type;
  const std::size_t n = m.n;
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t pivot = col;
    while (pivot < n && f.is_zero(m.at(pivot, col))) ++pivot;
    if (pivot == n) return {SolveStatus::singular, {}};
    if (pivot != col) {
      for (std::size_t j = col; j < n; ++j) std::swap(m.at(pivot, j), m.at(col, j));
      std::swap(rhs[pivot], rhs[col]);
    }
    auto inv = f.inv(m.at(col, col));
    if (!inv) return {SolveStatus::zero_divisor, {}};
    for (std::size_t j = col; j < n; ++j) m.at(col, j) = f.mul(m.at(col, j), *inv);
    rhs[col] = f.mul(rhs[col], *inv);
    for (std::size_t i = 0; i < n; ++i) {
      if (i == col) continue;
      const V factor = m.at(i, col);
      if (f.is_zero(factor)) continue;
      for (std::size_t j = col; j < n; ++j) {
        if (!f.is_zero(m.at(col, j))) m.at(i, j) = f.sub(m.at(i, j), f.mul(factor, m.at(col, j)));
      }
      rhs[i] = f.sub(rhs[i], f.mul(factor, rhs[col]));
    }
  }
  return {SolveStatus::ok, std::move(rhs)};
}

struct RationalSolution {
  mpz_class determinant;
  /// Empty when the determinant is zero.
  std::vector<mpq_class> x;
};

/// Exact solve of m x = rhs over Q. Fraction-free Bareiss elimination gives
/// the determinant and an integral upper-triangular system; back
/// substitution is done in exact rationals.
inline RationalSolution solve_rational(Matrix<mpz_class> m, std::vector<mpz_class> rhs) {
  const std::size_t n = m.n;
  mpz_class prev = 1;
  int sign = 1;
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t pivot = k;
    while (pivot < n && m.at(pivot, k) == 0) ++pivot;
    if (pivot == n) return {0, {}};
    if (pivot != k) {
      for (std::size_t j = 0; j < n; ++j) std::swap(m.at(pivot, j), m.at(k, j));
      std::swap(rhs[pivot], rhs[k]);
      sign = -sign;
    }
    const mpz_class& pkk = m.at(k, k);
    for (std::size_t i = k + 1; i < n; ++i) {
      const mpz_class pik = m.at(i, k);
      for (std::size_t j = k + 1; j < n; ++j) {
        mpz_class v = m.at(i, j) * pkk - pik * m.at(k, j);
        mpz_divexact(m.at(i, j).get_mpz_t(), v.get_mpz_t(), prev.get_mpz_t());
      }
      mpz_class v = rhs[i] * pkk - pik * rhs[k];
      mpz_divexact(rhs[i].get_mpz_t(), v.get_mpz_t(), prev.get_mpz_t());
      m.at(i, k) = 0;
    }
    prev = pkk;
  }
  RationalSolution out;
  out.determinant = sign * m.at(n - 1, n - 1);
  out.x.resize(n);
  for (std::size_t ii = n; ii-- > 0;) {
    mpq_class acc(rhs[ii]);
    for (std::size_t j = ii + 1; j < n; ++j) acc -= mpq_class(m.at(ii, j)) * out.x[j];
    acc /= mpq_class(m.at(ii, ii));
    acc.canonicalize();
    out.x[ii] = acc;
  }
  return out;
}

}  // namespace grpkc::linalg
