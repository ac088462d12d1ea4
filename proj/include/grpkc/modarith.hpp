#pragma once

// Word-sized modular arithmetic: extended Euclid, mulmod via 128-bit
// products, deterministic Miller-Rabin, and a prime source for the
// multi-modular linear algebra.

#include <cstdint>
#include <optional>
#include <vector>

namespace grpkc::modarith {

using u64 = std::uint64_t;
using i64 = std::int64_t;
using u128 = unsigned __int128;

inline u64 mulmod(u64 a, u64 b, u64 m) {
  return static_cast<u64>(static_cast<u128>(a) * b % m);
}

inline u64 addmod(u64 a, u64 b, u64 m) {
  u64 s = a + b;
  return (s >= m || s < a) ? s - m : s;
}

inline u64 submod(u64 a, u64 b, u64 m) { return a >= b ? a - b : a + (m - b); }

inline u64 powmod(u64 base, u64 exp, u64 m) {
  u64 result = 1 % m;
  base %= m;
  while (exp != 0) {
    if (exp & 1U) result = mulmod(result, base, m);
    base = mulmod(base, base, m);
    exp >>= 1U;
  }
  return result;
}

/// Canonical representative of a in [0, m).
inline u64 reduce(i64 a, u64 m) {
  i64 r = a % static_cast<i64>(m);
  return static_cast<u64>(r < 0 ? r + static_cast<i64>(m) : r);
}

/// Inverse of a modulo m by the extended Euclidean algorithm, or nullopt
/// when gcd(a, m) != 1.
inline std::optional<u64> inverse(u64 a, u64 m) {
  if (m == 1) return 0;
  i64 old_r = static_cast<i64>(a % m), r = static_cast<i64>(m);
  i64 old_s = 1, s = 0;
  while (r != 0) {
    i64 q = old_r / r;
    i64 tmp = old_r - q * r;
    old_r = r;
    r = tmp;
    tmp = old_s - q * s;
    old_s = s;
    s = tmp;
  }
  if (old_r != 1) return std::nullopt;
  return reduce(old_s, m);
}

inline u64 gcd(u64 a, u64 b) {
  while (b != 0) {
    u64 t = a % b;
    a = b;
    b = t;
  }
  return a;
}

/// Deterministic for all 64-bit inputs (fixed witness set).
inline bool is_prime(u64 n) {
  if (n < 2) return false;
  for (u64 p : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
    if (n % p == 0) return n == p;
  }
  u64 d = n - 1;
  int s = 0;
  while ((d & 1U) == 0) {
    d >>= 1U;
    ++s;
  }
  for (u64 a : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
    u64 x = powmod(a, d, n);
    if (x == 1 || x == n - 1) continue;
    bool composite = true;
    for (int i = 1; i < s; ++i) {
      x = mulmod(x, x, n);
      if (x == n - 1) {
        composite = false;
        break;
      }
    }
    if (composite) return false;
  }
  return true;
}

/// Euler's totient by trial division.
inline u64 totient(u64 n) {
  u64 result = n;
  for (u64 p = 2; p * p <= n; ++p) {
    if (n % p != 0) continue;
    while (n % p == 0) n /= p;
    result -= result / p;
  }
  if (n > 1) result -= result / n;
  return result;
}

/// The k-th prime below 2^62, counting downward. Deterministic, cached.
inline u64 large_prime(std::size_t k) {
  static thread_local std::vector<u64> cache;
  u64 candidate = cache.empty() ? (1ULL << 62U) - 1 : cache.back() - 2;
  while (cache.size() <= k) {
    while (!is_prime(candidate)) candidate -= 2;
    cache.push_back(candidate);
    candidate -= 2;
  }
  return cache[k];
}

}  // namespace grpkc::modarith
