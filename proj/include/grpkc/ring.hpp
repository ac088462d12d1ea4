#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>

#include "grpkc/error.hpp"
#include "grpkc/group.hpp"

namespace grpkc {

using Coefficient = mpz_class;

enum class RingKind { integers, modular };

/// Coefficient ring: the integers (arbitrary precision) or Z/m.
struct RingSpec {
  RingKind kind = RingKind::integers;
  Coefficient modulus = 0;

  static RingSpec integers() { return {RingKind::integers, 0}; }

  static RingSpec modular(const Coefficient& m) {
    if (m < 2) throw ParameterError("modulus must be >= 2");
    return {RingKind::modular, m};
  }

  /// Parses `int` / `z` or `mod:m`.
  static RingSpec parse(std::string_view text) {
    std::string_view s = detail::trim(text);
    if (s == "int" || s == "z" || s == "Z") return integers();
    if (s.substr(0, 4) == "mod:") {
      Coefficient m;
      if (s.size() == 4 || m.set_str(std::string(s.substr(4)), 10) != 0)
        throw ParameterError("bad modulus in ring spec '" + std::string(s) + "'");
      return modular(m);
    }
    throw ParameterError("ring spec must be 'int' or 'mod:m'");
  }

  std::string to_string() const { return is_modular() ? "mod:" + modulus.get_str() : "int"; }

  bool is_modular() const noexcept { return kind == RingKind::modular; }

  friend bool operator==(const RingSpec& a, const RingSpec& b) {
    return a.kind == b.kind && (a.kind == RingKind::integers || a.modulus == b.modulus);
  }

  /// Canonical representative: identity over Z, [0, m) modulo m.
  Coefficient reduce(const Coefficient& c) const {
    if (!is_modular()) return c;
    Coefficient r;
    mpz_fdiv_r(r.get_mpz_t(), c.get_mpz_t(), modulus.get_mpz_t());
    return r;
  }

  void reduce_in_place(Coefficient& c) const {
    if (is_modular()) mpz_fdiv_r(c.get_mpz_t(), c.get_mpz_t(), modulus.get_mpz_t());
  }

  bool contains(const Coefficient& c) const { return !is_modular() || (c >= 0 && c < modulus); }

  bool is_invertible(const Coefficient& c) const {
    if (!is_modular()) return c == 1 || c == -1;
    Coefficient g;
    mpz_gcd(g.get_mpz_t(), c.get_mpz_t(), modulus.get_mpz_t());
    return g == 1;
  }

  Coefficient inverse(const Coefficient& c) const {
    if (!is_invertible(c)) throw NotAUnit("scalar " + c.get_str() + " is not invertible in " + to_string());
    if (!is_modular()) return c;
    Coefficient r;
    mpz_invert(r.get_mpz_t(), c.get_mpz_t(), modulus.get_mpz_t());
    return r;
  }

  /// True when the modulus fits the word-sized fast paths.
  bool small_modulus() const { return is_modular() && mpz_sizeinbase(modulus.get_mpz_t(), 2) <= 31; }

  bool prime_modulus() const { return is_modular() && mpz_probab_prime_p(modulus.get_mpz_t(), 30) > 0; }
};

}  // namespace grpkc
