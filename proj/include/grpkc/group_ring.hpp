#pragma once

// Group ring RG over a finite group G and R = Z or Z/m. Elements are dense
// coefficient vectors in the group's canonical order.

#include <gmpxx.h>

#include <cctype>
#include <cmath>
#include <cstdint>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "grpkc/error.hpp"
#include "grpkc/group.hpp"
#include "grpkc/linalg.hpp"
#include "grpkc/modarith.hpp"
#include "grpkc/ring.hpp"

namespace grpkc {

class GroupRingElement {
 public:
  /// The zero element.
  GroupRingElement(Group group, RingSpec ring)
      : group_(std::move(group)), ring_(std::move(ring)), coeffs_(group_.order()) {}

  GroupRingElement(Group group, RingSpec ring, std::vector<Coefficient> coeffs)
      : group_(std::move(group)), ring_(std::move(ring)), coeffs_(std::move(coeffs)) {
    if (coeffs_.size() != group_.order())
      throw SpecError("expected " + std::to_string(group_.order()) + " coefficients, got " +
                      std::to_string(coeffs_.size()));
    for (auto& c : coeffs_) ring_.reduce_in_place(c);
  }

  static GroupRingElement one(const Group& group, const RingSpec& ring) {
    return basis(group, ring, group.identity(), 1);
  }

  /// c * g
  static GroupRingElement basis(const Group& group, const RingSpec& ring, GroupElement g, const Coefficient& c) {
    GroupRingElement out(group, ring);
    out.coeffs_.at(group.element(g.index).index) = ring.reduce(c);
    return out;
  }

  /// 1 + g + ... + g^{n-1} with n = ord(g).
  static GroupRingElement cyclic_sum(const Group& group, const RingSpec& ring, GroupElement g) {
    GroupRingElement out(group, ring);
    GroupElement x = group.identity();
    do {
      out.coeffs_[x.index] += 1;
      x = group.mul(x, g);
    } while (x != group.identity());
    for (auto& c : out.coeffs_) ring.reduce_in_place(c);
    return out;
  }

  const Group& group() const noexcept { return group_; }
  const RingSpec& ring() const noexcept { return ring_; }
  const std::vector<Coefficient>& coeffs() const noexcept { return coeffs_; }
  const Coefficient& operator[](std::size_t i) const { return coeffs_.at(i); }
  const Coefficient& coefficient(GroupElement g) const { return coeffs_.at(g.index); }
  std::size_t size() const noexcept { return coeffs_.size(); }

  bool is_zero() const {
    for (const auto& c : coeffs_)
      if (c != 0) return false;
    return true;
  }

  bool is_one() const {
    if (coeffs_[0] != 1) return false;
    for (std::size_t i = 1; i < coeffs_.size(); ++i)
      if (coeffs_[i] != 0) return false;
    return true;
  }

  friend bool operator==(const GroupRingElement& a, const GroupRingElement& b) {
    return a.group_ == b.group_ && a.ring_ == b.ring_ && a.coeffs_ == b.coeffs_;
  }

 private:
  Group group_;
  RingSpec ring_;
  std::vector<Coefficient> coeffs_;
};

namespace detail {

inline void check_same_space(const GroupRingElement& a, const GroupRingElement& b) {
  if (!(a.group() == b.group()))
    throw SpecError("group mismatch: " + a.group().spec().to_string() + " vs " + b.group().spec().to_string());
  if (!(a.ring() == b.ring()))
    throw SpecError("ring mismatch: " + a.ring().to_string() + " vs " + b.ring().to_string());
}

inline std::vector<std::uint64_t> to_words(const std::vector<Coefficient>& v) {
  std::vector<std::uint64_t> out(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) out[i] = v[i].get_ui();
  return out;
}

}  // namespace detail

inline GroupRingElement gr_add(const GroupRingElement& a, const GroupRingElement& b) {
  detail::check_same_space(a, b);
  std::vector<Coefficient> out(a.size());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = a[i] + b[i];
  return {a.group(), a.ring(), std::move(out)};
}

inline GroupRingElement gr_sub(const GroupRingElement& a, const GroupRingElement& b) {
  detail::check_same_space(a, b);
  std::vector<Coefficient> out(a.size());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = a[i] - b[i];
  return {a.group(), a.ring(), std::move(out)};
}

inline GroupRingElement gr_neg(const GroupRingElement& a) {
  std::vector<Coefficient> out(a.size());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = -a[i];
  return {a.group(), a.ring(), std::move(out)};
}

inline GroupRingElement gr_scale(const GroupRingElement& a, const Coefficient& c) {
  std::vector<Coefficient> out(a.size());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = a[i] * c;
  return {a.group(), a.ring(), std::move(out)};
}

/// Convolution: out[g_i g_j] += a_i b_j.
inline GroupRingElement gr_mul(const GroupRingElement& a, const GroupRingElement& b) {
  detail::check_same_space(a, b);
  const Group& g = a.group();
  const std::size_t n = a.size();
  std::vector<std::uint32_t> support_b;
  for (std::size_t j = 0; j < n; ++j)
    if (b[j] != 0) support_b.push_back(static_cast<std::uint32_t>(j));

  if (a.ring().small_modulus()) {
    const std::uint64_t m = a.ring().modulus.get_ui();
    const auto aw = detail::to_words(a.coeffs());
    const auto bw = detail::to_words(b.coeffs());
    std::vector<std::uint64_t> acc(n, 0);
    for (std::size_t i = 0; i < n; ++i) {
      if (aw[i] == 0) continue;
      for (std::uint32_t j : support_b) {
        auto& slot = acc[g.mul_unchecked(static_cast<std::uint32_t>(i), j)];
        slot = (slot + aw[i] * bw[j]) % m;
      }
    }
    std::vector<Coefficient> out(n);
    for (std::size_t k = 0; k < n; ++k) out[k] = static_cast<unsigned long>(acc[k]);
    return {g, a.ring(), std::move(out)};
  }

  std::vector<Coefficient> out(n);
  for (std::size_t i = 0; i < n; ++i) {
    if (a[i] == 0) continue;
    for (std::uint32_t j : support_b) {
      auto& slot = out[g.mul_unchecked(static_cast<std::uint32_t>(i), j)];
      mpz_addmul(slot.get_mpz_t(), a[i].get_mpz_t(), b[j].get_mpz_t());
    }
  }
  return {g, a.ring(), std::move(out)};
}

/// Square-and-multiply; a^0 is the identity element.
inline GroupRingElement gr_pow(const GroupRingElement& a, std::uint64_t n) {
  GroupRingElement result = GroupRingElement::one(a.group(), a.ring());
  if (n == 0) return result;
  GroupRingElement base = a;
  for (;;) {
    if (n & 1U) result = gr_mul(result, base);
    n >>= 1U;
    if (n == 0) break;
    base = gr_mul(base, base);
  }
  return result;
}

inline GroupRingElement operator+(const GroupRingElement& a, const GroupRingElement& b) { return gr_add(a, b); }
inline GroupRingElement operator-(const GroupRingElement& a, const GroupRingElement& b) { return gr_sub(a, b); }
inline GroupRingElement operator-(const GroupRingElement& a) { return gr_neg(a); }
inline GroupRingElement operator*(const GroupRingElement& a, const GroupRingElement& b) { return gr_mul(a, b); }

/// Sum of coefficients; a ring homomorphism RG -> R.
inline Coefficient augmentation(const GroupRingElement& a) {
  Coefficient sum = 0;
  for (const auto& c : a.coeffs()) sum += c;
  return a.ring().reduce(sum);
}

/// Matrix of left multiplication by a: column j is the coefficient vector
/// of a * g_j, so (a*b) = M b.
inline linalg::Matrix<Coefficient> regular_representation(const GroupRingElement& a) {
  const std::size_t n = a.size();
  linalg::Matrix<Coefficient> m(n);
  for (std::size_t i = 0; i < n; ++i) {
    if (a[i] == 0) continue;
    for (std::size_t j = 0; j < n; ++j)
      m.at(a.group().mul_unchecked(static_cast<std::uint32_t>(i), static_cast<std::uint32_t>(j)), j) += a[i];
  }
  for (auto& c : m.entries) a.ring().reduce_in_place(c);
  return m;
}

/// Applies M to a coefficient vector in R.
inline std::vector<Coefficient> apply_matrix(const linalg::Matrix<Coefficient>& m, const std::vector<Coefficient>& v,
                                             const RingSpec& ring) {
  std::vector<Coefficient> out(m.n);
  for (std::size_t r = 0; r < m.n; ++r) {
    for (std::size_t c = 0; c < m.n; ++c) mpz_addmul(out[r].get_mpz_t(), m.at(r, c).get_mpz_t(), v[c].get_mpz_t());
    ring.reduce_in_place(out[r]);
  }
  return out;
}

namespace detail {

inline bool is_two_sided_inverse(const GroupRingElement& a, const GroupRingElement& b) {
  return gr_mul(a, b).is_one() && gr_mul(b, a).is_one();
}

inline std::vector<Coefficient> identity_column(std::size_t n) {
  std::vector<Coefficient> e(n);
  e[0] = 1;
  return e;
}

/// Solves (regular rep of a) x = e over the prime field Z/p, p < 2^62.
inline std::pair<linalg::SolveStatus, std::vector<std::uint64_t>> solve_word(const GroupRingElement& a,
                                                                             std::uint64_t p) {
  const std::size_t n = a.size();
  std::vector<std::uint64_t> aw(n);
  const mpz_class pm(static_cast<unsigned long>(p));
  for (std::size_t i = 0; i < n; ++i) {
    mpz_class r;
    mpz_fdiv_r(r.get_mpz_t(), a[i].get_mpz_t(), pm.get_mpz_t());
    aw[i] = r.get_ui();
  }
  linalg::Matrix<std::uint64_t> m(n);
  for (std::size_t i = 0; i < n; ++i) {
    if (aw[i] == 0) continue;
    for (std::size_t j = 0; j < n; ++j) {
      auto& slot = m.at(a.group().mul_unchecked(static_cast<std::uint32_t>(i), static_cast<std::uint32_t>(j)), j);
      slot = modarith::addmod(slot, aw[i], p);
    }
  }
  std::vector<std::uint64_t> rhs(n, 0);
  rhs[0] = 1;
  return linalg::solve_field(linalg::WordField{p}, std::move(m), std::move(rhs));
}

inline GroupRingElement inverse_composite(const GroupRingElement& a) {
  // adj(M) e / det(M), with det invertible modulo m.
  const auto& ring = a.ring();
  const GroupRingElement lifted(a.group(), RingSpec::integers(), a.coeffs());
  auto sol = linalg::solve_rational(regular_representation(lifted), identity_column(a.size()));
  if (sol.determinant == 0 || !ring.is_invertible(ring.reduce(sol.determinant)))
    throw NotAUnit("regular representation is not invertible modulo " + ring.modulus.get_str());
  const Coefficient det_inv = ring.inverse(ring.reduce(sol.determinant));
  std::vector<Coefficient> out(a.size());
  for (std::size_t i = 0; i < out.size(); ++i) {
    mpq_class adj = sol.x[i] * mpq_class(sol.determinant);
    adj.canonicalize();
    out[i] = adj.get_num() * det_inv;
  }
  GroupRingElement b(a.group(), ring, std::move(out));
  if (!is_two_sided_inverse(a, b)) throw NotAUnit("no two-sided inverse");
  return b;
}

inline GroupRingElement inverse_prime(const GroupRingElement& a) {
  const auto& ring = a.ring();
  const std::size_t n = a.size();
  if (mpz_sizeinbase(ring.modulus.get_mpz_t(), 2) <= 62) {
    auto [status, x] = solve_word(a, ring.modulus.get_ui());
    if (status == linalg::SolveStatus::zero_divisor) return inverse_composite(a);
    if (status == linalg::SolveStatus::singular) throw NotAUnit("regular representation is singular");
    std::vector<Coefficient> out(n);
    for (std::size_t i = 0; i < n; ++i) out[i] = static_cast<unsigned long>(x[i]);
    GroupRingElement b(a.group(), ring, std::move(out));
    if (!is_two_sided_inverse(a, b)) throw NotAUnit("no two-sided inverse");
    return b;
  }
  auto [status, x] = linalg::solve_field(linalg::BigField{ring.modulus}, regular_representation(a), identity_column(n));
  if (status == linalg::SolveStatus::zero_divisor) return inverse_composite(a);
  if (status == linalg::SolveStatus::singular) throw NotAUnit("regular representation is singular");
  GroupRingElement b(a.group(), ring, std::move(x));
  if (!is_two_sided_inverse(a, b)) throw NotAUnit("no two-sided inverse");
  return b;
}

/// Integral inverse by solving modulo a growing set of 62-bit primes and
/// Chinese remaindering. A candidate is accepted only after both products
/// check out exactly over Z. The true inverse is +-adj(M) e, whose entries
/// are bounded by ||a||_2^{n-1} (Hadamard), so once the modulus product
/// exceeds twice that bound a failed check proves a is not a unit.
inline GroupRingElement inverse_integral(const GroupRingElement& a) {
  const Coefficient aug = augmentation(a);
  if (aug != 1 && aug != -1) throw NotAUnit("augmentation " + aug.get_str() + " is not +-1");

  const std::size_t n = a.size();
  mpz_class norm_sq = 0;
  for (const auto& c : a.coeffs()) norm_sq += c * c;
  mpz_class norm;
  mpz_sqrt(norm.get_mpz_t(), norm_sq.get_mpz_t());
  if (norm * norm < norm_sq) norm += 1;
  mpz_class bound;
  mpz_pow_ui(bound.get_mpz_t(), norm.get_mpz_t(), n - 1);
  bound *= 2;

  mpz_class modulus = 1;
  std::vector<mpz_class> residue(n, 0);
  std::vector<mpz_class> previous;
  for (std::size_t k = 0;; ++k) {
    const std::uint64_t p = modarith::large_prime(k);
    auto [status, x] = solve_word(a, p);
    if (status != linalg::SolveStatus::ok) throw NotAUnit("regular representation is singular modulo a prime");
    const mpz_class pm(static_cast<unsigned long>(p));
    mpz_class minv;
    mpz_invert(minv.get_mpz_t(), mpz_class(modulus % pm).get_mpz_t(), pm.get_mpz_t());
    for (std::size_t i = 0; i < n; ++i) {
      // residue + modulus * ((x_i - residue) * modulus^{-1} mod p)
      mpz_class t = mpz_class(static_cast<unsigned long>(x[i])) - residue[i];
      t *= minv;
      mpz_fdiv_r(t.get_mpz_t(), t.get_mpz_t(), pm.get_mpz_t());
      residue[i] += modulus * t;
    }
    modulus *= pm;
    const mpz_class half = modulus / 2;
    std::vector<mpz_class> symmetric(n);
    for (std::size_t i = 0; i < n; ++i) symmetric[i] = residue[i] > half ? residue[i] - modulus : residue[i];

    const bool exhausted = modulus > bound;
    if (exhausted || symmetric == previous) {
      GroupRingElement b(a.group(), a.ring(), symmetric);
      if (is_two_sided_inverse(a, b)) return b;
      if (exhausted) throw NotAUnit("no integral inverse");
    }
    previous = std::move(symmetric);
  }
}

}  // namespace detail

/// Two-sided inverse, or NotAUnit.
inline GroupRingElement gr_inverse(const GroupRingElement& a) {
  if (a.is_zero()) throw NotAUnit("zero is not a unit");
  const auto& ring = a.ring();
  if (!ring.is_modular()) return detail::inverse_integral(a);
  if (ring.prime_modulus()) return detail::inverse_prime(a);
  return detail::inverse_composite(a);
}

/// Inverse over Z by exact rational elimination only: slower, kept as an
/// independent route for cross-checking the multi-modular path.
inline GroupRingElement gr_inverse_exact(const GroupRingElement& a) {
  if (a.ring().is_modular()) return gr_inverse(a);
  auto sol = linalg::solve_rational(regular_representation(a), detail::identity_column(a.size()));
  if (sol.determinant == 0) throw NotAUnit("regular representation is singular");
  std::vector<Coefficient> out(a.size());
  for (std::size_t i = 0; i < out.size(); ++i) {
    if (sol.x[i].get_den() != 1) throw NotAUnit("inverse is not integral");
    out[i] = sol.x[i].get_num();
  }
  GroupRingElement b(a.group(), a.ring(), std::move(out));
  if (!detail::is_two_sided_inverse(a, b)) throw NotAUnit("no two-sided inverse");
  return b;
}

inline bool is_unit(const GroupRingElement& a) {
  try {
    (void)gr_inverse(a);
    return true;
  } catch (const NotAUnit&) {
    return false;
  }
}

// ---- text forms -----------------------------------------------------------

/// `[c0, c1, ..., c_{n-1}]`
inline std::string to_vector_string(const GroupRingElement& a) {
  std::string out = "[";
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (i != 0) out += ", ";
    out += a[i].get_str();
  }
  return out + "]";
}

/// Sum of terms in the group's element notation, e.g. `1 - 2*r + 3*r^4s`.
inline std::string to_term_string(const GroupRingElement& a) {
  std::string out;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const Coefficient& c = a[i];
    if (c == 0) continue;
    const bool negative = c < 0;
    const Coefficient mag = negative ? Coefficient(-c) : c;
    if (out.empty()) {
      if (negative) out += "-";
    } else {
      out += negative ? " - " : " + ";
    }
    if (i == 0) {
      out += mag.get_str();
    } else {
      if (mag != 1) out += mag.get_str() + "*";
      out += a.group().format_element(GroupElement{static_cast<std::uint32_t>(i)});
    }
  }
  return out.empty() ? "0" : out;
}

namespace detail {

inline std::vector<Coefficient> parse_coefficient_list(std::string_view s) {
  s = trim(s);
  if (s.size() < 2 || s.front() != '[' || s.back() != ']') throw FormatError("coefficient vector must be [c0, c1, ...]");
  s = s.substr(1, s.size() - 2);
  std::vector<Coefficient> out;
  if (trim(s).empty()) return out;
  std::size_t start = 0;
  for (;;) {
    const std::size_t comma = s.find(',', start);
    std::string_view item = trim(s.substr(start, comma == std::string_view::npos ? s.npos : comma - start));
    Coefficient c;
    std::string text(item);
    if (!text.empty() && text[0] == '+') text.erase(0, 1);
    if (text.empty() || c.set_str(text, 10) != 0) throw FormatError("bad coefficient '" + std::string(item) + "'");
    out.push_back(c);
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return out;
}

}  // namespace detail

/// Parses either the vector form or a sum of terms such as
/// `2e + x - x^3`, `1 + g + g^3` or `-15*e + 6*(1 2 3 4 5)`.
inline GroupRingElement parse_group_ring_element(const Group& group, const RingSpec& ring, std::string_view text) {
  std::string_view s = detail::trim(text);
  if (!s.empty() && s.front() == '[') return {group, ring, detail::parse_coefficient_list(s)};

  std::vector<Coefficient> coeffs(group.order());
  std::size_t i = 0;
  auto skip_ws = [&] {
    while (i < s.size() && (s[i] == ' ' || s[i] == '\t' || s[i] == '\n' || s[i] == '\r')) ++i;
  };
  bool any = false;
  skip_ws();
  while (i < s.size()) {
    int sign = 1;
    bool had_sign = false;
    while (i < s.size() && (s[i] == '+' || s[i] == '-' || s[i] == ' ')) {
      if (s[i] == '-') sign = -sign;
      if (s[i] != ' ') had_sign = true;
      ++i;
    }
    if (any && !had_sign) throw FormatError("expected '+' or '-' between terms in '" + std::string(s) + "'");
    std::size_t j = i;
    while (j < s.size() && s[j] >= '0' && s[j] <= '9') ++j;
    Coefficient c = 1;
    const bool has_number = j > i;
    if (has_number) c.set_str(std::string(s.substr(i, j - i)), 10);
    i = j;
    skip_ws();
    if (i < s.size() && s[i] == '*') {
      ++i;
      skip_ws();
    }
    std::size_t k = i;
    if (k < s.size() && s[k] == '(') {
      for (;;) {
        const std::size_t close = s.find(')', k);
        if (close == std::string_view::npos) throw FormatError("unterminated cycle in '" + std::string(s) + "'");
        k = close + 1;
        std::size_t peek = k;
        while (peek < s.size() && s[peek] == ' ') ++peek;
        if (peek < s.size() && s[peek] == '(') {
          k = peek;
          continue;
        }
        break;
      }
    } else {
      while (k < s.size() && (std::isalnum(static_cast<unsigned char>(s[k])) || s[k] == '^' ||
                              (s[k] == '-' && k > 0 && s[k - 1] == '^')))
        ++k;
    }
    std::string_view token = s.substr(i, k - i);
    if (token.empty() && !has_number) throw FormatError("empty term in '" + std::string(s) + "'");
    GroupElement g = group.identity();
    if (!token.empty()) {
      try {
        g = group.parse_element(token);
      } catch (const DomainError& e) {
        throw FormatError(e.what());
      }
    }
    coeffs[g.index] += sign * c;
    i = k;
    any = true;
    skip_ws();
  }
  if (!any) throw FormatError("empty group ring element");
  return {group, ring, std::move(coeffs)};
}

}  // namespace grpkc
