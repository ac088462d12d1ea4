#pragma once

// Finite groups used as group-ring bases: cyclic C_n, dihedral D_2n and
// symmetric S_n. Every group carries a fixed canonical enumeration and
// elements are handled by their index in it.
//
//   C_n   e, g, g^2, ..., g^{n-1}
//   D_2n  e, r, ..., r^{n-1}, s, rs, ..., r^{n-1}s      (s r = r^{n-1} s)
//   S_n   one-line image arrays in lexicographic order; products are
//         left-to-right, (p*q)(i) = q(p(i)).

#include <algorithm>
#include <array>
#include <charconv>
#include <compare>
#include <cstdint>
#include <memory>
#include <numeric>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "grpkc/error.hpp"

namespace grpkc {

enum class GroupFamily { cyclic, dihedral, symmetric };

struct GroupSpec {
  GroupFamily family = GroupFamily::cyclic;
  /// n for C_n, n for D_2n (order 2n), n for S_n.
  std::uint32_t parameter = 1;

  friend bool operator==(const GroupSpec&, const GroupSpec&) = default;

  static GroupSpec cyclic(std::uint32_t n) { return {GroupFamily::cyclic, n}; }
  static GroupSpec dihedral(std::uint32_t n) { return {GroupFamily::dihedral, n}; }
  static GroupSpec symmetric(std::uint32_t n) { return {GroupFamily::symmetric, n}; }

  /// Parses `c:29`, `d:10` (total order 2n) or `s:5`.
  static GroupSpec parse(std::string_view text);

  std::string to_string() const {
    switch (family) {
      case GroupFamily::cyclic:
        return "c:" + std::to_string(parameter);
      case GroupFamily::dihedral:
        return "d:" + std::to_string(2 * parameter);
      case GroupFamily::symmetric:
        return "s:" + std::to_string(parameter);
    }
    return {};
  }
};

/// Index into the canonical enumeration of a group. Identity is 0.
struct GroupElement {
  std::uint32_t index = 0;
  friend auto operator<=>(const GroupElement&, const GroupElement&) = default;
};

namespace detail {

inline constexpr std::uint32_t kMaxCyclicOrder = 1U << 20U;
inline constexpr std::uint32_t kMaxSymmetricDegree = 8;
inline constexpr std::uint32_t kMaxTabulatedOrder = 1024;

inline std::uint32_t parse_u32(std::string_view text, std::string_view what) {
  std::uint32_t value = 0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc{} || ptr != text.data() + text.size() || text.empty()) {
    throw ParameterError("invalid " + std::string(what) + " '" + std::string(text) + "'");
  }
  return value;
}

inline std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t' || s.front() == '\n' || s.front() == '\r'))
    s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\n' || s.back() == '\r'))
    s.remove_suffix(1);
  return s;
}

using Images = std::array<std::uint8_t, kMaxSymmetricDegree>;

inline std::uint32_t factorial(std::uint32_t n) {
  std::uint32_t f = 1;
  for (std::uint32_t i = 2; i <= n; ++i) f *= i;
  return f;
}

struct GroupData {
  GroupSpec spec;
  std::uint32_t order = 1;
  std::vector<Images> perms;          // symmetric only
  std::vector<std::uint32_t> table;   // order*order products when small
  std::vector<std::uint32_t> inverses;

  std::uint32_t lex_rank(const Images& p) const {
    const std::uint32_t n = spec.parameter;
    std::uint32_t rank = 0;
    std::uint32_t weight = factorial(n);
    for (std::uint32_t i = 0; i < n; ++i) {
      weight /= (n - i);
      std::uint32_t smaller = 0;
      for (std::uint32_t j = i + 1; j < n; ++j) smaller += p[j] < p[i] ? 1U : 0U;
      rank += smaller * weight;
    }
    return rank;
  }

  std::uint32_t compute_mul(std::uint32_t a, std::uint32_t b) const {
    const std::uint32_t n = spec.parameter;
    switch (spec.family) {
      case GroupFamily::cyclic:
        return static_cast<std::uint32_t>((std::uint64_t{a} + b) % n);
      case GroupFamily::dihedral: {
        // (r^k1 s^e1)(r^k2 s^e2) = r^{k1 + (-1)^e1 k2} s^{e1+e2}
        const std::uint32_t k1 = a % n, e1 = a / n, k2 = b % n, e2 = b / n;
        const std::uint32_t k = e1 == 0 ? (k1 + k2) % n : (k1 + n - k2) % n;
        return k + n * (e1 ^ e2);
      }
      case GroupFamily::symmetric: {
        const Images& p = perms[a];
        const Images& q = perms[b];
        Images out{};
        for (std::uint32_t i = 0; i < n; ++i) out[i] = q[p[i] - 1];
        return lex_rank(out);
      }
    }
    return 0;
  }
};

}  // namespace detail

/// Immutable, cheaply copyable handle to a finite group.
class Group {
 public:
  explicit Group(GroupSpec spec) {
    auto data = std::make_shared<detail::GroupData>();
    data->spec = spec;
    const std::uint32_t n = spec.parameter;
    switch (spec.family) {
      case GroupFamily::cyclic:
        if (n == 0) throw ParameterError("cyclic group needs n >= 1");
        if (n > detail::kMaxCyclicOrder) throw ParameterError("cyclic order too large for dense representation");
        data->order = n;
        break;
      case GroupFamily::dihedral:
        if (n < 2) throw ParameterError("dihedral group needs n >= 2 (order >= 4)");
        if (n > detail::kMaxCyclicOrder / 2) throw ParameterError("dihedral order too large for dense representation");
        data->order = 2 * n;
        break;
      case GroupFamily::symmetric: {
        if (n == 0) throw ParameterError("symmetric group needs n >= 1");
        if (n > detail::kMaxSymmetricDegree) throw ParameterError("symmetric degree too large for dense representation");
        data->order = detail::factorial(n);
        detail::Images p{};
        for (std::uint32_t i = 0; i < n; ++i) p[i] = static_cast<std::uint8_t>(i + 1);
        data->perms.reserve(data->order);
        do {
          data->perms.push_back(p);
        } while (std::next_permutation(p.begin(), p.begin() + n));
        break;
      }
    }
    const std::uint32_t order = data->order;
    if (order <= detail::kMaxTabulatedOrder) {
      data->table.resize(std::size_t{order} * order);
      for (std::uint32_t a = 0; a < order; ++a)
        for (std::uint32_t b = 0; b < order; ++b) data->table[std::size_t{a} * order + b] = data->compute_mul(a, b);
    }
    data->inverses.resize(order);
    for (std::uint32_t a = 0; a < order; ++a) {
      switch (spec.family) {
        case GroupFamily::cyclic:
          data->inverses[a] = (order - a) % order;
          break;
        case GroupFamily::dihedral:
          data->inverses[a] = a < n ? (n - a) % n : a;
          break;
        case GroupFamily::symmetric: {
          detail::Images inv{};
          for (std::uint32_t i = 0; i < n; ++i) inv[data->perms[a][i] - 1] = static_cast<std::uint8_t>(i + 1);
          data->inverses[a] = data->lex_rank(inv);
          break;
        }
      }
    }
    data_ = std::move(data);
  }

  const GroupSpec& spec() const noexcept { return data_->spec; }
  std::uint32_t order() const noexcept { return data_->order; }
  GroupElement identity() const noexcept { return {0}; }

  GroupElement element(std::uint32_t index) const {
    check(GroupElement{index});
    return GroupElement{index};
  }

  bool contains(GroupElement a) const noexcept { return a.index < order(); }

  GroupElement mul(GroupElement a, GroupElement b) const {
    check(a);
    check(b);
    return GroupElement{mul_unchecked(a.index, b.index)};
  }

  GroupElement inv(GroupElement a) const {
    check(a);
    return GroupElement{data_->inverses[a.index]};
  }

  /// Product of indices without bounds checks; hot path of convolution.
  std::uint32_t mul_unchecked(std::uint32_t a, std::uint32_t b) const noexcept {
    if (!data_->table.empty()) return data_->table[std::size_t{a} * data_->order + b];
    return data_->compute_mul(a, b);
  }

  GroupElement pow(GroupElement a, std::int64_t k) const {
    check(a);
    if (k < 0) {
      a = inv(a);
      k = -k;
    }
    GroupElement result = identity();
    GroupElement base = a;
    auto e = static_cast<std::uint64_t>(k);
    while (e != 0) {
      if (e & 1U) result = mul(result, base);
      base = mul(base, base);
      e >>= 1U;
    }
    return result;
  }

  std::uint32_t element_order(GroupElement a) const {
    check(a);
    std::uint32_t k = 1;
    GroupElement x = a;
    while (x.index != 0) {
      x = GroupElement{mul_unchecked(x.index, a.index)};
      ++k;
    }
    return k;
  }

  /// Least common multiple of all element orders.
  std::uint64_t exponent() const {
    const std::uint32_t n = spec().parameter;
    switch (spec().family) {
      case GroupFamily::cyclic:
        return n;
      case GroupFamily::dihedral:
        return std::lcm(std::uint64_t{n}, std::uint64_t{2});
      case GroupFamily::symmetric: {
        std::uint64_t e = 1;
        for (std::uint64_t k = 2; k <= n; ++k) e = std::lcm(e, k);
        return e;
      }
    }
    return 1;
  }

  // ---- normal forms -------------------------------------------------------

  GroupElement cyclic_power(std::int64_t k) const {
    expect_family(GroupFamily::cyclic);
    const auto n = static_cast<std::int64_t>(order());
    return GroupElement{static_cast<std::uint32_t>(((k % n) + n) % n)};
  }

  /// r^k s^reflection.
  GroupElement dihedral(std::int64_t k, bool reflection) const {
    expect_family(GroupFamily::dihedral);
    const auto n = static_cast<std::int64_t>(spec().parameter);
    return GroupElement{static_cast<std::uint32_t>(((k % n) + n) % n + (reflection ? n : 0))};
  }

  std::pair<std::uint32_t, bool> dihedral_form(GroupElement a) const {
    expect_family(GroupFamily::dihedral);
    check(a);
    const std::uint32_t n = spec().parameter;
    return {a.index % n, a.index >= n};
  }

  /// Element with the given one-line images of 1..n.
  GroupElement from_images(std::span<const std::uint8_t> images) const {
    expect_family(GroupFamily::symmetric);
    const std::uint32_t n = spec().parameter;
    if (images.size() != n) throw DomainError("permutation of wrong degree");
    detail::Images p{};
    std::array<bool, detail::kMaxSymmetricDegree + 1> seen{};
    for (std::uint32_t i = 0; i < n; ++i) {
      if (images[i] < 1 || images[i] > n || seen[images[i]]) throw DomainError("not a permutation of 1..n");
      seen[images[i]] = true;
      p[i] = images[i];
    }
    return GroupElement{data_->lex_rank(p)};
  }

  std::vector<std::uint8_t> images(GroupElement a) const {
    expect_family(GroupFamily::symmetric);
    check(a);
    const auto& p = data_->perms[a.index];
    return {p.begin(), p.begin() + spec().parameter};
  }

  // ---- text form ----------------------------------------------------------

  /// Parses `e`, `g^k` (or `x^k`) for cyclic groups, `r^k s` forms for
  /// dihedral groups and cycle notation such as `(1 4 2 5 3)(2 4)` for
  /// symmetric groups. Cycles are multiplied left to right.
  GroupElement parse_element(std::string_view text) const {
    std::string_view s = detail::trim(text);
    if (s == "e" || s == "1") return identity();
    switch (spec().family) {
      case GroupFamily::cyclic: {
        if (s.empty() || (s[0] != 'g' && s[0] != 'x')) break;
        s.remove_prefix(1);
        if (s.empty()) return cyclic_power(1);
        if (s[0] != '^') break;
        s.remove_prefix(1);
        std::int64_t k = 0;
        if (!parse_int(s, k)) break;
        return cyclic_power(k);
      }
      case GroupFamily::dihedral: {
        std::int64_t k = 0;
        bool refl = false;
        if (!s.empty() && s[0] == 'r') {
          s.remove_prefix(1);
          k = 1;
          if (!s.empty() && s[0] == '^') {
            s.remove_prefix(1);
            std::size_t len = 0;
            while (len < s.size() && (s[len] == '-' || (s[len] >= '0' && s[len] <= '9'))) ++len;
            if (!parse_int(s.substr(0, len), k)) break;
            s.remove_prefix(len);
          }
        }
        if (!s.empty() && s[0] == 's') {
          refl = true;
          s.remove_prefix(1);
        }
        if (!s.empty()) break;
        return dihedral(k, refl);
      }
      case GroupFamily::symmetric:
        return parse_cycles(s);
    }
    throw DomainError("cannot parse group element '" + std::string(text) + "' in " + spec().to_string());
  }

  std::string format_element(GroupElement a) const {
    check(a);
    switch (spec().family) {
      case GroupFamily::cyclic:
        if (a.index == 0) return "e";
        if (a.index == 1) return "g";
        return "g^" + std::to_string(a.index);
      case GroupFamily::dihedral: {
        auto [k, refl] = dihedral_form(a);
        std::string out;
        if (k == 1) out = "r";
        if (k > 1) out = "r^" + std::to_string(k);
        if (refl) out += "s";
        return out.empty() ? "e" : out;
      }
      case GroupFamily::symmetric:
        return format_cycles(data_->perms[a.index]);
    }
    return {};
  }

  friend bool operator==(const Group& a, const Group& b) { return a.spec() == b.spec(); }

 private:
  void check(GroupElement a) const {
    if (a.index >= order())
      throw DomainError("element index " + std::to_string(a.index) + " not in " + spec().to_string());
  }

  void expect_family(GroupFamily f) const {
    if (spec().family != f) throw DomainError("operation not defined for " + spec().to_string());
  }

  static bool parse_int(std::string_view s, std::int64_t& out) {
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
    return ec == std::errc{} && ptr == s.data() + s.size() && !s.empty();
  }

  GroupElement parse_cycles(std::string_view s) const {
    const std::uint32_t n = spec().parameter;
    GroupElement acc = identity();
    bool any = false;
    while (!s.empty()) {
      if (s[0] == ' ') {
        s.remove_prefix(1);
        continue;
      }
      if (s[0] != '(') throw DomainError("expected '(' in cycle notation");
      const auto close = s.find(')');
      if (close == std::string_view::npos) throw DomainError("unterminated cycle");
      std::string_view body = s.substr(1, close - 1);
      s.remove_prefix(close + 1);
      std::vector<std::uint32_t> points;
      std::size_t i = 0;
      while (i < body.size()) {
        if (body[i] == ' ' || body[i] == ',') {
          ++i;
          continue;
        }
        std::size_t j = i;
        while (j < body.size() && body[j] >= '0' && body[j] <= '9') ++j;
        if (j == i) throw DomainError("bad character in cycle");
        const std::uint32_t pt = detail::parse_u32(body.substr(i, j - i), "cycle point");
        if (pt < 1 || pt > n) throw DomainError("cycle point out of range 1.." + std::to_string(n));
        if (std::find(points.begin(), points.end(), pt) != points.end())
          throw DomainError("repeated point in cycle");
        points.push_back(pt);
        i = j;
      }
      detail::Images p{};
      for (std::uint32_t k = 0; k < n; ++k) p[k] = static_cast<std::uint8_t>(k + 1);
      for (std::size_t k = 0; k < points.size(); ++k)
        p[points[k] - 1] = static_cast<std::uint8_t>(points[(k + 1) % points.size()]);
      acc = mul(acc, GroupElement{data_->lex_rank(p)});
      any = true;
    }
    if (!any) throw DomainError("empty cycle notation");
    return acc;
  }

  std::string format_cycles(const detail::Images& p) const {
    const std::uint32_t n = spec().parameter;
    std::array<bool, detail::kMaxSymmetricDegree> seen{};
    std::string out;
    for (std::uint32_t i = 0; i < n; ++i) {
      if (seen[i] || p[i] == i + 1) continue;
      out += '(';
      std::uint32_t j = i;
      bool first = true;
      while (!seen[j]) {
        seen[j] = true;
        if (!first) out += ' ';
        out += std::to_string(j + 1);
        first = false;
        j = p[j] - 1U;
      }
      out += ')';
    }
    return out.empty() ? "(1)" : out;
  }

  std::shared_ptr<const detail::GroupData> data_;
};

inline GroupSpec GroupSpec::parse(std::string_view text) {
  std::string_view s = detail::trim(text);
  if (s.size() < 3 || s[1] != ':') throw ParameterError("group spec must look like c:29, d:10 or s:5");
  const std::uint32_t value = detail::parse_u32(s.substr(2), "group parameter");
  switch (s[0]) {
    case 'c':
      return cyclic(value);
    case 's':
      return symmetric(value);
    case 'd':
      if (value % 2 != 0) throw ParameterError("dihedral spec takes the (even) group order");
      return dihedral(value / 2);
    default:
      throw ParameterError("unknown group family '" + std::string(1, s[0]) + "'");
  }
}

}  // namespace grpkc
